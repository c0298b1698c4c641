//! Exact computations with regular Hom-Lie Yamaguti algebras given by
//! structure constants over Q or a prime field.
//!
//! Carrier vectors are coordinate columns; a twist matrix has the image of
//! `e_j` in column `j`.

pub mod algebra;
pub mod constructions;
pub mod corpus;
pub mod document;
pub mod fixtures;
pub mod isoclinism;
pub mod linalg;
pub mod scalar;
pub mod subobjects;

pub use algebra::{AxiomReport, HlyAlgebra, Identity};
pub use linalg::{Matrix, Subspace};
pub use scalar::{Field, Scalar};
