//! Witnesses built from explicit maps rather than found by search.

use super::{verify_with_frames, IsoclinismError, IsoclinismFrame, IsoclinismWitness};
use crate::algebra::HlyAlgebra;
use crate::constructions::{self, ConstructionError, QuotientPresentation};
use crate::isoclinism::morphism::is_homomorphism;
use crate::linalg::{Matrix, Subspace};
use crate::subobjects;

/// The pair `(θ, β)` induced by a surjective homomorphism `f: A -> B` that
/// maps `Z(A)` into `Z(B)`: `θ = P_B f T_A` and `β = coords_{B^2}(f D_A)`.
pub fn induced_witness(
    f: &Matrix,
    fa: &IsoclinismFrame,
    fb: &IsoclinismFrame,
) -> Result<IsoclinismWitness, IsoclinismError> {
    let theta = fb.quotient.projection.dot(f).dot(&fa.quotient.transversal);
    let image = f.dot(&fa.derived.embedding());
    let beta = fb
        .derived
        .coordinates_matrix(&image)
        .ok_or_else(|| IsoclinismError::Precondition("map does not send A^2 into B^2".into()))?;
    Ok(IsoclinismWitness { theta, beta })
}

fn checked(
    fa: &IsoclinismFrame,
    fb: &IsoclinismFrame,
    w: IsoclinismWitness,
) -> Result<IsoclinismWitness, IsoclinismError> {
    let report = verify_with_frames(fa, fb, &w)?;
    if !report.pass() {
        return Err(IsoclinismError::WitnessVerificationFailed(Box::new(report)));
    }
    Ok(w)
}

/// `A ~ A ⊕ B` for abelian `B`, via the inclusion of `A` as the first block.
pub fn direct_sum_witness(a: &HlyAlgebra, b: &HlyAlgebra) -> Result<(HlyAlgebra, IsoclinismWitness), IsoclinismError> {
    if !b.is_abelian() {
        return Err(IsoclinismError::Precondition("second summand must be abelian".into()));
    }
    let s = constructions::direct_sum(a, b)?;
    let n = a.dim();
    let j = Matrix::identity(a.field(), n).vstack(&Matrix::zeros(a.field(), b.dim(), n));
    let fa = IsoclinismFrame::new(a)?;
    let fs = IsoclinismFrame::new(&s)?;
    let theta = fs.quotient.projection.dot(&j).dot(&fa.quotient.transversal);
    let beta = fs
        .derived
        .coordinates_matrix(&j.dot(&fa.derived.embedding()))
        .expect("derived subalgebra of the sum is the first block's");
    let w = checked(&fa, &fs, IsoclinismWitness { theta, beta })?;
    Ok((s, w))
}

/// Witness for `A/(I ∩ A^2) ~ A/I`, or for `A ~ A/I` when `I ∩ A^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    /// `A/(I ∩ A^2)`; `None` in the special case, where the source is `A` itself.
    pub refined: Option<QuotientPresentation>,
    pub coarse: QuotientPresentation,
    pub source: HlyAlgebra,
    pub witness: IsoclinismWitness,
}

pub fn quotient_isoclinism_witness(a: &HlyAlgebra, ideal: &Subspace) -> Result<QuotientWitness, IsoclinismError> {
    let coarse = constructions::quotient(a, ideal)?;
    let meet = ideal
        .intersection(&subobjects::derived(a))
        .map_err(|e| IsoclinismError::Shape(e.to_string()))?;
    let (refined, source, map) = if meet.is_zero() {
        (None, a.clone(), coarse.projection.clone())
    } else {
        let refined = constructions::quotient(a, &meet)?;
        // A/(I ∩ A^2) -> A/I is induced by the identity of A
        let map = coarse.projection.dot(&refined.transversal);
        let source = refined.quotient.clone();
        (Some(refined), source, map)
    };
    let fs = IsoclinismFrame::new(&source)?;
    let fc = IsoclinismFrame::new(&coarse.quotient)?;
    let w = induced_witness(&map, &fs, &fc)?;
    let witness = checked(&fs, &fc, w)?;
    Ok(QuotientWitness {
        refined,
        coarse,
        source,
        witness,
    })
}

/// `A ~ B` from a surjective homomorphism whose kernel meets `A^2` trivially:
/// the quotient witness for `A ~ A/ker f` followed by the witness induced by
/// `A/ker f ≅ B`.
pub fn surjection_isoclinism(f: &Matrix, a: &HlyAlgebra, b: &HlyAlgebra) -> Result<IsoclinismWitness, IsoclinismError> {
    if (f.rows(), f.cols()) != (b.dim(), a.dim()) {
        return Err(IsoclinismError::Shape("map shape does not match the algebras".into()));
    }
    let hom = is_homomorphism(f, a, b);
    if !hom.is_homomorphism() {
        return Err(IsoclinismError::Precondition("map is not a homomorphism".into()));
    }
    if f.rank() != b.dim() {
        return Err(IsoclinismError::Precondition("map is not surjective".into()));
    }
    let kernel = f.kernel_basis();
    let meet = kernel
        .intersection(&subobjects::derived(a))
        .map_err(|e| IsoclinismError::Shape(e.to_string()))?;
    if !meet.is_zero() {
        return Err(IsoclinismError::Precondition(format!(
            "kernel meets A^2 in a subspace of dimension {} with basis {}",
            meet.dim(),
            meet.basis()
        )));
    }
    let first = quotient_isoclinism_witness(a, &kernel)?;
    let bar = f.dot(&first.coarse.transversal);
    let fk = IsoclinismFrame::new(&first.coarse.quotient)?;
    let fb = IsoclinismFrame::new(b)?;
    let second = checked(&fk, &fb, induced_witness(&bar, &fk, &fb)?)?;
    let composite = first.witness.compose(&second)?;
    let fa = IsoclinismFrame::new(a)?;
    checked(&fa, &fb, composite)
}

impl From<crate::linalg::LinalgError> for IsoclinismError {
    fn from(e: crate::linalg::LinalgError) -> Self {
        IsoclinismError::Construction(ConstructionError::Linalg(e))
    }
}
