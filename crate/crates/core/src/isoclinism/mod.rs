//! Isoclinism witnesses: verification, construction from known maps, search,
//! and the stem plus abelian splitting.

pub mod decompose;
pub mod lemmas;
pub mod morphism;
pub mod search;

use thiserror::Error;

use crate::algebra::HlyAlgebra;
use crate::constructions::{self, ConstructionError, QuotientPresentation};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::scalar::{Field, Scalar};
use crate::subobjects;

pub use morphism::{is_homomorphism, HomReport, Morphism, TupleFailure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoclinismError {
    #[error("witness shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("constructed witness failed verification")]
    WitnessVerificationFailed(Box<IsoclinismReport>),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Everything about one algebra that witness verification needs: the center
/// quotient, the derived subalgebra and the bracket tables into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoclinismFrame {
    pub algebra: HlyAlgebra,
    pub center: Subspace,
    pub derived: Subspace,
    pub quotient: QuotientPresentation,
    /// Twist on `A^2` in derived coordinates; `None` when `A^2` is not invariant.
    pub derived_twist: Option<Matrix>,
    /// `tau2[i*q + j]`: derived coordinates of `[T e_i, T e_j]`.
    pub tau2: Vec<Vector>,
    /// `tau3[(i*q + j)*q + k]`: derived coordinates of `[T e_i, T e_j, T e_k]`.
    pub tau3: Vec<Vector>,
}

impl IsoclinismFrame {
    pub fn new(a: &HlyAlgebra) -> Result<IsoclinismFrame, IsoclinismError> {
        let center = subobjects::center(a);
        let derived = subobjects::derived(a);
        let quotient = constructions::quotient(a, &center)?;
        let derived_twist = derived.coordinates_matrix(&a.twist().dot(&derived.embedding()));
        let q = quotient.quotient.dim();
        let reps = quotient.transversal.columns();
        let coords = |v: Vector| derived.coordinates(&v).expect("brackets lie in the derived subalgebra");
        let mut tau2 = Vec::with_capacity(q * q);
        for i in 0..q {
            for j in 0..q {
                tau2.push(coords(a.bin(&reps[i], &reps[j])));
            }
        }
        let mut tau3 = Vec::with_capacity(q * q * q);
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    tau3.push(coords(a.ter(&reps[i], &reps[j], &reps[k])));
                }
            }
        }
        Ok(IsoclinismFrame {
            algebra: a.clone(),
            center,
            derived,
            quotient,
            derived_twist,
            tau2,
            tau3,
        })
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// `dim A/Z(A)`
    pub fn q(&self) -> usize {
        self.quotient.quotient.dim()
    }

    /// `dim A^2`
    pub fn d(&self) -> usize {
        self.derived.dim()
    }

    pub fn quotient_twist(&self) -> &Matrix {
        self.quotient.quotient.twist()
    }

    /// Bilinear extension of `tau2` to quotient vectors.
    pub fn delta2(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let q = self.q();
        let mut out = linalg::zero_vector(self.field(), self.d());
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                linalg::axpy(&mut out, &(xi * yj), &self.tau2[i * q + j]);
            }
        }
        out
    }

    /// Trilinear extension of `tau3` to quotient vectors.
    pub fn delta3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let q = self.q();
        let mut out = linalg::zero_vector(self.field(), self.d());
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                    linalg::axpy(&mut out, &(&xy * zk), &self.tau3[(i * q + j) * q + k]);
                }
            }
        }
        out
    }

    /// `d x (q^2 + q^3)` matrix whose columns are all bracket values.
    pub(crate) fn spanning_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = self.tau2.iter().chain(self.tau3.iter()).cloned().collect();
        Matrix::from_columns(self.field(), self.d(), &cols)
    }
}

/// A candidate isoclinism: `theta: A/Z(A) -> B/Z(B)` in quotient coordinates
/// and `beta: A^2 -> B^2` in derived coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoclinismWitness {
    pub theta: Matrix,
    pub beta: Matrix,
}

impl IsoclinismWitness {
    pub fn identity(frame: &IsoclinismFrame) -> IsoclinismWitness {
        IsoclinismWitness {
            theta: Matrix::identity(frame.field(), frame.q()),
            beta: Matrix::identity(frame.field(), frame.d()),
        }
    }

    pub fn inverse(&self) -> Result<IsoclinismWitness, IsoclinismError> {
        let inv = |m: &Matrix, what: &str| {
            m.inverse()
                .map_err(|e| IsoclinismError::Precondition(format!("{what} not invertible: {e}")))
        };
        Ok(IsoclinismWitness {
            theta: inv(&self.theta, "theta")?,
            beta: inv(&self.beta, "beta")?,
        })
    }

    /// `then ∘ self`
    pub fn compose(&self, then: &IsoclinismWitness) -> Result<IsoclinismWitness, IsoclinismError> {
        let shape = |e: linalg::LinalgError| IsoclinismError::Shape(e.to_string());
        Ok(IsoclinismWitness {
            theta: then.theta.mul(&self.theta).map_err(shape)?,
            beta: then.beta.mul(&self.beta).map_err(shape)?,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.theta.field(),
            "theta": self.theta.to_json(),
            "beta": self.beta.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoclinismReport {
    pub theta_invertible: bool,
    pub beta_invertible: bool,
    pub binary_failures: Vec<TupleFailure>,
    pub ternary_failures: Vec<TupleFailure>,
    pub theta_twist_commutes: bool,
    /// False as well when either derived subalgebra is not twist-invariant.
    pub beta_twist_commutes: bool,
}

impl IsoclinismReport {
    pub fn pass(&self) -> bool {
        self.theta_invertible
            && self.beta_invertible
            && self.binary_failures.is_empty()
            && self.ternary_failures.is_empty()
            && self.theta_twist_commutes
            && self.beta_twist_commutes
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass": self.pass(),
            "theta_invertible": self.theta_invertible,
            "beta_invertible": self.beta_invertible,
            "binary_diagram": self.binary_failures.is_empty(),
            "ternary_diagram": self.ternary_failures.is_empty(),
            "binary_failures": self.binary_failures.iter().map(TupleFailure::to_json).collect::<Vec<_>>(),
            "ternary_failures": self.ternary_failures.iter().map(TupleFailure::to_json).collect::<Vec<_>>(),
            "theta_twist_commutes": self.theta_twist_commutes,
            "beta_twist_commutes": self.beta_twist_commutes,
        })
    }
}

const FAILURE_CAP: usize = crate::algebra::DEFAULT_FAILURE_CAP;

pub fn verify_with_frames(
    fa: &IsoclinismFrame,
    fb: &IsoclinismFrame,
    w: &IsoclinismWitness,
) -> Result<IsoclinismReport, IsoclinismError> {
    if fa.field() != fb.field() {
        return Err(IsoclinismError::FieldMismatch(fa.field(), fb.field()));
    }
    let (qa, qb, da, db) = (fa.q(), fb.q(), fa.d(), fb.d());
    if (w.theta.rows(), w.theta.cols()) != (qb, qa) {
        return Err(IsoclinismError::Shape(format!(
            "theta is {}x{}, center quotients have dimensions {qa} and {qb}",
            w.theta.rows(),
            w.theta.cols()
        )));
    }
    if (w.beta.rows(), w.beta.cols()) != (db, da) {
        return Err(IsoclinismError::Shape(format!(
            "beta is {}x{}, derived subalgebras have dimensions {da} and {db}",
            w.beta.rows(),
            w.beta.cols()
        )));
    }
    let th = w.theta.columns();
    let mut binary_failures = Vec::new();
    for i in 0..qa {
        for j in 0..qa {
            let lhs = w.beta.mul_vec(&fa.tau2[i * qa + j]);
            let rhs = fb.delta2(&th[i], &th[j]);
            if lhs != rhs && binary_failures.len() < FAILURE_CAP {
                binary_failures.push(TupleFailure { tuple: vec![i, j], lhs, rhs });
            }
        }
    }
    let mut ternary_failures = Vec::new();
    for i in 0..qa {
        for j in 0..qa {
            for k in 0..qa {
                let lhs = w.beta.mul_vec(&fa.tau3[(i * qa + j) * qa + k]);
                let rhs = fb.delta3(&th[i], &th[j], &th[k]);
                if lhs != rhs && ternary_failures.len() < FAILURE_CAP {
                    ternary_failures.push(TupleFailure { tuple: vec![i, j, k], lhs, rhs });
                }
            }
        }
    }
    let theta_twist_commutes = w.theta.dot(fa.quotient_twist()) == fb.quotient_twist().dot(&w.theta);
    let beta_twist_commutes = match (&fa.derived_twist, &fb.derived_twist) {
        (Some(ta), Some(tb)) => w.beta.dot(ta) == tb.dot(&w.beta),
        _ => false,
    };
    Ok(IsoclinismReport {
        theta_invertible: w.theta.is_invertible(),
        beta_invertible: w.beta.is_invertible(),
        binary_failures,
        ternary_failures,
        theta_twist_commutes,
        beta_twist_commutes,
    })
}

pub fn verify_isoclinism(
    a: &HlyAlgebra,
    b: &HlyAlgebra,
    w: &IsoclinismWitness,
) -> Result<IsoclinismReport, IsoclinismError> {
    verify_with_frames(&IsoclinismFrame::new(a)?, &IsoclinismFrame::new(b)?, w)
}

/// Instance checks of two consequences of a verified witness:
/// (i) `θ(x + Z(A)) = β(x) + Z(B)` for `x` in `A^2`, as the matrix identity
/// `P_B D_B β = θ P_A D_A`;
/// (ii) `β([x, y]) = [β(x), b]` for `x` a derived basis vector, `y` a quotient
/// representative and `b` any representative of `θ(y)`; two representatives
/// are tried when `Z(B)` is nonzero.
pub fn derived_coset_checks(fa: &IsoclinismFrame, fb: &IsoclinismFrame, w: &IsoclinismWitness) -> (bool, bool) {
    let pa = &fa.quotient.projection;
    let pb = &fb.quotient.projection;
    let da = fa.derived.embedding();
    let db = fb.derived.embedding();
    let first = pb.dot(&db).dot(&w.beta) == w.theta.dot(pa).dot(&da);

    let a = &fa.algebra;
    let b = &fb.algebra;
    let shift = fb.center.basis_vectors().into_iter().next();
    let mut second = true;
    for (c, x) in da.columns().iter().enumerate() {
        let bx = db.mul_vec(&w.beta.column(c));
        for (i, y) in fa.quotient.transversal.columns().iter().enumerate() {
            let xy = fa.derived.coordinates(&a.bin(x, y)).expect("bracket is derived");
            let lhs = db.mul_vec(&w.beta.mul_vec(&xy));
            let rep = fb.quotient.transversal.mul_vec(&w.theta.column(i));
            let mut reps = vec![rep.clone()];
            if let Some(s) = &shift {
                reps.push(linalg::add(&rep, s));
            }
            for r in reps {
                if b.bin(&bx, &r) != lhs {
                    second = false;
                }
            }
        }
    }
    (first, second)
}
