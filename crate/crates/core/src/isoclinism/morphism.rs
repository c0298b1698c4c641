use crate::algebra::{HlyAlgebra, DEFAULT_FAILURE_CAP};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// A bracket equation that failed on a basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleFailure {
    pub tuple: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

impl TupleFailure {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tuple": self.tuple,
            "lhs": self.lhs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "rhs": self.rhs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub binary_failures: Vec<TupleFailure>,
    pub ternary_failures: Vec<TupleFailure>,
    pub twist_commutes: bool,
    pub invertible: bool,
}

impl HomReport {
    pub fn is_homomorphism(&self) -> bool {
        self.binary_failures.is_empty() && self.ternary_failures.is_empty() && self.twist_commutes
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_homomorphism() && self.invertible
    }

    /// First failing bracket tuple, binary before ternary.
    pub fn first_failure(&self) -> Option<&TupleFailure> {
        self.binary_failures.first().or(self.ternary_failures.first())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "homomorphism": self.is_homomorphism(),
            "isomorphism": self.is_isomorphism(),
            "twist_commutes": self.twist_commutes,
            "invertible": self.invertible,
            "binary_failures": self.binary_failures.iter().map(TupleFailure::to_json).collect::<Vec<_>>(),
            "ternary_failures": self.ternary_failures.iter().map(TupleFailure::to_json).collect::<Vec<_>>(),
        })
    }
}

/// A linear map between two algebras' carriers; the flags are filled in by
/// [`Morphism::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Matrix,
    report: Option<HomReport>,
}

impl Morphism {
    pub fn new(matrix: Matrix) -> Morphism {
        Morphism {
            source_dim: matrix.cols(),
            target_dim: matrix.rows(),
            matrix,
            report: None,
        }
    }

    /// Checks the map against `source` and `target` and caches the outcome.
    pub fn verify(mut self, source: &HlyAlgebra, target: &HlyAlgebra) -> Morphism {
        self.report = Some(is_homomorphism(&self.matrix, source, target));
        self
    }

    pub fn report(&self) -> Option<&HomReport> {
        self.report.as_ref()
    }

    pub fn is_homomorphism(&self) -> bool {
        self.report.as_ref().is_some_and(HomReport::is_homomorphism)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.report.as_ref().is_some_and(HomReport::is_isomorphism)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "matrix": self.matrix.to_json(),
            "verification": self.report.as_ref().map(HomReport::to_json),
        })
    }
}

/// Basis-tuple check of `f([x,y]) = [fx,fy]`, `f([x,y,z]) = [fx,fy,fz]` and
/// `f∘α_A = α_B∘f`.
///
/// # Panics
/// When `f` is not `dim B x dim A`.
pub fn is_homomorphism(f: &Matrix, a: &HlyAlgebra, b: &HlyAlgebra) -> HomReport {
    assert_eq!((f.rows(), f.cols()), (b.dim(), a.dim()), "morphism shape");
    let n = a.dim();
    let images: Vec<Vector> = f.columns();
    let mut binary_failures = Vec::new();
    let mut ternary_failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.mul_vec(a.binary_basis(i, j));
            let rhs = b.bin(&images[i], &images[j]);
            if lhs != rhs && binary_failures.len() < DEFAULT_FAILURE_CAP {
                binary_failures.push(TupleFailure { tuple: vec![i, j], lhs, rhs });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = f.mul_vec(a.ternary_basis(i, j, k));
                let rhs = b.ter(&images[i], &images[j], &images[k]);
                if lhs != rhs && ternary_failures.len() < DEFAULT_FAILURE_CAP {
                    ternary_failures.push(TupleFailure { tuple: vec![i, j, k], lhs, rhs });
                }
            }
        }
    }
    let twist_commutes = f.dot(a.twist()) == b.twist().dot(f);
    HomReport {
        binary_failures,
        ternary_failures,
        twist_commutes,
        invertible: f.is_invertible(),
    }
}
