//! Centers, derived subalgebras and closure predicates.

use thiserror::Error;

use crate::algebra::HlyAlgebra;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubobjectError {
    #[error("subspace lives in dimension {sub}, algebra has dimension {alg}")]
    AmbientMismatch { sub: usize, alg: usize },
    #[error("subspace and algebra use different fields")]
    FieldMismatch,
}

/// One product that left the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionFailure {
    /// Which inclusion was tested, e.g. `"[S,A,A]"`.
    pub inclusion: &'static str,
    /// Basis indices: subspace basis rows are `s<k>`, algebra basis vectors `e<k>`.
    pub generators: Vec<String>,
    pub product: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubobjectReport {
    pub subject: Subspace,
    pub predicate: &'static str,
    pub pass: bool,
    pub failures: Vec<InclusionFailure>,
}

impl SubobjectReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "predicate": self.predicate,
            "subject": self.subject.to_json(),
            "pass": self.pass,
            "failures": self.failures.iter().map(|f| serde_json::json!({
                "inclusion": f.inclusion,
                "generators": f.generators,
                "product": f.product.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `Z(A)`: kernel of `x -> [x,e_j]`, `x -> [x,e_j,e_k]` and `x -> [e_j,e_k,x]`.
pub fn center(a: &HlyAlgebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    // Each map contributes n rows; column c of a block is the map applied to e_c.
    let mut rows: Vec<Vector> = Vec::new();
    let mut push_block = |image: &dyn Fn(usize) -> Vector| {
        let cols: Vec<Vector> = (0..n).map(image).collect();
        for r in 0..n {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    };
    for j in 0..n {
        push_block(&|c| a.binary_basis(c, j).clone());
    }
    for j in 0..n {
        for k in 0..n {
            push_block(&|c| a.ternary_basis(c, j, k).clone());
            push_block(&|c| a.ternary_basis(j, k, c).clone());
        }
    }
    let m = Matrix::from_rows(f, rows, n).expect("rows have length n");
    m.kernel_basis()
}

/// `A^2 = [A,A] + [A,A,A]`.
pub fn derived(a: &HlyAlgebra) -> Subspace {
    let n = a.dim();
    let mut vectors: Vec<Vector> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            vectors.push(a.binary_basis(i, j).clone());
            for k in 0..n {
                vectors.push(a.ternary_basis(i, j, k).clone());
            }
        }
    }
    Subspace::from_vectors(a.field(), n, &vectors)
}

fn check(a: &HlyAlgebra, s: &Subspace) -> Result<(), SubobjectError> {
    if s.ambient_dim() != a.dim() {
        return Err(SubobjectError::AmbientMismatch {
            sub: s.ambient_dim(),
            alg: a.dim(),
        });
    }
    if s.field() != a.field() {
        return Err(SubobjectError::FieldMismatch);
    }
    Ok(())
}

struct Collector<'a> {
    s: &'a Subspace,
    failures: Vec<InclusionFailure>,
}

impl Collector<'_> {
    fn test(&mut self, inclusion: &'static str, generators: Vec<String>, product: Vector) {
        if !self.s.contains_vector(&product) {
            self.failures.push(InclusionFailure {
                inclusion,
                generators,
                product,
            });
        }
    }
}

fn closure_checks(a: &HlyAlgebra, s: &Subspace, c: &mut Collector) {
    let sb = s.basis_vectors();
    for (p, x) in sb.iter().enumerate() {
        c.test("alpha(S)", vec![format!("s{p}")], a.twist().mul_vec(x));
    }
    for (p, x) in sb.iter().enumerate() {
        for (q, y) in sb.iter().enumerate() {
            c.test("[S,S]", vec![format!("s{p}"), format!("s{q}")], a.bin(x, y));
            for (r, z) in sb.iter().enumerate() {
                c.test(
                    "[S,S,S]",
                    vec![format!("s{p}"), format!("s{q}"), format!("s{r}")],
                    a.ter(x, y, z),
                );
            }
        }
    }
}

pub fn is_subalgebra(a: &HlyAlgebra, s: &Subspace) -> Result<SubobjectReport, SubobjectError> {
    check(a, s)?;
    let mut c = Collector { s, failures: Vec::new() };
    closure_checks(a, s, &mut c);
    Ok(SubobjectReport {
        subject: s.clone(),
        predicate: "subalgebra",
        pass: c.failures.is_empty(),
        failures: c.failures,
    })
}

pub fn is_hom_ideal(a: &HlyAlgebra, s: &Subspace) -> Result<SubobjectReport, SubobjectError> {
    check(a, s)?;
    let mut c = Collector { s, failures: Vec::new() };
    closure_checks(a, s, &mut c);
    let n = a.dim();
    let units: Vec<Vector> = (0..n).map(|i| linalg::unit_vector(a.field(), n, i)).collect();
    for (p, x) in s.basis_vectors().iter().enumerate() {
        for (j, ej) in units.iter().enumerate() {
            c.test("[S,A]", vec![format!("s{p}"), format!("e{j}")], a.bin(x, ej));
            for (k, ek) in units.iter().enumerate() {
                let g = vec![format!("s{p}"), format!("e{j}"), format!("e{k}")];
                c.test("[S,A,A]", g, a.ter(x, ej, ek));
                let g = vec![format!("e{j}"), format!("e{k}"), format!("s{p}")];
                c.test("[A,A,S]", g, a.ter(ej, ek, x));
            }
        }
    }
    Ok(SubobjectReport {
        subject: s.clone(),
        predicate: "hom_ideal",
        pass: c.failures.is_empty(),
        failures: c.failures,
    })
}

/// `Z(A) ⊆ A^2`.
pub fn is_stem(a: &HlyAlgebra) -> bool {
    derived(a).contains(&center(a)).expect("same ambient")
}
