//! Quotients, direct sums, restrictions, factor sets and central extensions.

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{default_basis_names, AlgebraError, AxiomFailure, AxiomReport, AxiomStatus, HlyAlgebra};
use crate::isoclinism::morphism::{is_homomorphism, Morphism, TupleFailure};
use crate::linalg::{self, LinalgError, Matrix, Subspace, SylvesterDiagnostics, Vector};
use crate::scalar::{Field, Scalar};
use crate::subobjects::{self, SubobjectReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("subspace is not a Hom-ideal ({} failing inclusions)", .0.failures.len())]
    NotAnIdeal(Box<SubobjectReport>),
    #[error("subspace is not a subalgebra ({} failing inclusions)", .0.failures.len())]
    NotASubalgebra(Box<SubobjectReport>),
    #[error("the induced twist on the quotient is not invertible although the parent twist is")]
    TwistNotInvertibleOnQuotient,
    #[error("twist is not invertible")]
    TwistNotInvertible,
    #[error("no twist-invariant complement of the center exists")]
    NoInvariantComplement(Box<SylvesterDiagnostics>),
    #[error("factor-set value at {tuple:?} is not central")]
    ValueOutsideCenter { tuple: Vec<usize> },
    #[error("reconstruction map is not an isomorphism: {0}")]
    ReconstructionFailed(String, Option<TupleFailure>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("singular map: {0}")]
    Singular(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `A/I` together with the coordinate maps used to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub quotient: HlyAlgebra,
    pub ideal: Subspace,
    /// `n x q`; column `i` represents the `i`-th quotient basis vector.
    pub transversal: Matrix,
    /// `q x n`; kills the ideal and inverts the transversal.
    pub projection: Matrix,
}

impl QuotientPresentation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ideal": self.ideal.to_json(),
            "transversal": self.transversal.to_json(),
            "projection": self.projection.to_json(),
        })
    }
}

/// Projection onto `complement` along `sub` with respect to `[sub | complement]`,
/// returned as a `dim(complement) x n` matrix.
fn projection_along(sub: &Subspace, complement: &Subspace) -> Matrix {
    let n = sub.ambient_dim();
    let k = sub.dim();
    let basis = sub.embedding().hstack(&complement.embedding());
    let inv = basis.inverse().expect("subspace and complement span the carrier");
    inv.slice(k..n, 0..n)
}

/// Structure constants of the algebra carried by the columns of `t`, read back
/// through `p` (`p t = id`).
fn induced(a: &HlyAlgebra, t: &Matrix, p: &Matrix, names: Vec<String>) -> Result<HlyAlgebra, AlgebraError> {
    let q = t.cols();
    let reps = t.columns();
    let mut binary = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            binary.push(p.mul_vec(&a.bin(&reps[i], &reps[j])));
        }
    }
    let ternary: Vec<Vector> = (0..q * q * q)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (q * q), (idx / q) % q, idx % q);
            p.mul_vec(&a.ter(&reps[i], &reps[j], &reps[k]))
        })
        .collect();
    let twist = p.dot(a.twist()).dot(t);
    HlyAlgebra::new(a.field(), names, binary, ternary, twist)
}

fn pivot_names(a: &HlyAlgebra, s: &Subspace, suffix: &str) -> Vec<String> {
    s.pivots()
        .iter()
        .map(|&p| format!("{}{suffix}", a.basis_names()[p]))
        .collect()
}

pub fn quotient(a: &HlyAlgebra, ideal: &Subspace) -> Result<QuotientPresentation, ConstructionError> {
    let report = subobjects::is_hom_ideal(a, ideal)
        .map_err(|e| ConstructionError::Dimension(e.to_string()))?;
    if !report.pass {
        return Err(ConstructionError::NotAnIdeal(Box::new(report)));
    }
    let n = a.dim();
    let complement = ideal.complement(&Subspace::full(a.field(), n))?;
    let transversal = complement.embedding();
    let projection = projection_along(ideal, &complement);
    let quotient = induced(a, &transversal, &projection, pivot_names(a, &complement, "+I"))?;
    if a.is_regular() && !quotient.is_regular() {
        return Err(ConstructionError::TwistNotInvertibleOnQuotient);
    }
    Ok(QuotientPresentation {
        quotient,
        ideal: ideal.clone(),
        transversal,
        projection,
    })
}

/// The subalgebra `s` as an algebra in its own RREF basis.
pub fn restrict(a: &HlyAlgebra, s: &Subspace) -> Result<HlyAlgebra, ConstructionError> {
    let report = subobjects::is_subalgebra(a, s).map_err(|e| ConstructionError::Dimension(e.to_string()))?;
    if !report.pass {
        return Err(ConstructionError::NotASubalgebra(Box::new(report)));
    }
    let emb = s.embedding();
    let reps = emb.columns();
    let d = s.dim();
    let coords = |v: Vector| s.coordinates(&v).expect("closure verified");
    let mut binary = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            binary.push(coords(a.bin(&reps[i], &reps[j])));
        }
    }
    let mut ternary = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                ternary.push(coords(a.ter(&reps[i], &reps[j], &reps[k])));
            }
        }
    }
    let twist = s.coordinates_matrix(&a.twist().dot(&emb)).expect("closure verified");
    Ok(HlyAlgebra::new(a.field(), default_basis_names(d), binary, ternary, twist)?)
}

pub fn direct_sum(a: &HlyAlgebra, b: &HlyAlgebra) -> Result<HlyAlgebra, ConstructionError> {
    if a.field() != b.field() {
        return Err(ConstructionError::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let zero = linalg::zero_vector(field, n);
    let lift_a = |v: &Vector| {
        let mut out = zero.clone();
        out[..na].clone_from_slice(v);
        out
    };
    let lift_b = |v: &Vector| {
        let mut out = zero.clone();
        out[na..].clone_from_slice(v);
        out
    };
    let block = |i: usize| if i < na { (0, i) } else { (1, i - na) };
    let mut binary = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            binary.push(match (block(i), block(j)) {
                ((0, x), (0, y)) => lift_a(a.binary_basis(x, y)),
                ((1, x), (1, y)) => lift_b(b.binary_basis(x, y)),
                _ => zero.clone(),
            });
        }
    }
    let mut ternary = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                ternary.push(match (block(i), block(j), block(k)) {
                    ((0, x), (0, y), (0, z)) => lift_a(a.ternary_basis(x, y, z)),
                    ((1, x), (1, y), (1, z)) => lift_b(b.ternary_basis(x, y, z)),
                    _ => zero.clone(),
                });
            }
        }
    }
    let mut names: Vec<String> = a.basis_names().iter().chain(b.basis_names()).cloned().collect();
    let mut seen = std::collections::HashSet::new();
    if !names.iter().all(|s| seen.insert(s.clone())) {
        names = default_basis_names(n);
    }
    Ok(HlyAlgebra::new(field, names, binary, ternary, a.twist().block_diag(b.twist()))?)
}

/// Abelian algebra of dimension `k` with identity twist.
pub fn abelian(field: Field, k: usize) -> HlyAlgebra {
    HlyAlgebra::abelian(field, k, Matrix::identity(field, k)).expect("identity twist")
}

/// Center-valued tables `pi2`, `pi3` on a `q`-dimensional quotient, with values
/// in `z` center coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    pub field: Field,
    pub q: usize,
    pub z: usize,
    pi2: Vec<Vector>,
    pi3: Vec<Vector>,
    /// `n x z` map from center coordinates into a concrete carrier, when known.
    pub center_embedding: Option<Matrix>,
}

impl FactorSet {
    pub fn zero(field: Field, q: usize, z: usize) -> FactorSet {
        let v = linalg::zero_vector(field, z);
        FactorSet {
            field,
            q,
            z,
            pi2: vec![v.clone(); q * q],
            pi3: vec![v; q * q * q],
            center_embedding: None,
        }
    }

    /// Dense tables, stored as given; skew-symmetry is left to validation.
    pub fn from_tables(field: Field, q: usize, z: usize, pi2: Vec<Vector>, pi3: Vec<Vector>) -> Result<FactorSet, ConstructionError> {
        if pi2.len() != q * q || pi3.len() != q * q * q {
            return Err(ConstructionError::Dimension("factor-set tables have the wrong size".into()));
        }
        if pi2.iter().chain(pi3.iter()).any(|v| v.len() != z) {
            return Err(ConstructionError::Dimension(format!("factor-set values must have length {z}")));
        }
        Ok(FactorSet {
            field,
            q,
            z,
            pi2,
            pi3,
            center_embedding: None,
        })
    }

    pub fn pi2(&self, i: usize, j: usize) -> &Vector {
        &self.pi2[i * self.q + j]
    }

    pub fn pi3(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.pi3[(i * self.q + j) * self.q + k]
    }

    pub fn set_pi2(&mut self, i: usize, j: usize, v: Vector) {
        self.pi2[i * self.q + j] = v;
    }

    pub fn set_pi3(&mut self, i: usize, j: usize, k: usize, v: Vector) {
        self.pi3[(i * self.q + j) * self.q + k] = v;
    }

    /// Bilinear extension of `pi2`.
    pub fn eval2(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.z);
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                linalg::axpy(&mut out, &(xi * yj), self.pi2(i, j));
            }
        }
        out
    }

    /// Trilinear extension of `pi3`.
    pub fn eval3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.z);
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                    linalg::axpy(&mut out, &(&xy * zk), self.pi3(i, j, k));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.pi2.iter().chain(self.pi3.iter()).all(|v| linalg::is_zero_vector(v))
    }
}

/// The data a central extension is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    /// Twist restricted to the center, in center coordinates.
    pub z_twist: Matrix,
    pub quotient: HlyAlgebra,
    pub factor_set: FactorSet,
}

/// A section `A/Z(A) -> A` landing in a twist-invariant complement of the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionMap {
    pub source: QuotientPresentation,
    pub complement: Subspace,
    /// `n x q`
    pub lift: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub center: Subspace,
    pub data: ExtensionData,
    pub section: SectionMap,
}

/// The factor set of `a` relative to a twist-commuting section.
pub fn extract_factor_set(a: &HlyAlgebra) -> Result<Extraction, ConstructionError> {
    let report = a.check_axioms();
    if !report.all_pass() {
        return Err(ConstructionError::Precondition(format!(
            "algebra fails {}",
            report.failing().join(", ")
        )));
    }
    let field = a.field();
    let n = a.dim();
    let center = subobjects::center(a);
    let qp = quotient(a, &center)?;
    let full = Subspace::full(field, n);
    let (complement, diag) = center.invariant_complement_diagnosed(&full, a.twist())?;
    let complement = complement.ok_or_else(|| ConstructionError::NoInvariantComplement(Box::new(diag)))?;
    let e = center.embedding();
    let z = center.dim();
    let q = qp.quotient.dim();
    // the complement component of each representative
    let along = projection_along(&center, &complement);
    let lift = complement.embedding().dot(&along).dot(&qp.transversal);
    let reps = lift.columns();
    let qbar = &qp.quotient;

    let central = |v: Vector, tuple: Vec<usize>| {
        center
            .coordinates(&v)
            .ok_or(ConstructionError::ValueOutsideCenter { tuple })
    };
    let mut pi2 = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            let v = linalg::sub(&a.bin(&reps[i], &reps[j]), &lift.mul_vec(qbar.binary_basis(i, j)));
            pi2.push(central(v, vec![i, j])?);
        }
    }
    let pi3: Result<Vec<Vector>, ConstructionError> = (0..q * q * q)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (q * q), (idx / q) % q, idx % q);
            let v = linalg::sub(
                &a.ter(&reps[i], &reps[j], &reps[k]),
                &lift.mul_vec(qbar.ternary_basis(i, j, k)),
            );
            central(v, vec![i, j, k])
        })
        .collect();
    let mut factor_set = FactorSet::from_tables(field, q, z, pi2, pi3?)?;
    factor_set.center_embedding = Some(e.clone());
    let z_twist = center_twist(&center, a.twist())?;
    Ok(Extraction {
        center,
        data: ExtensionData {
            z_twist,
            quotient: qp.quotient.clone(),
            factor_set,
        },
        section: SectionMap {
            source: qp,
            complement,
            lift,
        },
    })
}

fn center_twist(center: &Subspace, twist: &Matrix) -> Result<Matrix, ConstructionError> {
    let e = center.embedding();
    e.solve(&twist.dot(&e))?
        .ok_or_else(|| ConstructionError::Precondition("center is not twist-invariant".into()))
}

/// Pairs a supplied factor set with the quotient `A/Z(A)` and the center twist
/// of `a`. No section is needed, so no invariant complement is required.
pub fn extension_data_for(a: &HlyAlgebra, factor_set: FactorSet) -> Result<ExtensionData, ConstructionError> {
    if factor_set.field != a.field() {
        return Err(ConstructionError::FieldMismatch(factor_set.field, a.field()));
    }
    let center = subobjects::center(a);
    let qp = quotient(a, &center)?;
    if factor_set.q != qp.quotient.dim() || factor_set.z != center.dim() {
        return Err(ConstructionError::Dimension(format!(
            "factor set has q = {}, z = {}; the algebra has q = {}, z = {}",
            factor_set.q,
            factor_set.z,
            qp.quotient.dim(),
            center.dim()
        )));
    }
    Ok(ExtensionData {
        z_twist: center_twist(&center, a.twist())?,
        quotient: qp.quotient,
        factor_set,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    pub algebra: HlyAlgebra,
    pub report: AxiomReport,
    pub center: Subspace,
    /// `{(a, 0)}`: the center coordinates block.
    pub expected_center: Subspace,
}

impl CentralExtension {
    pub fn center_matches(&self) -> bool {
        self.center == self.expected_center
    }
}

/// `Ω` on center coordinates followed by quotient coordinates, with
/// `[(a,x),(b,y)] = (pi2(x,y), [x,y])` and the ternary analogue.
pub fn central_extension(data: &ExtensionData) -> Result<CentralExtension, ConstructionError> {
    let ExtensionData { z_twist, quotient: qbar, factor_set: pi } = data;
    let field = qbar.field();
    if pi.field != field || z_twist.field() != field {
        return Err(ConstructionError::FieldMismatch(pi.field, field));
    }
    let (z, q) = (pi.z, pi.q);
    if q != qbar.dim() || z_twist.rows() != z || z_twist.cols() != z {
        return Err(ConstructionError::Dimension(format!(
            "factor set is {q}x{z}, quotient has dimension {}, center twist is {}x{}",
            qbar.dim(),
            z_twist.rows(),
            z_twist.cols()
        )));
    }
    if !z_twist.is_invertible() {
        return Err(ConstructionError::TwistNotInvertible);
    }
    let n = z + q;
    let zero = linalg::zero_vector(field, n);
    let pair = |c: &Vector, x: &Vector| {
        let mut out = c.clone();
        out.extend(x.iter().cloned());
        out
    };
    let mut binary = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            binary.push(if i < z || j < z {
                zero.clone()
            } else {
                pair(pi.pi2(i - z, j - z), qbar.binary_basis(i - z, j - z))
            });
        }
    }
    let mut ternary = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                ternary.push(if i < z || j < z || k < z {
                    zero.clone()
                } else {
                    pair(pi.pi3(i - z, j - z, k - z), qbar.ternary_basis(i - z, j - z, k - z))
                });
            }
        }
    }
    let mut names: Vec<String> = (1..=z).map(|i| format!("c{i}")).collect();
    names.extend(qbar.basis_names().iter().cloned());
    let algebra = HlyAlgebra::new(field, names, binary, ternary, z_twist.block_diag(qbar.twist()))?;
    let report = algebra.check_axioms();
    let center = subobjects::center(&algebra);
    let expected: Vec<Vector> = (0..z).map(|i| linalg::unit_vector(field, n, i)).collect();
    Ok(CentralExtension {
        algebra,
        report,
        center,
        expected_center: Subspace::from_vectors(field, n, &expected),
    })
}

/// `φ(a, x) = a + lift(x)` as a map `Ω -> A`, verified as an isomorphism.
pub fn reconstruct_iso(a: &HlyAlgebra, ext: &Extraction, omega: &HlyAlgebra) -> Result<Morphism, ConstructionError> {
    let e = ext
        .data
        .factor_set
        .center_embedding
        .clone()
        .unwrap_or_else(|| ext.center.embedding());
    let phi = e.hstack(&ext.section.lift);
    if phi.rows() != a.dim() || phi.cols() != omega.dim() {
        return Err(ConstructionError::Dimension("extension and algebra dimensions differ".into()));
    }
    let m = Morphism::new(phi).verify(omega, a);
    let report = m.report().expect("just verified");
    if !m.is_isomorphism() {
        let why = if !report.invertible {
            "not invertible"
        } else if !report.twist_commutes {
            "does not commute with the twists"
        } else {
            "bracket mismatch"
        };
        return Err(ConstructionError::ReconstructionFailed(why.into(), report.first_failure().cloned()));
    }
    Ok(m)
}

/// `pi2(x,y) = β⁻¹ ω2(θx, θy)` and likewise for `pi3`.
pub fn pull_back_factor_set(omega: &FactorSet, theta: &Matrix, beta: &Matrix) -> Result<FactorSet, ConstructionError> {
    let q = omega.q;
    if theta.rows() != q || theta.cols() != q || beta.rows() != omega.z || beta.cols() != omega.z {
        return Err(ConstructionError::Dimension("theta must be q x q and beta z x z".into()));
    }
    if !theta.is_invertible() {
        return Err(ConstructionError::Singular("theta".into()));
    }
    let binv = beta.inverse().map_err(|_| ConstructionError::Singular("beta".into()))?;
    let cols = theta.columns();
    let mut pi2 = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            pi2.push(binv.mul_vec(&omega.eval2(&cols[i], &cols[j])));
        }
    }
    let mut pi3 = Vec::with_capacity(q * q * q);
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                pi3.push(binv.mul_vec(&omega.eval3(&cols[i], &cols[j], &cols[k])));
            }
        }
    }
    FactorSet::from_tables(omega.field, q, omega.z, pi2, pi3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSetReport {
    pub f1: AxiomStatus,
    pub f2: AxiomStatus,
    pub f3: AxiomStatus,
    pub multiplicative: AxiomStatus,
    /// Axiom sweep of the extension built from the factor set, standing in for
    /// the higher compatibility conditions; `None` when it could not be built.
    pub extension: Option<AxiomReport>,
    pub extension_error: Option<String>,
}

impl FactorSetReport {
    pub fn pass(&self) -> bool {
        self.f1.pass && self.f2.pass && self.f3.pass && self.extension.as_ref().is_some_and(AxiomReport::is_hlya)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let status = |s: &AxiomStatus| {
            serde_json::json!({
                "name": s.name,
                "pass": s.pass,
                "tuples_checked": s.tuples_checked,
                "failure_count": s.failure_count,
                "failures": s.failures.iter().map(|f| serde_json::json!({
                    "tuple": f.tuple,
                    "lhs": f.lhs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                    "rhs": f.rhs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })
        };
        serde_json::json!({
            "pass": self.pass(),
            "f1": status(&self.f1),
            "f2": status(&self.f2),
            "f3": status(&self.f3),
            "multiplicative": status(&self.multiplicative),
            "extension_axioms": self.extension.as_ref().map(AxiomReport::to_json),
            "extension_error": self.extension_error,
        })
    }
}

struct StatusBuilder {
    name: &'static str,
    checked: usize,
    count: usize,
    failures: Vec<AxiomFailure>,
}

impl StatusBuilder {
    fn new(name: &'static str) -> Self {
        StatusBuilder {
            name,
            checked: 0,
            count: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, tuple: Vec<usize>, lhs: Vector, rhs: Vector) {
        self.checked += 1;
        if lhs != rhs {
            self.count += 1;
            if self.failures.len() < crate::algebra::DEFAULT_FAILURE_CAP {
                self.failures.push(AxiomFailure { tuple, lhs, rhs });
            }
        }
    }

    fn finish(self) -> AxiomStatus {
        AxiomStatus {
            name: self.name.into(),
            pass: self.count == 0,
            tuples_checked: self.checked,
            failure_count: self.count,
            failures: self.failures,
            detail: None,
        }
    }
}

/// Literal basis-tuple checks of the skew, Jacobi-type and ternary conditions
/// plus twist compatibility; the remaining conditions are checked by building
/// the extension and sweeping its axioms.
pub fn validate_factor_set(data: &ExtensionData) -> FactorSetReport {
    let ExtensionData { z_twist, quotient: qbar, factor_set: pi } = data;
    let q = pi.q;
    let field = pi.field;
    let zero = linalg::zero_vector(field, pi.z);
    let abar: Vec<Vector> = qbar.twist().columns();

    let mut f1 = StatusBuilder::new("f1_skew");
    for i in 0..q {
        for j in 0..q {
            f1.check(vec![i, j], pi.pi2(i, j).clone(), linalg::neg(pi.pi2(j, i)));
            for k in 0..q {
                f1.check(vec![i, j, k], pi.pi3(i, j, k).clone(), linalg::neg(pi.pi3(j, i, k)));
            }
        }
    }

    let mut f2 = StatusBuilder::new("f2_jacobi");
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                let mut lhs = zero.clone();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    linalg::add_assign(&mut lhs, &pi.eval2(qbar.binary_basis(x, y), &abar[z]));
                    linalg::add_assign(&mut lhs, pi.pi3(x, y, z));
                }
                f2.check(vec![i, j, k], lhs, zero.clone());
            }
        }
    }

    let mut f3 = StatusBuilder::new("f3_ternary");
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                for t in 0..q {
                    let mut lhs = zero.clone();
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        linalg::add_assign(&mut lhs, &pi.eval3(qbar.binary_basis(x, y), &abar[z], &abar[t]));
                    }
                    f3.check(vec![i, j, k, t], lhs, zero.clone());
                }
            }
        }
    }

    let mut mult = StatusBuilder::new("multiplicative");
    if z_twist.rows() == pi.z && z_twist.cols() == pi.z && qbar.dim() == q {
        for i in 0..q {
            for j in 0..q {
                mult.check(vec![i, j], pi.eval2(&abar[i], &abar[j]), z_twist.mul_vec(pi.pi2(i, j)));
                for k in 0..q {
                    mult.check(
                        vec![i, j, k],
                        pi.eval3(&abar[i], &abar[j], &abar[k]),
                        z_twist.mul_vec(pi.pi3(i, j, k)),
                    );
                }
            }
        }
    }

    let (extension, extension_error) = match central_extension(data) {
        Ok(ext) => (Some(ext.report), None),
        Err(e) => (None, Some(e.to_string())),
    };
    FactorSetReport {
        f1: f1.finish(),
        f2: f2.finish(),
        f3: f3.finish(),
        multiplicative: mult.finish(),
        extension,
        extension_error,
    }
}

/// Outcome of [`twisted_iso_from_compat`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatOutcome {
    /// The compatibility equations hold and `λ` verified as an isomorphism.
    Verified(Morphism),
    /// The first equation that failed, named `"binary"`, `"ternary"` or
    /// `"certification"`.
    Failed { equation: &'static str, failure: Option<TupleFailure> },
}

/// Checks `ξ pi2(x,y) + ν[x,y] = ω2(ηx,ηy)` and its ternary analogue and,
/// when they hold, certifies `λ = [[ξ, ν], [0, η]]` as an isomorphism between
/// the two extensions.
pub fn twisted_iso_from_compat(
    xi: &Matrix,
    eta: &Matrix,
    nu: &Matrix,
    source: &ExtensionData,
    target: &ExtensionData,
) -> Result<CompatOutcome, ConstructionError> {
    let pi = &source.factor_set;
    let om = &target.factor_set;
    let (q, z) = (pi.q, pi.z);
    if om.q != q || om.z != z {
        return Err(ConstructionError::Dimension("factor sets have different shapes".into()));
    }
    if (xi.rows(), xi.cols()) != (z, z) || (eta.rows(), eta.cols()) != (q, q) || (nu.rows(), nu.cols()) != (z, q) {
        return Err(ConstructionError::Dimension("xi must be z x z, eta q x q, nu z x q".into()));
    }
    if !xi.is_invertible() {
        return Err(ConstructionError::Singular("xi".into()));
    }
    if !eta.is_invertible() {
        return Err(ConstructionError::Singular("eta".into()));
    }
    if nu.dot(source.quotient.twist()) != target.z_twist.dot(nu) {
        return Err(ConstructionError::Precondition("nu does not commute with the twists".into()));
    }
    let qa = &source.quotient;
    let etas = eta.columns();
    for i in 0..q {
        for j in 0..q {
            let lhs = linalg::add(&xi.mul_vec(pi.pi2(i, j)), &nu.mul_vec(qa.binary_basis(i, j)));
            let rhs = om.eval2(&etas[i], &etas[j]);
            if lhs != rhs {
                return Ok(CompatOutcome::Failed {
                    equation: "binary",
                    failure: Some(TupleFailure { tuple: vec![i, j], lhs, rhs }),
                });
            }
        }
    }
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                let lhs = linalg::add(&xi.mul_vec(pi.pi3(i, j, k)), &nu.mul_vec(qa.ternary_basis(i, j, k)));
                let rhs = om.eval3(&etas[i], &etas[j], &etas[k]);
                if lhs != rhs {
                    return Ok(CompatOutcome::Failed {
                        equation: "ternary",
                        failure: Some(TupleFailure { tuple: vec![i, j, k], lhs, rhs }),
                    });
                }
            }
        }
    }
    let lambda = xi
        .hstack(nu)
        .vstack(&Matrix::zeros(xi.field(), q, z).hstack(eta));
    let omega_src = central_extension(source)?.algebra;
    let omega_tgt = central_extension(target)?.algebra;
    let report = is_homomorphism(&lambda, &omega_src, &omega_tgt);
    if !report.is_isomorphism() {
        return Ok(CompatOutcome::Failed {
            equation: "certification",
            failure: report.first_failure().cloned(),
        });
    }
    Ok(CompatOutcome::Verified(Morphism::new(lambda).verify(&omega_src, &omega_tgt)))
}
