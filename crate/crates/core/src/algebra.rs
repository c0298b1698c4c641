//! The structure-constant representation of an HLYA and its axiom checker.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// Failures kept per identity in a report unless the caller asks otherwise.
pub const DEFAULT_FAILURE_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("binary bracket is not skew at ({i}, {j})")]
    BinaryNotSkew { i: usize, j: usize },
    #[error("ternary bracket is not skew in its first two slots at ({i}, {j}, {k})")]
    TernaryNotSkew { i: usize, j: usize, k: usize },
    #[error("diagonal entry {0} listed; brackets vanish when the first two arguments agree")]
    DiagonalEntry(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// A finite-dimensional algebra with a skew binary bracket, a ternary bracket
/// skew in its first two slots, and a linear twist.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HlyAlgebra {
    field: Field,
    dim: usize,
    basis_names: Vec<String>,
    binary: Vec<Vector>,
    ternary: Vec<Vector>,
    twist: Matrix,
}

/// Sparse structure-constant entry `[e_i, e_j] = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vector,
}

/// Sparse structure-constant entry `[e_i, e_j, e_k] = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Vector,
}

pub fn default_basis_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn nonzeros(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero())
}

impl HlyAlgebra {
    /// Builds an algebra from dense tensors, rejecting non-skew input.
    /// `binary[i*n + j]` holds `[e_i, e_j]`; `ternary[(i*n + j)*n + k]` holds `[e_i, e_j, e_k]`.
    pub fn new(
        field: Field,
        basis_names: Vec<String>,
        binary: Vec<Vector>,
        ternary: Vec<Vector>,
        twist: Matrix,
    ) -> Result<HlyAlgebra, AlgebraError> {
        let n = basis_names.len();
        let dim_err = |what: &str| AlgebraError::Dimension(what.to_string());
        if binary.len() != n * n || ternary.len() != n * n * n {
            return Err(dim_err("structure tensors do not match the basis size"));
        }
        if twist.rows() != n || twist.cols() != n {
            return Err(dim_err("twist must be square of the algebra's dimension"));
        }
        if twist.field() != field {
            return Err(AlgebraError::FieldMismatch(twist.field(), field));
        }
        for v in binary.iter().chain(ternary.iter()) {
            if v.len() != n {
                return Err(dim_err("bracket value has the wrong length"));
            }
            if let Some(s) = v.iter().find(|s| s.field() != field) {
                return Err(AlgebraError::FieldMismatch(s.field(), field));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if binary[i * n + j] != linalg::neg(&binary[j * n + i])
                    || (i == j && !linalg::is_zero_vector(&binary[i * n + i]))
                {
                    return Err(AlgebraError::BinaryNotSkew { i, j });
                }
                for k in 0..n {
                    let a = &ternary[(i * n + j) * n + k];
                    let b = &ternary[(j * n + i) * n + k];
                    if *a != linalg::neg(b) || (i == j && !linalg::is_zero_vector(a)) {
                        return Err(AlgebraError::TernaryNotSkew { i, j, k });
                    }
                }
            }
        }
        Ok(HlyAlgebra {
            field,
            dim: n,
            basis_names,
            binary,
            ternary,
            twist,
        })
    }

    /// Builds an algebra from listed entries; each listed entry also fixes its
    /// antisymmetric partner. Entries with `i == j` are rejected, and an entry
    /// that contradicts an earlier one is reported as non-skew.
    pub fn from_sparse(
        field: Field,
        basis_names: Vec<String>,
        binary: &[BinaryEntry],
        ternary: &[TernaryEntry],
        twist: Matrix,
    ) -> Result<HlyAlgebra, AlgebraError> {
        let n = basis_names.len();
        let zero = linalg::zero_vector(field, n);
        let mut b: Vec<Option<Vector>> = vec![None; n * n];
        let mut t: Vec<Option<Vector>> = vec![None; n * n * n];
        let range = |index: usize| {
            if index >= n {
                Err(AlgebraError::IndexOutOfRange { index, dim: n })
            } else {
                Ok(())
            }
        };
        for e in binary {
            range(e.i)?;
            range(e.j)?;
            if e.i == e.j {
                return Err(AlgebraError::DiagonalEntry(format!("binary ({}, {})", e.i, e.j)));
            }
            if e.value.len() != n {
                return Err(AlgebraError::Dimension(format!(
                    "binary ({}, {}) has {} coefficients, expected {n}",
                    e.i,
                    e.j,
                    e.value.len()
                )));
            }
            let neg = linalg::neg(&e.value);
            for (slot, val) in [(e.i * n + e.j, &e.value), (e.j * n + e.i, &neg)] {
                match &b[slot] {
                    Some(prev) if prev != val => return Err(AlgebraError::BinaryNotSkew { i: e.i, j: e.j }),
                    _ => b[slot] = Some(val.clone()),
                }
            }
        }
        for e in ternary {
            range(e.i)?;
            range(e.j)?;
            range(e.k)?;
            if e.i == e.j {
                return Err(AlgebraError::DiagonalEntry(format!("ternary ({}, {}, {})", e.i, e.j, e.k)));
            }
            if e.value.len() != n {
                return Err(AlgebraError::Dimension(format!(
                    "ternary ({}, {}, {}) has {} coefficients, expected {n}",
                    e.i,
                    e.j,
                    e.k,
                    e.value.len()
                )));
            }
            let neg = linalg::neg(&e.value);
            for (slot, val) in [((e.i * n + e.j) * n + e.k, &e.value), ((e.j * n + e.i) * n + e.k, &neg)] {
                match &t[slot] {
                    Some(prev) if prev != val => {
                        return Err(AlgebraError::TernaryNotSkew { i: e.i, j: e.j, k: e.k })
                    }
                    _ => t[slot] = Some(val.clone()),
                }
            }
        }
        HlyAlgebra::new(
            field,
            basis_names,
            b.into_iter().map(|v| v.unwrap_or_else(|| zero.clone())).collect(),
            t.into_iter().map(|v| v.unwrap_or_else(|| zero.clone())).collect(),
            twist,
        )
    }

    pub fn abelian(field: Field, dim: usize, twist: Matrix) -> Result<HlyAlgebra, AlgebraError> {
        HlyAlgebra::from_sparse(field, default_basis_names(dim), &[], &[], twist)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn twist(&self) -> &Matrix {
        &self.twist
    }

    /// `[e_i, e_j]`
    pub fn binary_basis(&self, i: usize, j: usize) -> &Vector {
        &self.binary[i * self.dim + j]
    }

    /// `[e_i, e_j, e_k]`
    pub fn ternary_basis(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.ternary[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn binary_entries(&self) -> Vec<BinaryEntry> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.binary_basis(i, j);
                if !linalg::is_zero_vector(v) {
                    out.push(BinaryEntry { i, j, value: v.clone() });
                }
            }
        }
        out
    }

    /// Nonzero brackets `[e_i, e_j, e_k]` with `i < j`.
    pub fn ternary_entries(&self) -> Vec<TernaryEntry> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = self.ternary_basis(i, j, k);
                    if !linalg::is_zero_vector(v) {
                        out.push(TernaryEntry { i, j, k, value: v.clone() });
                    }
                }
            }
        }
        out
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::Dimension(format!(
                "vector of length {} in an algebra of dimension {}",
                v.len(),
                self.dim
            )));
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field) {
            return Err(AlgebraError::FieldMismatch(s.field(), self.field));
        }
        Ok(())
    }

    pub fn eval_binary(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.bin(x, y))
    }

    pub fn eval_ternary(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        self.check_vector(z)?;
        Ok(self.ter(x, y, z))
    }

    pub fn apply_twist(&self, x: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check_vector(x)?;
        Ok(self.twist.mul_vec(x))
    }

    /// Unchecked bilinear evaluation.
    pub(crate) fn bin(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.dim);
        for (i, xi) in nonzeros(x) {
            for (j, yj) in nonzeros(y) {
                if i != j {
                    linalg::axpy(&mut out, &(xi * yj), self.binary_basis(i, j));
                }
            }
        }
        out
    }

    /// Unchecked trilinear evaluation.
    pub(crate) fn ter(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.field, self.dim);
        for (i, xi) in nonzeros(x) {
            for (j, yj) in nonzeros(y) {
                if i == j {
                    continue;
                }
                let xy = xi * yj;
                for (k, zk) in nonzeros(z) {
                    linalg::axpy(&mut out, &(&xy * zk), self.ternary_basis(i, j, k));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.binary.iter().chain(self.ternary.iter()).all(|v| linalg::is_zero_vector(v))
    }

    pub fn is_regular(&self) -> bool {
        self.twist.is_invertible()
    }

    /// Same algebra with the ternary bracket set to zero.
    pub fn with_ternary_zeroed(&self) -> HlyAlgebra {
        let mut a = self.clone();
        let zero = linalg::zero_vector(self.field, self.dim);
        a.ternary.iter_mut().for_each(|v| *v = zero.clone());
        a
    }

    /// Same algebra with the binary bracket set to zero.
    pub fn with_binary_zeroed(&self) -> HlyAlgebra {
        let mut a = self.clone();
        let zero = linalg::zero_vector(self.field, self.dim);
        a.binary.iter_mut().for_each(|v| *v = zero.clone());
        a
    }

    pub fn with_twist(&self, twist: Matrix) -> Result<HlyAlgebra, AlgebraError> {
        HlyAlgebra::new(
            self.field,
            self.basis_names.clone(),
            self.binary.clone(),
            self.ternary.clone(),
            twist,
        )
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<HlyAlgebra, AlgebraError> {
        if names.len() != self.dim {
            return Err(AlgebraError::Dimension("basis name count differs from dimension".into()));
        }
        self.basis_names = names;
        Ok(self)
    }

    /// The algebra carried over along an invertible `m`, so that `m` becomes an
    /// isomorphism from `self` to the result.
    pub fn transport(&self, m: &Matrix) -> Result<HlyAlgebra, AlgebraError> {
        let inv = m
            .inverse()
            .map_err(|e| AlgebraError::Dimension(format!("transport matrix not invertible: {e}")))?;
        let n = self.dim;
        let pre: Vec<Vector> = inv.columns();
        let mut binary = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                binary.push(m.mul_vec(&self.bin(&pre[i], &pre[j])));
            }
        }
        let mut ternary = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ternary.push(m.mul_vec(&self.ter(&pre[i], &pre[j], &pre[k])));
                }
            }
        }
        let twist = m.dot(&self.twist).dot(&inv);
        HlyAlgebra::new(self.field, self.basis_names.clone(), binary, ternary, twist)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        self.check_axioms_capped(DEFAULT_FAILURE_CAP)
    }

    /// Basis-tuple sweep of every identity. Each identity's failures are listed
    /// in lexicographic tuple order, truncated to `cap`.
    pub fn check_axioms_capped(&self, cap: usize) -> AxiomReport {
        let ev = Evaluator::new(self);
        let mut entries: Vec<AxiomStatus> = Identity::ALL.iter().map(|&id| ev.sweep(id, cap)).collect();
        let regular = match self.twist.inverse() {
            Ok(_) => AxiomStatus {
                name: "regular".into(),
                pass: true,
                tuples_checked: 1,
                failure_count: 0,
                failures: Vec::new(),
                detail: None,
            },
            Err(e) => AxiomStatus {
                name: "regular".into(),
                pass: false,
                tuples_checked: 1,
                failure_count: 1,
                failures: Vec::new(),
                detail: Some(format!("twist is singular: {e}")),
            },
        };
        entries.push(regular);
        AxiomReport {
            dim: self.dim,
            abelian: self.is_abelian(),
            entries,
        }
    }

    /// Left and right sides of `identity` at the given arguments.
    pub fn identity_sides(&self, identity: Identity, args: &[Vector]) -> Result<(Vector, Vector), AlgebraError> {
        if args.len() != identity.arity() {
            return Err(AlgebraError::Dimension(format!(
                "{} takes {} arguments, got {}",
                identity.name(),
                identity.arity(),
                args.len()
            )));
        }
        for a in args {
            self.check_vector(a)?;
        }
        let ev = Evaluator::new(self);
        Ok(ev.sides(identity, args))
    }
}

/// The identities swept by [`HlyAlgebra::check_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    SkewBinary,
    SkewTernary,
    AlternatingBinary,
    AlternatingTernary,
    Hlya2,
    Hlya3,
    Hlya4,
    Hlya5,
    MultiplicativeBinary,
    MultiplicativeTernary,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::SkewBinary,
        Identity::SkewTernary,
        Identity::AlternatingBinary,
        Identity::AlternatingTernary,
        Identity::Hlya2,
        Identity::Hlya3,
        Identity::Hlya4,
        Identity::Hlya5,
        Identity::MultiplicativeBinary,
        Identity::MultiplicativeTernary,
    ];

    pub fn arity(self) -> usize {
        match self {
            Identity::AlternatingBinary => 1,
            Identity::SkewBinary | Identity::AlternatingTernary | Identity::MultiplicativeBinary => 2,
            Identity::SkewTernary | Identity::Hlya2 | Identity::MultiplicativeTernary => 3,
            Identity::Hlya3 | Identity::Hlya4 => 4,
            Identity::Hlya5 => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::SkewBinary => "skew_binary",
            Identity::SkewTernary => "skew_ternary",
            Identity::AlternatingBinary => "alternating_binary",
            Identity::AlternatingTernary => "alternating_ternary",
            Identity::Hlya2 => "hlya2",
            Identity::Hlya3 => "hlya3",
            Identity::Hlya4 => "hlya4",
            Identity::Hlya5 => "hlya5",
            Identity::MultiplicativeBinary => "multiplicative_binary",
            Identity::MultiplicativeTernary => "multiplicative_ternary",
        }
    }

    /// Whether this identity belongs to the defining axioms rather than to
    /// multiplicativity.
    pub fn is_structural(self) -> bool {
        !matches!(self, Identity::MultiplicativeBinary | Identity::MultiplicativeTernary)
    }
}

struct Evaluator<'a> {
    alg: &'a HlyAlgebra,
    twist2: Matrix,
}

impl<'a> Evaluator<'a> {
    fn new(alg: &'a HlyAlgebra) -> Self {
        Evaluator {
            alg,
            twist2: alg.twist.dot(&alg.twist),
        }
    }

    fn a(&self, x: &[Scalar]) -> Vector {
        self.alg.twist.mul_vec(x)
    }

    fn a2(&self, x: &[Scalar]) -> Vector {
        self.twist2.mul_vec(x)
    }

    fn sides(&self, id: Identity, args: &[Vector]) -> (Vector, Vector) {
        let g = self.alg;
        let zero = || linalg::zero_vector(g.field, g.dim);
        match id {
            Identity::SkewBinary => {
                let (x, y) = (&args[0], &args[1]);
                (g.bin(x, y), linalg::neg(&g.bin(y, x)))
            }
            Identity::SkewTernary => {
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                (g.ter(x, y, z), linalg::neg(&g.ter(y, x, z)))
            }
            Identity::AlternatingBinary => (g.bin(&args[0], &args[0]), zero()),
            Identity::AlternatingTernary => (g.ter(&args[0], &args[0], &args[1]), zero()),
            Identity::Hlya2 => {
                let mut lhs = zero();
                for (x, y, z) in cyclic(&args[0], &args[1], &args[2]) {
                    linalg::add_assign(&mut lhs, &g.bin(&g.bin(x, y), &self.a(z)));
                    linalg::add_assign(&mut lhs, &g.ter(x, y, z));
                }
                (lhs, zero())
            }
            Identity::Hlya3 => {
                let (x, y, z, w) = (&args[0], &args[1], &args[2], &args[3]);
                (g.ter(&g.bin(x, y), &self.a(z), &self.a(w)), zero())
            }
            Identity::Hlya4 => {
                let w = &args[3];
                let mut lhs = zero();
                for (x, y, z) in cyclic(&args[0], &args[1], &args[2]) {
                    linalg::add_assign(&mut lhs, &g.ter(&self.a(x), &self.a(y), &g.bin(z, w)));
                }
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                let rhs = linalg::add(
                    &g.bin(&g.ter(x, y, z), &self.a2(w)),
                    &g.bin(&self.a2(z), &g.ter(x, y, w)),
                );
                (lhs, rhs)
            }
            Identity::Hlya5 => {
                let (x, y, z, w, t) = (&args[0], &args[1], &args[2], &args[3], &args[4]);
                let lhs = g.ter(&self.a2(x), &self.a2(y), &g.ter(z, w, t));
                let mut rhs = g.ter(&g.ter(x, y, z), &self.a2(w), &self.a2(t));
                linalg::add_assign(&mut rhs, &g.ter(&self.a2(z), &g.ter(x, y, w), &self.a2(t)));
                linalg::add_assign(&mut rhs, &g.ter(&self.a2(z), &self.a2(w), &g.ter(x, y, t)));
                (lhs, rhs)
            }
            Identity::MultiplicativeBinary => {
                let (x, y) = (&args[0], &args[1]);
                (self.a(&g.bin(x, y)), g.bin(&self.a(x), &self.a(y)))
            }
            Identity::MultiplicativeTernary => {
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                (self.a(&g.ter(x, y, z)), g.ter(&self.a(x), &self.a(y), &self.a(z)))
            }
        }
    }

    /// Runs `id` over all basis tuples, split across threads by first index
    /// and merged in index order.
    fn sweep(&self, id: Identity, cap: usize) -> AxiomStatus {
        let n = self.alg.dim;
        let arity = id.arity();
        let units: Vec<Vector> = (0..n).map(|i| linalg::unit_vector(self.alg.field, n, i)).collect();
        let per_first: Vec<(usize, Vec<AxiomFailure>)> = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut count = 0;
                let mut failures = Vec::new();
                let mut tuple = vec![0; arity];
                tuple[0] = first;
                let rest = n.pow(arity as u32 - 1);
                for code in 0..rest {
                    let mut c = code;
                    for slot in (1..arity).rev() {
                        tuple[slot] = c % n;
                        c /= n;
                    }
                    let args: Vec<Vector> = tuple.iter().map(|&i| units[i].clone()).collect();
                    let (lhs, rhs) = self.sides(id, &args);
                    if lhs != rhs {
                        count += 1;
                        if failures.len() < cap {
                            failures.push(AxiomFailure {
                                tuple: tuple.clone(),
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
                (count, failures)
            })
            .collect();
        let failure_count = per_first.iter().map(|(c, _)| c).sum();
        let failures: Vec<AxiomFailure> = per_first.into_iter().flat_map(|(_, f)| f).take(cap).collect();
        AxiomStatus {
            name: id.name().into(),
            pass: failure_count == 0,
            tuples_checked: n.pow(arity as u32),
            failure_count,
            failures,
            detail: None,
        }
    }
}

fn cyclic<'v>(x: &'v Vector, y: &'v Vector, z: &'v Vector) -> [(&'v Vector, &'v Vector, &'v Vector); 3] {
    [(x, y, z), (y, z, x), (z, x, y)]
}

/// One failing basis tuple with the two sides that disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub tuple: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomStatus {
    pub name: String,
    pub pass: bool,
    pub tuples_checked: usize,
    /// All failures, including those beyond the listing cap.
    pub failure_count: usize,
    pub failures: Vec<AxiomFailure>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub dim: usize,
    pub abelian: bool,
    pub entries: Vec<AxiomStatus>,
}

impl AxiomReport {
    pub fn get(&self, name: &str) -> Option<&AxiomStatus> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn passes(&self, id: Identity) -> bool {
        self.get(id.name()).is_some_and(|e| e.pass)
    }

    /// The defining identities hold (multiplicativity and regularity aside).
    pub fn is_hlya(&self) -> bool {
        Identity::ALL.iter().filter(|i| i.is_structural()).all(|&i| self.passes(i))
    }

    pub fn is_multiplicative(&self) -> bool {
        self.passes(Identity::MultiplicativeBinary) && self.passes(Identity::MultiplicativeTernary)
    }

    pub fn is_regular(&self) -> bool {
        self.get("regular").is_some_and(|e| e.pass)
    }

    /// Every entry passes: a regular multiplicative HLYA.
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.pass).map(|e| e.name.as_str()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Failure {
            tuple: Vec<usize>,
            lhs: Vec<serde_json::Value>,
            rhs: Vec<serde_json::Value>,
        }
        #[derive(Serialize)]
        struct Entry {
            name: String,
            pass: bool,
            tuples_checked: usize,
            failure_count: usize,
            failures: Vec<Failure>,
            #[serde(skip_serializing_if = "Option::is_none")]
            detail: Option<String>,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|e| Entry {
                name: e.name.clone(),
                pass: e.pass,
                tuples_checked: e.tuples_checked,
                failure_count: e.failure_count,
                failures: e
                    .failures
                    .iter()
                    .map(|f| Failure {
                        tuple: f.tuple.clone(),
                        lhs: f.lhs.iter().map(Scalar::to_json).collect(),
                        rhs: f.rhs.iter().map(Scalar::to_json).collect(),
                    })
                    .collect(),
                detail: e.detail.clone(),
            })
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "abelian": self.abelian,
            "all_pass": self.all_pass(),
            "entries": entries,
        })
    }
}
