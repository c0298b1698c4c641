use serde::Serialize;

use super::{LinalgError, Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// A subspace of `field^ambient`, stored as a canonical RREF basis (one row per
/// basis vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// The linear system behind an invariant-complement request, kept so a caller
/// can report why no invariant complement exists.
///
/// With `u = w + v0` (v0 the canonical complement), `t` acts in the basis
/// `[w | v0]` by the blocks `A` (w to w), `B` (v0 to w) and `C` (v0 to v0).
/// A complement is the graph `{v + phi(v)}` of some `phi: v0 -> w`; it is
/// `t`-invariant exactly when `phi C - A phi = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterDiagnostics {
    pub w_dim: usize,
    pub complement_dim: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub coefficient_rank: usize,
    pub augmented_rank: usize,
    pub block_a: Matrix,
    pub block_b: Matrix,
    pub block_c: Matrix,
}

impl SylvesterDiagnostics {
    pub fn consistent(&self) -> bool {
        self.coefficient_rank == self.augmented_rank
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out {
            w_dim: usize,
            complement_dim: usize,
            unknowns: usize,
            equations: usize,
            coefficient_rank: usize,
            augmented_rank: usize,
            block_a: serde_json::Value,
            block_b: serde_json::Value,
            block_c: serde_json::Value,
        }
        serde_json::to_value(Out {
            w_dim: self.w_dim,
            complement_dim: self.complement_dim,
            unknowns: self.unknowns,
            equations: self.equations,
            coefficient_rank: self.coefficient_rank,
            augmented_rank: self.augmented_rank,
            block_a: self.block_a.to_json(),
            block_b: self.block_b.to_json(),
            block_c: self.block_c.to_json(),
        })
        .expect("diagnostics serialize")
    }
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let r = m.rref();
        let basis = r.matrix.slice(0..r.rank, 0..m.cols());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots: r.pivots,
        }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        let rows = vectors.to_vec();
        let m = Matrix::from_rows(field, rows, ambient).expect("vector length equals ambient dimension");
        Subspace::row_space(&m)
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix) -> Subspace {
        Subspace::row_space(&m.transpose())
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis matrix in canonical RREF, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn embedding(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is outside.
    /// The pivot entries of `v` are the coordinates, by the RREF shape.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            super::axpy(&mut rest, &-c, self.basis.row(r));
        }
        super::is_zero_vector(&rest).then_some(coords)
    }

    /// Coordinates of every column of `m`, as a `dim x m.cols()` matrix.
    pub fn coordinates_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vector>> = m.columns().iter().map(|c| self.coordinates(c)).collect();
        cols.map(|c| Matrix::from_columns(self.field(), self.dim(), &c))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient dimensions {} and {} differ",
                self.ambient, other.ambient
            )));
        }
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    /// `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Intersection through the kernel of `[A^T | -B^T]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let a = self.embedding();
        let b = other.embedding();
        let stacked = a.hstack(&b.neg());
        let ker = stacked.kernel_basis();
        let d = self.dim();
        let vectors: Vec<Vector> = ker
            .basis_vectors()
            .iter()
            .map(|k| a.mul_vec(&k[..d]))
            .collect();
        Ok(Subspace::from_vectors(self.field(), self.ambient, &vectors))
    }

    /// A complement of `self` inside `u`: `u`'s basis rows are added in order
    /// whenever they are independent of what has been collected so far.
    pub fn complement(&self, u: &Subspace) -> Result<Subspace, LinalgError> {
        if !u.contains(self)? {
            return Err(LinalgError::Precondition(
                "complement requested for a subspace not contained in the ambient".into(),
            ));
        }
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for v in u.basis_vectors() {
            if acc.dim() == u.dim() {
                break;
            }
            if !acc.contains_vector(&v) {
                acc = acc.sum(&Subspace::from_vectors(self.field(), self.ambient, &[v.clone()]))?;
                chosen.push(v);
            }
        }
        Ok(Subspace::from_vectors(self.field(), self.ambient, &chosen))
    }

    /// Image `t(self)`.
    pub fn image(&self, t: &Matrix) -> Subspace {
        let vectors: Vec<Vector> = self.basis_vectors().iter().map(|v| t.mul_vec(v)).collect();
        Subspace::from_vectors(self.field(), t.rows(), &vectors)
    }

    /// `t(self) ⊆ self`.
    pub fn is_invariant(&self, t: &Matrix) -> bool {
        self.basis_vectors().iter().all(|v| self.contains_vector(&t.mul_vec(v)))
    }

    /// A `t`-invariant complement of `self` inside `u`, or `None` when none exists.
    pub fn invariant_complement(&self, u: &Subspace, t: &Matrix) -> Result<Option<Subspace>, LinalgError> {
        Ok(self.invariant_complement_diagnosed(u, t)?.0)
    }

    pub fn invariant_complement_diagnosed(
        &self,
        u: &Subspace,
        t: &Matrix,
    ) -> Result<(Option<Subspace>, SylvesterDiagnostics), LinalgError> {
        let field = self.field();
        if t.rows() != self.ambient || t.cols() != self.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "operator is {}x{} on a space of dimension {}",
                t.rows(),
                t.cols(),
                self.ambient
            )));
        }
        if !u.contains(self)? {
            return Err(LinalgError::Precondition("w is not contained in u".into()));
        }
        if !u.is_invariant(t) {
            return Err(LinalgError::Precondition("u is not invariant under the operator".into()));
        }
        if !self.is_invariant(t) {
            return Err(LinalgError::Precondition("w is not invariant under the operator".into()));
        }
        let v0 = self.complement(u)?;
        let k = self.dim();
        let m = v0.dim();
        let w_emb = self.embedding();
        let v_emb = v0.embedding();
        let basis = w_emb.hstack(&v_emb);
        let coords = |x: &[Scalar]| -> Vector {
            basis
                .solve_vec(x)
                .expect("shapes agree")
                .expect("vector lies in u")
        };

        let mut a = Matrix::zeros(field, k, k);
        for j in 0..k {
            let c = coords(&t.mul_vec(&w_emb.column(j)));
            for (r, s) in c.into_iter().take(k).enumerate() {
                a.set(r, j, s);
            }
        }
        let mut b = Matrix::zeros(field, k, m);
        let mut c_blk = Matrix::zeros(field, m, m);
        for i in 0..m {
            let c = coords(&t.mul_vec(&v_emb.column(i)));
            for (r, s) in c.into_iter().enumerate() {
                if r < k {
                    b.set(r, i, s);
                } else {
                    c_blk.set(r - k, i, s);
                }
            }
        }

        // Unknown phi[j][a] sits at index j*m + a; equation (j, i) reads
        // sum_a phi[j][a] C[a][i] - sum_l A[j][l] phi[l][i] = B[j][i].
        let unknowns = k * m;
        let mut sys = Matrix::zeros(field, unknowns, unknowns);
        let mut rhs = Matrix::zeros(field, unknowns, 1);
        for j in 0..k {
            for i in 0..m {
                let row = j * m + i;
                for a_idx in 0..m {
                    let col = j * m + a_idx;
                    let v = sys.get(row, col) + c_blk.get(a_idx, i);
                    sys.set(row, col, v);
                }
                for l in 0..k {
                    let col = l * m + i;
                    let v = sys.get(row, col) - a.get(j, l);
                    sys.set(row, col, v);
                }
                rhs.set(row, 0, b.get(j, i).clone());
            }
        }
        let coefficient_rank = sys.rank();
        let augmented_rank = sys.hstack(&rhs).rank();
        let diagnostics = SylvesterDiagnostics {
            w_dim: k,
            complement_dim: m,
            unknowns,
            equations: unknowns,
            coefficient_rank,
            augmented_rank,
            block_a: a,
            block_b: b,
            block_c: c_blk,
        };
        let Some(phi) = sys.solve(&rhs)? else {
            return Ok((None, diagnostics));
        };
        let vectors: Vec<Vector> = (0..m)
            .map(|i| {
                let mut v = v_emb.column(i);
                for j in 0..k {
                    super::axpy(&mut v, phi.get(j * m + i, 0), &w_emb.column(j));
                }
                v
            })
            .collect();
        let out = Subspace::from_vectors(field, self.ambient, &vectors);
        debug_assert!(out.is_invariant(t));
        Ok((Some(out), diagnostics))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient_dim": self.ambient,
            "dim": self.dim(),
            "basis": self.basis.to_json(),
        })
    }
}
