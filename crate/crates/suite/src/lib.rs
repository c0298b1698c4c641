//! Brute-force reference checks used to cross-examine the library, and the
//! shared test corpus.
//!
//! Everything here works straight from the structure-constant tables with
//! scalar arithmetic and a separate elimination routine, so agreement with the
//! library is evidence rather than a tautology.

use hlya::constructions;
use hlya::corpus::{exhaustive_dim2, sample, CorpusSpec};
use hlya::fixtures;
use hlya::{Field, HlyAlgebra, Matrix, Scalar};

pub type Vector = Vec<Scalar>;

/// Rank by plain Gaussian elimination on a copy of the rows.
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vector> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let pivot: Vector = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (dst, src) in m[i].iter_mut().zip(&pivot) {
                    *dst = &*dst - &(&f * src);
                }
            }
        }
        m[r] = pivot;
        r += 1;
    }
    r
}

pub fn in_span(basis: &[Vector], v: &[Scalar]) -> bool {
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(basis)
}

pub fn apply(m: &Matrix, v: &[Scalar]) -> Vector {
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(m.field().zero(), |acc, j| &acc + &(m.get(i, j) * &v[j]))
        })
        .collect()
}

pub fn columns(m: &Matrix) -> Vec<Vector> {
    (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j).clone()).collect()).collect()
}

fn zero(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a = &*a + &(c * x);
    }
}

pub fn bracket2(a: &HlyAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = a.dim();
    let mut out = zero(a.field(), n);
    for i in 0..n {
        for j in 0..n {
            let c = &x[i] * &y[j];
            if !c.is_zero() {
                axpy(&mut out, &c, a.binary_basis(i, j));
            }
        }
    }
    out
}

pub fn bracket3(a: &HlyAlgebra, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    let n = a.dim();
    let mut out = zero(a.field(), n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = &(&x[i] * &y[j]) * &z[k];
                if !c.is_zero() {
                    axpy(&mut out, &c, a.ternary_basis(i, j, k));
                }
            }
        }
    }
    out
}

fn unit(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero(field, n);
    v[i] = field.one();
    v
}

/// Checks that `f: A -> B` preserves both brackets on basis tuples and
/// commutes with the twists; with `bijective` also that it is invertible.
pub fn hom_check(f: &Matrix, a: &HlyAlgebra, b: &HlyAlgebra, bijective: bool) -> Result<(), String> {
    let (n, m) = (a.dim(), b.dim());
    if f.rows() != m || f.cols() != n {
        return Err(format!("map is {}x{}, expected {m}x{n}", f.rows(), f.cols()));
    }
    let img = columns(f);
    for i in 0..n {
        for j in 0..n {
            if apply(f, a.binary_basis(i, j)) != bracket2(b, &img[i], &img[j]) {
                return Err(format!("binary bracket not preserved at ({i}, {j})"));
            }
            for k in 0..n {
                if apply(f, a.ternary_basis(i, j, k)) != bracket3(b, &img[i], &img[j], &img[k]) {
                    return Err(format!("ternary bracket not preserved at ({i}, {j}, {k})"));
                }
            }
        }
    }
    for (j, col) in columns(a.twist()).iter().enumerate() {
        if apply(f, col) != apply(b.twist(), &img[j]) {
            return Err(format!("twist not respected on basis vector {j}"));
        }
    }
    if bijective && (n != m || rank(&img) != n) {
        return Err("map is not bijective".into());
    }
    Ok(())
}

pub fn is_abelian(a: &HlyAlgebra) -> bool {
    let n = a.dim();
    let z = zero(a.field(), n);
    (0..n).all(|i| (0..n).all(|j| a.binary_basis(i, j) == &z && (0..n).all(|k| a.ternary_basis(i, j, k) == &z)))
}

pub fn is_regular(a: &HlyAlgebra) -> bool {
    rank(&columns(a.twist())) == a.dim()
}

/// Every vector of `F_p^n`, in lexicographic order.
pub fn all_vectors(field: Field, n: usize) -> Vec<Vector> {
    let elems = field.elements().expect("finite field");
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vector| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// All elements of the span of `basis` inside `F_p^n`.
pub fn span_elements(field: Field, n: usize, basis: &[Vector]) -> Vec<Vector> {
    let mut out = Vec::new();
    for coeffs in all_vectors(field, basis.len()) {
        let mut v = zero(field, n);
        for (c, b) in coeffs.iter().zip(basis) {
            axpy(&mut v, c, b);
        }
        out.push(v);
    }
    out.sort_by_key(|v| v.iter().map(hlya::scalar::entry_rank).collect::<Vec<_>>());
    out.dedup();
    out
}

/// Central elements over F_p found by testing every vector.
pub fn brute_center(a: &HlyAlgebra) -> Vec<Vector> {
    let (f, n) = (a.field(), a.dim());
    let z = zero(f, n);
    let units: Vec<Vector> = (0..n).map(|i| unit(f, n, i)).collect();
    let mut out: Vec<Vector> = all_vectors(f, n)
        .into_iter()
        .filter(|x| {
            units.iter().all(|e| {
                bracket2(a, x, e) == z
                    && units
                        .iter()
                        .all(|g| bracket3(a, x, e, g) == z && bracket3(a, e, g, x) == z)
            })
        })
        .collect();
    out.sort_by_key(|v| v.iter().map(hlya::scalar::entry_rank).collect::<Vec<_>>());
    out
}

/// A maximal independent subset, chosen greedily.
pub fn independent(vs: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vs {
        if !in_span(&out, v) {
            out.push(v.clone());
        }
    }
    out
}

/// Whether some `t`-invariant subspace `V` of `span(u)` satisfies
/// `span(w) ⊕ V = span(u)`, by trying every set of candidate basis vectors.
/// `span(w)` and `span(u)` are assumed invariant with `w ⊆ u`.
pub fn invariant_complement_exists(field: Field, n: usize, w: &[Vector], u: &[Vector], t: &Matrix) -> bool {
    let w = &independent(w);
    let u = &independent(u);
    let dw = w.len();
    let du = u.len();
    let m = du - dw;
    if m == 0 {
        return true;
    }
    let candidates: Vec<Vector> = span_elements(field, n, u)
        .into_iter()
        .filter(|v| !in_span(w, v))
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        start: usize,
        m: usize,
        dw: usize,
        w: &[Vector],
        t: &Matrix,
        cands: &[Vector],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == m {
            let vs: Vec<Vector> = chosen.iter().map(|&i| cands[i].clone()).collect();
            return vs.iter().all(|v| in_span(&vs, &apply(t, v)));
        }
        for i in start..cands.len() {
            let mut with: Vec<Vector> = w.to_vec();
            with.extend(chosen.iter().map(|&c| cands[c].clone()));
            with.push(cands[i].clone());
            if rank(&with) != dw + chosen.len() + 1 {
                continue;
            }
            chosen.push(i);
            if go(i + 1, m, dw, w, t, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(0, m, dw, w, t, &candidates, &mut chosen)
}

/// An isomorphism `A -> B` over F_p by trying every square matrix.
pub fn brute_isomorphism(a: &HlyAlgebra, b: &HlyAlgebra) -> Option<Matrix> {
    let n = a.dim();
    if n != b.dim() {
        return None;
    }
    let f = a.field();
    for entries in all_vectors(f, n * n) {
        let rows: Vec<Vector> = entries.chunks(n).map(<[Scalar]>::to_vec).collect();
        let m = Matrix::from_rows(f, rows, n).expect("square");
        if hom_check(&m, a, b, true).is_ok() {
            return Some(m);
        }
    }
    None
}

pub struct Instance {
    pub label: String,
    pub algebra: HlyAlgebra,
}

fn labelled(prefix: &str, algebras: Vec<HlyAlgebra>) -> impl Iterator<Item = Instance> + '_ {
    algebras.into_iter().enumerate().map(move |(i, algebra)| Instance {
        label: format!("{prefix}#{i}"),
        algebra,
    })
}

pub const SEED_F2: u64 = 0x5eed_0002;
pub const SEED_F3: u64 = 0x5eed_0003;
pub const SAMPLES_PER_FIELD: usize = 30;

pub fn dim2_f2() -> Vec<HlyAlgebra> {
    exhaustive_dim2(Field::Prime(2)).expect("supported")
}

pub fn dim3_sample(p: u32) -> Vec<HlyAlgebra> {
    let seed = if p == 2 { SEED_F2 } else { SEED_F3 };
    sample(&CorpusSpec::new(Field::Prime(p), 3, SAMPLES_PER_FIELD, seed))
        .expect("sampler finds enough algebras")
        .algebras
}

/// Exhaustive dimension-2 algebras over F_2, seeded dimension-3 samples over
/// F_2 and F_3, and the axiom-passing fixtures over Q.
pub fn corpus() -> Vec<Instance> {
    let q = Field::Rational;
    let mut out: Vec<Instance> = labelled("F2-dim2", dim2_f2()).collect();
    out.extend(labelled("F2-dim3", dim3_sample(2)));
    out.extend(labelled("F3-dim3", dim3_sample(3)));
    for (name, a) in [
        ("heisenberg", fixtures::heisenberg(q)),
        ("abelian", constructions::abelian(q, 3)),
        ("heisenberg-plus-abelian-2", fixtures::heisenberg_plus_abelian(q, 2)),
        ("twisted-heisenberg", fixtures::twisted_heisenberg(q)),
        ("jordan-center", fixtures::jordan_center(q)),
    ] {
        out.push(Instance {
            label: format!("Q-{name}"),
            algebra: a,
        });
    }
    out
}
