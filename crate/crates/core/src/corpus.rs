//! Small algebras over F_2 and F_3 for property suites: a seeded sampler and
//! an exhaustive sweep in dimension 2.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{default_basis_names, BinaryEntry, HlyAlgebra, TernaryEntry};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Field;

pub const MAX_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("corpus generation supports F_2 and F_3 only, got {0}")]
    UnsupportedField(Field),
    #[error("corpus generation supports dimension at most {MAX_DIM}, got {0}")]
    UnsupportedDim(usize),
    #[error("only {found} of {wanted} algebras found in {attempts} attempts")]
    TooFewSamples { found: usize, wanted: usize, attempts: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub field: Field,
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    /// Rejection-sampling attempts allowed per requested algebra.
    pub attempts_per_sample: u64,
}

impl CorpusSpec {
    pub fn new(field: Field, dim: usize, count: usize, seed: u64) -> CorpusSpec {
        CorpusSpec {
            field,
            dim,
            count,
            seed,
            attempts_per_sample: 2000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub algebras: Vec<HlyAlgebra>,
    pub attempts: u64,
}

fn check_support(field: Field, dim: usize) -> Result<(), CorpusError> {
    if !matches!(field, Field::Prime(2) | Field::Prime(3)) {
        return Err(CorpusError::UnsupportedField(field));
    }
    if dim > MAX_DIM {
        return Err(CorpusError::UnsupportedDim(dim));
    }
    Ok(())
}

fn nonzero(field: Field, rng: &mut ChaCha8Rng) -> i64 {
    let p = field.modulus().expect("prime field") as i64;
    rng.gen_range(1..p)
}

/// Sparse vector with at least one nonzero coordinate.
fn sparse_vector(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Vector {
    let mut v = vec![field.zero(); n];
    let first = rng.gen_range(0..n);
    v[first] = field.from_i64(nonzero(field, rng));
    if n > 1 && rng.gen_bool(0.25) {
        let second = rng.gen_range(0..n);
        v[second] = field.from_i64(nonzero(field, rng));
    }
    v
}

fn random_twist(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let p = field.modulus().expect("prime field") as i64;
    match rng.gen_range(0..10) {
        0..=3 => Matrix::identity(field, n),
        4..=5 => {
            let diag: Vec<_> = (0..n).map(|_| field.from_i64(rng.gen_range(1..p))).collect();
            Matrix::diagonal(field, &diag)
        }
        _ => loop {
            let mut m = Matrix::zeros(field, n, n);
            for r in 0..n {
                for c in 0..n {
                    m.set(r, c, field.from_i64(rng.gen_range(0..p)));
                }
            }
            if m.is_invertible() {
                break m;
            }
        },
    }
}

fn random_candidate(field: Field, n: usize, rng: &mut ChaCha8Rng) -> HlyAlgebra {
    let twist = random_twist(field, n, rng);
    if n < 2 {
        return HlyAlgebra::abelian(field, n, twist).expect("square twist");
    }
    // 0 abelian, 1 binary only, 2 ternary only, 3 both
    let mode = match rng.gen_range(0..10) {
        0 => 0,
        1..=3 => 1,
        4..=6 => 2,
        _ => 3,
    };
    let mut binary = Vec::new();
    let mut ternary = Vec::new();
    let mut used2 = HashSet::new();
    let mut used3 = HashSet::new();
    if mode & 1 == 1 {
        for _ in 0..rng.gen_range(1..=2) {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            if used2.insert((i, j)) {
                binary.push(BinaryEntry { i, j, value: sparse_vector(field, n, rng) });
            }
        }
    }
    if mode & 2 == 2 {
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            let k = rng.gen_range(0..n);
            if used3.insert((i, j, k)) {
                ternary.push(TernaryEntry { i, j, k, value: sparse_vector(field, n, rng) });
            }
        }
    }
    HlyAlgebra::from_sparse(field, default_basis_names(n), &binary, &ternary, twist).expect("entries are off-diagonal and distinct")
}

/// Rejection-samples `count` distinct algebras passing every axiom check,
/// multiplicativity and regularity included. The output depends only on the
/// spec.
pub fn sample(spec: &CorpusSpec) -> Result<Corpus, CorpusError> {
    check_support(spec.field, spec.dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut seen = HashSet::new();
    let mut algebras = Vec::with_capacity(spec.count);
    let limit = spec.attempts_per_sample.saturating_mul(spec.count.max(1) as u64);
    let mut attempts = 0u64;
    while algebras.len() < spec.count {
        if attempts >= limit {
            return Err(CorpusError::TooFewSamples {
                found: algebras.len(),
                wanted: spec.count,
                attempts,
            });
        }
        attempts += 1;
        let cand = random_candidate(spec.field, spec.dim, &mut rng);
        if seen.contains(&cand) {
            continue;
        }
        if cand.check_axioms_capped(1).all_pass() {
            seen.insert(cand.clone());
            algebras.push(cand);
        } else {
            seen.insert(cand);
        }
    }
    Ok(Corpus { algebras, attempts })
}

/// Every structure on a 2-dimensional space over F_p with an invertible twist,
/// in a fixed order.
pub fn dim2_candidates(field: Field) -> Result<Vec<HlyAlgebra>, CorpusError> {
    check_support(field, 2)?;
    let elems = field.elements().expect("prime field");
    let vectors: Vec<Vector> = elems
        .iter()
        .flat_map(|a| elems.iter().map(move |b| vec![a.clone(), b.clone()]))
        .collect();
    let mut twists = Vec::new();
    for a in &vectors {
        for b in &vectors {
            let m = Matrix::from_rows(field, vec![a.clone(), b.clone()], 2).expect("2x2");
            if m.is_invertible() {
                twists.push(m);
            }
        }
    }
    let mut out = Vec::new();
    for b01 in &vectors {
        for t0 in &vectors {
            for t1 in &vectors {
                for tw in &twists {
                    let binary = [BinaryEntry { i: 0, j: 1, value: b01.clone() }];
                    let ternary = [
                        TernaryEntry { i: 0, j: 1, k: 0, value: t0.clone() },
                        TernaryEntry { i: 0, j: 1, k: 1, value: t1.clone() },
                    ];
                    out.push(
                        HlyAlgebra::from_sparse(field, default_basis_names(2), &binary, &ternary, tw.clone())
                            .expect("valid entries"),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// The axiom-passing members of [`dim2_candidates`].
pub fn exhaustive_dim2(field: Field) -> Result<Vec<HlyAlgebra>, CorpusError> {
    Ok(dim2_candidates(field)?
        .into_iter()
        .filter(|a| a.check_axioms_capped(1).all_pass())
        .collect())
}
