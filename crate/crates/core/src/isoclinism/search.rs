//! Bounded enumeration of witness and isomorphism candidates.
//!
//! Candidates are matrices with entries drawn from a fixed alphabet (all
//! residues over F_p, the integers `0, 1, -1, ..., bound, -bound` over Q). The
//! identity is tried first, then every matrix in lexicographic order of its
//! row-major entries. Each wave of candidates is tested in parallel and the
//! first success in that order is kept, so the result does not depend on the
//! number of worker threads.

use rayon::prelude::*;
use thiserror::Error;

use super::{verify_with_frames, IsoclinismError, IsoclinismFrame, IsoclinismWitness, Morphism};
use crate::algebra::HlyAlgebra;
use crate::isoclinism::morphism::is_homomorphism;
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

const WAVE: u64 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of candidate matrices to enumerate.
    pub max_candidates: u64,
    /// Entry bound over Q.
    pub bound: i64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_candidates: 1_000_000,
            bound: 2,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search inconclusive after {examined} candidates")]
    BudgetExhausted { examined: u64 },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error(transparent)]
    Isoclinism(#[from] IsoclinismError),
}

/// A search that ended with an answer: a verified object, or a proof of
/// absence (`found == None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub found: Option<T>,
    pub examined: u64,
    /// Why nothing exists, when `found` is `None`.
    pub reason: Option<String>,
}

fn alphabet(field: Field, bound: i64) -> Vec<Scalar> {
    match field.elements() {
        Some(all) => all,
        None => {
            let mut out = vec![field.zero()];
            for k in 1..=bound.max(0) {
                out.push(field.from_i64(k));
                out.push(field.from_i64(-k));
            }
            out
        }
    }
}

struct Enumeration {
    field: Field,
    rows: usize,
    cols: usize,
    letters: Vec<Scalar>,
    total: u128,
}

impl Enumeration {
    fn new(field: Field, rows: usize, cols: usize, bound: i64) -> Enumeration {
        let letters = alphabet(field, bound);
        let total = (letters.len() as u128).checked_pow((rows * cols) as u32).unwrap_or(u128::MAX);
        Enumeration {
            field,
            rows,
            cols,
            letters,
            total,
        }
    }

    fn decode(&self, mut index: u128) -> Matrix {
        let base = self.letters.len() as u128;
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for pos in (0..self.rows * self.cols).rev() {
            let digit = (index % base) as usize;
            index /= base;
            m.set(pos / self.cols, pos % self.cols, self.letters[digit].clone());
        }
        m
    }

    fn identity_index(&self) -> Option<u128> {
        if self.rows != self.cols {
            return None;
        }
        let one = self.letters.iter().position(Scalar::is_one)?;
        let base = self.letters.len() as u128;
        let mut index = 0u128;
        for pos in 0..self.rows * self.cols {
            let digit = if pos / self.cols == pos % self.cols { one } else { 0 };
            index = index * base + digit as u128;
        }
        Some(index)
    }

    /// Runs `test` over the candidates within `budget`. Returns the first hit,
    /// the number examined, and whether the whole space was covered.
    fn run<T: Send>(&self, budget: u64, test: impl Fn(&Matrix) -> Option<T> + Sync) -> (Option<T>, u64, bool) {
        let mut examined = 0u64;
        let id = self.identity_index();
        if let Some(i) = id {
            if budget == 0 {
                return (None, 0, false);
            }
            examined += 1;
            if let Some(hit) = test(&self.decode(i)) {
                return (Some(hit), examined, false);
            }
        }
        let mut next: u128 = 0;
        while next < self.total {
            let remaining = budget.saturating_sub(examined);
            if remaining == 0 {
                return (None, examined, false);
            }
            let span = (WAVE.min(remaining) as u128).min(self.total - next);
            let start = next;
            let hit = (0..span as u64).into_par_iter().find_map_first(|off| {
                let index = start + off as u128;
                if Some(index) == id {
                    return None;
                }
                test(&self.decode(index))
            });
            examined += span as u64;
            if id.is_some_and(|i| i >= start && i < start + span) {
                examined -= 1;
            }
            if hit.is_some() {
                return (hit, examined, false);
            }
            next += span;
        }
        (None, examined, true)
    }
}

/// Searches for an isoclinism witness `A -> B`. Over F_p an exhaustive
/// failure is a proof that none exists; over Q, or when the budget runs out,
/// the result is [`SearchError::BudgetExhausted`].
pub fn search_isoclinism(
    a: &HlyAlgebra,
    b: &HlyAlgebra,
    budget: SearchBudget,
) -> Result<SearchOutcome<IsoclinismWitness>, SearchError> {
    if a.field() != b.field() {
        return Err(SearchError::FieldMismatch(a.field(), b.field()));
    }
    let fa = IsoclinismFrame::new(a)?;
    let fb = IsoclinismFrame::new(b)?;
    search_with_frames(&fa, &fb, budget)
}

pub fn search_with_frames(
    fa: &IsoclinismFrame,
    fb: &IsoclinismFrame,
    budget: SearchBudget,
) -> Result<SearchOutcome<IsoclinismWitness>, SearchError> {
    let none = |reason: String| {
        Ok(SearchOutcome {
            found: None,
            examined: 0,
            reason: Some(reason),
        })
    };
    if fa.q() != fb.q() {
        return none(format!("center quotients have dimensions {} and {}", fa.q(), fb.q()));
    }
    if fa.d() != fb.d() {
        return none(format!("derived subalgebras have dimensions {} and {}", fa.d(), fb.d()));
    }
    if fa.derived_twist.is_none() || fb.derived_twist.is_none() {
        return none("a derived subalgebra is not twist-invariant".into());
    }
    let field = fa.field();
    let q = fa.q();
    let span_t = fa.spanning_matrix().transpose();
    let ta = fa.quotient_twist();
    let tb = fb.quotient_twist();
    let test = |theta: &Matrix| -> Option<IsoclinismWitness> {
        if theta.dot(ta) != tb.dot(theta) || !theta.is_invertible() {
            return None;
        }
        let cols = theta.columns();
        let mut targets = Vec::with_capacity(q * q + q * q * q);
        for i in 0..q {
            for j in 0..q {
                targets.push(fb.delta2(&cols[i], &cols[j]));
            }
        }
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    targets.push(fb.delta3(&cols[i], &cols[j], &cols[k]));
                }
            }
        }
        let target_t = Matrix::from_columns(field, fb.d(), &targets).transpose();
        let beta = span_t.solve(&target_t).ok()??.transpose();
        let w = IsoclinismWitness {
            theta: theta.clone(),
            beta,
        };
        verify_with_frames(fa, fb, &w).ok()?.pass().then_some(w)
    };
    let en = Enumeration::new(field, q, q, budget.bound);
    let (found, examined, exhaustive) = en.run(budget.max_candidates, test);
    finish(field, found, examined, exhaustive, "no twist-compatible theta admits a consistent beta")
}

fn finish<T>(
    field: Field,
    found: Option<T>,
    examined: u64,
    exhaustive: bool,
    why: &str,
) -> Result<SearchOutcome<T>, SearchError> {
    match found {
        Some(x) => Ok(SearchOutcome {
            found: Some(x),
            examined,
            reason: None,
        }),
        None if exhaustive && field.modulus().is_some() => Ok(SearchOutcome {
            found: None,
            examined,
            reason: Some(format!("exhaustive over all {examined} candidates: {why}")),
        }),
        None => Err(SearchError::BudgetExhausted { examined }),
    }
}

/// Searches for an isomorphism `A -> B` among carrier matrices.
pub fn search_isomorphism(a: &HlyAlgebra, b: &HlyAlgebra, budget: SearchBudget) -> Result<SearchOutcome<Morphism>, SearchError> {
    if a.field() != b.field() {
        return Err(SearchError::FieldMismatch(a.field(), b.field()));
    }
    if a.dim() != b.dim() {
        return Ok(SearchOutcome {
            found: None,
            examined: 0,
            reason: Some(format!("dimensions {} and {} differ", a.dim(), b.dim())),
        });
    }
    let test = |f: &Matrix| -> Option<Matrix> {
        if f.dot(a.twist()) != b.twist().dot(f) || !f.is_invertible() {
            return None;
        }
        is_homomorphism(f, a, b).is_isomorphism().then(|| f.clone())
    };
    let en = Enumeration::new(a.field(), a.dim(), a.dim(), budget.bound);
    let (found, examined, exhaustive) = en.run(budget.max_candidates, test);
    let found = found.map(|m| Morphism::new(m).verify(a, b));
    finish(a.field(), found, examined, exhaustive, "no invertible bracket-preserving map")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_is_lexicographic_after_identity() {
        let f = Field::Prime(2);
        let en = Enumeration::new(f, 1, 2, 0);
        let seen: Vec<Matrix> = (0..en.total).map(|i| en.decode(i)).collect();
        assert_eq!(seen[0], Matrix::from_i64(f, &[&[0, 0]]));
        assert_eq!(seen[1], Matrix::from_i64(f, &[&[0, 1]]));
        assert_eq!(seen[3], Matrix::from_i64(f, &[&[1, 1]]));
        let en = Enumeration::new(Field::Rational, 2, 2, 2);
        assert_eq!(en.total, 625);
        assert_eq!(en.decode(en.identity_index().unwrap()), Matrix::identity(Field::Rational, 2));
        assert_eq!(en.decode(1), Matrix::from_i64(Field::Rational, &[&[0, 0], &[0, 1]]));
        assert_eq!(en.decode(2), Matrix::from_i64(Field::Rational, &[&[0, 0], &[0, -1]]));
    }

    #[test]
    fn run_reports_first_hit_and_coverage() {
        let f = Field::Prime(3);
        let en = Enumeration::new(f, 2, 2, 0);
        // identity is seen first even though it is not lexicographically first
        let (hit, examined, _) = en.run(100, |m| m.is_invertible().then(|| m.clone()));
        assert_eq!(hit, Some(Matrix::identity(f, 2)));
        assert_eq!(examined, 1);
        let (hit, examined, exhaustive) = en.run(1000, |_| None::<()>);
        assert!(hit.is_none());
        assert!(exhaustive);
        assert_eq!(examined, 81);
        let (_, examined, exhaustive) = en.run(10, |_| None::<()>);
        assert!(!exhaustive);
        assert_eq!(examined, 10);
    }
}
