//! Splitting an algebra as a stem algebra plus an abelian one.

use thiserror::Error;

use super::morphism::Morphism;
use super::search::{search_isoclinism, SearchBudget};
use super::{verify_isoclinism, IsoclinismWitness};
use crate::algebra::HlyAlgebra;
use crate::constructions::{self, ConstructionError};
use crate::linalg::{Subspace, SylvesterDiagnostics};
use crate::subobjects;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("algebra fails {0}")]
    Precondition(String),
    #[error("no twist-invariant complement at the {step} step")]
    NoInvariantComplement {
        step: &'static str,
        diagnostics: Box<SylvesterDiagnostics>,
    },
    #[error("stem part is not stem: {0}")]
    StemCheckFailed(String),
    #[error("splitting map is not an isomorphism")]
    WitnessFailed(Box<Morphism>),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub stem_part: HlyAlgebra,
    pub abelian_part: HlyAlgebra,
    /// `direct_sum(stem_part, abelian_part) -> A`
    pub witness: Morphism,
    /// `Z(A) ∩ A^2`
    pub k: Subspace,
    /// Carrier subspace of the abelian part, a complement of `k` in `Z(A)`.
    pub v: Subspace,
    /// Carrier subspace of the stem part; contains `A^2`.
    pub w: Subspace,
}

impl Decomposition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "stem_dim": self.stem_part.dim(),
            "abelian_dim": self.abelian_part.dim(),
            "center_meet_derived": self.k.to_json(),
            "abelian_subspace": self.v.to_json(),
            "stem_subspace": self.w.to_json(),
            "witness": self.witness.to_json(),
        })
    }
}

/// `A = W ⊕ V` with `V` a twist-invariant complement of `Z ∩ A^2` in `Z`, and
/// `W ⊇ A^2` a twist-invariant complement of `V`. `W` is found inside `A/A^2`:
/// an invariant complement `U` of the image of `V` there pulls back to
/// `W = A^2 + T(U)`.
pub fn decompose_stem_abelian(a: &HlyAlgebra) -> Result<Decomposition, DecomposeError> {
    let report = a.check_axioms();
    if !report.all_pass() {
        return Err(DecomposeError::Precondition(report.failing().join(", ")));
    }
    let field = a.field();
    let n = a.dim();
    let z = subobjects::center(a);
    let d = subobjects::derived(a);
    let k = z.intersection(&d).map_err(ConstructionError::from)?;
    let (v, diag) = k.invariant_complement_diagnosed(&z, a.twist()).map_err(ConstructionError::from)?;
    let v = v.ok_or_else(|| DecomposeError::NoInvariantComplement {
        step: "center",
        diagnostics: Box::new(diag),
    })?;

    let full = Subspace::full(field, n);
    let rest = d.complement(&full).map_err(ConstructionError::from)?;
    let t = rest.embedding();
    let basis = d.embedding().hstack(&t);
    let p = basis
        .inverse()
        .map_err(ConstructionError::from)?
        .slice(d.dim()..n, 0..n);
    let twist_bar = p.dot(a.twist()).dot(&t);
    let m = n - d.dim();
    let image_v = v.image(&p);
    let (u, diag) = image_v
        .invariant_complement_diagnosed(&Subspace::full(field, m), &twist_bar)
        .map_err(ConstructionError::from)?;
    let u = u.ok_or_else(|| DecomposeError::NoInvariantComplement {
        step: "derived",
        diagnostics: Box::new(diag),
    })?;
    let w = d.sum(&u.image(&t)).map_err(ConstructionError::from)?;

    let stem_part = constructions::restrict(a, &w)?;
    let abelian_part = constructions::restrict(a, &v)?;
    let sum = constructions::direct_sum(&stem_part, &abelian_part)?;
    let matrix = w.embedding().hstack(&v.embedding());
    let witness = Morphism::new(matrix).verify(&sum, a);
    if !witness.is_isomorphism() {
        return Err(DecomposeError::WitnessFailed(Box::new(witness)));
    }
    if !subobjects::is_stem(&stem_part) {
        return Err(DecomposeError::StemCheckFailed(format!(
            "center of dimension {} not inside derived subalgebra of dimension {}",
            subobjects::center(&stem_part).dim(),
            subobjects::derived(&stem_part).dim()
        )));
    }
    if !abelian_part.is_abelian() {
        return Err(DecomposeError::StemCheckFailed("abelian part has nonzero brackets".into()));
    }
    Ok(Decomposition {
        stem_part,
        abelian_part,
        witness,
        k,
        v,
        w,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("member {index} is not linked to member 0 by a verified witness: {reason}")]
    NotAFamily { index: usize, reason: String },
    #[error("empty family")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberSummary {
    pub dim: usize,
    pub is_stem: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub members: Vec<MemberSummary>,
    pub min_dim: usize,
    pub stem_present: bool,
    /// Stem members have the minimum dimension and the others exceed it.
    pub pass: bool,
    pub message: String,
}

/// Dimension check over a family of isoclinic algebras. `links[i - 1]` is a
/// witness from member 0 to member `i`; a missing one is searched for.
pub fn stem_minimality_check(
    family: &[HlyAlgebra],
    links: &[Option<IsoclinismWitness>],
    budget: SearchBudget,
) -> Result<MinimalityReport, FamilyError> {
    let first = family.first().ok_or(FamilyError::Empty)?;
    for (idx, member) in family.iter().enumerate().skip(1) {
        let supplied = links.get(idx - 1).cloned().flatten();
        let ok = match supplied {
            Some(w) => match verify_isoclinism(first, member, &w) {
                Ok(r) if r.pass() => Ok(()),
                Ok(_) => Err("supplied witness rejected".to_string()),
                Err(e) => Err(e.to_string()),
            },
            None => match search_isoclinism(first, member, budget) {
                Ok(out) if out.found.is_some() => Ok(()),
                Ok(out) => Err(out.reason.unwrap_or_else(|| "no witness".into())),
                Err(e) => Err(e.to_string()),
            },
        };
        ok.map_err(|reason| FamilyError::NotAFamily { index: idx, reason })?;
    }
    let members: Vec<MemberSummary> = family
        .iter()
        .map(|m| MemberSummary {
            dim: m.dim(),
            is_stem: subobjects::is_stem(m),
        })
        .collect();
    let min_dim = members.iter().map(|m| m.dim).min().expect("non-empty");
    let stem_present = members.iter().any(|m| m.is_stem);
    if !stem_present {
        return Ok(MinimalityReport {
            members,
            min_dim,
            stem_present,
            pass: true,
            message: "no stem member present in sample".into(),
        });
    }
    let pass = members
        .iter()
        .all(|m| if m.is_stem { m.dim == min_dim } else { m.dim > min_dim });
    let message = if pass {
        format!("stem members attain the minimum dimension {min_dim}")
    } else {
        "dimension ordering violated".into()
    };
    Ok(MinimalityReport {
        members,
        min_dim,
        stem_present,
        pass,
        message,
    })
}
