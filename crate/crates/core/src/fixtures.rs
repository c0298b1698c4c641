//! Built-in example algebras.

use serde_json::json;

use crate::algebra::{default_basis_names, BinaryEntry, HlyAlgebra, TernaryEntry};
use crate::constructions;
use crate::linalg::{Matrix, Vector};
use crate::scalar::Field;

/// Names accepted by [`fixture`].
pub const NAMES: [&str; 8] = [
    "heisenberg",
    "abelian",
    "heisenberg-plus-abelian-2",
    "paper-example-A",
    "paper-example-B",
    "twisted-heisenberg",
    "jordan-center",
    "empty",
];

fn ints(field: Field, xs: &[i64]) -> Vector {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `[e1, e2] = e3`, no ternary bracket, identity twist.
pub fn heisenberg(field: Field) -> HlyAlgebra {
    HlyAlgebra::from_sparse(
        field,
        default_basis_names(3),
        &[BinaryEntry { i: 0, j: 1, value: ints(field, &[0, 0, 1]) }],
        &[],
        Matrix::identity(field, 3),
    )
    .expect("valid fixture")
}

pub fn heisenberg_plus_abelian(field: Field, k: usize) -> HlyAlgebra {
    constructions::direct_sum(&heisenberg(field), &constructions::abelian(field, k))
        .expect("same field")
        .with_basis_names(default_basis_names(3 + k))
        .expect("matching length")
}

/// `[e1,e2] = e1`, `[e1,e3,e3] = e1`, `[e2,e3,e3] = e2`, twist `diag(1,-1,-1)`.
pub fn example_a() -> HlyAlgebra {
    let q = Field::Rational;
    HlyAlgebra::from_sparse(
        q,
        names("e", 3),
        &[BinaryEntry { i: 0, j: 1, value: ints(q, &[1, 0, 0]) }],
        &[
            TernaryEntry { i: 0, j: 2, k: 2, value: ints(q, &[1, 0, 0]) },
            TernaryEntry { i: 1, j: 2, k: 2, value: ints(q, &[0, 1, 0]) },
        ],
        Matrix::from_i64(q, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
    )
    .expect("valid fixture")
}

/// `[f1,f4] = f2`, `[f1,f4,f4] = f1`, `[f2,f4,f4] = f2`, twist `diag(1,1,-1,-1)`.
/// The source lists the image of `f3` twice; the second entry is read as the
/// image of `f4`.
pub fn example_b() -> HlyAlgebra {
    let q = Field::Rational;
    HlyAlgebra::from_sparse(
        q,
        names("f", 4),
        &[BinaryEntry { i: 0, j: 3, value: ints(q, &[0, 1, 0, 0]) }],
        &[
            TernaryEntry { i: 0, j: 3, k: 3, value: ints(q, &[1, 0, 0, 0]) },
            TernaryEntry { i: 1, j: 3, k: 3, value: ints(q, &[0, 1, 0, 0]) },
        ],
        Matrix::from_i64(q, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]),
    )
    .expect("valid fixture")
}

/// `[e2, e3] = e1` with twist `e2 -> e1 + e2`: a valid algebra whose center
/// has no twist-invariant complement.
pub fn twisted_heisenberg(field: Field) -> HlyAlgebra {
    HlyAlgebra::from_sparse(
        field,
        default_basis_names(3),
        &[BinaryEntry { i: 1, j: 2, value: ints(field, &[1, 0, 0]) }],
        &[],
        Matrix::from_i64(field, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
    )
    .expect("valid fixture")
}

/// `[e1, e2] = e3` plus a central `e4` with twist `e4 -> e3 + e4`. The part of
/// the center outside the derived subalgebra has no invariant complement.
pub fn jordan_center(field: Field) -> HlyAlgebra {
    HlyAlgebra::from_sparse(
        field,
        default_basis_names(4),
        &[BinaryEntry { i: 0, j: 1, value: ints(field, &[0, 0, 1, 0]) }],
        &[],
        Matrix::from_i64(field, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]),
    )
    .expect("valid fixture")
}

/// Metadata recorded next to a fixture in emitted documents.
pub fn metadata(name: &str) -> serde_json::Value {
    match name {
        "paper-example-A" => json!({
            "fixture": name,
            "source": "reference pair, algebra A, entered verbatim",
        }),
        "paper-example-B" => json!({
            "fixture": name,
            "source": "reference pair, algebra B",
            "interpretation": "the twist is printed as alpha(f3) = -f3, alpha(f3) = -f4; the second assignment is read as alpha(f4) = -f4",
        }),
        _ => json!({ "fixture": name }),
    }
}

/// Fixture by name; Q throughout.
pub fn fixture(name: &str) -> Option<HlyAlgebra> {
    let q = Field::Rational;
    Some(match name {
        "heisenberg" => heisenberg(q),
        "abelian" => constructions::abelian(q, 3),
        "heisenberg-plus-abelian-2" => heisenberg_plus_abelian(q, 2),
        "paper-example-A" => example_a(),
        "paper-example-B" => example_b(),
        "twisted-heisenberg" => twisted_heisenberg(q),
        "jordan-center" => jordan_center(q),
        "empty" => constructions::abelian(q, 0),
        _ => return None,
    })
}
