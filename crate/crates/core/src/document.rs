//! JSON documents for algebras, factor sets and isoclinism witnesses.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{AlgebraError, BinaryEntry, HlyAlgebra, TernaryEntry};
use crate::constructions::FactorSet;
use crate::isoclinism::IsoclinismWitness;
use crate::linalg::{Matrix, Vector};
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {source}")]
    Scalar { location: String, source: ScalarError },
    #[error("{0}")]
    Shape(String),
    #[error("invalid algebra: {0}")]
    Algebra(#[from] AlgebraError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    field: Field,
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Bin {
    i: usize,
    j: usize,
    value: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Ter {
    i: usize,
    j: usize,
    k: usize,
    value: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Body {
    #[serde(default)]
    binary: Vec<Bin>,
    #[serde(default)]
    ternary: Vec<Ter>,
    twist: Vec<Vec<Value>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    header: Header,
    body: Body,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<Value>,
}

fn check_field(field: Field) -> Result<Field, DocumentError> {
    match field {
        Field::Rational => Ok(field),
        Field::Prime(p) => Field::prime(p as u64).map_err(|e| DocumentError::Scalar {
            location: "header.field".into(),
            source: e,
        }),
    }
}

fn scalars(field: Field, values: &[Value], location: impl Fn() -> String) -> Result<Vector, DocumentError> {
    values
        .iter()
        .map(|v| Scalar::from_json(field, v).map_err(|e| DocumentError::Scalar { location: location(), source: e }))
        .collect()
}

fn matrix(field: Field, rows: &[Vec<Value>], n_rows: usize, n_cols: usize, what: &str) -> Result<Matrix, DocumentError> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(DocumentError::Shape(format!("{what} must be {n_rows}x{n_cols}")));
    }
    let parsed: Result<Vec<Vector>, DocumentError> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| scalars(field, row, || format!("{what}[{r}]")))
        .collect();
    Matrix::from_rows(field, parsed?, n_cols).map_err(|e| DocumentError::Shape(e.to_string()))
}

fn to_values(v: &[Scalar]) -> Vec<Value> {
    v.iter().map(Scalar::to_json).collect()
}

fn matrix_values(m: &Matrix) -> Vec<Vec<Value>> {
    m.row_vectors().iter().map(|r| to_values(r)).collect()
}

/// Parses an algebra document, returning the algebra and its metadata.
pub fn parse_algebra(text: &str) -> Result<(HlyAlgebra, Option<Value>), DocumentError> {
    let doc: AlgebraDoc = serde_json::from_str(text)?;
    let field = check_field(doc.header.field)?;
    let n = doc.header.dim;
    let names = doc.header.basis.unwrap_or_else(|| crate::algebra::default_basis_names(n));
    if names.len() != n {
        return Err(DocumentError::Shape(format!("header.basis lists {} names for dimension {n}", names.len())));
    }
    let binary: Result<Vec<BinaryEntry>, DocumentError> = doc
        .body
        .binary
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            Ok(BinaryEntry {
                i: e.i,
                j: e.j,
                value: scalars(field, &e.value, || format!("body.binary[{idx}].value"))?,
            })
        })
        .collect();
    let ternary: Result<Vec<TernaryEntry>, DocumentError> = doc
        .body
        .ternary
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            Ok(TernaryEntry {
                i: e.i,
                j: e.j,
                k: e.k,
                value: scalars(field, &e.value, || format!("body.ternary[{idx}].value"))?,
            })
        })
        .collect();
    let twist = matrix(field, &doc.body.twist, n, n, "body.twist")?;
    let alg = HlyAlgebra::from_sparse(field, names, &binary?, &ternary?, twist)?;
    Ok((alg, doc.metadata))
}

pub fn algebra_to_value(a: &HlyAlgebra, metadata: Option<Value>) -> Value {
    let doc = AlgebraDoc {
        header: Header {
            field: a.field(),
            dim: a.dim(),
            basis: Some(a.basis_names().to_vec()),
        },
        body: Body {
            binary: a
                .binary_entries()
                .into_iter()
                .map(|e| Bin { i: e.i, j: e.j, value: to_values(&e.value) })
                .collect(),
            ternary: a
                .ternary_entries()
                .into_iter()
                .map(|e| Ter { i: e.i, j: e.j, k: e.k, value: to_values(&e.value) })
                .collect(),
            twist: matrix_values(a.twist()),
        },
        metadata,
    };
    serde_json::to_value(doc).expect("document serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorSetDoc {
    field: Field,
    q: usize,
    z: usize,
    #[serde(default)]
    pi2: Vec<Bin>,
    #[serde(default)]
    pi3: Vec<Ter>,
}

/// Listed entries fix their antisymmetric partners; unlisted ones are zero.
pub fn parse_factor_set(text: &str) -> Result<FactorSet, DocumentError> {
    let doc: FactorSetDoc = serde_json::from_str(text)?;
    let field = check_field(doc.field)?;
    let (q, z) = (doc.q, doc.z);
    let mut fs = FactorSet::zero(field, q, z);
    let mut set2 = vec![false; q * q];
    let mut set3 = vec![false; q * q * q];
    for (idx, e) in doc.pi2.iter().enumerate() {
        if e.i >= q || e.j >= q {
            return Err(DocumentError::Shape(format!("pi2[{idx}] index out of range for q = {q}")));
        }
        if e.i == e.j {
            return Err(DocumentError::Shape(format!("pi2[{idx}] has equal indices")));
        }
        let v = scalars(field, &e.value, || format!("pi2[{idx}].value"))?;
        if v.len() != z {
            return Err(DocumentError::Shape(format!("pi2[{idx}] has {} coefficients, expected {z}", v.len())));
        }
        let neg = crate::linalg::neg(&v);
        for (a, b, val) in [(e.i, e.j, v), (e.j, e.i, neg)] {
            if set2[a * q + b] && fs.pi2(a, b) != &val {
                return Err(DocumentError::Shape(format!("pi2[{idx}] contradicts an earlier entry")));
            }
            set2[a * q + b] = true;
            fs.set_pi2(a, b, val);
        }
    }
    for (idx, e) in doc.pi3.iter().enumerate() {
        if e.i >= q || e.j >= q || e.k >= q {
            return Err(DocumentError::Shape(format!("pi3[{idx}] index out of range for q = {q}")));
        }
        if e.i == e.j {
            return Err(DocumentError::Shape(format!("pi3[{idx}] has equal first indices")));
        }
        let v = scalars(field, &e.value, || format!("pi3[{idx}].value"))?;
        if v.len() != z {
            return Err(DocumentError::Shape(format!("pi3[{idx}] has {} coefficients, expected {z}", v.len())));
        }
        let neg = crate::linalg::neg(&v);
        for (a, b, val) in [(e.i, e.j, v), (e.j, e.i, neg)] {
            let slot = (a * q + b) * q + e.k;
            if set3[slot] && fs.pi3(a, b, e.k) != &val {
                return Err(DocumentError::Shape(format!("pi3[{idx}] contradicts an earlier entry")));
            }
            set3[slot] = true;
            fs.set_pi3(a, b, e.k, val);
        }
    }
    Ok(fs)
}

pub fn factor_set_to_value(fs: &FactorSet) -> Value {
    let q = fs.q;
    let zero = |v: &Vector| v.iter().all(Scalar::is_zero);
    let mut pi2 = Vec::new();
    let mut pi3 = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            if !zero(fs.pi2(i, j)) {
                pi2.push(Bin { i, j, value: to_values(fs.pi2(i, j)) });
            }
            for k in 0..q {
                if !zero(fs.pi3(i, j, k)) {
                    pi3.push(Ter { i, j, k, value: to_values(fs.pi3(i, j, k)) });
                }
            }
        }
    }
    serde_json::to_value(FactorSetDoc {
        field: fs.field,
        q,
        z: fs.z,
        pi2,
        pi3,
    })
    .expect("document serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    field: Field,
    theta: Vec<Vec<Value>>,
    beta: Vec<Vec<Value>>,
}

fn dims(rows: &[Vec<Value>]) -> (usize, usize) {
    (rows.len(), rows.first().map_or(0, Vec::len))
}

/// Parses a witness; empty matrices may be written as `[]`, and then take
/// whichever width makes them square.
pub fn parse_witness(text: &str) -> Result<IsoclinismWitness, DocumentError> {
    let doc: WitnessDoc = serde_json::from_str(text)?;
    let field = check_field(doc.field)?;
    let (tr, tc) = dims(&doc.theta);
    let (br, bc) = dims(&doc.beta);
    let tc = if tr == 0 { 0 } else { tc };
    let bc = if br == 0 { 0 } else { bc };
    Ok(IsoclinismWitness {
        theta: matrix(field, &doc.theta, tr, tc, "theta")?,
        beta: matrix(field, &doc.beta, br, bc, "beta")?,
    })
}

pub fn witness_to_value(w: &IsoclinismWitness) -> Value {
    serde_json::to_value(WitnessDoc {
        field: w.theta.field(),
        theta: matrix_values(&w.theta),
        beta: matrix_values(&w.beta),
    })
    .expect("document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_roundtrip() {
        for name in fixtures::NAMES {
            let a = fixtures::fixture(name).unwrap();
            let text = serde_json::to_string_pretty(&algebra_to_value(&a, Some(fixtures::metadata(name)))).unwrap();
            let (b, meta) = parse_algebra(&text).unwrap();
            assert_eq!(a, b, "{name}");
            assert_eq!(meta.unwrap()["fixture"], name);
        }
    }

    #[test]
    fn prime_field_header_and_integer_values() {
        let text = r#"{"header":{"field":{"Fp":3},"dim":2,"basis":["x","y"]},
            "body":{"binary":[{"i":0,"j":1,"value":[4,"1/2"]}],"twist":[[1,0],[0,2]]}}"#;
        let (a, _) = parse_algebra(text).unwrap();
        let f = Field::Prime(3);
        assert_eq!(a.binary_basis(0, 1), &vec![f.from_i64(1), f.from_i64(2)]);
        assert_eq!(a.binary_basis(1, 0), &vec![f.from_i64(2), f.from_i64(1)]);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let base = |body: &str| format!(r#"{{"header":{{"field":"Q","dim":2}},"body":{body}}}"#);
        assert!(matches!(parse_algebra("{"), Err(DocumentError::Json(_))));
        assert!(matches!(
            parse_algebra(&base(r#"{"twist":[[1,0]]}"#)),
            Err(DocumentError::Shape(_))
        ));
        assert!(matches!(
            parse_algebra(&base(r#"{"binary":[{"i":0,"j":0,"value":[1,0]}],"twist":[[1,0],[0,1]]}"#)),
            Err(DocumentError::Algebra(AlgebraError::DiagonalEntry(_)))
        ));
        assert!(matches!(
            parse_algebra(&base(r#"{"binary":[{"i":0,"j":1,"value":["x",0]}],"twist":[[1,0],[0,1]]}"#)),
            Err(DocumentError::Scalar { .. })
        ));
        assert!(matches!(
            parse_algebra(r#"{"header":{"field":{"Fp":4},"dim":0},"body":{"twist":[]}}"#),
            Err(DocumentError::Scalar { .. })
        ));
        let err = parse_algebra(r#"{"header":{"field":"Q"},"body":{"twist":[]}}"#).unwrap_err();
        assert!(err.to_string().contains("dim"), "{err}");
    }

    #[test]
    fn factor_set_and_witness_roundtrip() {
        let f = Field::Rational;
        let mut fs = FactorSet::zero(f, 2, 1);
        fs.set_pi2(0, 1, vec![f.from_i64(1)]);
        fs.set_pi2(1, 0, vec![f.from_i64(-1)]);
        let back = parse_factor_set(&factor_set_to_value(&fs).to_string()).unwrap();
        assert_eq!(back, fs);
        let w = IsoclinismWitness {
            theta: Matrix::from_i64(f, &[&[0, 1], &[1, 0]]),
            beta: Matrix::identity(f, 0),
        };
        assert_eq!(parse_witness(&witness_to_value(&w).to_string()).unwrap(), w);
    }
}
