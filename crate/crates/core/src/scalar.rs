//! Exact field elements over Q and small prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Field descriptor shared by every scalar in one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("modulus {0} is not a prime below 2^31")]
    BadModulus(u64),
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { text: String, field: Field },
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Validated prime field constructor.
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(ScalarError::BadModulus(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { residue: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                residue: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Rational `num/den`; over F_p the denominator is inverted.
    pub fn from_ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Rational => Scalar::Rational(BigRational::new(num.into(), den.into())),
            Field::Prime(_) => {
                let d = self.from_i64(den);
                let inv = d.inv().expect("denominator divisible by the characteristic");
                &self.from_i64(num) * &inv
            }
        }
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    /// All field elements in residue order, for finite fields.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        self.modulus()
            .map(|p| (0..p).map(|r| Scalar::Prime { residue: r, modulus: p }).collect())
    }

    pub fn parse_scalar(self, text: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse {
            text: text.to_string(),
            field: self,
        };
        let t = text.trim();
        match self {
            Field::Rational => {
                let value = match t.split_once('/') {
                    Some((n, d)) => {
                        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
                        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
                        if d.is_zero() {
                            return Err(err());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(BigInt::from_str(t).map_err(|_| err())?),
                };
                Ok(Scalar::Rational(value))
            }
            Field::Prime(_) => match t.split_once('/') {
                Some((n, d)) => {
                    let n: i64 = n.trim().parse().map_err(|_| err())?;
                    let d: i64 = d.trim().parse().map_err(|_| err())?;
                    let d = self.from_i64(d).inv().ok_or_else(err)?;
                    Ok(&self.from_i64(n) * &d)
                }
                None => Ok(self.from_i64(t.parse().map_err(|_| err())?)),
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact scalar. Rationals are kept in lowest terms by `BigRational`;
/// residues satisfy `0 <= residue < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: pow_mod(*residue as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    /// Small integer view, used for entry ordering and search enumeration.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime { residue, .. } => Some(*residue as i64),
        }
    }

    /// Serialization form: `"a/b"` strings over Q, plain integers over F_p.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(_) => serde_json::Value::String(self.to_string()),
            Scalar::Prime { residue, .. } => serde_json::Value::from(*residue),
        }
    }

    pub fn from_json(field: Field, value: &serde_json::Value) -> Result<Scalar, ScalarError> {
        match value {
            serde_json::Value::String(s) => field.parse_scalar(s),
            serde_json::Value::Number(n) => field.parse_scalar(&n.to_string()),
            other => Err(ScalarError::Parse {
                text: other.to_string(),
                field,
            }),
        }
    }

    fn check_same(&self, other: &Scalar) {
        debug_assert_eq!(self.field(), other.field(), "mixed-field arithmetic");
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { residue: a, modulus }, Scalar::Prime { residue: b, .. }) => {
                Scalar::Prime {
                    residue: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { residue: a, modulus }, Scalar::Prime { residue: b, .. }) => {
                let m = *modulus as u64;
                Scalar::Prime {
                    residue: ((*a as u64 + m - *b as u64) % m) as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { residue: a, modulus }, Scalar::Prime { residue: b, .. }) => {
                Scalar::Prime {
                    residue: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: (*modulus - *residue) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Sort key placing entries in the order 0, 1, -1, 2, -2, ... over Q and
/// residue order over F_p.
pub fn entry_rank(s: &Scalar) -> (u64, u8) {
    match s {
        Scalar::Rational(r) => {
            let n = r.to_integer();
            let a = n.abs().to_u64().unwrap_or(u64::MAX);
            (a, if n.is_negative() { 1 } else { 0 })
        }
        Scalar::Prime { residue, .. } => (*residue as u64, 0),
    }
}
