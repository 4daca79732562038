use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{AlgebraError, Matrix, PrimeField};

/// Scalar domain tag as it appears in JSON: `gf:<q>`, `rational` or `float`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Prime(PrimeField),
    Rational,
    Float,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Prime(field) => write!(f, "gf:{}", field.modulus()),
            Domain::Rational => f.write_str("rational"),
            Domain::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Domain {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Domain::Rational),
            "float" => Ok(Domain::Float),
            _ => {
                let q = s
                    .strip_prefix("gf:")
                    .and_then(|q| q.parse::<u32>().ok())
                    .ok_or_else(|| AlgebraError::Parse(format!("unknown domain {s:?}")))?;
                Ok(Domain::Prime(PrimeField::new(q)?))
            }
        }
    }
}

/// A matrix tagged with its domain, as read from or written to JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Prime(PrimeField, Matrix<u32>),
    Rational(Matrix<BigRational>),
    Float(Matrix<f64>),
}

/// Parses `"a/b"`, `"a"`, or a bare integer into a reduced rational.
pub fn parse_rational(v: &Value) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("not a rational: {v}"));
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(bad),
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s.trim(), "1"),
            };
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        _ => Err(bad()),
    }
}

pub(crate) fn rational_to_json(r: &BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

impl AnyMatrix {
    pub fn domain(&self) -> Domain {
        match self {
            AnyMatrix::Prime(f, _) => Domain::Prime(*f),
            AnyMatrix::Rational(_) => Domain::Rational,
            AnyMatrix::Float(_) => Domain::Float,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Prime(_, m) => (m.n_rows(), m.n_cols()),
            AnyMatrix::Rational(m) => (m.n_rows(), m.n_cols()),
            AnyMatrix::Float(m) => (m.n_rows(), m.n_cols()),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = match self {
            AnyMatrix::Prime(_, m) => m.to_rows().into_iter().map(|r| json!(r)).collect(),
            AnyMatrix::Rational(m) => m
                .to_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(rational_to_json).collect()))
                .collect(),
            AnyMatrix::Float(m) => m.to_rows().into_iter().map(|r| json!(r)).collect(),
        };
        json!({ "domain": self.domain().to_string(), "rows": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let domain: Domain = v
            .get("domain")
            .and_then(Value::as_str)
            .ok_or_else(|| AlgebraError::Parse("missing \"domain\"".into()))?
            .parse()?;
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::Parse("missing \"rows\"".into()))?;
        if rows.is_empty() {
            return Err(AlgebraError::Parse("matrix needs at least one row".into()));
        }
        let cells = |r: &Value| -> Result<Vec<Value>, AlgebraError> {
            r.as_array()
                .cloned()
                .ok_or_else(|| AlgebraError::Parse("row is not an array".into()))
        };
        let grid: Vec<Vec<Value>> = rows.iter().map(cells).collect::<Result<_, _>>()?;
        if grid[0].is_empty() {
            return Err(AlgebraError::Parse("matrix needs at least one column".into()));
        }
        match domain {
            Domain::Prime(field) => {
                let q = field.modulus() as u64;
                let parsed = grid
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| match x.as_u64() {
                                Some(v) if v < q => Ok(v as u32),
                                _ => Err(AlgebraError::Parse(format!("{x} is not a residue in [0, {q})"))),
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnyMatrix::Prime(field, Matrix::from_rows(parsed)?))
            }
            Domain::Rational => {
                let parsed = grid
                    .iter()
                    .map(|r| r.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnyMatrix::Rational(Matrix::from_rows(parsed)?))
            }
            Domain::Float => {
                let parsed = grid
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| {
                                x.as_f64()
                                    .ok_or_else(|| AlgebraError::Parse(format!("{x} is not a float")))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnyMatrix::Float(Matrix::from_rows(parsed)?))
            }
        }
    }

    /// Exact rank; float matrices are rejected.
    pub fn exact_rank(&self) -> Result<usize, AlgebraError> {
        match self {
            AnyMatrix::Prime(f, m) => Ok(super::mat_rank(f, m)),
            AnyMatrix::Rational(m) => Ok(super::mat_rank(&super::Rationals, m)),
            AnyMatrix::Float(_) => Err(AlgebraError::DomainMismatch(
                "exact rank of a float matrix; use real_rank".into(),
            )),
        }
    }
}
