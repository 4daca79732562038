//! Scalar domains and matrix primitives.
//!
//! Exact work happens over a [`Field`]: [`PrimeField`] (GF(q), residues as
//! `u32`) or [`Rationals`] (`BigRational`). Floating-point matrices are plain
//! `Matrix<f64>` and only support the tolerance-based [`real_rank`].

mod field;
mod json;
mod linalg;
mod matrix;

use std::fmt;

use thiserror::Error;

pub use field::{field_inverse, is_prime, Field, PrimeField, Rationals, MAX_PRIME};
pub use json::{parse_rational, AnyMatrix, Domain};
pub use linalg::{
    column_expansion_check, cramer_solve, determinant, hadamard, mat_rank, principal_submatrix, real_rank,
    row_col_bases, zero_pattern, DEFAULT_TOL,
};
pub use matrix::{Matrix, ScalarZero};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("no inverse")]
    NoInverse,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field size {0} exceeds 2^16")]
    FieldTooLarge(u32),
    #[error("non-finite input")]
    NonFinite,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("singular system")]
    Singular,
    #[error("singular leading block")]
    SingularLeadingBlock,
    #[error("index {0} out of range for size {1}")]
    IndexOutOfRange(usize, usize),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("malformed matrix: {0}")]
    Parse(String),
}

/// Support signature of a sequence: `true` marks a nonzero (`*`) position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroPattern {
    symbols: Vec<bool>,
}

impl ZeroPattern {
    pub fn from_symbols(symbols: Vec<bool>) -> Self {
        ZeroPattern { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[bool] {
        &self.symbols
    }

    pub fn nonzeros(&self) -> usize {
        self.symbols.iter().filter(|&&s| s).count()
    }
}

impl fmt::Display for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            f.write_str(if s { "*" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZeroPattern({self})")
    }
}
