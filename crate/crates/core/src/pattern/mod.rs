//! Zero-patterns: of polynomial families, and of sparse low-rank matrices.
//!
//! [`zero_patterns_of_family`] enumerates the patterns a family of
//! polynomials takes over GF(q) and [`rbg_bound`] caps their number.
//! [`nks_witness`] recognizes (n, k, s)-matrices, [`nks_census`] counts their
//! patterns for tiny `n` against [`lemma24_bound`], and
//! [`turan_min_nonzeros`] is the sparsity floor of a rank-k matrix with a
//! nonzero diagonal.

mod census;
mod nks;
mod poly;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use statrs::function::factorial::ln_binomial;
use thiserror::Error;

use crate::algebra::{AlgebraError, PrimeField, ZeroPattern};

pub use census::{
    count_nks_zero_patterns, nks_census, nks_census_with_limit, CensusEntry, DEFAULT_CENSUS_LIMIT,
};
pub use nks::{
    find_nks_principal_submatrix, find_nks_principal_submatrix_with_limit, nks_witness,
    nks_witness_with_limit, NksWitness, DEFAULT_NKS_LIMIT, DEFAULT_PRINCIPAL_LIMIT,
};
pub use poly::{poly_eval, MultiPoly};

/// Default cap on the number of points `q^N` a family is evaluated at.
pub const DEFAULT_FAMILY_LIMIT: u128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PatternError {
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("enumeration of {size} items exceeds limit {limit}")]
    LimitExceeded { size: u128, limit: u128 },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("lemma counterexample: no principal submatrix of the {n}x{n} rank-{k} matrix qualifies")]
    LemmaCounterexample { n: usize, k: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed polynomial: {0}")]
    Parse(String),
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Distinct zero-patterns of `polys` over all points of GF(q)^N.
///
/// ```
/// use minrank_lab::algebra::PrimeField;
/// use minrank_lab::pattern::{zero_patterns_of_family, MultiPoly};
///
/// let f2 = PrimeField::new(2).unwrap();
/// let x = MultiPoly::var(&f2, 1, 0).unwrap();
/// let x1 = x.add(&f2, &MultiPoly::constant(&f2, 1, 1)).unwrap();
/// let pats = zero_patterns_of_family(&[x, x1], f2).unwrap();
/// let shown: Vec<String> = pats.iter().map(|p| p.to_string()).collect();
/// assert_eq!(shown, ["0*", "*0"]);
/// ```
pub fn zero_patterns_of_family(
    polys: &[MultiPoly<u32>],
    field: PrimeField,
) -> Result<BTreeSet<ZeroPattern>, PatternError> {
    zero_patterns_of_family_with_limit(polys, field, DEFAULT_FAMILY_LIMIT)
}

pub fn zero_patterns_of_family_with_limit(
    polys: &[MultiPoly<u32>],
    field: PrimeField,
    limit: u128,
) -> Result<BTreeSet<ZeroPattern>, PatternError> {
    let Some(first) = polys.first() else {
        return Ok(BTreeSet::from([ZeroPattern::from_symbols(Vec::new())]));
    };
    let nv = first.num_vars();
    if let Some(p) = polys.iter().find(|p| p.num_vars() != nv) {
        return Err(PatternError::Arity {
            expected: nv,
            got: p.num_vars(),
        });
    }
    let q = field.modulus();
    let size = (q as u128).checked_pow(nv as u32).unwrap_or(u128::MAX);
    if size > limit {
        return Err(PatternError::LimitExceeded { size, limit });
    }
    let mut out = BTreeSet::new();
    let mut point = vec![0u32; nv];
    loop {
        let symbols = polys
            .iter()
            .map(|p| p.eval(&field, &point).map(|v| v != 0))
            .collect::<Result<Vec<_>, _>>()?;
        out.insert(ZeroPattern::from_symbols(symbols));
        // odometer over GF(q)^N
        let Some(i) = point.iter().position(|&x| x + 1 < q) else {
            break;
        };
        point[i] += 1;
        point[..i].fill(0);
    }
    Ok(out)
}

/// `C(md + N, N)`: at most this many zero-patterns arise from `m`
/// polynomials of degree at most `d` in `N` variables.
///
/// ```
/// use minrank_lab::pattern::rbg_bound;
/// assert_eq!(rbg_bound(1, 1, 1), 2u32.into());
/// assert_eq!(rbg_bound(3, 2, 2), 28u32.into());
/// ```
pub fn rbg_bound(m: u64, d: u64, num_vars: u64) -> BigUint {
    let top = BigUint::from(m) * BigUint::from(d) + BigUint::from(num_vars);
    num_integer::binomial(top, BigUint::from(num_vars))
}

/// `ln(C(n,k)^2) + (20ks/n) ln n`, the log of the (n, k, s) pattern-count bound.
pub fn lemma24_bound(n: usize, k: usize, s: usize) -> Result<f64, PatternError> {
    if k == 0 || k > n || s > n * n {
        return Err(PatternError::InvalidParameters(format!(
            "need 1 <= k <= n and s <= n^2, got n={n} k={k} s={s}"
        )));
    }
    let (nf, kf, sf) = (n as f64, k as f64, s as f64);
    Ok(2.0 * ln_binomial(n as u64, k as u64) + 20.0 * kf * sf / nf * nf.ln())
}

/// `n^2 / (4k)` exactly: the fewest nonzeros a rank-k n x n matrix with a
/// nonzero diagonal can have.
pub fn turan_min_nonzeros(n: u64, k: u64) -> Result<BigRational, PatternError> {
    if k == 0 {
        return Err(PatternError::InvalidParameters("k must be positive".into()));
    }
    Ok(BigRational::new(
        BigInt::from(n) * BigInt::from(n),
        BigInt::from(4) * BigInt::from(k),
    ))
}
