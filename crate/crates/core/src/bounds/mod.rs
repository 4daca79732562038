//! The random-graph minrank threshold and the union bound behind it.
//!
//! All logarithms are natural. The threshold is a ratio of logarithms, so the
//! base cancels. [`union_bound_log`] works entirely in log-space and returns
//! `-inf` for an empty sum.

use rayon::prelude::*;
use statrs::function::factorial::ln_binomial;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

fn invalid(msg: String) -> BoundsError {
    BoundsError::InvalidParameters(msg)
}

fn check_p(p: f64) -> Result<(), BoundsError> {
    if p.is_finite() && p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("p = {p} is outside (0, 1]")))
    }
}

/// `(n, p, k)` with `1 <= k <= n` and `0 < p <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    n: u64,
    p: f64,
    k: u64,
}

impl BoundParams {
    pub fn new(n: u64, p: f64, k: u64) -> Result<Self, BoundsError> {
        check_p(p)?;
        if k == 0 || k > n {
            return Err(invalid(format!("k = {k} is outside 1..={n}")));
        }
        Ok(BoundParams { n, p, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }
}

/// `n ln(1/p) / (80 ln n)`.
///
/// ```
/// use minrank_lab::bounds::minrank_lower_threshold;
/// let t = minrank_lower_threshold(10_000, 0.5).unwrap();
/// assert!((t - 9.4072).abs() < 1e-3);
/// assert_eq!(minrank_lower_threshold(50, 1.0).unwrap(), 0.0);
/// ```
pub fn minrank_lower_threshold(n: u64, p: f64) -> Result<f64, BoundsError> {
    Ok(envelope(n, p)?.0)
}

/// `(threshold, n ln(1/p) / ln n)`: the proven lower bound and the scale
/// the minrank of G(n, p) grows at.
pub fn envelope(n: u64, p: f64) -> Result<(f64, f64), BoundsError> {
    check_p(p)?;
    if n < 2 {
        return Err(invalid(format!("n = {n} must be at least 2")));
    }
    let scale = n as f64 * (-p.ln()) / (n as f64).ln();
    // -ln 1 is -0.0; report a clean zero
    let scale = scale + 0.0;
    Ok((scale / 80.0, scale))
}

/// `ln(e^a + e^b)` with `-inf` as the identity.
fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln sum_{t < count} exp(first + t * ratio)`, summed in closed form.
fn log_geometric(first: f64, ratio: f64, count: u64) -> f64 {
    if count == 0 {
        return f64::NEG_INFINITY;
    }
    let c = count as f64;
    if ratio == 0.0 {
        first + c.ln()
    } else if ratio < 0.0 {
        first + (-(c * ratio).exp_m1()).ln() - (-ratio.exp_m1()).ln()
    } else {
        let last = first + (c - 1.0) * ratio;
        last + (-(-c * ratio).exp_m1()).ln() - (-(-ratio).exp_m1()).ln()
    }
}

/// Summation ranges and per-term pieces for one `(n', k')` pair:
/// the log-term is `head + s' * slope`, `s'` in `lo..=hi`.
struct Block {
    head: f64,
    slope: f64,
    lo: u64,
    hi: u64,
}

fn blocks(params: &BoundParams, n1: u64) -> impl Iterator<Item = Block> + '_ {
    let (n, k, lp) = (params.n, params.k, params.p.ln());
    // k' <= n'k/n rounded down and s' >= n'n/(4k) rounded up keep every
    // summed triple inside the constraint set
    let k_max = n1 * k / n;
    let lo = (n1 * n).div_ceil(4 * k).max(1);
    let hi = n1 * n1;
    let ln_n1 = (n1 as f64).ln();
    let outer = ln_binomial(n, n1) - n1 as f64 / 2.0 * lp;
    (1..=k_max).filter(move |_| lo <= hi).map(move |k1| Block {
        head: outer + 2.0 * ln_binomial(n1, k1),
        slope: 20.0 * k1 as f64 / n1 as f64 * ln_n1 + lp / 2.0,
        lo,
        hi,
    })
}

/// Natural log of the union bound on `Pr[minrank(G(n,p)) <= k]`:
///
/// `sum over n', k', s' of C(n,n') C(n',k')^2 n'^(20k's'/n') p^((s'-n')/2)`
///
/// with `1 <= n' <= n`, `1 <= k' <= n'k/n`, `n'n/(4k) <= s' <= n'^2`. The
/// `s'` sum is geometric and is evaluated in closed form, so the cost is
/// `O(n k)` log-gamma calls. Values above 0 mean the bound is vacuous.
pub fn union_bound_log(params: &BoundParams) -> Result<f64, BoundsError> {
    if params.p >= 1.0 {
        return Err(invalid(
            "p = 1 makes every term weightless; the bound is vacuous".into(),
        ));
    }
    let per_n1: Vec<f64> = (1..=params.n)
        .into_par_iter()
        .map(|n1| {
            blocks(params, n1)
                .map(|b| log_geometric(b.head + b.lo as f64 * b.slope, b.slope, b.hi - b.lo + 1))
                .fold(f64::NEG_INFINITY, log_add)
        })
        .collect();
    Ok(per_n1.into_iter().fold(f64::NEG_INFINITY, log_add))
}

/// The same sum, term by term. Quadratic in `n'` per block, so only for
/// small `n`; kept as a cross-check of the closed form.
pub fn union_bound_log_direct(params: &BoundParams) -> Result<f64, BoundsError> {
    if params.p >= 1.0 {
        return Err(invalid(
            "p = 1 makes every term weightless; the bound is vacuous".into(),
        ));
    }
    let mut acc = f64::NEG_INFINITY;
    for n1 in 1..=params.n {
        for b in blocks(params, n1) {
            for s1 in b.lo..=b.hi {
                acc = log_add(acc, b.head + s1 as f64 * b.slope);
            }
        }
    }
    Ok(acc)
}
