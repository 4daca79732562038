//! Exhaustive count of (n, k, s)-matrix zero-patterns over GF(q).
//!
//! The fast path encodes rows as base-q integers and precomputes the lattice
//! of subspaces of GF(q)^n together with the transition "span of S plus v",
//! so the rank of any set of rows is a chain of table lookups. The outer
//! loop over the first row is sharded with rayon; shards merge by bitwise
//! OR, which makes the result independent of scheduling.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{lemma24_bound, nks_witness_with_limit, PatternError};
use crate::algebra::{zero_pattern, Matrix, PrimeField};

/// Default cap on the number of matrices `q^(n^2)` a census may enumerate.
pub const DEFAULT_CENSUS_LIMIT: u128 = 1 << 26;
/// Widest vector space the table kernel handles (`q^n` vectors).
const TABLE_MAX_VECTORS: usize = 128;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusEntry {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub q: u32,
    pub count: u64,
    /// Natural log of the counting bound for `(n, k, s)`.
    pub log_bound: f64,
}

impl CensusEntry {
    /// `ln(count) <= log_bound`; an empty class satisfies it vacuously.
    pub fn within_bound(&self) -> bool {
        self.count == 0 || (self.count as f64).ln() <= self.log_bound
    }
}

/// `found[pattern]` has bit `k` set iff some rank-k matrix with that support
/// admits a witness. Patterns are row-major bitmasks, bit `i*n + j`.
type Found = Vec<u8>;

/// Subspace lattice of GF(q)^n with vectors encoded in base q, digit `j`
/// being coordinate `j`.
struct Tables {
    n: usize,
    nv: usize,
    weight: Vec<u8>,
    support: Vec<u16>,
    digits: Vec<Vec<u8>>,
    dim: Vec<u8>,
    /// `step[id * nv + v]` is the id of span(subspace id, v).
    step: Vec<u16>,
    zero_space: u16,
}

impl Tables {
    fn new(n: usize, q: u32) -> Option<Self> {
        let nv = (q as usize).checked_pow(n as u32)?;
        if nv > TABLE_MAX_VECTORS {
            return None;
        }
        let q = q as usize;
        let digits: Vec<Vec<u8>> = (0..nv)
            .map(|v| (0..n).map(|j| (v / q.pow(j as u32) % q) as u8).collect())
            .collect();
        let encode = |d: &[u8]| d.iter().rev().fold(0usize, |acc, &x| acc * q + x as usize);
        let add = |a: usize, b: usize| -> usize {
            let d: Vec<u8> = digits[a]
                .iter()
                .zip(&digits[b])
                .map(|(x, y)| ((x + y) as usize % q) as u8)
                .collect();
            encode(&d)
        };
        let scale = |c: usize, a: usize| -> usize {
            let d: Vec<u8> = digits[a].iter().map(|&x| (x as usize * c % q) as u8).collect();
            encode(&d)
        };
        let weight = digits
            .iter()
            .map(|d| d.iter().filter(|&&x| x != 0).count() as u8)
            .collect();
        let support = digits
            .iter()
            .map(|d| {
                d.iter()
                    .enumerate()
                    .fold(0u16, |m, (j, &x)| m | ((x != 0) as u16) << j)
            })
            .collect();

        // subspaces as u128 membership sets, discovered breadth-first
        let mut sets: Vec<u128> = vec![1];
        let mut ids: HashMap<u128, u16> = HashMap::from([(1u128, 0u16)]);
        let mut dims: Vec<u8> = vec![0];
        let mut step: Vec<u16> = Vec::new();
        let mut id = 0;
        while id < sets.len() {
            let set = sets[id];
            for v in 0..nv {
                let next = if set >> v & 1 == 1 {
                    set
                } else {
                    let mut out = 0u128;
                    for w in (0..nv).filter(|w| set >> w & 1 == 1) {
                        for c in 0..q {
                            out |= 1 << add(w, scale(c, v));
                        }
                    }
                    out
                };
                let nid = *ids.entry(next).or_insert_with(|| {
                    sets.push(next);
                    dims.push(dims[id] + (next != set) as u8);
                    (sets.len() - 1) as u16
                });
                step.push(nid);
            }
            id += 1;
        }
        Some(Tables {
            n,
            nv,
            weight,
            support,
            digits,
            dim: dims,
            step,
            zero_space: 0,
        })
    }

    fn span(&self, vectors: &[usize], mask: u32) -> u16 {
        let mut id = self.zero_space;
        for (i, &v) in vectors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                id = self.step[id as usize * self.nv + v];
            }
        }
        id
    }

    /// Fewest nonzeros over sets of `k` independent vectors.
    fn sparsest_basis(&self, vectors: &[usize], k: usize) -> Option<usize> {
        (0u32..1 << vectors.len())
            .filter(|m| m.count_ones() as usize == k)
            .filter(|&m| self.dim[self.span(vectors, m) as usize] as usize == k)
            .map(|m| {
                vectors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &v)| self.weight[v] as usize)
                    .sum()
            })
            .min()
    }

    fn columns(&self, rows: &[usize], q: usize) -> Vec<usize> {
        (0..self.n)
            .map(|j| {
                rows.iter()
                    .rev()
                    .fold(0usize, |acc, &r| acc * q + self.digits[r][j] as usize)
            })
            .collect()
    }

    fn visit(&self, q: usize, rows: &mut Vec<usize>, space: u16, found: &mut Found) {
        let n = self.n;
        if rows.len() == n {
            let k = self.dim[space as usize] as usize;
            let pattern = rows
                .iter()
                .enumerate()
                .fold(0usize, |p, (i, &r)| p | (self.support[r] as usize) << (i * n));
            if found[pattern] >> k & 1 == 1 {
                return;
            }
            let s = pattern.count_ones() as usize;
            let row_nz = self.sparsest_basis(rows, k).expect("rank-k rows contain a basis");
            let col_nz = self
                .sparsest_basis(&self.columns(rows, q), k)
                .expect("rank-k columns contain a basis");
            if n * (row_nz + col_nz) <= 4 * k * s {
                found[pattern] |= 1 << k;
            }
            return;
        }
        for v in 0..self.nv {
            rows.push(v);
            self.visit(q, rows, self.step[space as usize * self.nv + v], found);
            rows.pop();
        }
    }
}

fn census_found_tables(n: usize, q: u32, t: &Tables) -> Found {
    let patterns = 1usize << (n * n);
    (0..t.nv)
        .into_par_iter()
        .fold(
            || vec![0u8; patterns],
            |mut found, first| {
                let mut rows = vec![first];
                let space = t.step[t.zero_space as usize * t.nv + first];
                t.visit(q as usize, &mut rows, space, &mut found);
                found
            },
        )
        .reduce(
            || vec![0u8; patterns],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        )
}

/// Reference path through the general matrix code.
pub(crate) fn census_found_generic(n: usize, field: PrimeField) -> Found {
    let q = field.modulus() as u64;
    let cells = n * n;
    let total = q.pow(cells as u32);
    let mut found = vec![0u8; 1 << cells];
    for code in 0..total {
        let mut c = code;
        let m = Matrix::from_fn(n, n, |_, _| {
            let x = (c % q) as u32;
            c /= q;
            x
        });
        if let Some(w) = nks_witness_with_limit(&field, &m, n).expect("square and within limit") {
            let pattern = zero_pattern(&m)
                .symbols()
                .iter()
                .enumerate()
                .fold(0usize, |p, (b, &nz)| p | (nz as usize) << b);
            found[pattern] |= 1 << w.k;
        }
    }
    found
}

fn check_size(n: usize, q: u32, limit: u128) -> Result<(), PatternError> {
    let size = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if n == 0 || size > limit || n * n > 26 {
        return Err(PatternError::LimitExceeded { size, limit });
    }
    Ok(())
}

fn census_found(n: usize, field: PrimeField, limit: u128) -> Result<Found, PatternError> {
    check_size(n, field.modulus(), limit)?;
    Ok(match Tables::new(n, field.modulus()) {
        Some(t) => census_found_tables(n, field.modulus(), &t),
        None => census_found_generic(n, field),
    })
}

/// `counts[k][s]`: distinct witnessed patterns of rank `k` with `s` nonzeros.
fn tally(n: usize, found: &Found) -> Vec<Vec<u64>> {
    let mut counts = vec![vec![0u64; n * n + 1]; n + 1];
    for (pattern, &bits) in found.iter().enumerate() {
        let s = pattern.count_ones() as usize;
        for (k, row) in counts.iter_mut().enumerate() {
            if bits >> k & 1 == 1 {
                row[s] += 1;
            }
        }
    }
    counts
}

/// Number of distinct zero-patterns among n x n matrices over GF(q) with
/// rank `k`, exactly `s` nonzeros, and an (n, k, s)-witness.
///
/// ```
/// use minrank_lab::algebra::PrimeField;
/// use minrank_lab::pattern::count_nks_zero_patterns;
///
/// let f2 = PrimeField::new(2).unwrap();
/// assert_eq!(count_nks_zero_patterns(2, 1, 1, f2).unwrap(), 4);
/// assert_eq!(count_nks_zero_patterns(2, 1, 4, f2).unwrap(), 1);
/// ```
pub fn count_nks_zero_patterns(n: usize, k: usize, s: usize, field: PrimeField) -> Result<u64, PatternError> {
    let found = census_found(n, field, DEFAULT_CENSUS_LIMIT)?;
    let counts = tally(n, &found);
    Ok(counts.get(k).and_then(|row| row.get(s)).copied().unwrap_or(0))
}

/// Every `(k, s)` with `1 <= k <= n`, `0 <= s <= n^2`, from one enumeration.
pub fn nks_census(n: usize, field: PrimeField) -> Result<Vec<CensusEntry>, PatternError> {
    nks_census_with_limit(n, field, DEFAULT_CENSUS_LIMIT)
}

pub fn nks_census_with_limit(
    n: usize,
    field: PrimeField,
    limit: u128,
) -> Result<Vec<CensusEntry>, PatternError> {
    let found = census_found(n, field, limit)?;
    let counts = tally(n, &found);
    let mut out = Vec::new();
    for (k, row) in counts.iter().enumerate().skip(1) {
        for (s, &count) in row.iter().enumerate() {
            out.push(CensusEntry {
                n,
                k,
                s,
                q: field.modulus(),
                count,
                log_bound: lemma24_bound(n, k, s)?,
            });
        }
    }
    Ok(out)
}
