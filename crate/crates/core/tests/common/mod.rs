//! Brute-force oracles for the acceptance suite. Nothing here calls the
//! library: ranks, independence numbers and witness searches are recomputed
//! from first principles.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::io::Write;

/// One result line, written past the test harness's output capture.
pub fn report(id: u32, ok: bool, detail: &str) {
    let line = format!(
        "{} criterion {id:>2}: {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
}

/// Rank of a matrix over GF(q) by plain Gaussian elimination.
pub fn rank_mod(q: u32, rows: &[Vec<u32>]) -> usize {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64).collect())
        .collect();
    let q = q as u64;
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_multiple_of(q)) else {
            continue;
        };
        a.swap(rank, p);
        // Fermat inverse
        let mut inv = 1u64;
        let (mut base, mut e) = (a[rank][c] % q, q - 2);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[c].is_multiple_of(q) {
                let f = row[c] * inv % q;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + q * q - f * y % q) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of GF(2) rows given as bitmasks.
pub fn rank_gf2(rows: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Adjacency as a list of `(i, j)` pairs, `i < j`, decoded from an edge mask
/// over the pairs in lexicographic order.
pub fn edges_of_mask(n: usize, mask: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                out.push((i, j));
            }
            bit += 1;
        }
    }
    out
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(i, j) in edges {
        adj[i][j] = true;
        adj[j][i] = true;
    }
    adj
}

/// Minimum GF(2) rank over all matrices with unit diagonal, zeros on
/// non-edges and free entries on edges.
pub fn brute_minrank_gf2(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && adj[i][j])
        .collect();
    let mut best = n;
    for assign in 0u64..1 << free.len() {
        let mut rows: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for (b, &(i, j)) in free.iter().enumerate() {
            if assign >> b & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        best = best.min(rank_gf2(&rows));
        if best == 1 {
            break;
        }
    }
    best
}

pub fn brute_alpha(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|s| (0..n).all(|i| (0..n).all(|j| !(s >> i & 1 == 1 && s >> j & 1 == 1 && adj[i][j]))))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

fn nnz(rows: &[Vec<u32>]) -> usize {
    rows.iter().flatten().filter(|&&x| x != 0).count()
}

/// Rank, nonzero count, and whether row and column bases with
/// `n * (their nonzeros) <= 4ks` exist, found by exhaustive search.
pub fn witness_exists(q: u32, m: &[Vec<u32>]) -> (usize, usize, bool) {
    let n = m.len();
    let k = rank_mod(q, m);
    let s = nnz(m);
    if k == 0 {
        return (0, s, true);
    }
    let t: Vec<Vec<u32>> = (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect();
    let sparsest = |src: &[Vec<u32>]| {
        subsets(n, k)
            .into_iter()
            .map(|sub| sub.iter().map(|&i| src[i].clone()).collect::<Vec<_>>())
            .filter(|rows| rank_mod(q, rows) == k)
            .map(|rows| nnz(&rows))
            .min()
            .expect("a rank-k matrix has k independent rows")
    };
    let total = sparsest(m) + sparsest(&t);
    (k, s, n * total <= 4 * k * s)
}

/// `counts[k][s]` = number of supports of n x n GF(q) matrices of rank k
/// with s nonzeros that admit a witness.
pub fn brute_census(n: usize, q: u32) -> Vec<Vec<u64>> {
    let cells = n * n;
    let mut seen: Vec<Vec<BTreeSet<u32>>> = vec![vec![BTreeSet::new(); cells + 1]; n + 1];
    let total = (q as u64).pow(cells as u32);
    for code in 0..total {
        let mut c = code;
        let mut flat = vec![0u32; cells];
        for x in flat.iter_mut() {
            *x = (c % q as u64) as u32;
            c /= q as u64;
        }
        let m: Vec<Vec<u32>> = flat.chunks(n).map(<[u32]>::to_vec).collect();
        let (k, s, ok) = witness_exists(q, &m);
        if ok {
            let support = flat
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &x)| acc | ((x != 0) as u32) << i);
            seen[k][s].insert(support);
        }
    }
    seen.iter()
        .map(|row| row.iter().map(|set| set.len() as u64).collect())
        .collect()
}

/// Value of `sum c * x^e` over GF(q).
pub fn eval_terms(q: u32, terms: &[(Vec<u32>, u32)], point: &[u32]) -> u32 {
    let q = q as u64;
    terms.iter().fold(0u64, |acc, (e, c)| {
        let mono = e.iter().zip(point).fold(*c as u64 % q, |m, (&k, &x)| {
            (0..k).fold(m, |m, _| m * x as u64 % q)
        });
        (acc + mono) % q
    }) as u32
}

/// `C(n, k)` in u128.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
