//! Row spaces used by the search. Rows are kept in insertion-order echelon
//! form: each stored row is reduced against all earlier pivots, so reduction
//! in insertion order decides membership and `truncate` undoes `push`.

use crate::algebra::{field_inverse, PrimeField};

/// Widest graph the dense GF(q) backend handles.
pub const MAX_DENSE: usize = 32;

pub(crate) trait RowSpace {
    type Row: Copy;

    fn rank(&self) -> usize;
    /// Adds `row`; returns true when it was independent (rank grew).
    fn push(&mut self, row: Self::Row) -> bool;
    fn truncate(&mut self, rank: usize);
    /// Some vector of the span with coordinate `target` equal to 1 and zeros
    /// outside `allowed`.
    fn solve(&self, target: usize, allowed: u64) -> Option<Self::Row>;
    /// Cheaper yes/no version of [`RowSpace::solve`].
    fn feasible(&self, target: usize, allowed: u64) -> bool {
        self.solve(target, allowed).is_some()
    }
    fn to_residues(&self, row: &Self::Row) -> Vec<u32>;
}

/// GF(2) rows as bitmasks over at most 64 columns.
pub(crate) struct Gf2Space {
    n: usize,
    rows: Vec<u64>,
}

impl Gf2Space {
    pub fn new(n: usize) -> Self {
        debug_assert!(n <= 64);
        Gf2Space {
            n,
            rows: Vec::with_capacity(n),
        }
    }

    fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v >> r.trailing_zeros() & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    /// Coordinate functional of column `j` on the coefficient vector.
    fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, r)| acc | (r >> j & 1) << i)
    }

    fn forbidden(&self, allowed: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |j| allowed >> j & 1 == 0)
    }
}

/// Eliminates GF(2) equations `mask . c = rhs` in insertion order. Returns
/// `None` on inconsistency, else the pivot equations.
fn gf2_echelon(eqs: impl Iterator<Item = (u64, bool)>) -> Option<Vec<(u64, bool)>> {
    let mut piv: Vec<(u64, bool)> = Vec::new();
    for (mut m, mut b) in eqs {
        for &(pm, pb) in &piv {
            if m >> pm.trailing_zeros() & 1 == 1 {
                m ^= pm;
                b ^= pb;
            }
        }
        if m == 0 {
            if b {
                return None;
            }
        } else {
            piv.push((m, b));
        }
    }
    Some(piv)
}

impl RowSpace for Gf2Space {
    type Row = u64;

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn push(&mut self, row: u64) -> bool {
        let v = self.reduce(row);
        if v == 0 {
            false
        } else {
            self.rows.push(v);
            true
        }
    }

    fn truncate(&mut self, rank: usize) {
        self.rows.truncate(rank);
    }

    fn feasible(&self, target: usize, allowed: u64) -> bool {
        // solvable iff the target functional is outside the span of the
        // functionals that must vanish
        let mut basis: Vec<u64> = Vec::new();
        for j in self.forbidden(allowed) {
            let mut c = self.column(j);
            for &b in &basis {
                if c >> b.trailing_zeros() & 1 == 1 {
                    c ^= b;
                }
            }
            if c != 0 {
                basis.push(c);
            }
        }
        let mut t = self.column(target);
        for &b in &basis {
            if t >> b.trailing_zeros() & 1 == 1 {
                t ^= b;
            }
        }
        t != 0
    }

    fn solve(&self, target: usize, allowed: u64) -> Option<u64> {
        let eqs = self
            .forbidden(allowed)
            .map(|j| (self.column(j), false))
            .chain(std::iter::once((self.column(target), true)));
        let piv = gf2_echelon(eqs)?;
        let mut c = 0u64;
        for &(m, b) in piv.iter().rev() {
            let p = m.trailing_zeros();
            let rest = (m & c & !(1 << p)).count_ones() & 1 == 1;
            if b ^ rest {
                c |= 1 << p;
            }
        }
        Some(
            self.rows
                .iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .fold(0u64, |acc, (_, r)| acc ^ r),
        )
    }

    fn to_residues(&self, row: &u64) -> Vec<u32> {
        (0..self.n).map(|j| (row >> j & 1) as u32).collect()
    }
}

pub(crate) type DenseRow = [u16; MAX_DENSE];

/// GF(q) rows as fixed arrays; stored rows are scaled to pivot 1.
pub(crate) struct DenseSpace {
    n: usize,
    q: u32,
    rows: Vec<(usize, DenseRow)>,
}

impl DenseSpace {
    pub fn new(field: PrimeField, n: usize) -> Self {
        debug_assert!(n <= MAX_DENSE);
        DenseSpace {
            n,
            q: field.modulus(),
            rows: Vec::with_capacity(n),
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    fn sub_mul(&self, v: &mut [u16], r: &[u16], c: u32, len: usize) {
        for t in 0..len {
            let s = self.mul(c, r[t] as u32);
            v[t] = ((v[t] as u32 + self.q - s) % self.q) as u16;
        }
    }

    /// Solves the small system `A c = b` (rows of `eqs` are `[a_1..a_r | b]`)
    /// over GF(q), free variables set to zero.
    fn solve_system(&self, eqs: Vec<Vec<u32>>, r: usize) -> Option<Vec<u32>> {
        let mut piv: Vec<(usize, Vec<u32>)> = Vec::new();
        for mut e in eqs {
            for (p, pe) in &piv {
                let c = e[*p];
                if c != 0 {
                    for t in 0..=r {
                        let s = self.mul(c, pe[t]);
                        e[t] = (e[t] + self.q - s) % self.q;
                    }
                }
            }
            match (0..r).find(|&t| e[t] != 0) {
                None if e[r] != 0 => return None,
                None => {}
                Some(p) => {
                    let inv = field_inverse(self.q, e[p]).expect("nonzero");
                    for x in e.iter_mut() {
                        *x = self.mul(*x, inv);
                    }
                    piv.push((p, e));
                }
            }
        }
        let mut c = vec![0u32; r];
        for (p, e) in piv.iter().rev() {
            let mut val = e[r];
            for t in 0..r {
                if t != *p && e[t] != 0 {
                    val = (val + self.q - self.mul(e[t], c[t])) % self.q;
                }
            }
            c[*p] = val;
        }
        Some(c)
    }
}

impl RowSpace for DenseSpace {
    type Row = DenseRow;

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn push(&mut self, row: DenseRow) -> bool {
        let mut v = row;
        for (p, r) in &self.rows {
            let c = v[*p] as u32;
            if c != 0 {
                self.sub_mul(&mut v, r, c, self.n);
            }
        }
        let Some(p) = (0..self.n).find(|&t| v[t] != 0) else {
            return false;
        };
        let inv = field_inverse(self.q, v[p] as u32).expect("nonzero");
        for x in v.iter_mut().take(self.n) {
            *x = self.mul(*x as u32, inv) as u16;
        }
        self.rows.push((p, v));
        true
    }

    fn truncate(&mut self, rank: usize) {
        self.rows.truncate(rank);
    }

    fn solve(&self, target: usize, allowed: u64) -> Option<DenseRow> {
        let r = self.rows.len();
        let functional = |j: usize, rhs: u32| -> Vec<u32> {
            self.rows
                .iter()
                .map(|(_, row)| row[j] as u32)
                .chain(std::iter::once(rhs))
                .collect()
        };
        let eqs: Vec<Vec<u32>> = (0..self.n)
            .filter(|j| allowed >> j & 1 == 0)
            .map(|j| functional(j, 0))
            .chain(std::iter::once(functional(target, 1)))
            .collect();
        let c = self.solve_system(eqs, r)?;
        let mut out = [0u16; MAX_DENSE];
        for (ci, (_, row)) in c.iter().zip(&self.rows) {
            if *ci != 0 {
                for t in 0..self.n {
                    out[t] = ((out[t] as u32 + self.mul(*ci, row[t] as u32)) % self.q) as u16;
                }
            }
        }
        Some(out)
    }

    fn to_residues(&self, row: &DenseRow) -> Vec<u32> {
        row[..self.n].iter().map(|&x| x as u32).collect()
    }
}
