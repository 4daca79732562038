use serde::Serialize;

use super::{combinations, PatternError};
use crate::algebra::{mat_rank, principal_submatrix, Field, Matrix};

/// Largest matrix [`nks_witness`] accepts by default.
pub const DEFAULT_NKS_LIMIT: usize = 10;
/// Largest matrix [`find_nks_principal_submatrix`] accepts by default.
pub const DEFAULT_PRINCIPAL_LIMIT: usize = 8;

/// Certificate that a square matrix is an (n, k, s)-matrix: `k` is its rank,
/// `s` its nonzero count, and the listed rows and columns are bases whose
/// combined nonzero count `basis_nonzeros` satisfies `n * basis_nonzeros <= 4ks`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NksWitness {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub row_basis: Vec<usize>,
    pub col_basis: Vec<usize>,
    pub basis_nonzeros: usize,
}

impl NksWitness {
    /// The inequality itself, compared in integers.
    pub fn within_bound(&self) -> bool {
        self.n * self.basis_nonzeros <= 4 * self.k * self.s
    }

    /// Recomputes every field from `m` and checks the inequality.
    pub fn verify<F: Field>(&self, field: &F, m: &Matrix<F::Elem>) -> bool {
        let n = m.n_rows();
        if !m.is_square() || n != self.n {
            return false;
        }
        let all: Vec<usize> = (0..n).collect();
        let rows = match m.select(&self.row_basis, &all) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let cols = match m.select(&all, &self.col_basis) {
            Ok(c) => c,
            Err(_) => return false,
        };
        mat_rank(field, m) == self.k
            && m.count_nonzeros(field) == self.s
            && self.row_basis.len() == self.k
            && self.col_basis.len() == self.k
            && mat_rank(field, &rows) == self.k
            && mat_rank(field, &cols) == self.k
            && rows.count_nonzeros(field) + cols.count_nonzeros(field) == self.basis_nonzeros
            && self.within_bound()
    }
}

/// The sparsest set of `k` independent rows of `m` (lexicographically first
/// among ties) and its nonzero count.
fn sparsest_row_basis<F: Field>(field: &F, m: &Matrix<F::Elem>, k: usize) -> (Vec<usize>, usize) {
    let all: Vec<usize> = (0..m.n_cols()).collect();
    let mut best: Option<(Vec<usize>, usize)> = None;
    for rows in combinations(m.n_rows(), k) {
        let sub = m.select(&rows, &all).expect("indices in range");
        let nz = sub.count_nonzeros(field);
        if best.as_ref().is_some_and(|(_, b)| nz >= *b) {
            continue;
        }
        if mat_rank(field, &sub) == k {
            best = Some((rows, nz));
        }
    }
    best.expect("a rank-k matrix has k independent rows")
}

/// Searches for an (n, k, s)-witness of `m` with `k = rank`, `s = nonzeros`.
///
/// Row and column bases are chosen independently, each the sparsest
/// available, so `None` means no pair of bases meets `n * total <= 4ks`.
/// A zero matrix gets the empty witness.
///
/// ```
/// use minrank_lab::algebra::{Matrix, PrimeField};
/// use minrank_lab::pattern::nks_witness;
///
/// let f2 = PrimeField::new(2).unwrap();
/// let w = nks_witness(&f2, &Matrix::identity(&f2, 4)).unwrap().unwrap();
/// assert_eq!((w.n, w.k, w.s, w.basis_nonzeros), (4, 4, 4, 8));
///
/// // one all-ones row: 4 + 1 basis nonzeros exceed 4ks/n = 4
/// let mut m = Matrix::zeros(&f2, 4, 4);
/// for j in 0..4 {
///     m.set(0, j, 1);
/// }
/// assert_eq!(nks_witness(&f2, &m).unwrap(), None);
/// ```
pub fn nks_witness<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Option<NksWitness>, PatternError> {
    nks_witness_with_limit(field, m, DEFAULT_NKS_LIMIT)
}

pub fn nks_witness_with_limit<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    limit: usize,
) -> Result<Option<NksWitness>, PatternError> {
    if !m.is_square() {
        return Err(PatternError::NotSquare(m.n_rows(), m.n_cols()));
    }
    let n = m.n_rows();
    if n > limit {
        return Err(PatternError::LimitExceeded {
            size: n as u128,
            limit: limit as u128,
        });
    }
    let k = mat_rank(field, m);
    let s = m.count_nonzeros(field);
    let (row_basis, row_nz) = sparsest_row_basis(field, m, k);
    let (col_basis, col_nz) = sparsest_row_basis(field, &m.transpose(), k);
    let w = NksWitness {
        n,
        k,
        s,
        row_basis,
        col_basis,
        basis_nonzeros: row_nz + col_nz,
    };
    Ok(w.within_bound().then_some(w))
}

/// First nonempty `S`, by size and then lexicographically, whose principal
/// submatrix has an (n', k', s')-witness with `k'/n' <= k/n`.
///
/// Not finding one would contradict the principal-submatrix lemma, so that
/// outcome is reported as [`PatternError::LemmaCounterexample`].
pub fn find_nks_principal_submatrix<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
) -> Result<(Vec<usize>, NksWitness), PatternError> {
    find_nks_principal_submatrix_with_limit(field, m, DEFAULT_PRINCIPAL_LIMIT)
}

pub fn find_nks_principal_submatrix_with_limit<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    limit: usize,
) -> Result<(Vec<usize>, NksWitness), PatternError> {
    if !m.is_square() {
        return Err(PatternError::NotSquare(m.n_rows(), m.n_cols()));
    }
    let n = m.n_rows();
    if n > limit {
        return Err(PatternError::LimitExceeded {
            size: n as u128,
            limit: limit as u128,
        });
    }
    let k = mat_rank(field, m);
    for size in 1..=n {
        for subset in combinations(n, size) {
            let sub = principal_submatrix(m, &subset)?;
            if let Some(w) = nks_witness_with_limit(field, &sub, size)? {
                // k'/n' <= k/n
                if w.k * n <= k * size {
                    return Ok((subset, w));
                }
            }
        }
    }
    Err(PatternError::LemmaCounterexample { n, k })
}
