//! Exact elimination kernels over any [`Field`], plus a tolerance-based rank
//! for `f64` matrices.

use super::{AlgebraError, Field, Matrix, ScalarZero, ZeroPattern};

/// Incremental reduced basis: rows kept in echelon form together with their
/// pivot columns. Feeding vectors one at a time yields the greedy
/// (lexicographically-first) basis of the sequence.
struct ReducedBasis<'f, F: Field> {
    field: &'f F,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<'f, F: Field> ReducedBasis<'f, F> {
    fn new(field: &'f F) -> Self {
        ReducedBasis {
            field,
            rows: Vec::new(),
        }
    }

    /// Returns true when `v` was independent of the current basis.
    fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !f.is_zero(&v[*pivot]) {
                let c = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pivot]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if !f.is_zero(&row[pivot]) {
                let c = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

fn greedy_basis<F: Field>(field: &F, vectors: impl Iterator<Item = Vec<F::Elem>>) -> Vec<usize> {
    let mut basis = ReducedBasis::new(field);
    vectors
        .enumerate()
        .filter_map(|(i, v)| basis.insert(&v).then_some(i))
        .collect()
}

/// Rank by exact Gaussian elimination.
///
/// ```
/// use minrank_lab::algebra::{mat_rank, Matrix, Rationals};
/// let m = Matrix::from_i64_rows(&Rationals, &[&[1, 2], &[2, 4]]).unwrap();
/// assert_eq!(mat_rank(&Rationals, &m), 1);
/// ```
pub fn mat_rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // eliminate along the shorter side
    if m.n_rows() <= m.n_cols() {
        greedy_basis(field, (0..m.n_rows()).map(|i| m.row(i).to_vec())).len()
    } else {
        greedy_basis(field, (0..m.n_cols()).map(|j| m.column(j))).len()
    }
}

/// Lexicographically-first row basis and column basis, both ascending.
pub fn row_col_bases<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Vec<usize>, Vec<usize>) {
    let rows = greedy_basis(field, (0..m.n_rows()).map(|i| m.row(i).to_vec()));
    let cols = greedy_basis(field, (0..m.n_cols()).map(|j| m.column(j)));
    (rows, cols)
}

pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<F::Elem, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::Shape(format!(
            "determinant of a {}x{} matrix",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let n = m.n_rows();
    let mut a = m.to_rows();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return Ok(field.zero());
        };
        if p != col {
            a.swap(p, col);
            det = field.neg(&det);
        }
        let pivot = a[col][col].clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot)?;
        let (top, below) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in below {
            if field.is_zero(&row[col]) {
                continue;
            }
            let c = field.mul(&row[col], &inv);
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = field.sub(x, &field.mul(&c, y));
            }
        }
    }
    Ok(det)
}

/// Solves `A x = b` by Cramer's rule: `x_j = det(A_j) / det(A)` where `A_j`
/// is `A` with column `j` replaced by `b`.
pub fn cramer_solve<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &[F::Elem],
) -> Result<Vec<F::Elem>, AlgebraError> {
    if !a.is_square() || b.len() != a.n_rows() {
        return Err(AlgebraError::Shape(format!(
            "system {}x{} with right-hand side of length {}",
            a.n_rows(),
            a.n_cols(),
            b.len()
        )));
    }
    let det = determinant(field, a)?;
    if field.is_zero(&det) {
        return Err(AlgebraError::Singular);
    }
    let inv_det = field.inv(&det)?;
    let n = a.n_rows();
    (0..n)
        .map(|j| {
            let replaced = Matrix::from_fn(
                n,
                n,
                |r, c| {
                    if c == j {
                        b[r].clone()
                    } else {
                        a.get(r, c).clone()
                    }
                },
            );
            Ok(field.mul(&determinant(field, &replaced)?, &inv_det))
        })
        .collect()
}

/// Checks that every column `l >= k` equals the combination of the first `k`
/// columns whose coefficients Cramer's rule reads off the leading `k x k`
/// block.
pub fn column_expansion_check<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    k: usize,
) -> Result<bool, AlgebraError> {
    if k == 0 || k > m.n_rows() || k > m.n_cols() {
        return Err(AlgebraError::Shape(format!(
            "leading block of size {k} in a {}x{} matrix",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let lead: Vec<usize> = (0..k).collect();
    let block = m.select(&lead, &lead)?;
    if field.is_zero(&determinant(field, &block)?) {
        return Err(AlgebraError::SingularLeadingBlock);
    }
    for l in k..m.n_cols() {
        let top: Vec<F::Elem> = (0..k).map(|i| m.get(i, l).clone()).collect();
        let coef = cramer_solve(field, &block, &top)?;
        for i in 0..m.n_rows() {
            let combo = (0..k).fold(field.zero(), |acc, j| {
                field.add(&acc, &field.mul(&coef[j], m.get(i, j)))
            });
            if combo != *m.get(i, l) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Entrywise product.
pub fn hadamard<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<Matrix<F::Elem>, AlgebraError> {
    if a.n_rows() != b.n_rows() || a.n_cols() != b.n_cols() {
        return Err(AlgebraError::Shape(format!(
            "hadamard of {}x{} and {}x{}",
            a.n_rows(),
            a.n_cols(),
            b.n_rows(),
            b.n_cols()
        )));
    }
    Matrix::from_vec(
        a.n_rows(),
        a.n_cols(),
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| field.mul(x, y))
            .collect(),
    )
}

/// Rows and columns restricted to `subset`, order preserved.
pub fn principal_submatrix<T: Clone>(m: &Matrix<T>, subset: &[usize]) -> Result<Matrix<T>, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::Shape(
            "principal submatrix of a non-square matrix".into(),
        ));
    }
    m.select(subset, subset)
}

pub fn zero_pattern<T: ScalarZero + Clone>(m: &Matrix<T>) -> ZeroPattern {
    ZeroPattern::from_symbols(m.entries().iter().map(|x| !x.is_domain_zero()).collect())
}

/// Default relative pivot tolerance for [`real_rank`].
pub const DEFAULT_TOL: f64 = 1e-9;

/// Rank of a float matrix by elimination with partial pivoting. A pivot counts
/// as zero when `|pivot| <= tol * max|m_ij|` (the zero matrix uses scale 1).
pub fn real_rank(m: &Matrix<f64>, tol: f64) -> Result<usize, AlgebraError> {
    if m.entries().iter().any(|x| !x.is_finite()) {
        return Err(AlgebraError::NonFinite);
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(AlgebraError::NonFinite);
    }
    let max_abs = m.entries().iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let threshold = tol * if max_abs == 0.0 { 1.0 } else { max_abs };
    let mut a = m.to_rows();
    let (rows, cols) = (m.n_rows(), m.n_cols());
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let (p, best) = (rank..rows)
            .map(|r| (r, a[r][col].abs()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= threshold {
            continue;
        }
        a.swap(p, rank);
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let c = row[col] / pivot_row[col];
            if c != 0.0 {
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= c * y;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}
