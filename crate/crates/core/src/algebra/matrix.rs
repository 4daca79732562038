use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{AlgebraError, Field};

/// Dense row-major matrix. Arithmetic goes through a [`Field`] passed
/// alongside, so the container itself is domain-agnostic.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Rows `rows` and columns `cols`, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self, AlgebraError> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(AlgebraError::IndexOutOfRange(bad, self.rows));
        }
        if let Some(&bad) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(AlgebraError::IndexOutOfRange(bad, self.cols));
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), |a, b| {
            self.get(rows[a], cols[b]).clone()
        }))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Field-aware constructors and products.
impl<T: Clone> Matrix<T> {
    pub fn identity<F: Field<Elem = T>>(field: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn zeros<F: Field<Elem = T>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, field.zero())
    }

    pub fn ones<F: Field<Elem = T>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, field.one())
    }

    pub fn from_i64_rows<F: Field<Elem = T>>(field: &F, rows: &[&[i64]]) -> Result<Self, AlgebraError> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn mul<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(field.zero(), |acc, t| {
                field.add(&acc, &field.mul(self.get(i, t), other.get(t, j)))
            })
        }))
    }

    pub fn mul_vec<F: Field<Elem = T>>(&self, field: &F, v: &[T]) -> Result<Vec<T>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect())
    }

    pub fn count_nonzeros<F: Field<Elem = T>>(&self, field: &F) -> usize {
        self.data.iter().filter(|x| !field.is_zero(x)).count()
    }
}

/// Element types with a distinguished zero, used for zero-patterns.
pub trait ScalarZero {
    fn is_domain_zero(&self) -> bool;
}

impl ScalarZero for u32 {
    /// Residues are canonical, so zero means the literal 0.
    fn is_domain_zero(&self) -> bool {
        *self == 0
    }
}

impl ScalarZero for BigRational {
    fn is_domain_zero(&self) -> bool {
        self.is_zero()
    }
}

impl ScalarZero for f64 {
    fn is_domain_zero(&self) -> bool {
        *self == 0.0
    }
}
