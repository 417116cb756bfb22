//! Dense matrices over an exact [`Ring`].

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::ring::{Conjugate, Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible over its ring (determinant {determinant})")]
    NotInvertible { determinant: String },
    #[error("ragged rows: expected {expected} columns, found {found}")]
    Ragged { expected: usize, found: usize },
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, MatrixError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(MatrixError::Ragged {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    /// Integer entries, for tests and fixed tables.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| R::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular integer table")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<S>, E>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in add"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sub"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| c.mul(x))
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch in mul: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Kronecker product; row index of `self` is the major digit.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            let a = self.get(i / rhs.rows, j / rhs.cols);
            if a.is_zero() {
                R::zero()
            } else {
                a.mul(rhs.get(i % rhs.rows, j % rhs.cols))
            }
        })
    }

    pub fn direct_sum(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows + rhs.rows, self.cols + rhs.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => rhs.get(i - self.rows, j - self.cols).clone(),
                _ => R::zero(),
            }
        })
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    fn require_square(&self) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<R, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut m = self.clone();
        let mut prev = R::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&p| !m.get(p, k).is_zero()) else {
                    return Ok(R::zero());
                };
                m.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let factor = m.get(i, k).clone();
                for j in k + 1..n {
                    let num = pivot.mul(m.get(i, j)).sub(&factor.mul(m.get(k, j)));
                    let val = num.exact_div(&prev).expect("Bareiss division is exact");
                    m.set(i, j, val);
                }
                m.set(i, k, R::zero());
            }
            prev = pivot;
        }
        let det = m.get(n - 1, n - 1).clone();
        Ok(if negate { det.neg() } else { det })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse by fraction-free Gauss-Jordan elimination on `[B | I]`.
    ///
    /// The elimination ends at `[d*I | d*B^-1]` with `d = +-det(B)`; the
    /// inverse exists over the ring exactly when `d` is a unit.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let width = 2 * n;
        let mut m = Matrix::from_fn(n, width, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                R::one()
            } else {
                R::zero()
            }
        });
        let mut prev = R::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&p| !m.get(p, k).is_zero()) else {
                return Err(MatrixError::NotInvertible {
                    determinant: R::zero().to_string(),
                });
            };
            m.swap_rows(k, p);
            let pivot = m.get(k, k).clone();
            for i in (0..n).filter(|&i| i != k) {
                let factor = m.get(i, k).clone();
                for j in (0..width).filter(|&j| j != k) {
                    let num = pivot.mul(m.get(i, j)).sub(&factor.mul(m.get(k, j)));
                    let val = num
                        .exact_div(&prev)
                        .expect("fraction-free Gauss-Jordan division is exact");
                    m.set(i, j, val);
                }
                m.set(i, k, R::zero());
            }
            prev = pivot;
        }
        let d = prev;
        let Some(d_inv) = d.unit_inverse() else {
            return Err(MatrixError::NotInvertible {
                determinant: d.to_string(),
            });
        };
        Ok(Matrix::from_fn(n, n, |i, j| m.get(i, n + j).mul(&d_inv)))
    }

    /// Inverse by Cramer's rule (adjugate over determinant); ranks up to 4.
    pub fn cramer_inverse(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        let n = self.rows;
        assert!(n <= 4, "Cramer inverse is only used for rank <= 4");
        let det = laplace_det(self);
        let Some(det_inv) = det.unit_inverse() else {
            return Err(MatrixError::NotInvertible {
                determinant: det.to_string(),
            });
        };
        Ok(Matrix::from_fn(n, n, |i, j| {
            // adj(B)_{ij} = (-1)^{i+j} M_{ji}
            let minor = laplace_det(&self.minor(j, i));
            let cof = if (i + j) % 2 == 0 { minor } else { minor.neg() };
            cof.mul(&det_inv)
        }))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let si = if i < skip_row { i } else { i + 1 };
            let sj = if j < skip_col { j } else { j + 1 };
            self.get(si, sj).clone()
        })
    }
}

fn laplace_det<R: Ring>(m: &Matrix<R>) -> R {
    match m.rows {
        0 => R::one(),
        1 => m.get(0, 0).clone(),
        n => (0..n).fold(R::zero(), |acc, j| {
            let term = m.get(0, j).mul(&laplace_det(&m.minor(0, j)));
            if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        }),
    }
}

impl<F: Field> Matrix<F> {
    /// Rank by Gaussian elimination over a field.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&p| !m.get(p, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m
                .get(rank, col)
                .unit_inverse()
                .expect("nonzero field element");
            for i in rank + 1..m.rows {
                let factor = m.get(i, col).mul(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(rank, j)));
                    m.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<R: Conjugate> Matrix<R> {
    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }
}

impl Matrix<Complex64> {
    /// Rank with singular threshold `tol`, by partial-pivot elimination.
    pub fn numeric_rank(&self, tol: f64) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows)
                .max_by(|&a, &b| m.get(a, col).norm().total_cmp(&m.get(b, col).norm()))
                .filter(|&p| m.get(p, col).norm() > tol)
            else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = *m.get(rank, col);
            for i in rank + 1..m.rows {
                let factor = m.get(i, col) / pivot;
                for j in col..m.cols {
                    let v = m.get(i, j) - factor * m.get(rank, j);
                    m.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Largest entrywise distance to `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum()
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
