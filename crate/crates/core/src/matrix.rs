//! Dense exact matrices over `BigInt` and `BigRational`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::ParikhVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    /// `self - s·I`.
    pub fn shift(&self, s: &T) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i).clone() - s.clone();
            m.set(i, i, v);
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |acc, i| acc + v[i].clone() * self.get(i, j).clone()))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }
}

impl<'a, T: Clone + Num> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<'a, T: Clone + Num> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, T: Clone + Num> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn to_rational(&self) -> RatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn apply(&self, v: &ParikhVector) -> ParikhVector {
        ParikhVector::from_counts(self.mul_vec(v.counts()))
            .expect("non-negative matrix maps Parikh vectors to Parikh vectors")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Inverse over the rationals. Forward elimination is fraction-free
    /// (Bareiss), so intermediate entries stay integral and exact.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let w = 2 * n;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                row
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, pivot);
            for i in k + 1..n {
                for j in k + 1..w {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        // a = [U | L'] with U upper triangular; back-substitute U X = L'.
        let mut x = RatMatrix::zeros(n, n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = BigRational::from_integer(a[i][n + col].clone());
                for j in i + 1..n {
                    acc -= BigRational::from_integer(a[i][j].clone()) * x.get(j, col);
                }
                x.set(i, col, acc / BigRational::from_integer(a[i][i].clone()));
            }
        }
        Ok(x)
    }
}

impl RatMatrix {
    /// `Some` when every entry is an integer.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(Matrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| x.to_integer()).collect(),
            })
        } else {
            None
        }
    }
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(r))
    }

    #[test]
    fn product_and_power() {
        let fib = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        let p = fib.pow(10);
        assert_eq!(p.get(0, 1), &BigInt::from(55));
        assert!(fib.pow(0).is_identity());
        assert_eq!(&fib * &fib, fib.pow(2));
    }

    #[test]
    fn inverse_is_exact() {
        let m = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!((&m.to_rational() * &inv).is_identity());
        assert!((&inv * &m.to_rational()).is_identity());
    }

    #[test]
    fn inverse_needs_pivoting() {
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.to_integer().unwrap(), m);
    }

    #[test]
    fn singular_is_rejected() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn three_minus_m_inverse_column_for_smallest_phi() {
        // M of 0→01, 1→02, 2→022.
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 2]]);
        let three = IntMatrix::identity(3).scale(&BigInt::from(3));
        let inv = (&three - &m).inverse().unwrap();
        assert_eq!(inv.column(0), vec![q(3, 4), q(1, 4), q(1, 4)]);
    }

    #[test]
    fn row_vector_product() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let v = vec![BigInt::from(1), BigInt::from(1)];
        assert_eq!(m.vec_mul(&v), vec![BigInt::from(4), BigInt::from(6)]);
        assert_eq!(m.transpose().mul_vec(&v), m.vec_mul(&v));
    }
}
