//! Small dense matrices over any [`Scalar`]. Dimensions here never exceed a
//! few dozen, so everything is plain row-major `Vec` storage.

use std::ops::{Index, IndexMut};


use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
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

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(columns: &[Vec<T>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| columns[j][i].clone())
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[T]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc += self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    acc += self[(i, k)].clone() * x.clone();
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - other[(i, j)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc.max_of(x.abs()))
    }

    /// Operator norm induced by the sup norm: the maximal absolute row sum.
    pub fn sup_operator_norm(&self) -> T {
        (0..self.rows).fold(T::zero(), |acc, i| {
            let s = (0..self.cols).fold(T::zero(), |s, j| s + self[(i, j)].abs());
            acc.max_of(s)
        })
    }

    /// LU factorisation with partial pivoting. Returns (lu, permutation, sign).
    fn lu(&self) -> Option<(Matrix<T>, Vec<usize>, bool)> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut flipped = false;
        for k in 0..n {
            let mut p = k;
            let mut best = a[(k, k)].abs();
            for i in k + 1..n {
                let v = a[(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best.is_zero() {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                flipped = !flipped;
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                let factor = a[(i, k)].clone() / pivot.clone();
                a[(i, k)] = factor.clone();
                for j in k + 1..n {
                    let delta = factor.clone() * a[(k, j)].clone();
                    a[(i, j)] -= delta;
                }
            }
        }
        Some((a, perm, flipped))
    }

    pub fn det(&self) -> T {
        match self.lu() {
            None => T::zero(),
            Some((lu, _, flipped)) => {
                let mut d = T::one();
                for i in 0..self.rows {
                    d *= lu[(i, i)].clone();
                }
                if flipped {
                    -d
                } else {
                    d
                }
            }
        }
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let (lu, perm, _) = self.lu().ok_or(Error::RankDeficient)?;
        let n = self.rows;
        let mut y: Vec<T> = perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for k in 0..i {
                let delta = lu[(i, k)].clone() * y[k].clone();
                y[i] -= delta;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let delta = lu[(i, k)].clone() * y[k].clone();
                y[i] -= delta;
            }
            y[i] = y[i].clone() / lu[(i, i)].clone();
        }
        Ok(y)
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        let n = self.rows;
        let mut out = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            let col = self.solve(&e)?;
            out.set_column(j, &col);
        }
        Ok(out)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Integer matrix used for unimodular basis changes.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i128) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix { rows: self.rows, cols: other.cols, data: vec![0; self.rows * other.cols] };
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let term = self.get(i, k).checked_mul(other.get(k, j)).ok_or(Error::Overflow("matrix product"))?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow("matrix product"))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i128> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a = self.data.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                    Some(p) => {
                        for j in 0..n {
                            a.swap(k * n + j, p * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = a[i * n + j].checked_mul(a[k * n + k]).ok_or(Error::Overflow("determinant"))?;
                    let rhs = a[i * n + k].checked_mul(a[k * n + j]).ok_or(Error::Overflow("determinant"))?;
                    a[i * n + j] = lhs.checked_sub(rhs).ok_or(Error::Overflow("determinant"))? / prev;
                }
            }
            prev = a[k * n + k];
        }
        Ok(sign * a[n * n - 1])
    }

    pub fn to_scalar<T: Scalar>(&self) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| T::from_i128(self.get(i, j)))
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn det_and_inverse_agree() {
        let m = Matrix::from_rows(vec![vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 4.0]]);
        assert!((m.det() - 18.0f64).abs() < 1e-12);
        let inv = m.inverse().unwrap();
        let id = m.mul(&inv);
        assert!(id.sub(&Matrix::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn exact_det_over_rationals() {
        let r = |v: i64| <BigRational as Scalar>::from_i64(v);
        let m = Matrix::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]);
        assert_eq!(m.det(), r(-1));
    }

    #[test]
    fn singular_matrix_reports_rank_deficiency() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(m.det(), 0.0);
        assert_eq!(m.solve(&[1.0, 1.0]), Err(Error::RankDeficient));
    }

    #[test]
    fn bareiss_matches_known_values() {
        let m = IntMatrix { rows: 3, cols: 3, data: vec![0, 0, 1, 1, 0, 100, 0, 1, 0] };
        assert_eq!(m.det().unwrap(), 1);
        let m = IntMatrix { rows: 3, cols: 3, data: vec![2, -1, 0, -1, 2, -1, 0, -1, 2] };
        assert_eq!(m.det().unwrap(), 4);
    }
}
