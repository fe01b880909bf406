//! Dense exact linear algebra: row reduction, rank, null spaces, and small
//! square matrices.

use std::fmt;
use std::ops::Mul;

use crate::scalar::Scalar;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref<T: Scalar>(rows: &mut Vec<Vec<T>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                    *x = x.clone() - p.clone() * f.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<T: Scalar>(mut rows: Vec<Vec<T>>, ncols: usize) -> usize {
    rref(&mut rows, ncols).len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`.
pub fn kernel<T: Scalar>(mut rows: Vec<Vec<T>>, ncols: usize) -> Vec<Vec<T>> {
    let pivots = rref(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); ncols];
            v[f] = T::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Row-reduced basis of the span of `vectors`.
pub fn span<T: Scalar>(vectors: Vec<Vec<T>>, ncols: usize) -> Vec<Vec<T>> {
    let mut rows = vectors;
    rref(&mut rows, ncols);
    rows
}

/// A small dense square matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::scalar::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_neg_identity(&self) -> bool {
        *self == Self::identity(self.n).scale(&-T::one())
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out: Matrix<T> = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(m, 3), 2);
        assert_eq!(rank(Vec::<Vec<Rational>>::new(), 4), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = rows(&[&[1, 2, 3, 4], &[0, 1, 1, 0]]);
        let k = kernel(m.clone(), 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &m {
                let dot = r
                    .iter()
                    .zip(v)
                    .fold(q(0), |acc, (a, b)| acc + a.clone() * b.clone());
                assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn matrix_product_and_transpose() {
        let a = Matrix::<Rational>::from_i64(&[&[0, -1], &[1, 0]]);
        assert!((&a * &a).is_neg_identity());
        assert_eq!(a.transpose(), a.scale(&q(-1)));
    }
}
