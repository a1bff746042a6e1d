//! Small dense square matrices over a [`Scalar`] ring.
//!
//! Matrices act on column vectors: column `j` holds the image of basis
//! vector `j`, so `(A * B) x = A (B x)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> S>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// # Panics
    /// Panics if the rows do not form a square array.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row);
        }
        Matrix { n, data }
    }

    /// Block-diagonal matrix with `count` copies of `block`.
    pub fn block_diagonal(block: &Matrix<S>, count: usize) -> Self {
        let b = block.n;
        Self::from_fn(b * count, |i, j| {
            if i / b == j / b {
                block.get(i % b, j % b).clone()
            } else {
                S::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Scalar, F: FnMut(&S) -> T>(&self, f: F) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        *self == -self.transpose()
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(S::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        acc + a.clone() * v[j].clone()
                    }
                })
            })
            .collect()
    }

    /// Image of basis vector `j` (column `j`).
    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    /// `M^T A M`, the matrix of the bilinear form `(x, y) -> a(Mx, My)`.
    pub fn congruent(&self, m: &Matrix<S>) -> Self {
        &(&m.transpose() * self) * m
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.n.max(1)).map(<[S]>::to_vec).collect()
    }
}

impl Matrix<Rational> {
    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for k in 0..n {
                    a.data.swap(pivot * n + k, col * n + k);
                    inv.data.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a.get(col, col).recip().expect("pivot is nonzero");
            for k in 0..n {
                a.set(col, k, a.get(col, k) * &p);
                inv.set(col, k, inv.get(col, k) * &p);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for k in 0..n {
                    a.set(r, k, a.get(r, k) - &(&factor * a.get(col, k)));
                    inv.set(r, k, inv.get(r, k) - &(&factor * inv.get(col, k)));
                }
            }
        }
        Some(inv)
    }

    /// Diagonal of a congruent form `P^T A P` found by symmetric Gaussian
    /// elimination. Only meaningful for symmetric `self`.
    pub fn congruence_diagonal(&self) -> Vec<Rational> {
        let n = self.n;
        let mut a = self.clone();
        let mut diag = Vec::with_capacity(n);
        // Each step eliminates row/column `k` of the trailing block.
        for k in 0..n {
            if a.get(k, k).is_zero() {
                if let Some(p) = (k + 1..n).find(|&p| !a.get(p, p).is_zero()) {
                    a.swap_symmetric(k, p);
                } else if let Some(p) = (k + 1..n).find(|&p| !a.get(k, p).is_zero()) {
                    // e_k += e_p makes the pivot 2 a_kp (all diagonal entries are zero).
                    a.add_symmetric(k, p, &Rational::from_int(1));
                }
            }
            let pivot = a.get(k, k).clone();
            diag.push(pivot.clone());
            if pivot.is_zero() {
                continue;
            }
            for r in k + 1..n {
                if a.get(r, k).is_zero() {
                    continue;
                }
                let factor = a.get(r, k) / &pivot;
                a.add_symmetric(r, k, &-factor);
            }
        }
        diag
    }

    /// Row/column operation `e_target += c * e_source` applied as a
    /// congruence.
    fn add_symmetric(&mut self, target: usize, source: usize, c: &Rational) {
        let n = self.n;
        for j in 0..n {
            let v = self.get(target, j) + &(c * self.get(source, j));
            self.set(target, j, v);
        }
        for i in 0..n {
            let v = self.get(i, target) + &(c * self.get(i, source));
            self.set(i, target, v);
        }
    }

    fn swap_symmetric(&mut self, a: usize, b: usize) {
        let n = self.n;
        for k in 0..n {
            self.data.swap(a * n + k, b * n + k);
        }
        for k in 0..n {
            self.data.swap(k * n + a, k * n + b);
        }
    }

    /// `(positive, negative, zero)` counts of a symmetric form.
    pub fn signature(&self) -> (usize, usize, usize) {
        self.congruence_diagonal()
            .iter()
            .fold((0, 0, 0), |(p, m, z), d| {
                if d.is_zero() {
                    (p, m, z + 1)
                } else if d.is_negative() {
                    (p, m + 1, z)
                } else {
                    (p + 1, m, z)
                }
            })
    }
}

impl<'a, S: Scalar> Mul<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            (0..n).fold(S::zero(), |acc, k| {
                let a = self.get(i, k);
                let b = rhs.get(k, j);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        })
    }
}

impl<'a, S: Scalar> Add<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, S: Scalar> Sub<&'a Matrix<S>> for &'a Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &'a Matrix<S>) -> Matrix<S> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Neg for Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix {
            n: self.n,
            data: self.data.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
