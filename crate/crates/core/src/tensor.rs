//! Dense tensors over a [`Scalar`] ring with positional contraction.
//!
//! Every axis has the same length (the space dimension) and carries a
//! variance tag, so contractions that pair two lower or two upper indices
//! are rejected instead of silently producing a basis-dependent number.
//! Indices are 0-based here; reports print them 1-based.

use std::fmt;

use crate::error::TensorError;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Variance::Covariant => "covariant",
            Variance::Contravariant => "contravariant",
        }
    }
}

/// Iterates all multi-indices in `[0, dim)^rank` in row-major order.
pub fn multi_indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(rank as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for slot in idx.iter_mut().rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        idx
    })
}

#[derive(Clone, PartialEq, Eq)]
pub struct Tensor<S> {
    dim: usize,
    variance: Vec<Variance>,
    data: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zeros(dim: usize, variance: Vec<Variance>) -> Self {
        let len = dim.pow(variance.len() as u32);
        Tensor {
            dim,
            variance,
            data: vec![S::zero(); len],
        }
    }

    pub fn covariant(dim: usize, rank: usize) -> Self {
        Self::zeros(dim, vec![Variance::Covariant; rank])
    }

    pub fn contravariant(dim: usize, rank: usize) -> Self {
        Self::zeros(dim, vec![Variance::Contravariant; rank])
    }

    pub fn from_fn<F>(dim: usize, variance: Vec<Variance>, mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> S,
    {
        let data = multi_indices(dim, variance.len()).map(|i| f(&i)).collect();
        Tensor {
            dim,
            variance,
            data,
        }
    }

    pub fn from_data(dim: usize, variance: Vec<Variance>, data: Vec<S>) -> Result<Self, TensorError> {
        let rank = variance.len();
        if data.len() != dim.pow(rank as u32) {
            return Err(TensorError::BadDataLength {
                len: data.len(),
                dim,
                rank,
            });
        }
        Ok(Tensor {
            dim,
            variance,
            data,
        })
    }

    pub fn scalar(s: S) -> Self {
        Tensor {
            dim: 0,
            variance: Vec::new(),
            data: vec![s],
        }
    }

    /// Kronecker delta with variance `[first, first.flip()]`.
    pub fn kronecker(dim: usize, first: Variance) -> Self {
        Self::from_fn(dim, vec![first, first.flip()], |i| {
            if i[0] == i[1] {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    /// Rank-2 tensor with the given variance from a square matrix
    /// (`t[i][j] = m[i][j]`).
    pub fn from_matrix(m: &Matrix<S>, variance: [Variance; 2]) -> Self {
        let n = m.dim();
        Self::from_fn(n, variance.to_vec(), |i| m.get(i[0], i[1]).clone())
    }

    /// # Panics
    /// Panics unless the tensor has rank 2.
    pub fn to_matrix(&self) -> Matrix<S> {
        assert_eq!(self.rank(), 2, "to_matrix needs a rank-2 tensor");
        Matrix::from_fn(self.dim, |i, j| self.get(&[i, j]).clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn is_covariant(&self) -> bool {
        self.variance.iter().all(|v| *v == Variance::Covariant)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank(), "index arity does not match rank");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.dim.max(1), "index {i} out of range");
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: S) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Value of a rank-0 tensor.
    pub fn into_scalar(self) -> Option<S> {
        if self.variance.is_empty() {
            self.data.into_iter().next()
        } else {
            None
        }
    }

    /// `(multi-index, value)` for every nonzero entry, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Vec<usize>, &S)> {
        multi_indices(self.dim, self.rank())
            .zip(self.data.iter())
            .filter(|(_, v)| !v.is_zero())
    }

    /// Multilinear evaluation on component vectors, one per axis.
    pub fn evaluate(&self, args: &[&[S]]) -> S {
        assert_eq!(args.len(), self.rank(), "one argument per axis");
        let mut acc = S::zero();
        for (idx, v) in self.nonzero_entries() {
            let mut term = v.clone();
            let mut zero = false;
            for (a, &i) in args.iter().zip(&idx) {
                if a[i].is_zero() {
                    zero = true;
                    break;
                }
                term = term * a[i].clone();
            }
            if !zero {
                acc = acc + term;
            }
        }
        acc
    }

    pub fn map<T: Scalar, F: FnMut(&S) -> T>(&self, f: F) -> Tensor<T> {
        Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|s| s.scale(r))
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.variance != other.variance {
            return Err(TensorError::BadDataLength {
                len: other.data.len(),
                dim: self.dim,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.try_add(&other.scale(&-Rational::from_int(1)))
    }

    /// Reorders axes: axis `k` of the result is axis `perm[k]` of `self`.
    ///
    /// # Panics
    /// Panics if `perm` is not a permutation of `0..rank`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let r = self.rank();
        assert_eq!(perm.len(), r, "permutation length");
        let mut seen = vec![false; r];
        for &p in perm {
            assert!(p < r && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let variance = perm.iter().map(|&p| self.variance[p]).collect();
        let mut src = vec![0; r];
        Self::from_fn(self.dim, variance, |idx| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = idx[k];
            }
            self.get(&src).clone()
        })
    }

    /// Einstein summation over the listed `(axis in self, axis in other)`
    /// pairs. Free axes of `self` come first, then free axes of `other`,
    /// each in their original order.
    pub fn contract(&self, other: &Tensor<S>, pairs: &[(usize, usize)]) -> Result<Tensor<S>, TensorError> {
        let (rt, ru) = (self.rank(), other.rank());
        let mut used_t = vec![false; rt];
        let mut used_u = vec![false; ru];
        for &(a, b) in pairs {
            if a >= rt {
                return Err(TensorError::AxisOutOfRange { axis: a, rank: rt });
            }
            if b >= ru {
                return Err(TensorError::AxisOutOfRange { axis: b, rank: ru });
            }
            if used_t[a] {
                return Err(TensorError::RepeatedAxis { axis: a });
            }
            if used_u[b] {
                return Err(TensorError::RepeatedAxis { axis: b });
            }
            used_t[a] = true;
            used_u[b] = true;
            if self.dim != other.dim {
                return Err(TensorError::DimensionMismatch {
                    left: self.dim,
                    right: other.dim,
                });
            }
            if self.variance[a] == other.variance[b] {
                return Err(TensorError::VarianceMismatch {
                    left_axis: a,
                    right_axis: b,
                    variance: self.variance[a].name(),
                });
            }
        }
        let dim = if rt > 0 { self.dim } else { other.dim };
        if rt > 0 && ru > 0 && self.dim != other.dim {
            return Err(TensorError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let free_t: Vec<usize> = (0..rt).filter(|a| !used_t[*a]).collect();
        let free_u: Vec<usize> = (0..ru).filter(|b| !used_u[*b]).collect();
        let variance: Vec<Variance> = free_t
            .iter()
            .map(|&a| self.variance[a])
            .chain(free_u.iter().map(|&b| other.variance[b]))
            .collect();

        let mut ti = vec![0; rt];
        let mut ui = vec![0; ru];
        let summed: Vec<Vec<usize>> = multi_indices(dim, pairs.len()).collect();
        let data = multi_indices(dim, variance.len())
            .map(|out| {
                for (k, &a) in free_t.iter().enumerate() {
                    ti[a] = out[k];
                }
                for (k, &b) in free_u.iter().enumerate() {
                    ui[b] = out[free_t.len() + k];
                }
                let mut acc = S::zero();
                for s in &summed {
                    for (p, &(a, b)) in pairs.iter().enumerate() {
                        ti[a] = s[p];
                        ui[b] = s[p];
                    }
                    let x = self.get(&ti);
                    if x.is_zero() {
                        continue;
                    }
                    let y = other.get(&ui);
                    if y.is_zero() {
                        continue;
                    }
                    acc = acc + x.clone() * y.clone();
                }
                acc
            })
            .collect();
        Ok(Tensor {
            dim,
            variance,
            data,
        })
    }

    /// Contracts two axes of the same tensor (one upper, one lower).
    pub fn trace(&self, a: usize, b: usize) -> Result<Tensor<S>, TensorError> {
        let r = self.rank();
        for axis in [a, b] {
            if axis >= r {
                return Err(TensorError::AxisOutOfRange { axis, rank: r });
            }
        }
        if a == b {
            return Err(TensorError::RepeatedAxis { axis: a });
        }
        if self.variance[a] == self.variance[b] {
            return Err(TensorError::VarianceMismatch {
                left_axis: a,
                right_axis: b,
                variance: self.variance[a].name(),
            });
        }
        let free: Vec<usize> = (0..r).filter(|x| *x != a && *x != b).collect();
        let variance = free.iter().map(|&x| self.variance[x]).collect();
        let mut src = vec![0; r];
        Ok(Self::from_fn(self.dim, variance, |out| {
            for (k, &x) in free.iter().enumerate() {
                src[x] = out[k];
            }
            let mut acc = S::zero();
            for s in 0..self.dim {
                src[a] = s;
                src[b] = s;
                acc = acc + self.get(&src).clone();
            }
            acc
        }))
    }
}

impl<S: Scalar> fmt::Debug for Tensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor")
            .field("dim", &self.dim)
            .field("variance", &self.variance)
            .field("nonzero", &self.nonzero_entries().collect::<Vec<_>>())
            .finish()
    }
}

/// A metric `g` together with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricPair<S: Scalar> {
    g: Tensor<S>,
    g_inv: Tensor<S>,
}

impl<S: Scalar> MetricPair<S> {
    /// Checks symmetry of `g` and `g * g_inv = id` exactly.
    pub fn new(g: Tensor<S>, g_inv: Tensor<S>) -> Result<Self, TensorError> {
        if g.variance() != [Variance::Covariant; 2] || g_inv.variance() != [Variance::Contravariant; 2] {
            return Err(TensorError::NotCovariant);
        }
        if g.dim() != g_inv.dim() {
            return Err(TensorError::DimensionMismatch {
                left: g.dim(),
                right: g_inv.dim(),
            });
        }
        let n = g.dim();
        for i in 0..n {
            for j in 0..i {
                if g.get(&[i, j]) != g.get(&[j, i]) {
                    return Err(TensorError::MetricNotSymmetric);
                }
            }
        }
        let prod = g.contract(&g_inv, &[(1, 0)])?;
        if prod != Tensor::kronecker(n, Variance::Covariant) {
            return Err(TensorError::MetricInverseMismatch);
        }
        Ok(MetricPair { g, g_inv })
    }

    /// Diagonal metric with nonzero rational entries.
    pub fn diagonal(entries: &[Rational]) -> Result<Self, TensorError> {
        let n = entries.len();
        let mut g = Tensor::covariant(n, 2);
        let mut g_inv = Tensor::contravariant(n, 2);
        for (i, e) in entries.iter().enumerate() {
            let inv = e.recip().ok_or(TensorError::DegenerateMetric)?;
            g.set(&[i, i], S::from_rational(e.clone()));
            g_inv.set(&[i, i], S::from_rational(inv));
        }
        Self::new(g, g_inv)
    }

    /// Any nondegenerate symmetric rational matrix; the inverse is found by
    /// exact elimination.
    pub fn from_rational_matrix(m: &Matrix<Rational>) -> Result<Self, TensorError> {
        let inv = m.inverse().ok_or(TensorError::DegenerateMetric)?;
        let lift = |x: &Rational| S::from_rational(x.clone());
        Self::new(
            Tensor::from_matrix(&m.map(lift), [Variance::Covariant; 2]),
            Tensor::from_matrix(&inv.map(lift), [Variance::Contravariant; 2]),
        )
    }

    pub fn g(&self) -> &Tensor<S> {
        &self.g
    }

    pub fn g_inv(&self) -> &Tensor<S> {
        &self.g_inv
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `g(x, y)` for contravariant component vectors.
    pub fn inner(&self, x: &[S], y: &[S]) -> S {
        let n = self.dim();
        let mut acc = S::zero();
        for i in 0..n {
            for j in 0..n {
                let gij = self.g.get(&[i, j]);
                if !gij.is_zero() {
                    acc = acc + gij.clone() * x[i].clone() * y[j].clone();
                }
            }
        }
        acc
    }

    fn move_last_to(t: Tensor<S>, axis: usize) -> Tensor<S> {
        let r = t.rank();
        let perm: Vec<usize> = (0..r)
            .map(|k| match k.cmp(&axis) {
                std::cmp::Ordering::Less => k,
                std::cmp::Ordering::Equal => r - 1,
                std::cmp::Ordering::Greater => k - 1,
            })
            .collect();
        t.permute(&perm)
    }

    /// Raises one covariant axis with `g_inv`, keeping axis order.
    pub fn raise(&self, t: &Tensor<S>, axis: usize) -> Result<Tensor<S>, TensorError> {
        let c = t.contract(&self.g_inv, &[(axis, 0)])?;
        Ok(Self::move_last_to(c, axis))
    }

    /// Lowers one contravariant axis with `g`, keeping axis order.
    pub fn lower(&self, t: &Tensor<S>, axis: usize) -> Result<Tensor<S>, TensorError> {
        let c = t.contract(&self.g, &[(axis, 0)])?;
        Ok(Self::move_last_to(c, axis))
    }

    /// Full self-contraction `t_{a..} t_{b..} g^{a b} ...` of a covariant
    /// tensor. Indefinite metrics give signed results, and a nonzero tensor
    /// may have zero square norm.
    pub fn square_norm(&self, t: &Tensor<S>) -> Result<S, TensorError> {
        if !t.is_covariant() {
            return Err(TensorError::NotCovariant);
        }
        let mut raised = t.clone();
        for axis in 0..t.rank() {
            raised = self.raise(&raised, axis)?;
        }
        let pairs: Vec<(usize, usize)> = (0..t.rank()).map(|a| (a, a)).collect();
        Ok(t.contract(&raised, &pairs)?
            .into_scalar()
            .expect("full contraction has rank 0"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Poly;
    use Variance::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn neutral() -> MetricPair<Rational> {
        MetricPair::diagonal(&[r(1), r(1), r(-1), r(-1)]).unwrap()
    }

    #[test]
    fn identity_contracted_with_vector() {
        let id = Tensor::<Rational>::kronecker(4, Contravariant);
        let v = Tensor::from_data(4, vec![Contravariant], vec![r(3), r(-1), r(0), r(7)]).unwrap();
        assert_eq!(id.contract(&v, &[(1, 0)]).unwrap(), v);
    }

    #[test]
    fn metric_times_inverse_is_identity() {
        let m = neutral();
        let prod = m.g().contract(m.g_inv(), &[(1, 0)]).unwrap();
        assert_eq!(prod, Tensor::kronecker(4, Covariant));
    }

    #[test]
    fn contraction_errors() {
        let g = neutral();
        assert!(matches!(
            g.g().contract(g.g(), &[(0, 0)]),
            Err(TensorError::VarianceMismatch { .. })
        ));
        let small = Tensor::<Rational>::contravariant(3, 1);
        assert!(matches!(
            g.g().contract(&small, &[(0, 0)]),
            Err(TensorError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            g.g().contract(g.g_inv(), &[(2, 0)]),
            Err(TensorError::AxisOutOfRange { .. })
        ));
        assert!(matches!(
            g.g().contract(g.g_inv(), &[(0, 0), (0, 1)]),
            Err(TensorError::RepeatedAxis { .. })
        ));
    }

    #[test]
    fn zero_tensor_has_zero_norm() {
        let m = neutral();
        let t = Tensor::<Rational>::covariant(4, 3);
        assert!(m.square_norm(&t).unwrap().is_zero());
    }

    #[test]
    fn lee_form_norm_is_indefinite() {
        let m: MetricPair<Poly> = MetricPair::diagonal(&[r(1), r(1), r(-1), r(-1)]).unwrap();
        let l = crate::scalar::symbolic_lambda();
        let theta = Tensor::from_data(
            4,
            vec![Covariant],
            vec![-l[3].clone(), l[2].clone(), -l[1].clone(), l[0].clone()],
        )
        .unwrap();
        let p = l[0].clone() * l[0].clone() + l[1].clone() * l[1].clone()
            - l[2].clone() * l[2].clone()
            - l[3].clone() * l[3].clone();
        assert_eq!(m.square_norm(&theta).unwrap(), -p);
    }

    #[test]
    fn null_vector_has_zero_norm() {
        let m = neutral();
        let v = Tensor::from_data(4, vec![Covariant], vec![r(1), r(0), r(1), r(0)]).unwrap();
        assert!(m.square_norm(&v).unwrap().is_zero());
    }

    #[test]
    fn square_norm_rejects_upper_index() {
        let m = neutral();
        let v = Tensor::<Rational>::contravariant(4, 1);
        assert_eq!(m.square_norm(&v), Err(TensorError::NotCovariant));
    }

    #[test]
    fn metric_validation() {
        let mut g = Tensor::<Rational>::covariant(2, 2);
        g.set(&[0, 1], r(1));
        let gi = Tensor::<Rational>::contravariant(2, 2);
        assert_eq!(MetricPair::new(g, gi), Err(TensorError::MetricNotSymmetric));
        assert_eq!(
            MetricPair::<Rational>::diagonal(&[r(1), r(0)]),
            Err(TensorError::DegenerateMetric)
        );
        let g = Tensor::<Rational>::from_fn(2, vec![Covariant; 2], |i| if i[0] == i[1] { r(2) } else { r(0) });
        let gi = Tensor::<Rational>::kronecker(2, Contravariant).map(|x| x.clone());
        let gi = Tensor::from_data(2, vec![Contravariant; 2], gi.data().to_vec()).unwrap();
        assert_eq!(MetricPair::new(g, gi), Err(TensorError::MetricInverseMismatch));
    }

    #[test]
    fn general_metric_from_matrix() {
        let m = Matrix::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]);
        let mp: MetricPair<Rational> = MetricPair::from_rational_matrix(&m).unwrap();
        assert_eq!(mp.g_inv().get(&[0, 1]), &r(1));
    }

    #[test]
    fn permute_and_trace() {
        let t = Tensor::<Rational>::from_fn(3, vec![Covariant, Contravariant, Covariant], |i| {
            r((i[0] * 9 + i[1] * 3 + i[2]) as i64)
        });
        let p = t.permute(&[2, 0, 1]);
        assert_eq!(p.get(&[1, 2, 0]), t.get(&[2, 0, 1]));
        assert_eq!(p.variance(), &[Covariant, Covariant, Contravariant]);
        let tr = t.trace(0, 1).unwrap();
        assert_eq!(tr.get(&[1]), &r(1 + 13 + 25));
        assert!(t.trace(0, 2).is_err());
    }
}
