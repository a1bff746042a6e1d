//! Hypercomplex structures and pseudo-Hermitian bilinear forms on `R^{4n}`.
//!
//! Basis layout: `n` consecutive blocks `(x^i, y^i, u^i, v^i)`, so each
//! `J_alpha` is block diagonal with the same 4x4 block and the neutral metric
//! is `diag(-1, -1, 1, 1)` per block (negative directions first).

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

/// The two other indices of a cyclic permutation `(alpha, beta, gamma)` of
/// `(1, 2, 3)`.
pub fn cyclic_partners(alpha: usize) -> (usize, usize) {
    match alpha {
        1 => (2, 3),
        2 => (3, 1),
        3 => (1, 2),
        _ => panic!("alpha must be 1, 2 or 3, got {alpha}"),
    }
}

/// 4x4 matrix whose column `j` is the image of basis vector `j`, given as
/// `(source, target, sign)` triples.
pub(crate) fn signed_permutation<S: Scalar>(images: &[(usize, usize, i64)]) -> Matrix<S> {
    let mut m = Matrix::zeros(4);
    for &(src, dst, sign) in images {
        m.set(dst, src, S::from_int(sign));
    }
    m
}

/// Standard 4x4 blocks on `(x, y, u, v)`:
/// `J1: x->y, y->-x, u->-v, v->u`; `J2: x->u, y->v, u->-x, v->-y`;
/// `J3: x->-v, y->u, u->-y, v->x`.
pub fn standard_blocks<S: Scalar>() -> [Matrix<S>; 3] {
    [
        signed_permutation(&[(0, 1, 1), (1, 0, -1), (2, 3, -1), (3, 2, 1)]),
        signed_permutation(&[(0, 2, 1), (1, 3, 1), (2, 0, -1), (3, 1, -1)]),
        signed_permutation(&[(0, 3, -1), (1, 2, 1), (2, 1, -1), (3, 0, 1)]),
    ]
}

/// A triple of endomorphisms `(J1, J2, J3)` of a `4n`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercomplexStructure<S: Scalar> {
    n: usize,
    j: [Matrix<S>; 3],
}

impl<S: Scalar> HypercomplexStructure<S> {
    /// Wraps three matrices after checking every quaternion relation.
    pub fn new(j1: Matrix<S>, j2: Matrix<S>, j3: Matrix<S>) -> Result<Self> {
        let dim = j1.dim();
        if dim == 0 || dim % 4 != 0 || j2.dim() != dim || j3.dim() != dim {
            return Err(Error::Usage(format!("structure matrices must be 4n x 4n, got {dim}")));
        }
        let h = HypercomplexStructure {
            n: dim / 4,
            j: [j1, j2, j3],
        };
        if let Some((name, ok)) = h.quaternion_identities().into_iter().find(|(_, ok)| !ok) {
            debug_assert!(!ok);
            return Err(Error::Invariant {
                identity: name,
                indices: vec![],
            });
        }
        Ok(h)
    }

    /// `J_alpha = diag(I_alpha, ..., I_alpha)` with `n` blocks.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("n must be at least 1".into()));
        }
        let [b1, b2, b3] = standard_blocks::<S>();
        Self::new(
            Matrix::block_diagonal(&b1, n),
            Matrix::block_diagonal(&b2, n),
            Matrix::block_diagonal(&b3, n),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    /// `J_alpha` for `alpha` in `1..=3`.
    pub fn j(&self, alpha: usize) -> &Matrix<S> {
        assert!((1..=3).contains(&alpha), "alpha must be 1, 2 or 3");
        &self.j[alpha - 1]
    }

    /// Named checks of `J_a^2 = -Id` and `J_a J_b = -J_b J_a = J_c` for the
    /// cyclic triples.
    pub fn quaternion_identities(&self) -> Vec<(String, bool)> {
        let id = Matrix::<S>::identity(self.dim());
        let minus_id = -id;
        let mut out = Vec::new();
        for a in 1..=3 {
            let sq = self.j(a) * self.j(a);
            out.push((format!("J{a}^2 = -Id"), sq == minus_id));
        }
        for a in 1..=3 {
            let (b, c) = cyclic_partners(a);
            let ab = self.j(a) * self.j(b);
            let ba = self.j(b) * self.j(a);
            out.push((format!("J{a}J{b} = J{c}"), ab == *self.j(c)));
            out.push((format!("J{b}J{a} = -J{c}"), ba == -self.j(c).clone()));
        }
        out
    }

    /// The basis `(e_1..e_n; J1 e_1..; J2 e_1..; J3 e_1..)` with
    /// `e_i = d/dx^i`, as coordinate vectors.
    pub fn admissible_basis(&self) -> Vec<Vec<S>> {
        let dim = self.dim();
        let e: Vec<Vec<S>> = (0..self.n)
            .map(|i| (0..dim).map(|k| if k == 4 * i { S::one() } else { S::zero() }).collect())
            .collect();
        let mut basis = e.clone();
        for a in 1..=3 {
            basis.extend(e.iter().map(|v| self.j(a).apply(v)));
        }
        basis
    }
}

/// A bilinear form `f(x, y) = x^T M y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm<S: Scalar> {
    matrix: Matrix<S>,
}

impl<S: Scalar> BilinearForm<S> {
    pub fn new(matrix: Matrix<S>) -> Self {
        BilinearForm { matrix }
    }

    pub fn zero(dim: usize) -> Self {
        BilinearForm::new(Matrix::zeros(dim))
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eval(&self, x: &[S], y: &[S]) -> S {
        let my = self.matrix.apply(y);
        x.iter()
            .zip(my)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    /// The form `(x, y) -> f(Jx, Jy)`.
    pub fn pullback(&self, j: &Matrix<S>) -> Self {
        BilinearForm::new(self.matrix.congruent(j))
    }

    /// The form `(x, y) -> f(Jx, y)`.
    pub fn compose_first(&self, j: &Matrix<S>) -> Self {
        BilinearForm::new(&j.transpose() * &self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn is_skew(&self) -> bool {
        self.matrix.is_skew()
    }
}

impl BilinearForm<Rational> {
    /// Random form with entries `p/q`, `|p| <= 9`, `1 <= q <= 6`.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        BilinearForm::new(Matrix::from_fn(dim, |_, _| {
            Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
        }))
    }
}

impl<'a, S: Scalar> std::ops::Add<&'a BilinearForm<S>> for &'a BilinearForm<S> {
    type Output = BilinearForm<S>;
    fn add(self, rhs: &'a BilinearForm<S>) -> BilinearForm<S> {
        BilinearForm::new(&self.matrix + &rhs.matrix)
    }
}

/// Behaviour of a form under one complex structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JBehaviour {
    /// `f(Jx, Jy) = f(x, y)`.
    Hermitian,
    /// `f(Jx, Jy) = -f(x, y)`.
    SkewHermitian,
    /// Both identities hold; only the zero form.
    Both,
    Neither,
}

impl JBehaviour {
    pub fn is_hermitian(self) -> bool {
        matches!(self, JBehaviour::Hermitian | JBehaviour::Both)
    }

    pub fn is_skew_hermitian(self) -> bool {
        matches!(self, JBehaviour::SkewHermitian | JBehaviour::Both)
    }
}

/// The summands of `B(V) = B_0 + B_1 + B_2 + B_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FormSpace {
    /// Hermitian for all three structures.
    B0,
    /// Pseudo-Hermitian of type 1: Hermitian for `J1`, skew for `J2`, `J3`.
    B1,
    B2,
    B3,
}

impl FormSpace {
    pub const ALL: [FormSpace; 4] = [FormSpace::B0, FormSpace::B1, FormSpace::B2, FormSpace::B3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }
}

impl fmt::Display for FormSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.index())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormClassification {
    /// Behaviour under `J1`, `J2`, `J3`.
    pub per_alpha: [JBehaviour; 3],
    /// Every summand containing the form; empty when unclassified, all four
    /// for the zero form.
    pub spaces: Vec<FormSpace>,
}

impl FormClassification {
    pub fn is_hermitian(&self) -> bool {
        self.spaces.contains(&FormSpace::B0)
    }

    /// `Some(alpha)` when the form is pseudo-Hermitian of exactly one type.
    pub fn pseudo_hermitian_type(&self) -> Option<usize> {
        let types: Vec<usize> = self
            .spaces
            .iter()
            .filter(|s| **s != FormSpace::B0)
            .map(|s| s.index())
            .collect();
        match types.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }

    pub fn contains(&self, space: FormSpace) -> bool {
        self.spaces.contains(&space)
    }
}

/// Compares `f(J_a x, J_a y)` with `f` for each structure.
pub fn hermitian_type<S: Scalar>(f: &BilinearForm<S>, h: &HypercomplexStructure<S>) -> FormClassification {
    assert_eq!(f.dim(), h.dim(), "form and structure dimensions differ");
    let neg = BilinearForm::new(-f.matrix.clone());
    let per_alpha = [1, 2, 3].map(|a| {
        let p = f.pullback(h.j(a));
        match (p == *f, p == neg) {
            (true, true) => JBehaviour::Both,
            (true, false) => JBehaviour::Hermitian,
            (false, true) => JBehaviour::SkewHermitian,
            (false, false) => JBehaviour::Neither,
        }
    });
    let mut spaces = Vec::new();
    if per_alpha.iter().all(|b| b.is_hermitian()) {
        spaces.push(FormSpace::B0);
    }
    for a in 1..=3 {
        let (b, c) = cyclic_partners(a);
        if per_alpha[a - 1].is_hermitian()
            && per_alpha[b - 1].is_skew_hermitian()
            && per_alpha[c - 1].is_skew_hermitian()
        {
            spaces.push(FormSpace::from_index(a));
        }
    }
    FormClassification { per_alpha, spaces }
}

/// `Pi_0 f = 1/4 (f + f_1 + f_2 + f_3)` and
/// `Pi_a f = 1/4 (f + f_a - f_b - f_c)`, where `f_k = f(J_k ., J_k .)`.
pub fn project<S: Scalar>(f: &BilinearForm<S>, h: &HypercomplexStructure<S>, space: FormSpace) -> BilinearForm<S> {
    assert_eq!(f.dim(), h.dim(), "form and structure dimensions differ");
    let pulled = [1, 2, 3].map(|a| f.pullback(h.j(a)).matrix);
    let signs: [i64; 3] = match space {
        FormSpace::B0 => [1, 1, 1],
        FormSpace::B1 => [1, -1, -1],
        FormSpace::B2 => [-1, 1, -1],
        FormSpace::B3 => [-1, -1, 1],
    };
    let mut acc = f.matrix.clone();
    for (m, s) in pulled.iter().zip(signs) {
        acc = if s > 0 { &acc + m } else { &acc - m };
    }
    BilinearForm::new(acc.scale(&Rational::new(1, 4)))
}

/// The four projections of `f` with their verdicts.
#[derive(Clone, Debug)]
pub struct Decomposition<S: Scalar> {
    pub parts: [BilinearForm<S>; 4],
    pub classes: [FormClassification; 4],
    pub reconstructs: bool,
}

pub fn decompose<S: Scalar>(f: &BilinearForm<S>, h: &HypercomplexStructure<S>) -> Decomposition<S> {
    let parts = FormSpace::ALL.map(|s| project(f, h, s));
    let classes = [0, 1, 2, 3].map(|i| hermitian_type(&parts[i], h));
    let sum = parts[1..].iter().fold(parts[0].clone(), |acc, p| &acc + p);
    Decomposition {
        reconstructs: sum == *f,
        parts,
        classes,
    }
}

/// The neutral metric with its associated forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoHermitianMetricPack<S: Scalar> {
    /// `g(x, y) = sum(-x^i a^i - y^i b^i + u^i c^i + v^i d^i)`.
    pub g: BilinearForm<S>,
    /// Kaehler form `g(J1 x, y)`.
    pub phi: BilinearForm<S>,
    /// `g(J2 x, y)`.
    pub g2: BilinearForm<S>,
    /// `g(J3 x, y)`.
    pub g3: BilinearForm<S>,
}

impl<S: Scalar> PseudoHermitianMetricPack<S> {
    pub fn from_metric(g: BilinearForm<S>, h: &HypercomplexStructure<S>) -> Self {
        PseudoHermitianMetricPack {
            phi: g.compose_first(h.j(1)),
            g2: g.compose_first(h.j(2)),
            g3: g.compose_first(h.j(3)),
            g,
        }
    }

    pub fn standard(h: &HypercomplexStructure<S>) -> Self {
        let block = Matrix::from_fn(4, |i, j| match (i == j, i < 2) {
            (true, true) => -S::one(),
            (true, false) => S::one(),
            _ => S::zero(),
        });
        Self::from_metric(BilinearForm::new(Matrix::block_diagonal(&block, h.n())), h)
    }
}

/// Standard structure and metric pack on `R^{4n}`.
pub fn standard_metric<S: Scalar>(n: usize) -> Result<(HypercomplexStructure<S>, PseudoHermitianMetricPack<S>)> {
    let h = HypercomplexStructure::standard(n)?;
    let pack = PseudoHermitianMetricPack::standard(&h);
    Ok((h, pack))
}

/// `(a, b, c, d)` of a 4x4 block `[[P, Q], [-Q, P]]` with
/// `P = [[a, b], [-b, a]]`, `Q = [[c, d], [d, -c]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionicBlock<S: Scalar> {
    pub row: usize,
    pub col: usize,
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> QuaternionicBlock<S> {
    pub fn matrix(a: S, b: S, c: S, d: S) -> Matrix<S> {
        Matrix::from_rows(vec![
            vec![a.clone(), b.clone(), c.clone(), d.clone()],
            vec![-b.clone(), a.clone(), d.clone(), -c.clone()],
            vec![-c.clone(), -d.clone(), a.clone(), b.clone()],
            vec![-d, c, -b, a],
        ])
    }
}

#[derive(Clone, Debug)]
pub struct StructuralGroupVerdict<S: Scalar> {
    /// `A J_a = J_a A` for all three structures.
    pub quaternionic: bool,
    /// `A^T g A = g`.
    pub metric_preserving: bool,
    pub member: bool,
    /// Block parameters, when every 4x4 block has the quaternionic form.
    pub blocks: Option<Vec<QuaternionicBlock<S>>>,
}

pub fn structural_group_member<S: Scalar>(
    a: &Matrix<S>,
    h: &HypercomplexStructure<S>,
    pack: &PseudoHermitianMetricPack<S>,
) -> StructuralGroupVerdict<S> {
    assert_eq!(a.dim(), h.dim(), "matrix and structure dimensions differ");
    let quaternionic = (1..=3).all(|k| &(a * h.j(k)) == &(h.j(k) * a));
    let metric_preserving = pack.g.matrix().congruent(a) == *pack.g.matrix();
    let mut blocks = Some(Vec::new());
    for bi in 0..h.n() {
        for bj in 0..h.n() {
            let at = |i: usize, j: usize| a.get(4 * bi + i, 4 * bj + j).clone();
            let (pa, pb, pc, pd) = (at(0, 0), at(0, 1), at(0, 2), at(0, 3));
            let rebuilt = QuaternionicBlock::matrix(pa.clone(), pb.clone(), pc.clone(), pd.clone());
            let matches = (0..4).all(|i| (0..4).all(|j| *rebuilt.get(i, j) == at(i, j)));
            match (&mut blocks, matches) {
                (Some(v), true) => v.push(QuaternionicBlock {
                    row: bi,
                    col: bj,
                    a: pa,
                    b: pb,
                    c: pc,
                    d: pd,
                }),
                _ => blocks = None,
            }
        }
    }
    StructuralGroupVerdict {
        quaternionic,
        metric_preserving,
        member: quaternionic && metric_preserving,
        blocks,
    }
}
