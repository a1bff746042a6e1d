//! The four-parameter family of 4-dimensional Lie algebras with its
//! ad-invariant neutral metric, hypercomplex structure, Levi-Civita
//! connection and curvature.
//!
//! Everything lives at the level of left-invariant fields: brackets are the
//! structure constants, and derivatives of constant components vanish.
//! The basis `X1..X4` has metric `diag(1, 1, -1, -1)`; note this is the
//! opposite sign layout to [`crate::hypercomplex`].

use crate::error::{Error, Result};
use crate::hypercomplex::{signed_permutation, HypercomplexStructure};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar, NUM_VARS};
use crate::tensor::{multi_indices, MetricPair, Tensor, Variance};

pub const DIM: usize = 4;

fn unit<S: Scalar>(i: usize) -> Vec<S> {
    (0..DIM).map(|k| if k == i { S::one() } else { S::zero() }).collect()
}

fn add_vec<S: Scalar>(a: Vec<S>, b: Vec<S>) -> Vec<S> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec<S: Scalar>(a: Vec<S>, b: Vec<S>) -> Vec<S> {
    a.into_iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Structure constants `c^k_{ij}` (`[X_i, X_j] = c^k_{ij} X_k`) together
/// with the parameters that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieFamily<S: Scalar> {
    lam: [S; NUM_VARS],
    c: Tensor<S>,
}

impl<S: Scalar> LieFamily<S> {
    /// Fills the constants from
    ///
    /// ```text
    /// [X1,X3] =  l2 X2 + l4 X4     [X2,X4] =  l1 X1 + l3 X3
    /// [X2,X3] = -l2 X1 - l3 X4     [X3,X4] = -l4 X1 + l3 X2
    /// [X4,X1] =  l1 X2 + l4 X3     [X2,X1] = -l2 X3 + l1 X4
    /// ```
    ///
    /// and checks antisymmetry and the Jacobi identity. `lam = 0` is allowed
    /// (abelian, flat); see [`LieFamily::is_degenerate`].
    pub fn new(lam: [S; NUM_VARS]) -> Result<Self> {
        let [l1, l2, l3, l4] = lam.clone();
        let z = S::zero;
        let relations: [((usize, usize), [S; 4]); 6] = [
            ((0, 2), [z(), l2.clone(), z(), l4.clone()]),
            ((1, 3), [l1.clone(), z(), l3.clone(), z()]),
            ((1, 2), [-l2.clone(), z(), z(), -l3.clone()]),
            ((2, 3), [-l4.clone(), l3.clone(), z(), z()]),
            ((3, 0), [z(), l1.clone(), l4, z()]),
            ((1, 0), [z(), z(), -l2, l1]),
        ];
        let mut c = Tensor::zeros(DIM, vec![Variance::Covariant, Variance::Covariant, Variance::Contravariant]);
        for ((i, j), coeffs) in relations {
            for (k, v) in coeffs.into_iter().enumerate() {
                c.set(&[j, i, k], -v.clone());
                c.set(&[i, j, k], v);
            }
        }
        Self::from_structure_constants(lam, c)
    }

    /// Wraps arbitrary constants after checking antisymmetry and Jacobi.
    pub fn from_structure_constants(lam: [S; NUM_VARS], c: Tensor<S>) -> Result<Self> {
        for idx in multi_indices(DIM, 3) {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            if *c.get(&[i, j, k]) != -c.get(&[j, i, k]).clone() {
                return Err(Error::Invariant {
                    identity: "c^k_ij = -c^k_ji".into(),
                    indices: vec![i + 1, j + 1, k + 1],
                });
            }
        }
        let fam = LieFamily { lam, c };
        for idx in multi_indices(DIM, 3) {
            if fam.jacobi_residual(idx[0], idx[1], idx[2]).iter().any(|x| !x.is_zero()) {
                return Err(Error::Invariant {
                    identity: "Jacobi identity".into(),
                    indices: idx.iter().map(|i| i + 1).collect(),
                });
            }
        }
        Ok(fam)
    }

    pub fn lambda(&self) -> &[S; NUM_VARS] {
        &self.lam
    }

    pub fn structure_constants(&self) -> &Tensor<S> {
        &self.c
    }

    /// All parameters zero: the algebra is abelian.
    pub fn is_degenerate(&self) -> bool {
        self.lam.iter().all(Scalar::is_zero)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<S> {
        (0..DIM).map(|k| self.c.get(&[i, j, k]).clone()).collect()
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); DIM];
        for i in 0..DIM {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c.get(&[i, j, k]);
                    if !c.is_zero() {
                        *o = o.clone() + xy.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// `[[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        let (ei, ej, ek) = (unit::<S>(i), unit::<S>(j), unit::<S>(k));
        let a = self.bracket(&self.bracket(&ei, &ej), &ek);
        let b = self.bracket(&self.bracket(&ej, &ek), &ei);
        let c = self.bracket(&self.bracket(&ek, &ei), &ej);
        add_vec(add_vec(a, b), c)
    }
}

/// The almost hypercomplex pseudo-Hermitian structure on the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGStructure4<S: Scalar> {
    pub h: HypercomplexStructure<S>,
    pub metric: MetricPair<S>,
}

impl<S: Scalar> HGStructure4<S> {
    /// `J1: X1->X2, X2->-X1, X3->-X4, X4->X3`;
    /// `J2: X1->X3, X2->X4, X3->-X1, X4->-X2`; `J3 = J1 J2`;
    /// `g = diag(1, 1, -1, -1)`.
    pub fn standard() -> Self {
        let j1: Matrix<S> = signed_permutation(&[(0, 1, 1), (1, 0, -1), (2, 3, -1), (3, 2, 1)]);
        let j2: Matrix<S> = signed_permutation(&[(0, 2, 1), (1, 3, 1), (2, 0, -1), (3, 1, -1)]);
        let j3 = &j1 * &j2;
        let h = HypercomplexStructure::new(j1, j2, j3).expect("J1, J2, J1J2 form a hypercomplex triple");
        let one = Rational::from_int(1);
        let metric = MetricPair::diagonal(&[one.clone(), one.clone(), -one.clone(), -one])
            .expect("diagonal +-1 metric is nondegenerate");
        HGStructure4 { h, metric }
    }

    pub fn j(&self, alpha: usize) -> &Matrix<S> {
        self.h.j(alpha)
    }

    /// `J_alpha X_i` as a component vector.
    pub fn j_basis(&self, alpha: usize, i: usize) -> Vec<S> {
        self.j(alpha).column(i)
    }

    /// `g(J1x,J1y) = g(x,y)`, `g(J2x,J2y) = -g(x,y)`, `g(J3x,J3y) = -g(x,y)`.
    pub fn metric_identities(&self) -> Vec<(String, bool)> {
        let g = self.metric.g().to_matrix();
        let neg = -g.clone();
        vec![
            ("g(J1x,J1y) = g(x,y)".into(), g.congruent(self.j(1)) == g),
            ("g(J2x,J2y) = -g(x,y)".into(), g.congruent(self.j(2)) == neg),
            ("g(J3x,J3y) = -g(x,y)".into(), g.congruent(self.j(3)) == neg),
        ]
    }
}

/// Triples `(i, j, k)` where `g([Xi,Xj],Xk) + g([Xi,Xk],Xj) != 0`.
pub fn invariance_violations<S: Scalar>(fam: &LieFamily<S>, metric: &MetricPair<S>) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for idx in multi_indices(DIM, 3) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let a = metric.inner(&fam.bracket_basis(i, j), &unit(k));
        let b = metric.inner(&fam.bracket_basis(i, k), &unit(j));
        if !(a + b).is_zero() {
            out.push([i, j, k]);
        }
    }
    out
}

/// A connection on left-invariant fields: `nabla_{Xi} Xj = gamma^k_{ij} X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection<S: Scalar> {
    gamma: Tensor<S>,
}

impl<S: Scalar> Connection<S> {
    pub fn from_christoffel(gamma: Tensor<S>) -> Self {
        Connection { gamma }
    }

    pub fn christoffel(&self) -> &Tensor<S> {
        &self.gamma
    }

    /// `nabla_x y` for constant-coefficient fields.
    pub fn nabla(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); DIM];
        for i in 0..DIM {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let g = self.gamma.get(&[i, j, k]);
                    if !g.is_zero() {
                        *o = o.clone() + xy.clone() * g.clone();
                    }
                }
            }
        }
        out
    }

    pub fn nabla_basis(&self, i: usize, j: usize) -> Vec<S> {
        (0..DIM).map(|k| self.gamma.get(&[i, j, k]).clone()).collect()
    }

    /// `(nabla_x J) y = nabla_x (J y) - J (nabla_x y)`.
    pub fn nabla_endomorphism(&self, j: &Matrix<S>, x: &[S], y: &[S]) -> Vec<S> {
        sub_vec(self.nabla(x, &j.apply(y)), j.apply(&self.nabla(x, y)))
    }
}

/// Levi-Civita connection of an ad-invariant metric: `nabla_X Y = 1/2 [X, Y]`.
pub fn levi_civita<S: Scalar>(fam: &LieFamily<S>, metric: &MetricPair<S>) -> Result<Connection<S>> {
    if let Some(&[i, j, k]) = invariance_violations(fam, metric).first() {
        return Err(Error::MetricNotInvariant { i, j, k });
    }
    Ok(Connection {
        gamma: fam.structure_constants().scale(&Rational::new(1, 2)),
    })
}

/// Levi-Civita connection from the Koszul formula for left-invariant
/// fields, `2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)`.
/// Valid for any left-invariant metric.
pub fn koszul_connection<S: Scalar>(fam: &LieFamily<S>, metric: &MetricPair<S>) -> Connection<S> {
    let half = Rational::new(1, 2);
    let lowered = Tensor::from_fn(DIM, vec![Variance::Covariant; 3], |idx| {
        let (x, y, z) = (unit::<S>(idx[0]), unit::<S>(idx[1]), unit::<S>(idx[2]));
        let t1 = metric.inner(&fam.bracket(&x, &y), &z);
        let t2 = metric.inner(&fam.bracket(&y, &z), &x);
        let t3 = metric.inner(&fam.bracket(&z, &x), &y);
        (t1 - t2 + t3).scale(&half)
    });
    let gamma = metric.raise(&lowered, 2).expect("rank-3 covariant tensor");
    Connection { gamma }
}

/// `(i, j, k)` where `g(nabla_i X_j, X_k) + g(X_j, nabla_i X_k) != 0`.
pub fn metric_compatibility_violations<S: Scalar>(conn: &Connection<S>, metric: &MetricPair<S>) -> Vec<[usize; 3]> {
    multi_indices(DIM, 3)
        .filter_map(|idx| {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            let a = metric.inner(&conn.nabla_basis(i, j), &unit(k));
            let b = metric.inner(&unit(j), &conn.nabla_basis(i, k));
            (!(a + b).is_zero()).then_some([i, j, k])
        })
        .collect()
}

/// `(i, j)` where `nabla_i X_j - nabla_j X_i != [X_i, X_j]`.
pub fn torsion_violations<S: Scalar>(conn: &Connection<S>, fam: &LieFamily<S>) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let t = sub_vec(sub_vec(conn.nabla_basis(i, j), conn.nabla_basis(j, i)), fam.bracket_basis(i, j));
            if t.iter().any(|x| !x.is_zero()) {
                out.push([i, j]);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData<S: Scalar> {
    /// `R_{ijks} = g(R(X_i, X_j) X_k, X_s)`.
    pub r: Tensor<S>,
    /// `rho_{jk} = g^{is} R_{ijks}`.
    pub ricci: Tensor<S>,
    /// `g^{jk} rho_{jk}`.
    pub tau: S,
    /// `tau*_1 = 1/2 g^{ij} g^{kl} R(X_i, J1 X_j, X_k, J1 X_l)`;
    /// `tau*_a = g^{ij} g^{kl} R(X_i, X_k, J_a X_l, X_j)` for `a = 2, 3`.
    pub tau_star: [S; 3],
}

/// `R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z`.
pub fn curvature_operator<S: Scalar>(fam: &LieFamily<S>, conn: &Connection<S>, x: &[S], y: &[S], z: &[S]) -> Vec<S> {
    let a = conn.nabla(x, &conn.nabla(y, z));
    let b = conn.nabla(y, &conn.nabla(x, z));
    let c = conn.nabla(&fam.bracket(x, y), z);
    sub_vec(sub_vec(a, b), c)
}

/// Sums `f(i, j, k, l) g^{ij} g^{kl}` over nonzero inverse-metric entries.
fn double_trace<S: Scalar, F: FnMut(usize, usize, usize, usize) -> S>(metric: &MetricPair<S>, mut f: F) -> S {
    let gi = metric.g_inv();
    let mut acc = S::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            let gij = gi.get(&[i, j]);
            if gij.is_zero() {
                continue;
            }
            for k in 0..DIM {
                for l in 0..DIM {
                    let gkl = gi.get(&[k, l]);
                    if gkl.is_zero() {
                        continue;
                    }
                    acc = acc + gij.clone() * gkl.clone() * f(i, j, k, l);
                }
            }
        }
    }
    acc
}

pub fn curvature<S: Scalar>(fam: &LieFamily<S>, conn: &Connection<S>, hg: &HGStructure4<S>) -> CurvatureData<S> {
    let metric = &hg.metric;
    let r = Tensor::from_fn(DIM, vec![Variance::Covariant; 4], |idx| {
        let v = curvature_operator(fam, conn, &unit(idx[0]), &unit(idx[1]), &unit(idx[2]));
        metric.inner(&v, &unit(idx[3]))
    });
    let ricci = r
        .contract(metric.g_inv(), &[(0, 0), (3, 1)])
        .expect("rank-4 covariant against inverse metric");
    let tau = ricci
        .contract(metric.g_inv(), &[(0, 0), (1, 1)])
        .expect("rank-2 covariant against inverse metric")
        .into_scalar()
        .expect("full contraction");

    let e = |i: usize| unit::<S>(i);
    let tau1 = double_trace(metric, |i, j, k, l| {
        r.evaluate(&[&e(i), &hg.j_basis(1, j), &e(k), &hg.j_basis(1, l)])
    })
    .scale(&Rational::new(1, 2));
    let norden = |a: usize| double_trace(metric, |i, j, k, l| r.evaluate(&[&e(i), &e(k), &hg.j_basis(a, l), &e(j)]));
    CurvatureData {
        tau_star: [tau1, norden(2), norden(3)],
        r,
        ricci,
        tau,
    }
}

/// Index tuples violating skew symmetry in each pair, pair interchange, or
/// the first Bianchi identity.
pub fn riemann_symmetry_violations<S: Scalar>(r: &Tensor<S>) -> Vec<(&'static str, [usize; 4])> {
    let mut out = Vec::new();
    for idx in multi_indices(DIM, 4) {
        let (i, j, k, s) = (idx[0], idx[1], idx[2], idx[3]);
        let v = r.get(&[i, j, k, s]).clone();
        if v != -r.get(&[j, i, k, s]).clone() {
            out.push(("R_ijks = -R_jiks", [i, j, k, s]));
        }
        if v != -r.get(&[i, j, s, k]).clone() {
            out.push(("R_ijks = -R_ijsk", [i, j, k, s]));
        }
        if v != *r.get(&[k, s, i, j]) {
            out.push(("R_ijks = R_ksij", [i, j, k, s]));
        }
        let bianchi = v + r.get(&[j, k, i, s]).clone() + r.get(&[k, i, j, s]).clone();
        if !bianchi.is_zero() {
            out.push(("R_ijks + R_jkis + R_kijs = 0", [i, j, k, s]));
        }
    }
    out
}

/// The eight index tuples related to `(i, j, k, s)` by pair skew symmetry
/// and pair interchange, with the sign relating their values.
pub fn riemann_orbit(idx: [usize; 4]) -> [([usize; 4], i64); 8] {
    let [i, j, k, s] = idx;
    [
        ([i, j, k, s], 1),
        ([j, i, k, s], -1),
        ([i, j, s, k], -1),
        ([j, i, s, k], 1),
        ([k, s, i, j], 1),
        ([s, k, i, j], -1),
        ([k, s, j, i], -1),
        ([s, k, j, i], 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{symbolic_lambda, Poly};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn numeric(l: [i64; 4]) -> LieFamily<Rational> {
        LieFamily::new(l.map(q)).unwrap()
    }

    fn symbolic() -> LieFamily<Poly> {
        LieFamily::new(symbolic_lambda()).unwrap()
    }

    fn basis(i: usize) -> Vec<Rational> {
        unit(i)
    }

    #[test]
    fn brackets_at_first_axis() {
        let f = numeric([1, 0, 0, 0]);
        assert_eq!(f.bracket_basis(1, 3), basis(0));
        assert_eq!(f.bracket_basis(3, 0), basis(1));
        assert_eq!(f.bracket_basis(1, 0), basis(3));
        let nonzero: Vec<_> = multi_indices(DIM, 2)
            .filter(|p| p[0] < p[1] && f.bracket_basis(p[0], p[1]).iter().any(|x| !x.is_zero()))
            .collect();
        assert_eq!(nonzero, vec![vec![0, 1], vec![0, 3], vec![1, 3]]);
    }

    #[test]
    fn bracket_x1_x3() {
        let f = numeric([0, 1, 0, 1]);
        assert_eq!(f.bracket_basis(0, 2), vec![q(0), q(1), q(0), q(1)]);
    }

    #[test]
    fn jacobi_holds_symbolically() {
        let f = symbolic();
        for idx in multi_indices(DIM, 3) {
            assert!(f.jacobi_residual(idx[0], idx[1], idx[2]).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn corrupted_constants_are_caught() {
        let f = numeric([1, 1, 0, 0]);
        let mut c = f.structure_constants().clone();
        c.set(&[0, 1, 0], q(5));
        c.set(&[1, 0, 0], q(-5));
        let err = LieFamily::from_structure_constants(f.lambda().clone(), c).unwrap_err();
        assert!(matches!(err, Error::Invariant { ref identity, .. } if identity == "Jacobi identity"));
        let mut c = f.structure_constants().clone();
        c.set(&[0, 1, 0], q(5));
        let err = LieFamily::from_structure_constants(f.lambda().clone(), c).unwrap_err();
        assert!(matches!(err, Error::Invariant { ref identity, .. } if identity.starts_with("c^k_ij")));
    }

    #[test]
    fn nabla_x1_x3() {
        let f = numeric([0, 1, 0, 1]);
        let hg = HGStructure4::standard();
        let conn = levi_civita(&f, &hg.metric).unwrap();
        let half = Rational::new(1, 2);
        assert_eq!(conn.nabla_basis(0, 2), vec![q(0), half.clone(), q(0), half]);
        for i in 0..DIM {
            assert!(conn.nabla_basis(i, i).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn non_invariant_metric_is_rejected() {
        let f = numeric([1, 0, 0, 0]);
        let m = MetricPair::diagonal(&[q(1), q(2), q(-1), q(-1)]).unwrap();
        assert!(matches!(levi_civita(&f, &m), Err(Error::MetricNotInvariant { .. })));
        // The Koszul route still works and is compatible and torsion free.
        let k = koszul_connection(&f, &m);
        assert!(metric_compatibility_violations(&k, &m).is_empty());
        assert!(torsion_violations(&k, &f).is_empty());
    }

    #[test]
    fn connection_is_metric_and_torsion_free() {
        let f = symbolic();
        let hg = HGStructure4::standard();
        assert!(invariance_violations(&f, &hg.metric).is_empty());
        let conn = levi_civita(&f, &hg.metric).unwrap();
        assert!(metric_compatibility_violations(&conn, &hg.metric).is_empty());
        assert!(torsion_violations(&conn, &f).is_empty());
        assert_eq!(koszul_connection(&f, &hg.metric), conn);
    }

    #[test]
    fn structure_on_group_is_pseudo_hermitian() {
        let hg = HGStructure4::<Poly>::standard();
        assert!(hg.h.quaternion_identities().iter().all(|(_, ok)| *ok));
        assert!(hg.metric_identities().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn curvature_spot_values() {
        let f = numeric([0, 0, 1, 1]);
        let hg = HGStructure4::standard();
        let conn = levi_civita(&f, &hg.metric).unwrap();
        let cd = curvature(&f, &conn, &hg);
        assert_eq!(cd.r.get(&[2, 3, 3, 2]), &Rational::new(1, 2));

        let f = numeric([1, 2, 3, 4]);
        let conn = levi_civita(&f, &hg.metric).unwrap();
        assert_eq!(curvature(&f, &conn, &hg).tau, q(30));
    }

    #[test]
    fn abelian_case_is_flat() {
        let f = numeric([0, 0, 0, 0]);
        assert!(f.is_degenerate());
        let hg = HGStructure4::standard();
        let conn = levi_civita(&f, &hg.metric).unwrap();
        let cd = curvature(&f, &conn, &hg);
        assert!(cd.r.is_zero());
        assert!(cd.tau.is_zero());
    }

    #[test]
    fn symbolic_curvature_has_riemann_symmetries() {
        let f = symbolic();
        let hg = HGStructure4::standard();
        let conn = levi_civita(&f, &hg.metric).unwrap();
        let cd = curvature(&f, &conn, &hg);
        assert!(riemann_symmetry_violations(&cd.r).is_empty());
        let l = symbolic_lambda();
        let r1221 = -(l[0].clone() * l[0].clone() + l[1].clone() * l[1].clone()).scale(&Rational::new(1, 4));
        assert_eq!(cd.r.get(&[0, 1, 1, 0]), &r1221);
        assert_eq!(cd.tau_star[1], l[0].clone() * l[2].clone() + l[1].clone() * l[3].clone());
    }
}
