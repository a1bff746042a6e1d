//! Structure tensors, Lee forms, Nijenhuis tensors and the class predicates
//! for almost Hermitian (`J1`) and Norden-metric (`J2`, `J3`) structures.
//!
//! Predicates are checked on every basis triple with exact equality, which
//! is complete for multilinear identities.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hypercomplex::HypercomplexStructure;
use crate::lie::{curvature, levi_civita, Connection, CurvatureData, HGStructure4, LieFamily, DIM};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar, NUM_VARS};
use crate::tensor::{multi_indices, MetricPair, Tensor, Variance};

fn unit<S: Scalar>(dim: usize, i: usize) -> Vec<S> {
    (0..dim).map(|k| if k == i { S::one() } else { S::zero() }).collect()
}

/// `F_alpha` and their Lee forms `theta_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensors<S: Scalar> {
    pub f: [Tensor<S>; 3],
    pub theta: [Tensor<S>; 3],
}

/// `F(X_i, X_j, X_k) = g((nabla_{X_i} J) X_j, X_k)`.
pub fn structure_tensor<S: Scalar>(conn: &Connection<S>, j: &Matrix<S>, metric: &MetricPair<S>) -> Tensor<S> {
    let n = metric.dim();
    Tensor::from_fn(n, vec![Variance::Covariant; 3], |idx| {
        let v = conn.nabla_endomorphism(j, &unit(n, idx[0]), &unit(n, idx[1]));
        metric.inner(&v, &unit(n, idx[2]))
    })
}

/// `theta(z) = g^{ij} F(e_i, e_j, z)`.
pub fn lee_form<S: Scalar>(f: &Tensor<S>, metric: &MetricPair<S>) -> Tensor<S> {
    f.contract(metric.g_inv(), &[(0, 0), (1, 1)])
        .expect("rank-3 covariant against inverse metric")
}

pub fn structure_tensors<S: Scalar>(conn: &Connection<S>, hg: &HGStructure4<S>) -> StructureTensors<S> {
    let f = [1, 2, 3].map(|a| structure_tensor(conn, hg.j(a), &hg.metric));
    let theta = [0, 1, 2].map(|a| lee_form(&f[a], &hg.metric));
    StructureTensors { f, theta }
}

/// Evaluates a rank-3 tensor on three component vectors.
fn f3<S: Scalar>(f: &Tensor<S>, x: &[S], y: &[S], z: &[S]) -> S {
    f.evaluate(&[x, y, z])
}

fn covector<S: Scalar>(theta: &Tensor<S>, x: &[S]) -> S {
    theta.evaluate(&[x])
}

/// Basis triples where the linking identities between `F1, F2, F3` fail:
///
/// ```text
/// F1(x,y,z) = F2(x,J3y,z) + F3(x,y,J2z)
/// F2(x,y,z) = F3(x,J1y,z) + F1(x,y,J3z)
/// F3(x,y,z) = F1(x,J2y,z) - F2(x,y,J1z)
/// ```
pub fn linking_identity_violations<S: Scalar>(
    f: &[Tensor<S>; 3],
    h: &HypercomplexStructure<S>,
) -> Vec<(&'static str, [usize; 3])> {
    let n = h.dim();
    let mut out = Vec::new();
    for idx in multi_indices(n, 3) {
        let (x, y, z) = (unit::<S>(n, idx[0]), unit::<S>(n, idx[1]), unit::<S>(n, idx[2]));
        let jy = |a: usize| h.j(a).apply(&y);
        let jz = |a: usize| h.j(a).apply(&z);
        let lhs = |a: usize| f3(&f[a - 1], &x, &y, &z);
        let t = [idx[0], idx[1], idx[2]];
        if lhs(1) != f3(&f[1], &x, &jy(3), &z) + f3(&f[2], &x, &y, &jz(2)) {
            out.push(("F1 = F2(x,J3y,z) + F3(x,y,J2z)", t));
        }
        if lhs(2) != f3(&f[2], &x, &jy(1), &z) + f3(&f[0], &x, &y, &jz(3)) {
            out.push(("F2 = F3(x,J1y,z) + F1(x,y,J3z)", t));
        }
        if lhs(3) != f3(&f[0], &x, &jy(2), &z) - f3(&f[1], &x, &y, &jz(1)) {
            out.push(("F3 = F1(x,J2y,z) - F2(x,y,J1z)", t));
        }
    }
    out
}

/// Basis triples where the symmetry / J-compatibility identities fail:
/// `F1` skew in its last two slots with `F1(x,J1y,J1z) = -F1(x,y,z)`;
/// `F2`, `F3` symmetric in the last two slots with
/// `F_a(x,J_a y,J_a z) = F_a(x,y,z)`.
pub fn symmetry_identity_violations<S: Scalar>(
    f: &[Tensor<S>; 3],
    h: &HypercomplexStructure<S>,
) -> Vec<(String, [usize; 3])> {
    let n = h.dim();
    let mut out = Vec::new();
    for idx in multi_indices(n, 3) {
        let (x, y, z) = (unit::<S>(n, idx[0]), unit::<S>(n, idx[1]), unit::<S>(n, idx[2]));
        let t = [idx[0], idx[1], idx[2]];
        for a in 1..=3 {
            let sign = if a == 1 { -1 } else { 1 };
            let fa = &f[a - 1];
            let v = f3(fa, &x, &y, &z);
            let swapped = f3(fa, &x, &z, &y);
            let jj = f3(fa, &x, &h.j(a).apply(&y), &h.j(a).apply(&z));
            let expect = if sign < 0 { -v.clone() } else { v.clone() };
            if swapped != expect {
                out.push((format!("F{a}(x,y,z) = {}F{a}(x,z,y)", if sign < 0 { "-" } else { "" }), t));
            }
            if jj != expect {
                out.push((format!("F{a}(x,y,z) = {}F{a}(x,J{a}y,J{a}z)", if sign < 0 { "-" } else { "" }), t));
            }
        }
    }
    out
}

/// Defining-identity classes. `W0` (`F = 0`) lies in every other class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WClass {
    W0,
    W1,
    W2,
    W3,
    W4,
}

impl fmt::Display for WClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    /// Every class whose defining identity holds, `W0` included.
    pub satisfied: Vec<WClass>,
    pub kaehler: bool,
    /// The single non-`W0` class satisfied, when `W0` fails and exactly one
    /// identity holds.
    pub basic_class: Option<WClass>,
}

impl ClassVerdict {
    fn from_checks(kaehler: bool, checks: &[(WClass, bool)]) -> Self {
        let mut satisfied: Vec<WClass> = checks.iter().filter(|(_, ok)| *ok).map(|(c, _)| *c).collect();
        if kaehler {
            satisfied.insert(0, WClass::W0);
        }
        let basic_class = match (kaehler, satisfied.as_slice()) {
            (false, [only]) => Some(*only),
            _ => None,
        };
        ClassVerdict {
            satisfied,
            kaehler,
            basic_class,
        }
    }

    pub fn holds(&self, c: WClass) -> bool {
        self.satisfied.contains(&c)
    }
}

/// All basis triples satisfy `pred`.
fn all_triples<S: Scalar, P: FnMut(&[S], &[S], &[S]) -> bool>(n: usize, mut pred: P) -> bool {
    multi_indices(n, 3).all(|idx| {
        let (x, y, z) = (unit::<S>(n, idx[0]), unit::<S>(n, idx[1]), unit::<S>(n, idx[2]));
        pred(&x, &y, &z)
    })
}

fn cyclic_sum<S: Scalar, F: Fn(&[S], &[S], &[S]) -> S>(x: &[S], y: &[S], z: &[S], f: F) -> S {
    f(x, y, z) + f(y, z, x) + f(z, x, y)
}

/// `F(x,y,z) = F(Jx,Jy,z)` on all basis triples.
pub fn j_invariant_first_pair<S: Scalar>(f: &Tensor<S>, j: &Matrix<S>) -> bool {
    all_triples::<S, _>(f.dim(), |x, y, z| f3(f, x, y, z) == f3(f, &j.apply(x), &j.apply(y), z))
}

/// Almost Hermitian classes in dimension `4n`:
///
/// ```text
/// W1: F(x,y,z) = -F(y,x,z)
/// W2: cyclic sum of F(x,y,z) = 0
/// W3: F(x,y,z) = F(Jx,Jy,z) and theta = 0
/// W4: F(x,y,z) = 1/(2(2n-1)) { g(x,y)theta(z) - g(x,z)theta(y)
///                              - g(x,Jy)theta(Jz) + g(x,Jz)theta(Jy) }
/// ```
pub fn classify_hermitian<S: Scalar>(f: &Tensor<S>, theta: &Tensor<S>, j: &Matrix<S>, metric: &MetricPair<S>) -> ClassVerdict {
    let dim = f.dim();
    let n = (dim / 4).max(1) as i64;
    let coef = Rational::new(1, 2 * (2 * n - 1));
    let g = |a: &[S], b: &[S]| metric.inner(a, b);
    let th = |a: &[S]| covector(theta, a);
    let w1 = all_triples::<S, _>(dim, |x, y, z| f3(f, x, y, z) == -f3(f, y, x, z));
    let w2 = all_triples::<S, _>(dim, |x, y, z| cyclic_sum(x, y, z, |a, b, c| f3(f, a, b, c)).is_zero());
    let w3 = theta.is_zero() && j_invariant_first_pair(f, j);
    let w4 = all_triples::<S, _>(dim, |x, y, z| {
        let (jy, jz) = (j.apply(y), j.apply(z));
        let rhs = g(x, y) * th(z) - g(x, z) * th(y) - g(x, &jy) * th(&jz) + g(x, &jz) * th(&jy);
        f3(f, x, y, z) == rhs.scale(&coef)
    });
    ClassVerdict::from_checks(
        f.is_zero(),
        &[(WClass::W1, w1), (WClass::W2, w2), (WClass::W3, w3), (WClass::W4, w4)],
    )
}

/// Norden-metric classes in dimension `4n`:
///
/// ```text
/// W1: F(x,y,z) = 1/(4n) { g(x,y)theta(z) + g(x,z)theta(y)
///                         + g(x,Jy)theta(Jz) + g(x,Jz)theta(Jy) }
/// W2: cyclic sum of F(x,y,Jz) = 0 and theta = 0
/// W3: cyclic sum of F(x,y,z) = 0
/// ```
pub fn classify_norden<S: Scalar>(f: &Tensor<S>, theta: &Tensor<S>, j: &Matrix<S>, metric: &MetricPair<S>) -> ClassVerdict {
    let dim = f.dim();
    let n = (dim / 4).max(1) as i64;
    let coef = Rational::new(1, 4 * n);
    let g = |a: &[S], b: &[S]| metric.inner(a, b);
    let th = |a: &[S]| covector(theta, a);
    let w1 = all_triples::<S, _>(dim, |x, y, z| {
        let (jy, jz) = (j.apply(y), j.apply(z));
        let rhs = g(x, y) * th(z) + g(x, z) * th(y) + g(x, &jy) * th(&jz) + g(x, &jz) * th(&jy);
        f3(f, x, y, z) == rhs.scale(&coef)
    });
    let w2 = theta.is_zero()
        && all_triples::<S, _>(dim, |x, y, z| cyclic_sum(x, y, z, |a, b, c| f3(f, a, b, &j.apply(c))).is_zero());
    let w3 = all_triples::<S, _>(dim, |x, y, z| cyclic_sum(x, y, z, |a, b, c| f3(f, a, b, c)).is_zero());
    ClassVerdict::from_checks(f.is_zero(), &[(WClass::W1, w1), (WClass::W2, w2), (WClass::W3, w3)])
}

/// Nijenhuis tensors `N_a(X,Y) = [J_aX,J_aY] - J_a[J_aX,Y] - J_a[X,J_aY] - [X,Y]`
/// as `(1,2)`-tensors, with square norms
/// `g^{ij} g^{kl} g(N(e_i,e_k), N(e_j,e_l))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisData<S: Scalar> {
    pub n: [Tensor<S>; 3],
    pub norms: [S; 3],
}

pub fn nijenhuis_tensor<S: Scalar>(fam: &LieFamily<S>, j: &Matrix<S>) -> Tensor<S> {
    let br = |x: &[S], y: &[S]| fam.bracket(x, y);
    let mut t = Tensor::zeros(DIM, vec![Variance::Covariant, Variance::Covariant, Variance::Contravariant]);
    for a in 0..DIM {
        for b in 0..DIM {
            let (x, y) = (unit::<S>(DIM, a), unit::<S>(DIM, b));
            let (jx, jy) = (j.apply(&x), j.apply(&y));
            let t1 = br(&jx, &jy);
            let t2 = j.apply(&br(&jx, &y));
            let t3 = j.apply(&br(&x, &jy));
            let t4 = br(&x, &y);
            for k in 0..DIM {
                let v = t1[k].clone() - t2[k].clone() - t3[k].clone() - t4[k].clone();
                t.set(&[a, b, k], v);
            }
        }
    }
    t
}

pub fn nijenhuis<S: Scalar>(fam: &LieFamily<S>, hg: &HGStructure4<S>) -> NijenhuisData<S> {
    let n = [1, 2, 3].map(|a| nijenhuis_tensor(fam, hg.j(a)));
    let norms = [0, 1, 2].map(|a| {
        let lowered = hg.metric.lower(&n[a], 2).expect("(1,2)-tensor");
        hg.metric.square_norm(&lowered).expect("covariant after lowering")
    });
    NijenhuisData { n, norms }
}

/// `d theta (X_i, X_j) = -theta([X_i, X_j])` for a left-invariant 1-form.
pub fn exterior_d_theta<S: Scalar>(theta: &Tensor<S>, fam: &LieFamily<S>) -> Tensor<S> {
    Tensor::from_fn(DIM, vec![Variance::Covariant; 2], |idx| {
        -covector(theta, &fam.bracket_basis(idx[0], idx[1]))
    })
}

/// `||nabla J_a|| = ||F_a||` and the isotropic Kaehler flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyReport<S: Scalar> {
    pub nabla_j: [S; 3],
    pub isotropic: [bool; 3],
    pub isotropic_hyper: bool,
}

pub fn isotropic_flags<S: Scalar>(st: &StructureTensors<S>, metric: &MetricPair<S>) -> IsotropyReport<S> {
    let nabla_j = [0, 1, 2].map(|a| metric.square_norm(&st.f[a]).expect("F is covariant"));
    let isotropic = [0, 1, 2].map(|a| nabla_j[a].is_zero());
    IsotropyReport {
        isotropic_hyper: isotropic.iter().all(|b| *b),
        nabla_j,
        isotropic,
    }
}

/// Verdicts and invariants for one point (or the symbolic family).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport<S: Scalar> {
    /// Almost Hermitian classes for `J1`.
    pub hermitian: ClassVerdict,
    /// Norden classes for `J2` and `J3`.
    pub norden: [ClassVerdict; 2],
    /// `F1(x,y,z) = F1(J1x,J1y,z)`.
    pub f1_j1_invariant: bool,
    /// `W0` for each `J_a`.
    pub kaehler: [bool; 3],
    pub pseudo_hyper_kaehler: bool,
    pub isotropic: [bool; 3],
    pub isotropic_hyper: bool,
    pub theta1_closed: bool,
    pub tau: S,
    pub tau_star: [S; 3],
    pub nabla_j_norm: [S; 3],
    pub n_norm: [S; 3],
    pub theta1_norm: S,
    pub theta1_d: Tensor<S>,
}

/// Everything computed for one parameter vector.
#[derive(Clone, Debug)]
pub struct FamilyAnalysis<S: Scalar> {
    pub family: LieFamily<S>,
    pub hg: HGStructure4<S>,
    pub connection: Connection<S>,
    pub curvature: CurvatureData<S>,
    pub structure: StructureTensors<S>,
    pub nijenhuis: NijenhuisData<S>,
    pub classes: ClassReport<S>,
    pub warnings: Vec<String>,
}

pub fn analyze<S: Scalar>(lam: [S; NUM_VARS]) -> Result<FamilyAnalysis<S>> {
    let family = LieFamily::new(lam)?;
    let hg = HGStructure4::standard();
    let connection = levi_civita(&family, &hg.metric)?;
    let curvature = curvature(&family, &connection, &hg);
    let structure = structure_tensors(&connection, &hg);
    let nijenhuis = nijenhuis(&family, &hg);
    let iso = isotropic_flags(&structure, &hg.metric);
    let hermitian = classify_hermitian(&structure.f[0], &structure.theta[0], hg.j(1), &hg.metric);
    let norden = [2, 3].map(|a| classify_norden(&structure.f[a - 1], &structure.theta[a - 1], hg.j(a), &hg.metric));
    let kaehler = [hermitian.kaehler, norden[0].kaehler, norden[1].kaehler];
    let theta1_d = exterior_d_theta(&structure.theta[0], &family);
    let theta1_norm = hg.metric.square_norm(&structure.theta[0]).expect("covector");
    let mut warnings = Vec::new();
    if family.is_degenerate() {
        warnings.push("lambda = (0,0,0,0): abelian algebra, flat metric; outside the non-degenerate family".to_string());
    }
    let classes = ClassReport {
        f1_j1_invariant: j_invariant_first_pair(&structure.f[0], hg.j(1)),
        pseudo_hyper_kaehler: kaehler.iter().all(|b| *b),
        kaehler,
        hermitian,
        norden,
        isotropic: iso.isotropic,
        isotropic_hyper: iso.isotropic_hyper,
        theta1_closed: theta1_d.is_zero(),
        tau: curvature.tau.clone(),
        tau_star: curvature.tau_star.clone(),
        nabla_j_norm: iso.nabla_j,
        n_norm: nijenhuis.norms.clone(),
        theta1_norm,
        theta1_d,
    };
    Ok(FamilyAnalysis {
        family,
        hg,
        connection,
        curvature,
        structure,
        nijenhuis,
        classes,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;
    use crate::scalar::{symbolic_lambda, Poly};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn symbolic() -> FamilyAnalysis<Poly> {
        analyze(symbolic_lambda()).unwrap()
    }

    fn l(i: usize) -> Poly {
        Poly::var(i - 1)
    }

    #[test]
    fn structure_tensor_spot_components() {
        let a = symbolic();
        let half = Rational::new(1, 2);
        assert_eq!(a.structure.f[0].get(&[0, 0, 3]), &l(1).scale(&half));
        assert_eq!(a.structure.f[1].get(&[1, 0, 1]), &l(1).scale(&half));
        // Follows from the linking identity; the tabulated value is -l1/4.
        assert_eq!(a.structure.f[2].get(&[1, 0, 0]), &-l(1));
    }

    #[test]
    fn lee_forms() {
        let a = symbolic();
        let expected = reference::lee_forms();
        for k in 0..3 {
            assert_eq!(a.structure.theta[k].data(), expected[k].as_slice());
        }
    }

    #[test]
    fn identity_families_hold() {
        let a = symbolic();
        assert!(linking_identity_violations(&a.structure.f, &a.hg.h).is_empty());
        assert!(symmetry_identity_violations(&a.structure.f, &a.hg.h).is_empty());
    }

    #[test]
    fn two_vanishing_structure_tensors_force_the_third() {
        use crate::hypercomplex::HypercomplexStructure;
        let h = HypercomplexStructure::<Rational>::standard(1).unwrap();
        let zero = Tensor::covariant(4, 3);
        let mut seed = 17u64;
        for _ in 0..20 {
            let third = Tensor::from_fn(4, vec![Variance::Covariant; 3], |_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                q(((seed >> 33) % 7) as i64 - 3)
            });
            if third.is_zero() {
                continue;
            }
            for slot in 0..3 {
                let mut f = [zero.clone(), zero.clone(), zero.clone()];
                f[slot] = third.clone();
                assert!(!linking_identity_violations(&f, &h).is_empty());
            }
        }
        let f = [zero.clone(), zero.clone(), zero];
        assert!(linking_identity_violations(&f, &h).is_empty());
    }

    #[test]
    fn classes_for_symbolic_family() {
        let a = symbolic();
        let c = &a.classes;
        assert_eq!(c.hermitian.satisfied, vec![WClass::W4]);
        assert_eq!(c.hermitian.basic_class, Some(WClass::W4));
        assert_eq!(c.norden[0].satisfied, vec![WClass::W3]);
        assert_eq!(c.norden[1].satisfied, vec![WClass::W3]);
        assert!(c.f1_j1_invariant);
        assert!(!c.pseudo_hyper_kaehler);
        assert!(!c.theta1_closed);
    }

    #[test]
    fn zero_tensor_is_kaehler_in_every_class() {
        let hg = HGStructure4::<Rational>::standard();
        let z3 = Tensor::covariant(4, 3);
        let z1 = Tensor::covariant(4, 1);
        let h = classify_hermitian(&z3, &z1, hg.j(1), &hg.metric);
        assert_eq!(h.satisfied, vec![WClass::W0, WClass::W1, WClass::W2, WClass::W3, WClass::W4]);
        assert_eq!(h.basic_class, None);
        let nd = classify_norden(&z3, &z1, hg.j(2), &hg.metric);
        assert_eq!(nd.satisfied, vec![WClass::W0, WClass::W1, WClass::W2, WClass::W3]);
    }

    #[test]
    fn nijenhuis_values() {
        let a = symbolic();
        assert!(a.nijenhuis.n[0].is_zero());
        assert!(a.nijenhuis.norms[0].is_zero());
        let p = reference::neutral_square();
        assert_eq!(p.ratio_to(&a.nijenhuis.norms[1]), Some(q(-32)));
        assert_eq!(p.ratio_to(&a.nijenhuis.norms[2]), Some(q(-32)));
        for t in &a.nijenhuis.n {
            for idx in multi_indices(4, 3) {
                assert_eq!(t.get(&[idx[0], idx[1], idx[2]]), &-t.get(&[idx[1], idx[0], idx[2]]).clone());
            }
        }
        let flat = analyze([q(0), q(0), q(0), q(0)]).unwrap();
        assert!(flat.nijenhuis.n.iter().all(Tensor::is_zero));
        assert_eq!(flat.warnings.len(), 1);
    }

    #[test]
    fn d_theta1_entries() {
        let a = symbolic();
        let d = &a.classes.theta1_d;
        assert_eq!(d.get(&[0, 1]), &(l(1) * l(1) + l(2) * l(2)));
        assert_eq!(d.get(&[2, 3]), &(-(l(3) * l(3)) - l(4) * l(4)));
        assert_eq!(d.get(&[0, 3]), &(l(1) * l(3) - l(2) * l(4)));
    }

    #[test]
    fn isotropy_at_points() {
        let a = analyze([q(1), q(2), q(2), q(1)]).unwrap();
        assert!(a.classes.isotropic_hyper);
        assert!(a.classes.tau.is_zero());
        let b = analyze([q(1), q(0), q(0), q(0)]).unwrap();
        assert_eq!(b.classes.nabla_j_norm[1], q(4));
        assert!(!b.classes.isotropic.iter().any(|x| *x));
    }

    #[test]
    fn norms_are_proportional() {
        let a = symbolic();
        let p = reference::neutral_square();
        let ratios: Vec<_> = a.classes.nabla_j_norm.iter().map(|n| p.ratio_to(n)).collect();
        assert_eq!(ratios, vec![Some(q(-2)), Some(q(4)), Some(q(4))]);
    }
}
