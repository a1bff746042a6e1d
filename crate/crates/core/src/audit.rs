//! Comparison of computed tensors and invariants against the reference
//! tables in [`crate::reference`].
//!
//! Reference polynomials are evaluated into the working ring, so the same
//! audit runs for the symbolic family and at a rational point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::FamilyAnalysis;
use crate::lie::{riemann_orbit, DIM};
use crate::reference;
use crate::scalar::{Poly, Rational, Scalar, NUM_VARS};
use crate::tensor::{MetricPair, Tensor, Variance};

/// Scalars that can report a constant of proportionality.
pub trait Ratio: Scalar {
    /// `Some(r)` with `other = r * self` when `self` is nonzero.
    fn ratio_to(&self, other: &Self) -> Option<Rational>;
    /// Evaluates a reference polynomial at the parameters.
    fn from_poly(p: &Poly, lam: &[Self; NUM_VARS]) -> Self;
}

impl Ratio for Rational {
    fn ratio_to(&self, other: &Self) -> Option<Rational> {
        self.recip().map(|inv| other.clone() * inv)
    }

    fn from_poly(p: &Poly, lam: &[Self; NUM_VARS]) -> Self {
        p.eval(lam)
    }
}

impl Ratio for Poly {
    fn ratio_to(&self, other: &Self) -> Option<Rational> {
        Poly::ratio_to(self, other)
    }

    fn from_poly(p: &Poly, lam: &[Self; NUM_VARS]) -> Self {
        p.eval_in(lam)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Match,
    SignFlip,
    /// Computed value is a constant other than `1`, `-1` times the reference.
    Scaled,
    Mismatch,
}

impl fmt::Display for EntryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryStatus::Match => "match",
            EntryStatus::SignFlip => "sign-flip",
            EntryStatus::Scaled => "scaled",
            EntryStatus::Mismatch => "mismatch",
        })
    }
}

/// Classifies `computed` against `reference`, returning the factor
/// `computed = factor * reference` when one exists.
pub fn compare<S: Ratio>(reference: &S, computed: &S) -> (EntryStatus, Option<Rational>) {
    if reference == computed {
        return (EntryStatus::Match, Some(Rational::from_int(1)));
    }
    match reference.ratio_to(computed) {
        Some(r) if r == Rational::from_int(-1) => (EntryStatus::SignFlip, Some(r)),
        Some(r) if !r.is_zero() => (EntryStatus::Scaled, Some(r)),
        _ => (EntryStatus::Mismatch, None),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryAudit<S: Scalar> {
    /// 0-based.
    pub indices: Vec<usize>,
    pub reference: S,
    pub computed: S,
    pub status: EntryStatus,
    pub factor: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAudit<S: Scalar> {
    pub name: String,
    pub entries: Vec<EntryAudit<S>>,
    /// Nonzero computed components outside the closure of the listed
    /// indices under the table's symmetries.
    pub unlisted_nonzero: Vec<(Vec<usize>, S)>,
}

impl<S: Scalar> TableAudit<S> {
    pub fn listed(&self) -> usize {
        self.entries.len()
    }

    pub fn matched(&self) -> usize {
        self.entries.iter().filter(|e| e.status == EntryStatus::Match).count()
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &EntryAudit<S>> {
        self.entries.iter().filter(|e| e.status != EntryStatus::Match)
    }

    pub fn is_clean(&self) -> bool {
        self.matched() == self.listed() && self.unlisted_nonzero.is_empty()
    }
}

/// Audits each listed entry and checks that everything not reachable from
/// a listed index through `closure` vanishes.
pub fn audit_table<S, C>(name: &str, table: &[(Vec<usize>, Poly)], lam: &[S; NUM_VARS], computed: &Tensor<S>, closure: C) -> TableAudit<S>
where
    S: Ratio,
    C: Fn(&[usize]) -> Vec<Vec<usize>>,
{
    let mut covered = std::collections::BTreeSet::new();
    let entries = table
        .iter()
        .map(|(idx, p)| {
            covered.extend(closure(idx));
            let reference = S::from_poly(p, lam);
            let value = computed.get(idx).clone();
            let (status, factor) = compare(&reference, &value);
            EntryAudit {
                indices: idx.clone(),
                reference,
                computed: value,
                status,
                factor,
            }
        })
        .collect();
    let unlisted_nonzero = computed
        .nonzero_entries()
        .filter(|(idx, _)| !covered.contains(idx))
        .map(|(idx, v)| (idx, v.clone()))
        .collect();
    TableAudit {
        name: name.to_string(),
        entries,
        unlisted_nonzero,
    }
}

fn identity_closure(idx: &[usize]) -> Vec<Vec<usize>> {
    vec![idx.to_vec()]
}

fn skew_pair_closure(idx: &[usize]) -> Vec<Vec<usize>> {
    vec![idx.to_vec(), vec![idx[1], idx[0]]]
}

fn curvature_closure(idx: &[usize]) -> Vec<Vec<usize>> {
    riemann_orbit([idx[0], idx[1], idx[2], idx[3]])
        .iter()
        .map(|(i, _)| i.to_vec())
        .collect()
}

/// Builds a full tensor from listed entries and their symmetry images.
fn tensor_from_entries<S: Scalar>(rank: usize, entries: &[(Vec<usize>, S)], orbit: Option<fn([usize; 4]) -> [([usize; 4], i64); 8]>) -> Tensor<S> {
    let mut t = Tensor::zeros(DIM, vec![Variance::Covariant; rank]);
    for (idx, v) in entries {
        match orbit {
            Some(o) => {
                for (img, sign) in o([idx[0], idx[1], idx[2], idx[3]]) {
                    let val = if sign < 0 { -v.clone() } else { v.clone() };
                    t.set(&img, val);
                }
            }
            None => t.set(idx, v.clone()),
        }
    }
    t
}

fn full_trace<S: Scalar>(r: &Tensor<S>, metric: &MetricPair<S>) -> (Tensor<S>, S) {
    let ricci = r.contract(metric.g_inv(), &[(0, 0), (3, 1)]).expect("covariant rank 4");
    let tau = ricci
        .contract(metric.g_inv(), &[(0, 0), (1, 1)])
        .expect("covariant rank 2")
        .into_scalar()
        .expect("full contraction");
    (ricci, tau)
}

/// The same contraction applied to the listed curvature values, to the
/// listed values with every discrepancy replaced by the computed value, and
/// to the computed tensor, against the closed form of `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauConsistency<S: Scalar> {
    pub closed_form: S,
    pub from_reference_table: S,
    pub from_corrected_table: S,
    pub from_computed: S,
    /// `rho_{jk} = g^{is} R_{ijks}` of the computed tensor.
    pub ricci: Tensor<S>,
}

impl<S: Scalar> TauConsistency<S> {
    pub fn reference_consistent(&self) -> bool {
        self.from_reference_table == self.closed_form
    }

    pub fn computed_consistent(&self) -> bool {
        self.from_computed == self.closed_form && self.from_corrected_table == self.closed_form
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureAudit<S: Scalar> {
    pub table: TableAudit<S>,
    pub tau: TauConsistency<S>,
}

pub fn audit_curvature<S: Ratio>(a: &FamilyAnalysis<S>) -> CurvatureAudit<S> {
    let lam = a.family.lambda();
    let metric = &a.hg.metric;
    let listed = reference::curvature_table();
    let table = audit_table("R", &listed, lam, &a.curvature.r, curvature_closure);
    let as_listed: Vec<_> = table.entries.iter().map(|e| (e.indices.clone(), e.reference.clone())).collect();
    let corrected: Vec<_> = table.entries.iter().map(|e| (e.indices.clone(), e.computed.clone())).collect();
    let (_, tau_ref) = full_trace(&tensor_from_entries(4, &as_listed, Some(riemann_orbit)), metric);
    let (_, tau_fix) = full_trace(&tensor_from_entries(4, &corrected, Some(riemann_orbit)), metric);
    let (ricci, tau_comp) = full_trace(&a.curvature.r, metric);
    CurvatureAudit {
        tau: TauConsistency {
            closed_form: S::from_poly(&reference::scalars().tau, lam),
            from_reference_table: tau_ref,
            from_corrected_table: tau_fix,
            from_computed: tau_comp,
            ricci,
        },
        table,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAudit<S: Scalar> {
    pub f: [TableAudit<S>; 3],
    /// The tabulated `F3` against `F3(x,y,z) = F1(x,J2y,z) - F2(x,y,J1z)`
    /// evaluated on the tabulated `F1` and `F2`: separates inconsistencies
    /// internal to the tables from errors in the computation.
    pub f3_from_linked_tables: TableAudit<S>,
    /// Lee forms equal their listed components.
    pub theta: [bool; 3],
    pub d_theta1: TableAudit<S>,
}

pub fn audit_structure<S: Ratio>(a: &FamilyAnalysis<S>) -> StructureAudit<S> {
    let lam = a.family.lambda();
    let tables = [reference::f1_table(), reference::f2_table(), reference::f3_table()];
    let f = [0, 1, 2].map(|k| audit_table(&format!("F{}", k + 1), &tables[k], lam, &a.structure.f[k], identity_closure));

    let eval = |t: &[(Vec<usize>, Poly)]| -> Tensor<S> {
        let e: Vec<_> = t.iter().map(|(i, p)| (i.clone(), S::from_poly(p, lam))).collect();
        tensor_from_entries(3, &e, None)
    };
    let (rf1, rf2) = (eval(&tables[0]), eval(&tables[1]));
    let (j1, j2) = (a.hg.j(1), a.hg.j(2));
    let unit = |i: usize| -> Vec<S> { (0..DIM).map(|k| if k == i { S::one() } else { S::zero() }).collect() };
    let linked = Tensor::from_fn(DIM, vec![Variance::Covariant; 3], |idx| {
        let (x, y, z) = (unit(idx[0]), unit(idx[1]), unit(idx[2]));
        rf1.evaluate(&[&x, &j2.apply(&y), &z]) - rf2.evaluate(&[&x, &y, &j1.apply(&z)])
    });
    let f3_from_linked_tables = audit_table("F3 via F1, F2 tables", &tables[2], lam, &linked, identity_closure);

    let lee = reference::lee_forms();
    let theta = [0, 1, 2].map(|k| {
        lee[k]
            .iter()
            .enumerate()
            .all(|(i, p)| S::from_poly(p, lam) == *a.structure.theta[k].get(&[i]))
    });
    let d_theta1 = audit_table("d theta1", &reference::d_theta1_table(), lam, &a.classes.theta1_d, skew_pair_closure);
    StructureAudit {
        f,
        f3_from_linked_tables,
        theta,
        d_theta1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarAudit<S: Scalar> {
    pub name: String,
    pub reference: S,
    pub computed: S,
    pub status: EntryStatus,
    pub factor: Option<Rational>,
}

fn scalar_audit<S: Ratio>(name: &str, reference: S, computed: S) -> ScalarAudit<S> {
    let (status, factor) = compare(&reference, &computed);
    ScalarAudit {
        name: name.to_string(),
        reference,
        computed,
        status,
        factor,
    }
}

/// Closed forms for `tau`, `tau*`, the norms, and the relations between
/// them (`2 tau*_1 = -||theta1||`, `||nabla Phi|| = 2 ||delta Phi||`).
pub fn audit_scalars<S: Ratio>(a: &FamilyAnalysis<S>) -> Vec<ScalarAudit<S>> {
    let lam = a.family.lambda();
    let r = reference::scalars();
    let ev = |p: &Poly| S::from_poly(p, lam);
    let c = &a.classes;
    let mut out = vec![scalar_audit("tau", ev(&r.tau), c.tau.clone())];
    for k in 0..3 {
        out.push(scalar_audit(&format!("tau*{}", k + 1), ev(&r.tau_star[k]), c.tau_star[k].clone()));
    }
    for k in 0..3 {
        out.push(scalar_audit(&format!("||nabla J{}||", k + 1), ev(&r.nabla_j[k]), c.nabla_j_norm[k].clone()));
    }
    for k in 0..3 {
        out.push(scalar_audit(&format!("||N{}||", k + 1), ev(&r.nijenhuis[k]), c.n_norm[k].clone()));
    }
    out.push(scalar_audit("||theta1||", ev(&r.theta1_norm), c.theta1_norm.clone()));
    out.push(scalar_audit(
        "2 tau*1 = -||theta1||",
        -c.theta1_norm.clone(),
        c.tau_star[0].clone() + c.tau_star[0].clone(),
    ));
    out.push(scalar_audit(
        "||nabla Phi|| = 2 ||delta Phi||",
        c.theta1_norm.clone() + c.theta1_norm.clone(),
        c.nabla_j_norm[0].clone(),
    ));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceAudit<S: Scalar> {
    pub curvature: CurvatureAudit<S>,
    pub structure: StructureAudit<S>,
    pub scalars: Vec<ScalarAudit<S>>,
}

pub fn audit<S: Ratio>(a: &FamilyAnalysis<S>) -> ReferenceAudit<S> {
    ReferenceAudit {
        curvature: audit_curvature(a),
        structure: audit_structure(a),
        scalars: audit_scalars(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::scalar::symbolic_lambda;

    fn symbolic() -> ReferenceAudit<Poly> {
        audit(&analyze(symbolic_lambda()).unwrap())
    }

    #[test]
    fn curvature_table_has_one_sign_flip() {
        let a = symbolic();
        let t = &a.curvature.table;
        assert_eq!(t.listed(), 18);
        assert_eq!(t.matched(), 17);
        let bad: Vec<_> = t.discrepancies().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].indices, vec![0, 3, 3, 0]);
        assert_eq!(bad[0].status, EntryStatus::SignFlip);
        assert!(t.unlisted_nonzero.is_empty());
    }

    #[test]
    fn only_the_corrected_table_reproduces_tau() {
        let tau = symbolic().curvature.tau;
        assert!(tau.computed_consistent());
        assert!(!tau.reference_consistent());
    }

    #[test]
    fn f3_table_is_inconsistent_with_f1_f2_tables() {
        let a = symbolic();
        assert!(a.structure.f[0].is_clean());
        assert!(a.structure.f[1].is_clean());
        for t in [&a.structure.f[2], &a.structure.f3_from_linked_tables] {
            let bad: Vec<_> = t.discrepancies().collect();
            assert_eq!(bad.len(), 8);
            assert!(bad.iter().all(|e| e.factor == Some(Rational::from_int(4))));
            assert!(t.unlisted_nonzero.is_empty());
        }
    }

    #[test]
    fn lee_forms_and_d_theta_match() {
        let a = symbolic();
        assert_eq!(a.structure.theta, [true; 3]);
        assert!(a.structure.d_theta1.is_clean());
    }

    #[test]
    fn scalar_statuses() {
        let a = symbolic();
        for s in &a.scalars {
            match s.name.as_str() {
                "||N2||" | "||N3||" => assert_eq!(s.factor, Some(Rational::from_int(-1))),
                _ => assert_eq!(s.status, EntryStatus::Match, "{}", s.name),
            }
        }
    }

    #[test]
    fn flat_point_audits_trivially() {
        let z = Rational::from_int(0);
        let a = audit(&analyze([z.clone(), z.clone(), z.clone(), z]).unwrap());
        assert!(a.curvature.table.is_clean());
        assert!(a.curvature.tau.reference_consistent());
    }
}
