//! Report documents for `analyze`: a fixed-order JSON schema and a plain
//! text rendering of the same data.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, ClassVerdict, FamilyAnalysis, WClass};
use crate::audit::{audit, EntryStatus, Ratio, ReferenceAudit, TableAudit};
use crate::error::{Error, Result};
use crate::scalar::{symbolic_lambda, lift_lambda, Poly, Rational, Scalar, NUM_VARS};
use crate::tensor::Tensor;

/// Parameters: the symbolic family or a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaSpec {
    Symbolic,
    Numeric([Rational; NUM_VARS]),
}

impl LambdaSpec {
    /// Parses `"p1,p2,p3,p4"` with each entry an integer or `p/q`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != NUM_VARS {
            return Err(Error::Usage(format!(
                "--lambda expects {NUM_VARS} comma-separated rationals, got {}",
                parts.len()
            )));
        }
        let mut lam = Vec::with_capacity(NUM_VARS);
        for p in &parts {
            lam.push(
                p.parse::<Rational>()
                    .map_err(|e| Error::Usage(format!("--lambda entry {p:?}: {e}")))?,
            );
        }
        let lam: [Rational; NUM_VARS] = lam.try_into().expect("length checked");
        Ok(LambdaSpec::Numeric(lam))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub lambda: LambdaSpec,
    pub format: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// 1-based.
    pub indices: Vec<usize>,
    pub value: String,
}

fn components<S: Scalar>(t: &Tensor<S>) -> Vec<Component> {
    t.nonzero_entries()
        .map(|(idx, v)| Component {
            indices: idx.iter().map(|i| i + 1).collect(),
            value: v.to_string(),
        })
        .collect()
}

fn strings<S: Scalar>(xs: &[S; 3]) -> [String; 3] {
    [xs[0].to_string(), xs[1].to_string(), xs[2].to_string()]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub mode: Mode,
    pub lambda: [String; NUM_VARS],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub indices: Vec<usize>,
    pub reference: String,
    pub computed: String,
    pub status: EntryStatus,
    /// `computed = factor * reference`.
    pub factor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableAuditDoc {
    pub listed: usize,
    pub matched: usize,
    pub entries: Vec<EntryDoc>,
    pub unlisted_nonzero: Vec<Component>,
}

impl<S: Scalar> From<&TableAudit<S>> for TableAuditDoc {
    fn from(t: &TableAudit<S>) -> Self {
        TableAuditDoc {
            listed: t.listed(),
            matched: t.matched(),
            entries: t
                .entries
                .iter()
                .map(|e| EntryDoc {
                    indices: e.indices.iter().map(|i| i + 1).collect(),
                    reference: e.reference.to_string(),
                    computed: e.computed.to_string(),
                    status: e.status.clone(),
                    factor: e.factor.as_ref().map(ToString::to_string),
                })
                .collect(),
            unlisted_nonzero: t
                .unlisted_nonzero
                .iter()
                .map(|(idx, v)| Component {
                    indices: idx.iter().map(|i| i + 1).collect(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauConsistencyDoc {
    pub closed_form: String,
    pub from_reference_table: String,
    pub from_corrected_table: String,
    pub from_computed: String,
    pub ricci: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureAuditDoc {
    pub table: TableAuditDoc,
    pub tau_consistency: TauConsistencyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureSection {
    pub components: Vec<Component>,
    pub audit: CurvatureAuditDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarsSection {
    pub tau: String,
    pub tau_star: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSection {
    pub theta1: Vec<Component>,
    pub theta2: Vec<Component>,
    pub theta3: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureAuditDoc {
    #[serde(rename = "F1")]
    pub f1: TableAuditDoc,
    #[serde(rename = "F2")]
    pub f2: TableAuditDoc,
    #[serde(rename = "F3")]
    pub f3: TableAuditDoc,
    #[serde(rename = "F3_from_F1_F2_tables")]
    pub f3_linked: TableAuditDoc,
    pub theta_match: [bool; 3],
    pub d_theta1: TableAuditDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSection {
    #[serde(rename = "F1")]
    pub f1: Vec<Component>,
    #[serde(rename = "F2")]
    pub f2: Vec<Component>,
    #[serde(rename = "F3")]
    pub f3: Vec<Component>,
    pub theta: ThetaSection,
    pub d_theta1: Vec<Component>,
    pub audit: StructureAuditDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NijenhuisComponents {
    #[serde(rename = "N1")]
    pub n1: Vec<Component>,
    #[serde(rename = "N2")]
    pub n2: Vec<Component>,
    #[serde(rename = "N3")]
    pub n3: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NijenhuisSection {
    pub components: NijenhuisComponents,
    pub norms: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarAuditDoc {
    pub name: String,
    pub reference: String,
    pub computed: String,
    pub status: EntryStatus,
    pub factor: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormsSection {
    #[serde(rename = "nablaJ")]
    pub nabla_j: [String; 3],
    pub theta1: String,
    pub audit: Vec<ScalarAuditDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub structure: String,
    pub satisfied: Vec<WClass>,
    pub kaehler: bool,
    pub basic_class: Option<WClass>,
}

fn class_doc(structure: &str, v: &ClassVerdict) -> ClassDoc {
    ClassDoc {
        structure: structure.to_string(),
        satisfied: v.satisfied.clone(),
        kaehler: v.kaehler,
        basic_class: v.basic_class,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesSection {
    #[serde(rename = "J1")]
    pub j1: ClassDoc,
    #[serde(rename = "J2")]
    pub j2: ClassDoc,
    #[serde(rename = "J3")]
    pub j3: ClassDoc,
    /// `F1(x,y,z) = F1(J1x,J1y,z)`.
    pub f1_j1_invariant: bool,
    pub n1_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsSection {
    pub kaehler: [bool; 3],
    pub pseudo_hyper_kaehler: bool,
    pub isotropic: [bool; 3],
    pub isotropic_hyper: bool,
    pub scalar_flat: bool,
    pub theta1_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub parameters: Parameters,
    pub brackets: Vec<Component>,
    pub connection: Vec<Component>,
    pub curvature: CurvatureSection,
    pub scalars: ScalarsSection,
    pub structure_tensors: StructureSection,
    pub nijenhuis: NijenhuisSection,
    pub norms: NormsSection,
    pub classes: ClassesSection,
    pub flags: FlagsSection,
    pub warnings: Vec<String>,
}

fn one_based(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect()
}

fn audit_warnings<S: Scalar>(audit: &ReferenceAudit<S>) -> Vec<String> {
    let mut out = Vec::new();
    let tables = [
        ("R", &audit.curvature.table),
        ("F1", &audit.structure.f[0]),
        ("F2", &audit.structure.f[1]),
        ("F3", &audit.structure.f[2]),
        ("d theta1", &audit.structure.d_theta1),
    ];
    for (name, t) in tables {
        for e in t.discrepancies() {
            let factor = e.factor.as_ref().map(|f| format!(" (factor {f})")).unwrap_or_default();
            out.push(format!(
                "{name}_{}: {} against reference: computed {}, reference {}{factor}",
                one_based(&e.indices),
                e.status,
                e.computed,
                e.reference
            ));
        }
        for (idx, v) in &t.unlisted_nonzero {
            out.push(format!("{name}_{}: nonzero ({v}) but not in reference table", one_based(idx)));
        }
    }
    let tau = &audit.curvature.tau;
    if !tau.reference_consistent() {
        out.push(format!(
            "tau from reference curvature table is {}, closed form {}; corrected table gives {}",
            tau.from_reference_table, tau.closed_form, tau.from_corrected_table
        ));
    }
    for s in audit.scalars.iter().filter(|s| s.status != EntryStatus::Match) {
        let factor = s.factor.as_ref().map(|f| format!(" (factor {f})")).unwrap_or_default();
        out.push(format!(
            "{}: {} against reference: computed {}, reference {}{factor}",
            s.name, s.status, s.computed, s.reference
        ));
    }
    out
}

/// Assembles the report for a finished analysis.
pub fn build_report<S: Ratio>(a: &FamilyAnalysis<S>, mode: Mode) -> ReportDocument {
    let audit = audit(a);
    let c = &a.classes;
    let mut warnings = a.warnings.clone();
    warnings.extend(audit_warnings(&audit));
    let table_doc = TableAuditDoc::from;
    ReportDocument {
        parameters: Parameters {
            mode,
            lambda: a.family.lambda().clone().map(|l| l.to_string()),
        },
        brackets: components(a.family.structure_constants()),
        connection: components(a.connection.christoffel()),
        curvature: CurvatureSection {
            components: components(&a.curvature.r),
            audit: CurvatureAuditDoc {
                table: table_doc(&audit.curvature.table),
                tau_consistency: TauConsistencyDoc {
                    closed_form: audit.curvature.tau.closed_form.to_string(),
                    from_reference_table: audit.curvature.tau.from_reference_table.to_string(),
                    from_corrected_table: audit.curvature.tau.from_corrected_table.to_string(),
                    from_computed: audit.curvature.tau.from_computed.to_string(),
                    ricci: components(&audit.curvature.tau.ricci),
                },
            },
        },
        scalars: ScalarsSection {
            tau: c.tau.to_string(),
            tau_star: strings(&c.tau_star),
        },
        structure_tensors: StructureSection {
            f1: components(&a.structure.f[0]),
            f2: components(&a.structure.f[1]),
            f3: components(&a.structure.f[2]),
            theta: ThetaSection {
                theta1: components(&a.structure.theta[0]),
                theta2: components(&a.structure.theta[1]),
                theta3: components(&a.structure.theta[2]),
            },
            d_theta1: components(&c.theta1_d),
            audit: StructureAuditDoc {
                f1: table_doc(&audit.structure.f[0]),
                f2: table_doc(&audit.structure.f[1]),
                f3: table_doc(&audit.structure.f[2]),
                f3_linked: table_doc(&audit.structure.f3_from_linked_tables),
                theta_match: audit.structure.theta,
                d_theta1: table_doc(&audit.structure.d_theta1),
            },
        },
        nijenhuis: NijenhuisSection {
            components: NijenhuisComponents {
                n1: components(&a.nijenhuis.n[0]),
                n2: components(&a.nijenhuis.n[1]),
                n3: components(&a.nijenhuis.n[2]),
            },
            norms: strings(&a.nijenhuis.norms),
        },
        norms: NormsSection {
            nabla_j: strings(&c.nabla_j_norm),
            theta1: c.theta1_norm.to_string(),
            audit: audit
                .scalars
                .iter()
                .map(|s| ScalarAuditDoc {
                    name: s.name.clone(),
                    reference: s.reference.to_string(),
                    computed: s.computed.to_string(),
                    status: s.status.clone(),
                    factor: s.factor.as_ref().map(ToString::to_string),
                })
                .collect(),
        },
        classes: ClassesSection {
            j1: class_doc("hermitian", &c.hermitian),
            j2: class_doc("norden", &c.norden[0]),
            j3: class_doc("norden", &c.norden[1]),
            f1_j1_invariant: c.f1_j1_invariant,
            n1_vanishes: a.nijenhuis.n[0].is_zero(),
        },
        flags: FlagsSection {
            kaehler: c.kaehler,
            pseudo_hyper_kaehler: c.pseudo_hyper_kaehler,
            isotropic: c.isotropic,
            isotropic_hyper: c.isotropic_hyper,
            scalar_flat: c.tau.is_zero(),
            theta1_closed: c.theta1_closed,
        },
        warnings,
    }
}

/// Runs the pipeline for a request.
pub fn run_analysis(lambda: &LambdaSpec) -> Result<ReportDocument> {
    match lambda {
        LambdaSpec::Symbolic => Ok(build_report(&analyze::<Poly>(symbolic_lambda())?, Mode::Symbolic)),
        LambdaSpec::Numeric(lam) => Ok(build_report(&analyze::<Rational>(lift_lambda(lam))?, Mode::Numeric)),
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let section = |w: &mut String, title: &str, comps: &[Component], prefix: &str| {
            let _ = writeln!(w, "{title}:");
            if comps.is_empty() {
                let _ = writeln!(w, "  (all zero)");
            }
            for c in comps {
                let idx: String = c.indices.iter().map(ToString::to_string).collect();
                let _ = writeln!(w, "  {prefix}{idx} = {}", c.value);
            }
        };
        let mode = match self.parameters.mode {
            Mode::Symbolic => "symbolic",
            Mode::Numeric => "numeric",
        };
        let _ = writeln!(w, "parameters ({mode}): lambda = ({})", self.parameters.lambda.join(", "));
        section(w, "brackets c^k_ij", &self.brackets, "c_");
        section(w, "connection Gamma^k_ij", &self.connection, "G_");
        section(w, "curvature R_ijks", &self.curvature.components, "R_");
        let t = &self.curvature.audit.table;
        let _ = writeln!(w, "curvature table: {}/{} listed entries match", t.matched, t.listed);
        let tc = &self.curvature.audit.tau_consistency;
        let _ = writeln!(
            w,
            "tau consistency: closed form {}; computed {}; reference table {}; corrected table {}",
            tc.closed_form, tc.from_computed, tc.from_reference_table, tc.from_corrected_table
        );
        section(w, "ricci rho_jk", &tc.ricci, "rho_");
        let _ = writeln!(w, "tau = {}", self.scalars.tau);
        for (k, v) in self.scalars.tau_star.iter().enumerate() {
            let _ = writeln!(w, "tau*{} = {v}", k + 1);
        }
        let st = &self.structure_tensors;
        section(w, "F1", &st.f1, "F1_");
        section(w, "F2", &st.f2, "F2_");
        section(w, "F3", &st.f3, "F3_");
        section(w, "theta1", &st.theta.theta1, "theta1_");
        section(w, "theta2", &st.theta.theta2, "theta2_");
        section(w, "theta3", &st.theta.theta3, "theta3_");
        section(w, "d theta1", &st.d_theta1, "dtheta1_");
        let nj = &self.nijenhuis.components;
        section(w, "N1", &nj.n1, "N1_");
        section(w, "N2", &nj.n2, "N2_");
        section(w, "N3", &nj.n3, "N3_");
        for (k, v) in self.nijenhuis.norms.iter().enumerate() {
            let _ = writeln!(w, "||N{}|| = {v}", k + 1);
        }
        for (k, v) in self.norms.nabla_j.iter().enumerate() {
            let _ = writeln!(w, "||nabla J{}|| = {v}", k + 1);
        }
        let _ = writeln!(w, "||theta1|| = {}", self.norms.theta1);
        for (name, c) in [("J1", &self.classes.j1), ("J2", &self.classes.j2), ("J3", &self.classes.j3)] {
            let sat: Vec<String> = c.satisfied.iter().map(ToString::to_string).collect();
            let basic = c.basic_class.map(|b| b.to_string()).unwrap_or_else(|| "none".into());
            let _ = writeln!(
                w,
                "classes {name} ({}): satisfied [{}]; kaehler {}; basic class {basic}",
                c.structure,
                sat.join(", "),
                c.kaehler
            );
        }
        let _ = writeln!(w, "F1(x,y,z) = F1(J1x,J1y,z): {}", self.classes.f1_j1_invariant);
        let _ = writeln!(w, "N1 = 0: {}", self.classes.n1_vanishes);
        let f = &self.flags;
        let _ = writeln!(
            w,
            "flags: kaehler {:?}; pseudo-hyper-kaehler {}; isotropic {:?}; isotropic hyper-kaehler {}; scalar flat {}; theta1 closed {}",
            f.kaehler, f.pseudo_hyper_kaehler, f.isotropic, f.isotropic_hyper, f.scalar_flat, f.theta1_closed
        );
        let _ = writeln!(w, "warnings:");
        if self.warnings.is_empty() {
            let _ = writeln!(w, "  (none)");
        }
        for m in &self.warnings {
            let _ = writeln!(w, "  {m}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lambda() {
        assert_eq!(
            LambdaSpec::parse("1, -2/3,0,4").unwrap(),
            LambdaSpec::Numeric([
                Rational::from_int(1),
                Rational::new(-2, 3),
                Rational::from_int(0),
                Rational::from_int(4)
            ])
        );
        for bad in ["1,2,3", "1,2,3,4,5", "1,2,3,0.5", "1,2,x,4", "1,2,3/0,4", ""] {
            assert!(matches!(LambdaSpec::parse(bad), Err(Error::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn symbolic_report_headline_values() {
        let r = run_analysis(&LambdaSpec::Symbolic).unwrap();
        assert_eq!(r.scalars.tau, "-3/2*(l1^2 + l2^2 - l3^2 - l4^2)");
        assert_eq!(r.parameters.lambda, ["l1", "l2", "l3", "l4"].map(String::from));
        assert!(!r.flags.isotropic_hyper);
        assert!(r.warnings.iter().any(|w| w.starts_with("R_1441: sign-flip")));
    }

    #[test]
    fn numeric_report_flags() {
        let r = run_analysis(&LambdaSpec::parse("1,2,2,1").unwrap()).unwrap();
        assert_eq!(r.scalars.tau, "0");
        assert!(r.flags.isotropic_hyper);
        assert!(r.flags.scalar_flat);
        let flat = run_analysis(&LambdaSpec::parse("0,0,0,0").unwrap()).unwrap();
        assert!(flat.curvature.components.is_empty());
        assert!(flat.warnings[0].contains("abelian"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = run_analysis(&LambdaSpec::parse("1,0,-1/2,3").unwrap()).unwrap();
        let s = r.to_json();
        let back = ReportDocument::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn top_level_key_order() {
        let r = run_analysis(&LambdaSpec::parse("1,0,0,0").unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "parameters", "brackets", "connection", "curvature", "scalars", "structure_tensors",
                "nijenhuis", "norms", "classes", "flags", "warnings"
            ]
        );
    }
}
