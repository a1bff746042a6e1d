//! The `decompose` command: splits a bilinear form on `R^{4n}` into its
//! four projections and classifies each part.

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercomplex::{decompose, hermitian_type, BilinearForm, FormClassification, FormSpace, HypercomplexStructure};
use crate::matrix::Matrix;
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSource {
    /// Whitespace-separated rationals, one row per line.
    Text(String),
    Seed(u64),
}

/// Parses a square matrix of size `dim`; blank lines are skipped.
pub fn parse_matrix(text: &str, dim: usize) -> Result<Matrix<Rational>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<Rational>()
                    .map_err(|e| Error::Usage(format!("line {}: entry {t:?}: {e}", lineno + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != dim {
            return Err(Error::Usage(format!(
                "line {}: expected {dim} entries, found {}",
                lineno + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(Error::Usage(format!("expected {dim} rows, found {}", rows.len())));
    }
    Ok(Matrix::from_rows(rows))
}

fn matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.rows()
        .into_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PartReport {
    pub space: FormSpace,
    pub matrix: Vec<Vec<String>>,
    #[serde(flatten)]
    pub classification: FormClassification,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub input: Vec<Vec<String>>,
    pub input_classification: FormClassification,
    pub parts: Vec<PartReport>,
    /// Every part lies in its own summand.
    pub parts_in_summands: bool,
    pub reconstructs: bool,
}

impl DecompositionReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}\ninput:\n", self.n);
        let grid = |rows: &[Vec<String>]| -> String {
            rows.iter().map(|r| format!("  {}\n", r.join(" "))).collect()
        };
        out.push_str(&grid(&self.input));
        for p in &self.parts {
            let spaces: Vec<String> = p.classification.spaces.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "Pi_{} f: behaviour {:?}; in [{}]\n",
                p.space.index(),
                p.classification.per_alpha,
                spaces.join(", ")
            ));
            out.push_str(&grid(&p.matrix));
        }
        out.push_str(&format!("parts in summands: {}\n", self.parts_in_summands));
        out.push_str(&format!("sum of parts equals input: {}\n", self.reconstructs));
        out
    }
}

pub fn run_decompose(n: usize, source: &FormSource) -> Result<DecompositionReport> {
    if n == 0 {
        return Err(Error::Usage("--n must be at least 1".into()));
    }
    let h = HypercomplexStructure::<Rational>::standard(n)?;
    let f = match source {
        FormSource::Text(t) => BilinearForm::new(parse_matrix(t, 4 * n)?),
        FormSource::Seed(seed) => BilinearForm::random(4 * n, &mut StdRng::seed_from_u64(*seed)),
    };
    let d = decompose(&f, &h);
    let parts: Vec<PartReport> = FormSpace::ALL
        .iter()
        .zip(d.parts.iter().zip(d.classes.iter()))
        .map(|(space, (part, class))| PartReport {
            space: *space,
            matrix: matrix_strings(part.matrix()),
            classification: class.clone(),
        })
        .collect();
    Ok(DecompositionReport {
        n,
        input: matrix_strings(f.matrix()),
        input_classification: hermitian_type(&f, &h),
        parts_in_summands: parts.iter().all(|p| p.classification.contains(p.space)),
        parts,
        reconstructs: d.reconstructs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: &str = "-1 0 0 0\n0 -1 0 0\n0 0 1 0\n0 0 0 1\n";

    #[test]
    fn metric_lies_in_b1() {
        let r = run_decompose(1, &FormSource::Text(G.into())).unwrap();
        assert_eq!(r.parts[1].matrix, r.input);
        for k in [0, 2, 3] {
            assert!(r.parts[k].matrix.iter().flatten().all(|e| e == "0"));
        }
        assert!(r.reconstructs);
    }

    #[test]
    fn kaehler_form_lies_in_b0() {
        let h = HypercomplexStructure::<Rational>::standard(1).unwrap();
        let pack = crate::hypercomplex::PseudoHermitianMetricPack::standard(&h);
        let text: String = matrix_strings(pack.phi.matrix()).iter().map(|r| r.join(" ") + "\n").collect();
        let r = run_decompose(1, &FormSource::Text(text)).unwrap();
        assert_eq!(r.parts[0].matrix, r.input);
    }

    #[test]
    fn seeded_forms_reconstruct() {
        for seed in 0..5 {
            let r = run_decompose(2, &FormSource::Seed(seed)).unwrap();
            assert!(r.reconstructs && r.parts_in_summands);
            assert_eq!(r.input.len(), 8);
        }
    }

    #[test]
    fn bad_input_is_a_usage_error() {
        for bad in ["1 2\n3 4\n", "1 2 3 4\n", "1 2 3 x\n1 2 3 4\n1 2 3 4\n1 2 3 4\n", "1 2 3 4 5\n"] {
            assert!(matches!(run_decompose(1, &FormSource::Text(bad.into())), Err(Error::Usage(_))));
        }
        assert!(matches!(run_decompose(0, &FormSource::Seed(1)), Err(Error::Usage(_))));
    }
}
