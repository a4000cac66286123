//! Structured verdicts of theorem checks, serialisable as line-delimited
//! JSON for CI diffing.

use std::collections::BTreeSet;
use std::time::Duration;

use serde::Serialize;

use crate::module::Interpretation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Unequal,
}

/// Outcome of one theorem check: both sides as canonical model lists, the
/// verdict, and a witness model present on one side only. `verdict == Equal`
/// exactly when `witness` is absent.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub trial: u64,
    pub seed: u64,
    /// Whether the theorem's preconditions held for this instance.
    pub applicable: bool,
    pub failed_precondition: Option<String>,
    pub lhs_models: Vec<Vec<String>>,
    pub rhs_models: Vec<Vec<String>>,
    pub verdict: Verdict,
    pub witness: Option<Vec<String>>,
    pub elapsed_micros: u64,
}

fn render_models(models: &BTreeSet<Interpretation>) -> Vec<Vec<String>> {
    models
        .iter()
        .map(|m| m.atoms().iter().map(|a| a.to_string()).collect())
        .collect()
}

impl TheoremReport {
    /// Builds a report comparing two model sets; the witness is the first
    /// model (in canonical order) present on exactly one side.
    pub fn comparing(
        theorem: &str,
        applicable: bool,
        failed_precondition: Option<String>,
        lhs: &BTreeSet<Interpretation>,
        rhs: &BTreeSet<Interpretation>,
        elapsed: Duration,
    ) -> Self {
        let witness = lhs
            .symmetric_difference(rhs)
            .next()
            .map(|m| m.atoms().iter().map(|a| a.to_string()).collect());
        let verdict = if witness.is_none() { Verdict::Equal } else { Verdict::Unequal };
        TheoremReport {
            theorem: theorem.to_string(),
            trial: 0,
            seed: 0,
            applicable,
            failed_precondition,
            lhs_models: render_models(lhs),
            rhs_models: render_models(rhs),
            verdict,
            witness,
            elapsed_micros: elapsed.as_micros() as u64,
        }
    }

    /// Like [`TheoremReport::comparing`] but over multisets rendered as
    /// sorted lists with repetitions, for the visible-equivalence checks.
    pub fn comparing_multisets(
        theorem: &str,
        applicable: bool,
        failed_precondition: Option<String>,
        lhs: &[Interpretation],
        rhs: &[Interpretation],
        elapsed: Duration,
    ) -> Self {
        let render = |models: &[Interpretation]| -> Vec<Vec<String>> {
            models
                .iter()
                .map(|m| m.atoms().iter().map(|a| a.to_string()).collect())
                .collect()
        };
        let lhs_models = render(lhs);
        let rhs_models = render(rhs);
        let witness = lhs_models
            .iter()
            .filter(|m| !rhs_models.contains(m))
            .chain(rhs_models.iter().filter(|m| !lhs_models.contains(m)))
            .next()
            .cloned()
            .or_else(|| {
                if lhs_models != rhs_models {
                    Some(vec!["<multiplicity mismatch>".to_string()])
                } else {
                    None
                }
            });
        let verdict = if witness.is_none() { Verdict::Equal } else { Verdict::Unequal };
        TheoremReport {
            theorem: theorem.to_string(),
            trial: 0,
            seed: 0,
            applicable,
            failed_precondition,
            lhs_models,
            rhs_models,
            verdict,
            witness,
            elapsed_micros: elapsed.as_micros() as u64,
        }
    }

    pub fn with_trial(mut self, trial: u64, seed: u64) -> Self {
        self.trial = trial;
        self.seed = seed;
        self
    }

    /// True when both sides agreed.
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Equal
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialisation cannot fail")
    }
}

/// Writes one JSON record per report, newline-delimited.
pub fn write_reports<W: std::io::Write>(
    mut out: W,
    reports: &[TheoremReport],
) -> std::io::Result<()> {
    for report in reports {
        writeln!(out, "{}", report.to_json_line())?;
    }
    Ok(())
}
