//! Visible and modular equivalence of program modules, decided by exhaustive
//! model enumeration.

use std::collections::BTreeMap;
use std::fmt;

use crate::atom::Atom;
use crate::module::{Interpretation, ProgramModule};
use crate::semantics::{stable_models_module, SolveError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceDetail {
    Equivalent,
    /// `At_v` differs; no bijection can exist.
    VisibleSignatureMismatch { only_left: Vec<Atom>, only_right: Vec<Atom> },
    /// Input signatures differ (modular equivalence only).
    InputSignatureMismatch { only_left: Vec<Atom>, only_right: Vec<Atom> },
    /// A visible projection occurs a different number of times on each side.
    ProjectionMultiplicity { projection: Interpretation, left: usize, right: usize },
}

impl fmt::Display for EquivalenceDetail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |atoms: &[Atom]| {
            atoms.iter().map(Atom::to_string).collect::<Vec<_>>().join(", ")
        };
        match self {
            EquivalenceDetail::Equivalent => write!(f, "equivalent"),
            EquivalenceDetail::VisibleSignatureMismatch { only_left, only_right } => write!(
                f,
                "visible signatures differ (only left: {}; only right: {})",
                list(only_left),
                list(only_right)
            ),
            EquivalenceDetail::InputSignatureMismatch { only_left, only_right } => write!(
                f,
                "input signatures differ (only left: {}; only right: {})",
                list(only_left),
                list(only_right)
            ),
            EquivalenceDetail::ProjectionMultiplicity { projection, left, right } => write!(
                f,
                "visible projection {projection} occurs {left} time(s) on the left but {right} on the right"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub detail: EquivalenceDetail,
}

fn signature_mismatch(
    left: &std::collections::BTreeSet<Atom>,
    right: &std::collections::BTreeSet<Atom>,
) -> Option<(Vec<Atom>, Vec<Atom>)> {
    if left == right {
        return None;
    }
    Some((
        left.difference(right).cloned().collect(),
        right.difference(left).cloned().collect(),
    ))
}

/// Multiset of visible projections of the module's stable models.
fn projection_counts(
    module: &ProgramModule,
    max_atoms: usize,
) -> Result<BTreeMap<Interpretation, usize>, SolveError> {
    let visible = module.visible_atoms();
    let collection = stable_models_module(module, max_atoms)?;
    let mut counts = BTreeMap::new();
    for model in collection.models() {
        *counts.entry(model.project(&visible)).or_insert(0) += 1;
    }
    Ok(counts)
}

/// `P ≡_v Q`: equal visible signatures and a bijection between the stable
/// models preserving visible projections. Over finite model sets such a
/// bijection exists exactly when the multisets of visible projections agree,
/// which is what is compared here.
pub fn visibly_equivalent(
    left: &ProgramModule,
    right: &ProgramModule,
    max_atoms: usize,
) -> Result<EquivalenceReport, SolveError> {
    if let Some((only_left, only_right)) =
        signature_mismatch(&left.visible_atoms(), &right.visible_atoms())
    {
        return Ok(EquivalenceReport {
            equivalent: false,
            detail: EquivalenceDetail::VisibleSignatureMismatch { only_left, only_right },
        });
    }
    let lhs = projection_counts(left, max_atoms)?;
    let rhs = projection_counts(right, max_atoms)?;
    if lhs != rhs {
        let projections: std::collections::BTreeSet<&Interpretation> =
            lhs.keys().chain(rhs.keys()).collect();
        for projection in projections {
            let l = lhs.get(projection).copied().unwrap_or(0);
            let r = rhs.get(projection).copied().unwrap_or(0);
            if l != r {
                return Ok(EquivalenceReport {
                    equivalent: false,
                    detail: EquivalenceDetail::ProjectionMultiplicity {
                        projection: projection.clone(),
                        left: l,
                        right: r,
                    },
                });
            }
        }
        unreachable!("unequal multisets must disagree on some projection");
    }
    Ok(EquivalenceReport { equivalent: true, detail: EquivalenceDetail::Equivalent })
}

/// `P ≡_m Q`: equal input signatures and visible equivalence.
pub fn modularly_equivalent(
    left: &ProgramModule,
    right: &ProgramModule,
    max_atoms: usize,
) -> Result<EquivalenceReport, SolveError> {
    if let Some((only_left, only_right)) = signature_mismatch(left.input(), right.input()) {
        return Ok(EquivalenceReport {
            equivalent: false,
            detail: EquivalenceDetail::InputSignatureMismatch { only_left, only_right },
        });
    }
    visibly_equivalent(left, right, max_atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::{hide, project};
    use crate::parse::load_module;
    use crate::semantics::DEFAULT_MAX_ATOMS;

    fn module(text: &str) -> ProgramModule {
        load_module(text).unwrap().1
    }

    #[test]
    fn every_module_is_equivalent_to_itself() {
        let m = module("module m\ninput: b\noutput: a\nhidden: -\nrules:\na :- not b.\n");
        assert!(visibly_equivalent(&m, &m, DEFAULT_MAX_ATOMS).unwrap().equivalent);
        assert!(modularly_equivalent(&m, &m, DEFAULT_MAX_ATOMS).unwrap().equivalent);
    }

    #[test]
    fn distinct_visible_models_are_detected() {
        let with_fact = module("module l\ninput: -\noutput: a\nhidden: -\nrules:\na.\n");
        let without = module("module r\ninput: -\noutput: a\nhidden: -\nrules:\n");
        let report = visibly_equivalent(&with_fact, &without, DEFAULT_MAX_ATOMS).unwrap();
        assert!(!report.equivalent);
        // The first differing projection in canonical order is the empty
        // model, present only on the right.
        match report.detail {
            EquivalenceDetail::ProjectionMultiplicity { projection, left, right } => {
                assert_eq!(projection.to_string(), "{}");
                assert_eq!((left, right), (0, 1));
            }
            other => panic!("unexpected detail {other}"),
        }
    }

    #[test]
    fn hiding_an_output_breaks_modular_equivalence() {
        let m = module("module m\ninput: -\noutput: a, b\nhidden: -\nrules:\na.\n");
        let hidden = hide(&m, &[ "b".parse().unwrap() ].into_iter().collect());
        let report = modularly_equivalent(&m, &hidden, DEFAULT_MAX_ATOMS).unwrap();
        assert!(!report.equivalent);
        assert!(matches!(report.detail, EquivalenceDetail::VisibleSignatureMismatch { .. }));
    }

    #[test]
    fn projecting_over_full_visibility_is_equivalent() {
        let m = module("module m\ninput: b\noutput: a\nhidden: -\nrules:\na :- b.\n");
        let projected = project(&m, &m.visible_atoms());
        assert!(modularly_equivalent(&m, &projected, DEFAULT_MAX_ATOMS).unwrap().equivalent);
    }

    #[test]
    fn equivalence_is_symmetric_and_transitive_on_samples() {
        let a = module("module a\ninput: -\noutput: x\nhidden: -\nrules:\n{x}.\n");
        let b = module("module b\ninput: x\noutput: -\nhidden: -\nrules:\n");
        // b leaves x free as an input; both have visible models {}, {x}.
        let ab = visibly_equivalent(&a, &b, DEFAULT_MAX_ATOMS).unwrap().equivalent;
        let ba = visibly_equivalent(&b, &a, DEFAULT_MAX_ATOMS).unwrap().equivalent;
        assert_eq!(ab, ba);
        assert!(ab);
        // But they are not modularly equivalent: inputs differ.
        assert!(!modularly_equivalent(&a, &b, DEFAULT_MAX_ATOMS).unwrap().equivalent);
    }
}
