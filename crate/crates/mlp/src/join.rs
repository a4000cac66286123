//! Natural join of answer-set collections and the Module Theorem check.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::compose::{compose_relaxed, compose_sqcup};
use crate::harness::report::TheoremReport;
use crate::module::{AnswerSetCollection, Interpretation, ProgramModule};
use crate::semantics::{stable_models_module, SolveError};

/// `A1 ⋈ A2`: unions of pairwise models that agree on each other's visible
/// atoms. Hidden atoms never block a join; name clashes between hidden
/// signatures are rejected upstream by the composition preconditions. The
/// result carries the relaxed-composed signature of the two owners.
pub fn natural_join(
    a1: &AnswerSetCollection,
    a2: &AnswerSetCollection,
) -> AnswerSetCollection {
    let v1 = a1.owner_visible();
    let v2 = a2.owner_visible();
    let mut models = BTreeSet::new();
    for m1 in a1.models() {
        let m1_on_v2 = m1.project(&v2);
        for m2 in a2.models() {
            if m1_on_v2 == m2.project(&v1) {
                models.insert(m1.union(m2));
            }
        }
    }
    let outputs: BTreeSet<_> = a1.owner_output().union(a2.owner_output()).cloned().collect();
    let inputs = a1
        .owner_input()
        .union(a2.owner_input())
        .filter(|a| !outputs.contains(*a))
        .cloned();
    let hidden = a1.owner_hidden().union(a2.owner_hidden()).cloned();
    AnswerSetCollection::new(inputs, outputs.iter().cloned(), hidden, models)
}

/// Checks `AS(P1 ⊔ P2) = AS(P1) ⋈ AS(P2)` exactly.
///
/// When the union operator's preconditions fail, the report records the
/// failing condition and still demonstrates the mismatch by comparing the
/// rule union (relaxed composition) against the join, which is exactly how
/// the counterexamples with common outputs or cyclic dependencies break the
/// theorem.
pub fn check_module_theorem(
    p1: &ProgramModule,
    p2: &ProgramModule,
    max_atoms: usize,
) -> Result<TheoremReport, SolveError> {
    let started = Instant::now();
    let (composed, failed_precondition) = match compose_sqcup(p1, p2) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let lhs: BTreeSet<Interpretation> = match &composed {
        Some(c) => stable_models_module(c, max_atoms)?.models().clone(),
        None => match compose_relaxed(p1, p2) {
            Ok(u) => stable_models_module(&u, max_atoms)?.models().clone(),
            Err(_) => BTreeSet::new(),
        },
    };
    let a1 = stable_models_module(p1, max_atoms)?;
    let a2 = stable_models_module(p2, max_atoms)?;
    let rhs = natural_join(&a1, &a2).models().clone();
    Ok(TheoremReport::comparing(
        "module",
        composed.is_some(),
        failed_precondition,
        &lhs,
        &rhs,
        started.elapsed(),
    ))
}
