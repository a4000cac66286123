//! An independent reference implementation of module stable models, used to
//! cross-check the enumeration engine.
//!
//! This path shares nothing with `semantics`: choice rules are handled by
//! their reduct directly (keep `a :- Body+` for every chosen head atom)
//! instead of the auxiliary-atom translation, interpretations are plain atom
//! sets instead of bitmasks, and every subset of `At(P)` is tested against
//! the definition `M = LM(R^M ∪ {a. | a ∈ M ∩ I})`.

use std::collections::BTreeSet;

use crate::atom::Atom;
use crate::module::{Interpretation, ProgramModule};
use crate::program::{Rule, RuleKind};

/// Positive remainder of one rule under a candidate model.
enum ReducedRule {
    Fact(Atom, BTreeSet<Atom>),
    Veto(BTreeSet<Atom>),
}

fn simons_reduct(rules: &[Rule], candidate: &BTreeSet<Atom>) -> Vec<ReducedRule> {
    let mut out = Vec::new();
    for rule in rules {
        if rule.body_neg().iter().any(|a| candidate.contains(a)) {
            continue;
        }
        let body: BTreeSet<Atom> = rule.body_pos().clone();
        match rule.kind() {
            RuleKind::Normal => {
                let head = rule.head().iter().next().unwrap().clone();
                out.push(ReducedRule::Fact(head, body));
            }
            RuleKind::Constraint => out.push(ReducedRule::Veto(body)),
            RuleKind::Choice => {
                for head in rule.head() {
                    if candidate.contains(head) {
                        out.push(ReducedRule::Fact(head.clone(), body.clone()));
                    }
                }
            }
        }
    }
    out
}

fn least_model_with_facts(
    reduct: &[ReducedRule],
    facts: &BTreeSet<Atom>,
) -> Option<BTreeSet<Atom>> {
    let mut model = facts.clone();
    loop {
        let mut changed = false;
        for rule in reduct {
            if let ReducedRule::Fact(head, body) = rule {
                if !model.contains(head) && body.iter().all(|a| model.contains(a)) {
                    model.insert(head.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for rule in reduct {
        if let ReducedRule::Veto(body) = rule {
            if body.iter().all(|a| model.contains(a)) {
                return None;
            }
        }
    }
    Some(model)
}

/// Every subset of `At(P)`, checked directly against the definition.
/// Exponential; only meant for small cross-check instances.
pub fn naive_stable_models(module: &ProgramModule) -> BTreeSet<Interpretation> {
    let atoms: Vec<Atom> = module.all_atoms().into_iter().collect();
    assert!(atoms.len() <= 24, "oracle is for small instances only");
    let rules = module.rules().rules();
    let mut stable = BTreeSet::new();
    for selector in 0u64..(1u64 << atoms.len()) {
        let candidate: BTreeSet<Atom> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| selector & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect();
        let facts: BTreeSet<Atom> =
            candidate.intersection(module.input()).cloned().collect();
        let reduct = simons_reduct(rules, &candidate);
        if least_model_with_facts(&reduct, &facts) == Some(candidate.clone()) {
            stable.insert(Interpretation::new(candidate));
        }
    }
    stable
}
