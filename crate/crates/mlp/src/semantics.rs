//! Stable-model semantics: choice translation, reduct, least-model fixpoint,
//! and exact enumeration for programs and modules.
//!
//! Enumeration is deliberately brute force — every candidate subset of the
//! atom universe is tested against the reduct/least-model definition. Deciding
//! stable-model existence is NP-complete, the instances here are desk-scale,
//! and an exact oracle is worth more than speed. The cap refuses rather than
//! truncates: exceeding it returns [`SolveError::CapExceeded`] and no models.
//! Enumeration for distinct input subsets touches only shared immutable data,
//! so callers may fan those out concurrently if they wish.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::atom::Atom;
use crate::module::{AnswerSetCollection, Interpretation, ProgramModule};
use crate::program::{Program, Rule, RuleKind};

/// Default limit on the enumeration universe (declared atoms plus translation
/// auxiliaries). 2^20 candidates is the most a casual invocation should pay.
pub const DEFAULT_MAX_ATOMS: usize = 20;

/// Hard engine bound: candidate sets are 64-bit masks.
const ENGINE_ATOM_LIMIT: usize = 63;

const CHOICE_AUX_SUFFIX: &str = "__aux";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("enumeration universe has {atoms} atoms, exceeding the cap of {cap}; refusing (raise --max-atoms to proceed)")]
    CapExceeded { atoms: usize, cap: usize },
    #[error("fresh auxiliary atom {atom} collides with an existing atom; the reserved `__` namespace has been used by input")]
    ReservedCollision { atom: Atom },
}

/// A program with no negative body literals and no choice rules; the output
/// type of [`reduct`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveProgram {
    rules: Vec<Rule>,
}

impl PositiveProgram {
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
}

/// Rewrites every choice rule into normal rules over fresh hidden atoms:
/// `{a1,...,an} :- B` becomes, for each `ai`,
///
/// ```text
/// ai :- B, not ai__aux.
/// ai__aux :- not ai.
/// ```
///
/// Fresh atoms are recorded into `hidden_sink`. Stable models of the result,
/// projected onto the original atoms, equal the stable models of the input.
pub fn translate_choice(
    program: &Program,
    hidden_sink: &mut BTreeSet<Atom>,
) -> Result<Program, SolveError> {
    let existing = program.atoms();
    let mut out = Program::new();
    for rule in program.rules() {
        if rule.kind() != RuleKind::Choice {
            out.push(rule.clone());
            continue;
        }
        for head in rule.head() {
            let aux = head.with_predicate_suffix(CHOICE_AUX_SUFFIX);
            if existing.contains(&aux) {
                return Err(SolveError::ReservedCollision { atom: aux });
            }
            let mut neg: Vec<Atom> = rule.body_neg().iter().cloned().collect();
            neg.push(aux.clone());
            out.push(Rule::normal(head.clone(), rule.body_pos().iter().cloned(), neg));
            out.push(Rule::normal(aux.clone(), [], [head.clone()]));
            hidden_sink.insert(aux);
        }
    }
    Ok(out)
}

/// The Gelfond-Lifschitz reduct `P^M`: keeps `Head(r) :- Body+(r)` exactly for
/// the rules whose negative body avoids `M`. Constraints survive as positive
/// constraints. The input must be choice-free (run [`translate_choice`] first).
pub fn reduct(program: &Program, m: &Interpretation) -> PositiveProgram {
    assert!(!program.has_choice_rules(), "reduct requires a choice-free program");
    let mut rules = Vec::new();
    for rule in program.rules() {
        if rule.body_neg().iter().any(|a| m.contains(a)) {
            continue;
        }
        let kept = match rule.kind() {
            RuleKind::Normal => Rule::normal(
                rule.head().iter().next().unwrap().clone(),
                rule.body_pos().iter().cloned(),
                [],
            ),
            RuleKind::Constraint => Rule::constraint(rule.body_pos().iter().cloned(), []),
            RuleKind::Choice => unreachable!(),
        };
        if !rules.contains(&kept) {
            rules.push(kept);
        }
    }
    PositiveProgram { rules }
}

/// Least fixpoint of the immediate-consequence step. Returns `None` when a
/// constraint's body is satisfied by the fixpoint (inconsistency).
pub fn least_model(program: &PositiveProgram) -> Option<Interpretation> {
    let mut model: BTreeSet<Atom> = BTreeSet::new();
    loop {
        let mut changed = false;
        for rule in &program.rules {
            if rule.kind() != RuleKind::Normal {
                continue;
            }
            if rule.body_pos().iter().all(|a| model.contains(a)) {
                let head = rule.head().iter().next().unwrap();
                if model.insert(head.clone()) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for rule in &program.rules {
        if rule.kind() == RuleKind::Constraint
            && rule.body_pos().iter().all(|a| model.contains(a))
        {
            return None;
        }
    }
    Some(Interpretation::new(model))
}

// ---------------------------------------------------------------------------
// Mask-based enumeration engine.

struct MaskRule {
    head: Option<u32>,
    pos: u64,
    neg: u64,
}

struct Enumerator {
    atoms: Vec<Atom>,
    rules: Vec<MaskRule>,
}

impl Enumerator {
    fn build(
        translated: &Program,
        universe: BTreeSet<Atom>,
        cap: usize,
    ) -> Result<Self, SolveError> {
        let effective_cap = cap.min(ENGINE_ATOM_LIMIT);
        if universe.len() > effective_cap {
            return Err(SolveError::CapExceeded { atoms: universe.len(), cap: effective_cap });
        }
        let atoms: Vec<Atom> = universe.into_iter().collect();
        let index: BTreeMap<&Atom, u32> =
            atoms.iter().enumerate().map(|(i, a)| (a, i as u32)).collect();
        let mask_of = |set: &BTreeSet<Atom>| -> u64 {
            set.iter().map(|a| 1u64 << index[a]).fold(0, |acc, b| acc | b)
        };
        let mut rules = Vec::with_capacity(translated.len());
        for rule in translated.rules() {
            let head = match rule.kind() {
                RuleKind::Normal => Some(index[rule.head().iter().next().unwrap()]),
                RuleKind::Constraint => None,
                RuleKind::Choice => unreachable!("enumerator input is choice-free"),
            };
            rules.push(MaskRule {
                head,
                pos: mask_of(rule.body_pos()),
                neg: mask_of(rule.body_neg()),
            });
        }
        Ok(Enumerator { atoms, rules })
    }

    fn mask_of(&self, set: &BTreeSet<Atom>) -> u64 {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| set.contains(a))
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// `candidate = LM(reduct(rules, candidate) ∪ facts)`, with constraints
    /// treated as inconsistency. `facts` must be a subset of `candidate`.
    fn is_stable(&self, candidate: u64, facts: u64) -> bool {
        // A stable model is a classical model; reject cheap first.
        for rule in &self.rules {
            if rule.pos & !candidate == 0 && rule.neg & candidate == 0 {
                match rule.head {
                    Some(h) => {
                        if candidate & (1 << h) == 0 {
                            return false;
                        }
                    }
                    None => return false,
                }
            }
        }
        // Least model of the reduct plus input facts. Because the candidate
        // is a classical model, the fixpoint stays inside it and no kept
        // constraint can fire.
        let mut model = facts;
        loop {
            let mut changed = false;
            for rule in &self.rules {
                if let Some(h) = rule.head {
                    let bit = 1u64 << h;
                    if model & bit == 0
                        && rule.neg & candidate == 0
                        && rule.pos & !model == 0
                    {
                        model |= bit;
                        changed = true;
                    }
                }
            }
            if !changed {
                return model == candidate;
            }
        }
    }

    fn interpretation(&self, mask: u64, drop: u64) -> Interpretation {
        let kept = mask & !drop;
        Interpretation::new(
            self.atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| kept & (1 << i) != 0)
                .map(|(_, a)| a.clone()),
        )
    }
}

/// Iterates every subset of `free`, including 0 and `free` itself.
fn for_each_submask(free: u64, mut f: impl FnMut(u64)) {
    let mut sub = free;
    loop {
        f(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
}

/// Exact stable models of a bare program: every `M ⊆ At(P)` (auxiliary
/// translation atoms included) with `M = LM(P^M)` and no violated constraint.
pub fn stable_models_program(
    program: &Program,
    max_atoms: usize,
) -> Result<BTreeSet<Interpretation>, SolveError> {
    let mut aux = BTreeSet::new();
    let translated = translate_choice(program, &mut aux)?;
    let enumerator = Enumerator::build(&translated, translated.atoms(), max_atoms)?;
    let full: u64 = if enumerator.atoms.is_empty() { 0 } else { (1 << enumerator.atoms.len()) - 1 };
    let mut out = BTreeSet::new();
    for_each_submask(full, |candidate| {
        if enumerator.is_stable(candidate, 0) {
            out.insert(enumerator.interpretation(candidate, 0));
        }
    });
    Ok(out)
}

fn module_enumerator(
    module: &ProgramModule,
    max_atoms: usize,
) -> Result<(Enumerator, u64, u64), SolveError> {
    let mut aux = BTreeSet::new();
    let translated = translate_choice(module.rules(), &mut aux)?;
    let declared = module.all_atoms();
    if let Some(clash) = aux.iter().find(|a| declared.contains(*a)) {
        return Err(SolveError::ReservedCollision { atom: clash.clone() });
    }
    let universe: BTreeSet<Atom> = declared.union(&aux).cloned().collect();
    let enumerator = Enumerator::build(&translated, universe, max_atoms)?;
    let input_mask = enumerator.mask_of(module.input());
    let aux_mask = enumerator.mask_of(&aux);
    Ok((enumerator, input_mask, aux_mask))
}

/// Stable models of `module` whose input part equals `input`: the stable
/// models of `R ∪ {a. | a ∈ input}` that reproduce exactly that input subset,
/// with translation auxiliaries projected away.
pub fn stable_models_with_input(
    module: &ProgramModule,
    input: &BTreeSet<Atom>,
    max_atoms: usize,
) -> Result<BTreeSet<Interpretation>, SolveError> {
    assert!(
        input.is_subset(module.input()),
        "input assignment must be drawn from the module's input signature"
    );
    let (enumerator, input_mask, aux_mask) = module_enumerator(module, max_atoms)?;
    let full: u64 = if enumerator.atoms.is_empty() { 0 } else { (1 << enumerator.atoms.len()) - 1 };
    let facts = enumerator.mask_of(input);
    let free = full & !input_mask;
    let mut out = BTreeSet::new();
    for_each_submask(free, |rest| {
        let candidate = facts | rest;
        if candidate & input_mask == facts && enumerator.is_stable(candidate, facts) {
            out.insert(enumerator.interpretation(candidate, aux_mask));
        }
    });
    Ok(out)
}

/// The stable models of a module: `M = LM(R^M ∪ {a. | a ∈ M ∩ I})`, taken
/// over every input subset `J ⊆ I`, packaged with the module's signature.
pub fn stable_models_module(
    module: &ProgramModule,
    max_atoms: usize,
) -> Result<AnswerSetCollection, SolveError> {
    let (enumerator, input_mask, aux_mask) = module_enumerator(module, max_atoms)?;
    let full: u64 = if enumerator.atoms.is_empty() { 0 } else { (1 << enumerator.atoms.len()) - 1 };
    let free = full & !input_mask;
    let mut models = BTreeSet::new();
    for_each_submask(input_mask, |facts| {
        for_each_submask(free, |rest| {
            let candidate = facts | rest;
            if enumerator.is_stable(candidate, facts) {
                models.insert(enumerator.interpretation(candidate, aux_mask));
            }
        });
    });
    Ok(AnswerSetCollection::new(
        module.input().iter().cloned(),
        module.output().iter().cloned(),
        module.hidden().iter().cloned(),
        models,
    ))
}
