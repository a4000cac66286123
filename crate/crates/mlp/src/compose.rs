//! The module composition algebra: plain composition, the union operator
//! guarded by mutual independence, relaxed composition with shared outputs,
//! output renaming, hiding/projection, and the transformed compositions that
//! restore compositionality in the presence of common outputs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::atom::Atom;
use crate::depgraph::cross_module_cycle;
use crate::module::ProgramModule;
use crate::program::{Program, Rule};

/// Suffix for the left copy of a renamed common output (`o'` in prose).
pub const PRIMED_SUFFIX: &str = "__r1";
/// Suffix for the right copy (`o''`).
pub const DOUBLE_PRIMED_SUFFIX: &str = "__r2";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("output signatures overlap: {}", render_atoms(.0))]
    OutputsOverlap(Vec<Atom>),
    #[error("hidden atoms leak into the other module: {}", render_atoms(.0))]
    HiddenLeak(Vec<Atom>),
    #[error("modules are mutually dependent through positive cycle {}", render_cycle(.0))]
    MutualDependence(Vec<Atom>),
    #[error("renamed atom {0} is not an output of the module")]
    OldNotOutput(Atom),
    #[error("fresh atom {0} already occurs in the module")]
    FreshCollision(Atom),
    #[error("renaming mentions atom {0} twice")]
    DuplicateRenaming(Atom),
    #[error("renaming covers {}, expected exactly {}", render_atoms(.got), render_atoms(.expected))]
    CoverageMismatch { expected: Vec<Atom>, got: Vec<Atom> },
}

fn render_atoms(atoms: &[Atom]) -> String {
    atoms.iter().map(Atom::to_string).collect::<Vec<_>>().join(", ")
}

fn render_cycle(cycle: &[Atom]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(Atom::to_string).collect();
    if let Some(first) = parts.first().cloned() {
        parts.push(first);
    }
    parts.join(" -> ")
}

/// A batch output renaming: pairwise distinct `old` atoms mapped to pairwise
/// distinct `fresh` atoms. Application order is immaterial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenameMap {
    pairs: Vec<(Atom, Atom)>,
}

impl RenameMap {
    pub fn new(pairs: impl IntoIterator<Item = (Atom, Atom)>) -> Result<Self, ComposeError> {
        let mut sorted: Vec<(Atom, Atom)> = pairs.into_iter().collect();
        sorted.sort();
        let mut olds = BTreeSet::new();
        let mut freshes = BTreeSet::new();
        for (old, fresh) in &sorted {
            if !olds.insert(old.clone()) {
                return Err(ComposeError::DuplicateRenaming(old.clone()));
            }
            if !freshes.insert(fresh.clone()) {
                return Err(ComposeError::DuplicateRenaming(fresh.clone()));
            }
        }
        Ok(RenameMap { pairs: sorted })
    }

    pub fn empty() -> Self {
        RenameMap { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(Atom, Atom)] {
        &self.pairs
    }

    pub fn olds(&self) -> BTreeSet<Atom> {
        self.pairs.iter().map(|(old, _)| old.clone()).collect()
    }

    pub fn freshes(&self) -> BTreeSet<Atom> {
        self.pairs.iter().map(|(_, fresh)| fresh.clone()).collect()
    }

    /// Mints a fresh name per scope atom by suffixing the predicate,
    /// bumping with `_2`, `_3`, ... on collision with `used`. Minted names
    /// are added to `used` so successive calls stay disjoint.
    pub fn minted(
        scope: &BTreeSet<Atom>,
        suffix: &str,
        used: &mut BTreeSet<Atom>,
    ) -> Self {
        let pairs = scope.iter().map(|old| (old.clone(), mint(old, suffix, used))).collect();
        RenameMap { pairs }
    }
}

fn hidden_leaks(p1: &ProgramModule, p2: &ProgramModule) -> Vec<Atom> {
    let at1 = p1.all_atoms();
    let at2 = p2.all_atoms();
    let mut leaked: Vec<Atom> = p1.hidden().intersection(&at2).cloned().collect();
    leaked.extend(p2.hidden().intersection(&at1).cloned());
    leaked.sort();
    leaked.dedup();
    leaked
}

/// Plain composition: defined when output signatures are disjoint and each
/// module's hidden atoms stay out of the other's alphabet. Yields
/// `<R1 ∪ R2, (I1\O2) ∪ (I2\O1), O1 ∪ O2, H1 ∪ H2>`.
pub fn compose_plus(
    p1: &ProgramModule,
    p2: &ProgramModule,
) -> Result<ProgramModule, ComposeError> {
    let shared: Vec<Atom> = p1.output().intersection(p2.output()).cloned().collect();
    if !shared.is_empty() {
        return Err(ComposeError::OutputsOverlap(shared));
    }
    let leaked = hidden_leaks(p1, p2);
    if !leaked.is_empty() {
        return Err(ComposeError::HiddenLeak(leaked));
    }
    let input = p1
        .input()
        .difference(p2.output())
        .chain(p2.input().difference(p1.output()))
        .cloned();
    Ok(ProgramModule::new(
        p1.rules().union(p2.rules()),
        input,
        p1.output().union(p2.output()).cloned(),
        p1.hidden().union(p2.hidden()).cloned(),
    ))
}

/// The module union operator: plain composition further guarded by mutual
/// independence (no positive cycle spanning both modules).
pub fn compose_sqcup(
    p1: &ProgramModule,
    p2: &ProgramModule,
) -> Result<ProgramModule, ComposeError> {
    let composed = compose_plus(p1, p2)?;
    if let Some(cycle) = cross_module_cycle(p1, p2) {
        return Err(ComposeError::MutualDependence(cycle));
    }
    Ok(composed)
}

/// Relaxed composition: common outputs permitted, only hidden atoms must be
/// respected. Yields `<R1 ∪ R2, (I1 ∪ I2) \ (O1 ∪ O2), O1 ∪ O2, H1 ∪ H2>`.
/// Reflexive: composing a module with itself returns the module.
pub fn compose_relaxed(
    p1: &ProgramModule,
    p2: &ProgramModule,
) -> Result<ProgramModule, ComposeError> {
    if p1 == p2 {
        return Ok(p1.clone());
    }
    let leaked = hidden_leaks(p1, p2);
    if !leaked.is_empty() {
        return Err(ComposeError::HiddenLeak(leaked));
    }
    let outputs: BTreeSet<Atom> = p1.output().union(p2.output()).cloned().collect();
    let input = p1
        .input()
        .union(p2.input())
        .filter(|a| !outputs.contains(*a))
        .cloned();
    Ok(ProgramModule::new(
        p1.rules().union(p2.rules()),
        input,
        outputs.clone(),
        p1.hidden().union(p2.hidden()).cloned(),
    ))
}

const CHOICE_AUX_SUFFIX: &str = "__aux";

fn mint(base: &Atom, suffix: &str, used: &mut BTreeSet<Atom>) -> Atom {
    let mut candidate = base.with_predicate_suffix(suffix);
    let mut bump = 2usize;
    while used.contains(&candidate) {
        candidate = base.with_predicate_suffix(&format!("{suffix}_{bump}"));
        bump += 1;
    }
    used.insert(candidate.clone());
    candidate
}

/// Expands every choice rule into normal rules over fresh hidden auxiliaries.
/// Head renaming is only sound on the expanded form: the auxiliary keeps the
/// original atom in its body, so a renamed head stays tied to the original's
/// truth value instead of becoming an independent choice.
fn expand_choices(
    program: &Program,
    used: &mut BTreeSet<Atom>,
) -> (Program, BTreeSet<Atom>) {
    let mut out = Program::new();
    let mut introduced = BTreeSet::new();
    let mut aux_of: std::collections::BTreeMap<Atom, Atom> = std::collections::BTreeMap::new();
    for rule in program.rules() {
        if rule.kind() != crate::program::RuleKind::Choice {
            out.push(rule.clone());
            continue;
        }
        for head in rule.head() {
            let aux = aux_of
                .entry(head.clone())
                .or_insert_with(|| mint(head, CHOICE_AUX_SUFFIX, used))
                .clone();
            let mut neg: Vec<Atom> = rule.body_neg().iter().cloned().collect();
            neg.push(aux.clone());
            out.push(Rule::normal(head.clone(), rule.body_pos().iter().cloned(), neg));
            out.push(Rule::normal(aux.clone(), [], [head.clone()]));
            introduced.insert(aux);
        }
    }
    (out, introduced)
}

fn rename_output_inner(
    module: &ProgramModule,
    map: &RenameMap,
    require_output: bool,
    used: &mut BTreeSet<Atom>,
) -> Result<ProgramModule, ComposeError> {
    if map.pairs().is_empty() {
        return Ok(module.clone());
    }
    let alphabet = module.all_atoms();
    for (old, fresh) in map.pairs() {
        if require_output && !module.output().contains(old) {
            return Err(ComposeError::OldNotOutput(old.clone()));
        }
        if alphabet.contains(fresh) {
            return Err(ComposeError::FreshCollision(fresh.clone()));
        }
        // Lenient path: a foreign atom may be renamed (it simply gains the
        // constraint and the interface entries), but a hidden one may not.
        if module.hidden().contains(old) {
            return Err(ComposeError::OldNotOutput(old.clone()));
        }
    }

    let (expanded, aux) = expand_choices(module.rules(), used);
    let mut rules = Program::new();
    for rule in expanded.rules() {
        let mut renamed = rule.clone();
        for (old, fresh) in map.pairs() {
            renamed = renamed.rename_head(old, fresh);
        }
        rules.push(renamed);
    }
    for (old, fresh) in map.pairs() {
        rules.push(Rule::constraint([fresh.clone()], [old.clone()]));
    }

    let olds = map.olds();
    let freshes = map.freshes();
    let input = module.input().union(&olds).cloned();
    let output = module
        .output()
        .difference(&olds)
        .cloned()
        .chain(freshes.iter().cloned());
    let hidden = module.hidden().iter().cloned().chain(aux);
    Ok(ProgramModule::new(rules, input, output, hidden))
}

/// Output renaming: per pair `(o, o')`, every rule head `o` becomes `o'`,
/// bodies stay untouched, the constraint `:- o', not o.` is added, `o` moves
/// from the outputs to the inputs and `o'` becomes an output. Choice rules
/// are expanded into their normal translation first; the operation is only
/// meaningful on that form. The renaming can introduce extra stable models;
/// the originals are exactly the models where each `o'` carries the same
/// truth value as its `o`, restricted back to the original alphabet.
pub fn rename_output(
    module: &ProgramModule,
    map: &RenameMap,
) -> Result<ProgramModule, ComposeError> {
    let mut used = module.all_atoms();
    used.extend(map.freshes());
    rename_output_inner(module, map, true, &mut used)
}

/// Renaming scope used by the transformed compositions: the definitions
/// rename only the common outputs, the worked examples rename every output of
/// either module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenameScope {
    #[default]
    CommonOutputs,
    AllOutputs,
}

/// Hiding: `P \ S`. Hidden former inputs get a choice rule so their values
/// stay free; stable models are unchanged, only visibility shrinks. Foreign
/// atoms in `S` are ignored.
pub fn hide(module: &ProgramModule, scope: &BTreeSet<Atom>) -> ProgramModule {
    let mut rules = module.rules().clone();
    for input in module.input().intersection(scope) {
        rules.push(Rule::choice([input.clone()], [], []));
    }
    let visible = module.visible_atoms();
    let newly_hidden = visible.intersection(scope).cloned();
    ProgramModule::new(
        rules,
        module.input().difference(scope).cloned(),
        module.output().difference(scope).cloned(),
        module.hidden().iter().cloned().chain(newly_hidden),
    )
}

/// Projection: `P |_S`, the dual of [`hide`] — everything outside `S` is
/// hidden instead.
pub fn project(module: &ProgramModule, scope: &BTreeSet<Atom>) -> ProgramModule {
    let mut rules = module.rules().clone();
    for input in module.input().difference(scope) {
        rules.push(Rule::choice([input.clone()], [], []));
    }
    let newly_hidden = module
        .visible_atoms()
        .into_iter()
        .filter(|a| !scope.contains(a));
    ProgramModule::new(
        rules,
        module.input().intersection(scope).cloned(),
        module.output().intersection(scope).cloned(),
        module.hidden().iter().cloned().chain(newly_hidden),
    )
}

fn check_coverage(
    common: &BTreeSet<Atom>,
    map: &RenameMap,
) -> Result<(), ComposeError> {
    let olds = map.olds();
    if &olds != common {
        return Err(ComposeError::CoverageMismatch {
            expected: common.iter().cloned().collect(),
            got: olds.into_iter().collect(),
        });
    }
    Ok(())
}

/// The bridge module uniting the renamed contributions: per common output
/// `o`, rules `o :- o'.` and `o :- o''.`; inputs are the renamed copies,
/// outputs the originals.
pub fn build_union_module(
    common: &BTreeSet<Atom>,
    primed: &RenameMap,
    double_primed: &RenameMap,
) -> Result<ProgramModule, ComposeError> {
    check_coverage(common, primed)?;
    check_coverage(common, double_primed)?;
    let mut rules = Program::new();
    for ((old, fresh1), (_, fresh2)) in primed.pairs().iter().zip(double_primed.pairs()) {
        rules.push(Rule::normal(old.clone(), [fresh1.clone()], []));
        rules.push(Rule::normal(old.clone(), [fresh2.clone()], []));
    }
    let input = primed.freshes().into_iter().chain(double_primed.freshes());
    Ok(ProgramModule::new(rules, input, common.iter().cloned(), []))
}

/// The compatibility filter: per common output, two constraints forcing the
/// renamed copies to agree (`:- o', not o''.` and `:- o'', not o'.`).
pub fn build_filter_module(
    primed: &RenameMap,
    double_primed: &RenameMap,
) -> Result<ProgramModule, ComposeError> {
    let common = primed.olds();
    check_coverage(&common, double_primed)?;
    let mut rules = Program::new();
    for ((_, fresh1), (_, fresh2)) in primed.pairs().iter().zip(double_primed.pairs()) {
        rules.push(Rule::constraint([fresh1.clone()], [fresh2.clone()]));
        rules.push(Rule::constraint([fresh2.clone()], [fresh1.clone()]));
    }
    let input = primed.freshes().into_iter().chain(double_primed.freshes());
    Ok(ProgramModule::new(rules, input, [], []))
}

/// The pieces of a transformed composition, exposed so the renamed copies and
/// the bridge module can be inspected and solved on their own.
#[derive(Debug, Clone)]
pub struct RtParts {
    pub renamed_left: ProgramModule,
    pub renamed_right: ProgramModule,
    pub union_module: ProgramModule,
    pub primed: RenameMap,
    pub double_primed: RenameMap,
}

/// Renames the scope outputs in both modules and builds the union bridge.
pub fn rt_transform_parts(
    p1: &ProgramModule,
    p2: &ProgramModule,
    scope: RenameScope,
) -> Result<RtParts, ComposeError> {
    let leaked = hidden_leaks(p1, p2);
    if !leaked.is_empty() {
        return Err(ComposeError::HiddenLeak(leaked));
    }
    let common: BTreeSet<Atom> = match scope {
        RenameScope::CommonOutputs => p1.output().intersection(p2.output()).cloned().collect(),
        RenameScope::AllOutputs => p1.output().union(p2.output()).cloned().collect(),
    };
    let mut used: BTreeSet<Atom> =
        p1.all_atoms().union(&p2.all_atoms()).cloned().collect();
    let primed = RenameMap::minted(&common, PRIMED_SUFFIX, &mut used);
    let double_primed = RenameMap::minted(&common, DOUBLE_PRIMED_SUFFIX, &mut used);
    let renamed_left = rename_output_inner(p1, &primed, false, &mut used)?;
    let renamed_right = rename_output_inner(p2, &double_primed, false, &mut used)?;
    let union_module = build_union_module(&common, &primed, &double_primed)?;
    Ok(RtParts { renamed_left, renamed_right, union_module, primed, double_primed })
}

fn hide_renamed(
    composed: ProgramModule,
    parts: &RtParts,
) -> ProgramModule {
    let renamed: BTreeSet<Atom> = parts
        .primed
        .freshes()
        .into_iter()
        .chain(parts.double_primed.freshes())
        .collect();
    hide(&composed, &renamed)
}

/// Transformed relaxed composition:
/// `[rename'(P1) ⊔ rename''(P2) ⊔ union] \ (renamed atoms)`. With no common
/// outputs this degenerates to the plain union operator.
pub fn compose_relaxed_rt(
    p1: &ProgramModule,
    p2: &ProgramModule,
    scope: RenameScope,
) -> Result<ProgramModule, ComposeError> {
    let parts = rt_transform_parts(p1, p2, scope)?;
    let inner = compose_sqcup(&parts.renamed_left, &parts.renamed_right)?;
    let inner = compose_sqcup(&inner, &parts.union_module)?;
    Ok(hide_renamed(inner, &parts))
}

/// Conservative composition: like the transformed relaxed composition but
/// with the agreement filter in the chain, so only models where both sources
/// support the same common outputs survive.
pub fn compose_conservative(
    p1: &ProgramModule,
    p2: &ProgramModule,
    scope: RenameScope,
) -> Result<ProgramModule, ComposeError> {
    let parts = rt_transform_parts(p1, p2, scope)?;
    let filter = build_filter_module(&parts.primed, &parts.double_primed)?;
    let inner = compose_sqcup(&parts.renamed_left, &parts.renamed_right)?;
    let inner = compose_sqcup(&inner, &parts.union_module)?;
    let inner = compose_sqcup(&inner, &filter)?;
    Ok(hide_renamed(inner, &parts))
}
