//! Program modules `<R, I, O, H>`, interpretations, and answer-set
//! collections.

use std::collections::BTreeSet;
use std::fmt;

use crate::atom::Atom;
use crate::program::Program;

/// A set of atoms. Ordering is lexicographic on the sorted atom sequence,
/// which gives the canonical model order used everywhere in output.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation {
    atoms: BTreeSet<Atom>,
}

impl Interpretation {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        Interpretation { atoms: atoms.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Interpretation::default()
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Restriction to `scope`: `M ∩ scope`.
    pub fn project(&self, scope: &BTreeSet<Atom>) -> Interpretation {
        Interpretation::new(self.atoms.intersection(scope).cloned())
    }

    /// `M \ scope`.
    pub fn without(&self, scope: &BTreeSet<Atom>) -> Interpretation {
        Interpretation::new(self.atoms.difference(scope).cloned())
    }

    pub fn union(&self, other: &Interpretation) -> Interpretation {
        Interpretation::new(self.atoms.union(&other.atoms).cloned())
    }

    pub fn is_subset(&self, other: &BTreeSet<Atom>) -> bool {
        self.atoms.is_subset(other)
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        Interpretation::new(iter)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self
            .atoms
            .iter()
            .map(Atom::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{{{inner}}}")
    }
}

/// A violated module invariant, reported by [`ProgramModule::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two interface sets share atoms.
    InterfaceOverlap { sections: (&'static str, &'static str), atoms: Vec<Atom> },
    /// A rule mentions an atom outside `I ∪ O ∪ H`.
    StrayAtom { atom: Atom },
    /// A rule head (normal or choice) is an input atom.
    InputHead { atom: Atom },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InterfaceOverlap { sections: (a, b), atoms } => {
                let list = atoms.iter().map(Atom::to_string).collect::<Vec<_>>().join(", ");
                write!(f, "{a} ∩ {b} ≠ ∅: {list}")
            }
            Violation::StrayAtom { atom } => {
                write!(f, "rule atom {atom} is not declared in any interface section")
            }
            Violation::InputHead { atom } => write!(f, "head atom {atom} is an input"),
        }
    }
}

/// An interfaced logic program module `<R, I, O, H>`.
///
/// Well-formedness: `I`, `O`, `H` pairwise disjoint, `At(R) ⊆ I ∪ O ∪ H`,
/// and no rule head belongs to `I`. [`ProgramModule::validate`] reports every
/// violated clause rather than failing fast.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramModule {
    rules: Program,
    input: BTreeSet<Atom>,
    output: BTreeSet<Atom>,
    hidden: BTreeSet<Atom>,
}

impl ProgramModule {
    pub fn new(
        rules: Program,
        input: impl IntoIterator<Item = Atom>,
        output: impl IntoIterator<Item = Atom>,
        hidden: impl IntoIterator<Item = Atom>,
    ) -> Self {
        ProgramModule {
            rules,
            input: input.into_iter().collect(),
            output: output.into_iter().collect(),
            hidden: hidden.into_iter().collect(),
        }
    }

    /// The identity element of the composition operators.
    pub fn empty() -> Self {
        ProgramModule::new(Program::new(), [], [], [])
    }

    pub fn rules(&self) -> &Program {
        &self.rules
    }

    pub fn input(&self) -> &BTreeSet<Atom> {
        &self.input
    }

    pub fn output(&self) -> &BTreeSet<Atom> {
        &self.output
    }

    pub fn hidden(&self) -> &BTreeSet<Atom> {
        &self.hidden
    }

    /// `At_v = I ∪ O`, the atoms other modules may connect to.
    pub fn visible_atoms(&self) -> BTreeSet<Atom> {
        self.input.union(&self.output).cloned().collect()
    }

    /// `At(P) = I ∪ O ∪ H`, the full declared alphabet.
    pub fn all_atoms(&self) -> BTreeSet<Atom> {
        self.visible_atoms().union(&self.hidden).cloned().collect()
    }

    /// Reports every violated well-formedness clause; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let overlaps: [(&'static str, &'static str, &BTreeSet<Atom>, &BTreeSet<Atom>); 3] = [
            ("I", "O", &self.input, &self.output),
            ("I", "H", &self.input, &self.hidden),
            ("O", "H", &self.output, &self.hidden),
        ];
        for (a, b, left, right) in overlaps {
            let shared: Vec<Atom> = left.intersection(right).cloned().collect();
            if !shared.is_empty() {
                out.push(Violation::InterfaceOverlap { sections: (a, b), atoms: shared });
            }
        }
        let declared = self.all_atoms();
        for atom in self.rules.atoms() {
            if !declared.contains(&atom) {
                out.push(Violation::StrayAtom { atom });
            }
        }
        let mut seen_heads = BTreeSet::new();
        for rule in self.rules.rules() {
            for head in rule.head() {
                if self.input.contains(head) && seen_heads.insert(head.clone()) {
                    out.push(Violation::InputHead { atom: head.clone() });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Renders the module in the `.mlp` text format under the given name.
    /// Parsing the result back yields an equal module.
    pub fn to_text(&self, name: &str) -> String {
        fn section(label: &str, atoms: &BTreeSet<Atom>) -> String {
            if atoms.is_empty() {
                format!("{label}: -")
            } else {
                let list = atoms.iter().map(Atom::to_string).collect::<Vec<_>>().join(", ");
                format!("{label}: {list}")
            }
        }
        let mut out = format!("module {name}\n");
        out.push_str(&section("input", &self.input));
        out.push('\n');
        out.push_str(&section("output", &self.output));
        out.push('\n');
        out.push_str(&section("hidden", &self.hidden));
        out.push('\n');
        out.push_str("rules:\n");
        out.push_str(&self.rules.to_string());
        out
    }
}

/// The stable models of a module, tagged with the owning interface so that
/// joins can see the owner's visible atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnswerSetCollection {
    owner_input: BTreeSet<Atom>,
    owner_output: BTreeSet<Atom>,
    owner_hidden: BTreeSet<Atom>,
    models: BTreeSet<Interpretation>,
}

impl AnswerSetCollection {
    /// Panics when a model strays outside the owner's alphabet; collections
    /// are only built from enumeration results and joins, so that is a bug.
    pub fn new(
        owner_input: impl IntoIterator<Item = Atom>,
        owner_output: impl IntoIterator<Item = Atom>,
        owner_hidden: impl IntoIterator<Item = Atom>,
        models: impl IntoIterator<Item = Interpretation>,
    ) -> Self {
        let collection = AnswerSetCollection {
            owner_input: owner_input.into_iter().collect(),
            owner_output: owner_output.into_iter().collect(),
            owner_hidden: owner_hidden.into_iter().collect(),
            models: models.into_iter().collect(),
        };
        let alphabet = collection.owner_atoms();
        for model in &collection.models {
            assert!(
                model.is_subset(&alphabet),
                "model {model} outside owner alphabet"
            );
        }
        collection
    }

    pub fn owner_input(&self) -> &BTreeSet<Atom> {
        &self.owner_input
    }

    pub fn owner_output(&self) -> &BTreeSet<Atom> {
        &self.owner_output
    }

    pub fn owner_hidden(&self) -> &BTreeSet<Atom> {
        &self.owner_hidden
    }

    /// The owner's visible atoms `I ∪ O`.
    pub fn owner_visible(&self) -> BTreeSet<Atom> {
        self.owner_input.union(&self.owner_output).cloned().collect()
    }

    pub fn owner_atoms(&self) -> BTreeSet<Atom> {
        self.owner_visible().union(&self.owner_hidden).cloned().collect()
    }

    pub fn models(&self) -> &BTreeSet<Interpretation> {
        &self.models
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// Projects every model to the owner's visible atoms, deduplicating.
    pub fn visible_models(&self) -> BTreeSet<Interpretation> {
        let visible = self.owner_visible();
        self.models.iter().map(|m| m.project(&visible)).collect()
    }
}

impl fmt::Display for AnswerSetCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for model in &self.models {
            writeln!(f, "{model}")?;
        }
        Ok(())
    }
}
