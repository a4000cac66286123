//! Ground rules and programs.

use std::collections::BTreeSet;
use std::fmt;

use crate::atom::Atom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    /// Single head atom.
    Normal,
    /// Empty head; firing the body yields inconsistency.
    Constraint,
    /// `{a1, ..., an} :- body.` with n >= 1.
    Choice,
}

/// A ground rule. The head is a set: singleton for normal rules, empty for
/// constraints, nonempty for choice rules. `body_pos` and `body_neg` may
/// overlap; such a rule is simply never applicable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    kind: RuleKind,
    head: BTreeSet<Atom>,
    body_pos: BTreeSet<Atom>,
    body_neg: BTreeSet<Atom>,
}

impl Rule {
    pub fn normal(
        head: Atom,
        body_pos: impl IntoIterator<Item = Atom>,
        body_neg: impl IntoIterator<Item = Atom>,
    ) -> Self {
        Rule {
            kind: RuleKind::Normal,
            head: BTreeSet::from([head]),
            body_pos: body_pos.into_iter().collect(),
            body_neg: body_neg.into_iter().collect(),
        }
    }

    pub fn fact(head: Atom) -> Self {
        Rule::normal(head, [], [])
    }

    pub fn constraint(
        body_pos: impl IntoIterator<Item = Atom>,
        body_neg: impl IntoIterator<Item = Atom>,
    ) -> Self {
        Rule {
            kind: RuleKind::Constraint,
            head: BTreeSet::new(),
            body_pos: body_pos.into_iter().collect(),
            body_neg: body_neg.into_iter().collect(),
        }
    }

    /// Panics when `head` is empty; choice rules require n >= 1 head atoms.
    pub fn choice(
        head: impl IntoIterator<Item = Atom>,
        body_pos: impl IntoIterator<Item = Atom>,
        body_neg: impl IntoIterator<Item = Atom>,
    ) -> Self {
        let head: BTreeSet<Atom> = head.into_iter().collect();
        assert!(!head.is_empty(), "choice rule requires a nonempty head");
        Rule {
            kind: RuleKind::Choice,
            head,
            body_pos: body_pos.into_iter().collect(),
            body_neg: body_neg.into_iter().collect(),
        }
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn head(&self) -> &BTreeSet<Atom> {
        &self.head
    }

    pub fn body_pos(&self) -> &BTreeSet<Atom> {
        &self.body_pos
    }

    pub fn body_neg(&self) -> &BTreeSet<Atom> {
        &self.body_neg
    }

    pub fn is_fact(&self) -> bool {
        self.kind == RuleKind::Normal && self.body_pos.is_empty() && self.body_neg.is_empty()
    }

    /// All atoms occurring anywhere in the rule.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head
            .iter()
            .chain(self.body_pos.iter())
            .chain(self.body_neg.iter())
    }

    /// Rewrites every head occurrence of `old` to `fresh`; bodies untouched.
    pub(crate) fn rename_head(&self, old: &Atom, fresh: &Atom) -> Rule {
        if !self.head.contains(old) {
            return self.clone();
        }
        let mut head = self.head.clone();
        head.remove(old);
        head.insert(fresh.clone());
        Rule { kind: self.kind, head, body_pos: self.body_pos.clone(), body_neg: self.body_neg.clone() }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |set: &BTreeSet<Atom>, prefix: &str| {
            set.iter()
                .map(|a| format!("{prefix}{a}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self.kind {
            RuleKind::Normal => write!(f, "{}", self.head.iter().next().unwrap())?,
            RuleKind::Constraint => {}
            RuleKind::Choice => write!(f, "{{{}}}", join(&self.head, ""))?,
        }
        if !self.body_pos.is_empty() || !self.body_neg.is_empty() || self.kind == RuleKind::Constraint
        {
            if self.kind != RuleKind::Constraint {
                write!(f, " ")?;
            }
            write!(f, ":- ")?;
            let mut parts = Vec::new();
            if !self.body_pos.is_empty() {
                parts.push(join(&self.body_pos, ""));
            }
            if !self.body_neg.is_empty() {
                parts.push(join(&self.body_neg, "not "));
            }
            write!(f, "{}", parts.join(", "))?;
        }
        write!(f, ".")
    }
}

/// An ordered list of rules, deduplicated set-wise: semantics is
/// order-independent, but the original order is kept so that printed modules
/// stay close to their source.
#[derive(Debug, Clone, Default)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    pub fn new() -> Self {
        Program::default()
    }

    pub fn from_rules(rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut p = Program::new();
        for r in rules {
            p.push(r);
        }
        p
    }

    /// Appends a rule unless an identical one is already present.
    pub fn push(&mut self, rule: Rule) {
        if !self.rules.contains(&rule) {
            self.rules.push(rule);
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn has_choice_rules(&self) -> bool {
        self.rules.iter().any(|r| r.kind() == RuleKind::Choice)
    }

    /// `At(R)`: every atom occurring in any head or body.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.rules.iter().flat_map(Rule::atoms).cloned().collect()
    }

    /// Union keeping left-then-right order, dropping duplicates.
    pub fn union(&self, other: &Program) -> Program {
        let mut out = self.clone();
        for r in other.rules() {
            out.push(r.clone());
        }
        out
    }
}

impl PartialEq for Program {
    /// Set-wise comparison; rule order is presentation only.
    fn eq(&self, other: &Self) -> bool {
        let a: BTreeSet<&Rule> = self.rules.iter().collect();
        let b: BTreeSet<&Rule> = other.rules.iter().collect();
        a == b
    }
}

impl Eq for Program {}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}
