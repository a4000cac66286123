//! Seeded random modules and module pairs for the theorem campaigns.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::atom::Atom;
use crate::module::ProgramModule;
use crate::program::{Program, Rule};
use crate::semantics::DEFAULT_MAX_ATOMS;

#[derive(Debug, Error, PartialEq)]
pub enum GenerateError {
    #[error("fraction `{name}` = {value} is outside [0, 1]")]
    FractionOutOfRange { name: &'static str, value: f64 },
    #[error("atom budget {0} exceeds the enumeration cap {DEFAULT_MAX_ATOMS}")]
    BudgetTooLarge(usize),
    #[error("infeasible budget: {0}")]
    InfeasibleBudget(&'static str),
}

/// Knobs for random generation. Everything is deterministic in `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    /// Total distinct atoms in play (for pairs: across the whole pair).
    pub atom_budget: usize,
    /// Rules generated per module.
    pub rule_budget: usize,
    pub input_fraction: f64,
    pub output_fraction: f64,
    pub choice_probability: f64,
    pub negation_probability: f64,
    /// When generating pairs, guarantee mutual independence by construction.
    pub forbid_cross_positive_cycles: bool,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            atom_budget: 8,
            rule_budget: 6,
            input_fraction: 0.25,
            output_fraction: 0.4,
            choice_probability: 0.2,
            negation_probability: 0.4,
            forbid_cross_positive_cycles: true,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), GenerateError> {
        for (name, value) in [
            ("input_fraction", self.input_fraction),
            ("output_fraction", self.output_fraction),
            ("choice_probability", self.choice_probability),
            ("negation_probability", self.negation_probability),
        ] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(GenerateError::FractionOutOfRange { name, value });
            }
        }
        if self.atom_budget > DEFAULT_MAX_ATOMS {
            return Err(GenerateError::BudgetTooLarge(self.atom_budget));
        }
        Ok(())
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Independent stream per (seed, trial index).
    pub(crate) fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(trial.wrapping_add(1));
        rng
    }
}

fn named(prefix: &str, count: usize) -> Vec<Atom> {
    (0..count)
        .map(|i| Atom::prop(format!("{prefix}{i}")).expect("generated names are valid"))
        .collect()
}

fn pick<'a>(rng: &mut ChaCha8Rng, pool: &'a [Atom]) -> Option<&'a Atom> {
    if pool.is_empty() {
        None
    } else {
        Some(&pool[rng.gen_range(0..pool.len())])
    }
}

/// Draws up to `max` body literals from `positive_pool`/`negative_pool`.
fn random_body(
    rng: &mut ChaCha8Rng,
    positive_pool: &[Atom],
    negative_pool: &[Atom],
    negation_probability: f64,
    max: usize,
) -> (BTreeSet<Atom>, BTreeSet<Atom>) {
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=max) {
        if rng.gen_bool(negation_probability) {
            if let Some(a) = pick(rng, negative_pool) {
                neg.insert(a.clone());
            }
        } else if let Some(a) = pick(rng, positive_pool) {
            pos.insert(a.clone());
        }
    }
    (pos, neg)
}

/// Share of constraints among generated rules (no dedicated config knob; the
/// interesting degrees of freedom are choice and negation).
const CONSTRAINT_SHARE: f64 = 0.12;

fn random_rule(
    rng: &mut ChaCha8Rng,
    cfg: &GeneratorConfig,
    heads: &[Atom],
    positive_pool: &[Atom],
    negative_pool: &[Atom],
) -> Rule {
    let (pos, neg) =
        random_body(rng, positive_pool, negative_pool, cfg.negation_probability, 3);
    if rng.gen_bool(cfg.choice_probability) {
        let mut head = BTreeSet::new();
        head.insert(heads[rng.gen_range(0..heads.len())].clone());
        if heads.len() > 1 && rng.gen_bool(0.4) {
            head.insert(heads[rng.gen_range(0..heads.len())].clone());
        }
        Rule::choice(head, pos, neg)
    } else if rng.gen_bool(CONSTRAINT_SHARE) && (!pos.is_empty() || !neg.is_empty()) {
        Rule::constraint(pos, neg)
    } else {
        Rule::normal(heads[rng.gen_range(0..heads.len())].clone(), pos, neg)
    }
}

fn split_budget(cfg: &GeneratorConfig) -> (usize, usize, usize) {
    let n = cfg.atom_budget;
    let mut n_in = (cfg.input_fraction * n as f64).round() as usize;
    let mut n_out = (cfg.output_fraction * n as f64).round() as usize;
    if n_in + n_out > n {
        n_out = n - n_in.min(n);
        n_in = n_in.min(n);
    }
    (n_in, n_out, n - n_in - n_out)
}

pub(crate) fn module_from_rng(
    cfg: &GeneratorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<ProgramModule, GenerateError> {
    cfg.validate()?;
    let (n_in, n_out, n_hidden) = split_budget(cfg);
    if cfg.rule_budget > 0 && n_out + n_hidden == 0 {
        return Err(GenerateError::InfeasibleBudget(
            "rules need head atoms but output and hidden budgets are both zero",
        ));
    }
    let inputs = named("i", n_in);
    let outputs = named("o", n_out);
    let hidden = named("h", n_hidden);
    let heads: Vec<Atom> = outputs.iter().chain(&hidden).cloned().collect();
    let all: Vec<Atom> = inputs.iter().chain(&outputs).chain(&hidden).cloned().collect();
    let mut program = Program::new();
    for _ in 0..cfg.rule_budget {
        program.push(random_rule(rng, cfg, &heads, &all, &all));
    }
    let module = ProgramModule::new(program, inputs, outputs, hidden);
    debug_assert!(module.is_valid());
    Ok(module)
}

/// A valid random module, deterministic in `cfg.seed`.
pub fn random_module(cfg: &GeneratorConfig) -> Result<ProgramModule, GenerateError> {
    module_from_rng(cfg, &mut cfg.rng())
}

/// How a generated pair shares its signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Disjoint outputs; the second module may read the first one's outputs.
    /// With `forbid_cross_positive_cycles` the cross wiring is one-directional
    /// and the pair is mutually independent by construction.
    DisjointOutputs,
    /// Overlapping outputs and no positive dependencies between the modules;
    /// the regime of the transformed compositions.
    SharedOutputs,
}

pub(crate) fn pair_from_rng(
    cfg: &GeneratorConfig,
    kind: PairKind,
    rng: &mut ChaCha8Rng,
) -> Result<(ProgramModule, ProgramModule), GenerateError> {
    cfg.validate()?;
    let n = cfg.atom_budget;
    if n < 4 {
        return Err(GenerateError::InfeasibleBudget("pairs need an atom budget of at least 4"));
    }
    // Both modules need at least one output; inputs and hidden atoms share
    // whatever the output allocation leaves over.
    let n_out = ((cfg.output_fraction * n as f64).round() as usize).clamp(2, n);
    let remaining = n - n_out;
    let n_in = ((cfg.input_fraction * n as f64).round() as usize).min(remaining);
    let n_hidden = remaining - n_in;
    let shared_inputs = named("s", n_in);
    let h1 = named("g", n_hidden / 2);
    let h2 = named("h", n_hidden - n_hidden / 2);

    match kind {
        PairKind::DisjointOutputs => {
            let o1 = named("p", n_out / 2 + n_out % 2);
            let o2 = named("q", n_out / 2);

            // Module 2 may take module 1's outputs as inputs (one-directional
            // wiring keeps the pair mutually independent); without the
            // restriction both directions are wired and cycles can occur.
            let mut i2: Vec<Atom> = shared_inputs.clone();
            for atom in &o1 {
                if rng.gen_bool(0.5) {
                    i2.push(atom.clone());
                }
            }
            let mut i1: Vec<Atom> = shared_inputs.clone();
            if !cfg.forbid_cross_positive_cycles {
                for atom in &o2 {
                    if rng.gen_bool(0.5) {
                        i1.push(atom.clone());
                    }
                }
            }

            let all1: Vec<Atom> = i1.iter().chain(&o1).chain(&h1).cloned().collect();
            let all2: Vec<Atom> = i2.iter().chain(&o2).chain(&h2).cloned().collect();
            let heads1: Vec<Atom> = o1.iter().chain(&h1).cloned().collect();
            let heads2: Vec<Atom> = o2.iter().chain(&h2).cloned().collect();

            let mut r1 = Program::new();
            let mut r2 = Program::new();
            for _ in 0..cfg.rule_budget {
                r1.push(random_rule(rng, cfg, &heads1, &all1, &all1));
                r2.push(random_rule(rng, cfg, &heads2, &all2, &all2));
            }
            let m1 = ProgramModule::new(r1, i1, o1, h1);
            let m2 = ProgramModule::new(r2, i2, o2, h2);
            debug_assert!(m1.is_valid() && m2.is_valid());
            Ok((m1, m2))
        }
        PairKind::SharedOutputs => {
            let n_common = (n_out / 2).max(1);
            let common = named("c", n_common);
            let o1_priv = named("p", (n_out - n_common) / 2 + (n_out - n_common) % 2);
            let o2_priv = named("q", (n_out - n_common) / 2);

            let o1: Vec<Atom> = common.iter().chain(&o1_priv).cloned().collect();
            let o2: Vec<Atom> = common.iter().chain(&o2_priv).cloned().collect();
            let heads1: Vec<Atom> = o1.iter().chain(&h1).cloned().collect();
            let heads2: Vec<Atom> = o2.iter().chain(&h2).cloned().collect();
            let all1: Vec<Atom> = shared_inputs.iter().chain(&o1).chain(&h1).cloned().collect();
            let all2: Vec<Atom> = shared_inputs.iter().chain(&o2).chain(&h2).cloned().collect();

            // Positive bodies never mention output atoms, so no positive
            // dependency can run between the modules or through a common
            // output. Negative bodies range over the full own alphabet.
            let pos1: Vec<Atom> = shared_inputs.iter().chain(&h1).cloned().collect();
            let pos2: Vec<Atom> = shared_inputs.iter().chain(&h2).cloned().collect();

            let mut r1 = Program::new();
            let mut r2 = Program::new();
            for _ in 0..cfg.rule_budget {
                r1.push(random_rule(rng, cfg, &heads1, &pos1, &all1));
                r2.push(random_rule(rng, cfg, &heads2, &pos2, &all2));
            }
            let m1 = ProgramModule::new(r1, shared_inputs.clone(), o1, h1);
            let m2 = ProgramModule::new(r2, shared_inputs, o2, h2);
            debug_assert!(m1.is_valid() && m2.is_valid());
            Ok((m1, m2))
        }
    }
}

/// A deterministic random pair of the requested kind.
pub fn random_pair(
    cfg: &GeneratorConfig,
    kind: PairKind,
) -> Result<(ProgramModule, ProgramModule), GenerateError> {
    pair_from_rng(cfg, kind, &mut cfg.rng())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::{compose_relaxed, compose_sqcup};
    use crate::depgraph::mutually_independent;

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let cfg = GeneratorConfig { seed: 1, atom_budget: 4, ..Default::default() };
        let a = random_module(&cfg).unwrap();
        let b = random_module(&cfg).unwrap();
        assert_eq!(a, b);
        let other = random_module(&GeneratorConfig { seed: 2, ..cfg }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn zero_rule_budget_yields_an_empty_valid_module() {
        let cfg = GeneratorConfig { rule_budget: 0, ..Default::default() };
        let m = random_module(&cfg).unwrap();
        assert!(m.rules().is_empty());
        assert!(m.is_valid());
    }

    #[test]
    fn infeasible_budget_is_reported() {
        let cfg = GeneratorConfig {
            atom_budget: 2,
            input_fraction: 1.0,
            output_fraction: 0.0,
            rule_budget: 3,
            ..Default::default()
        };
        assert_eq!(
            random_module(&cfg).unwrap_err(),
            GenerateError::InfeasibleBudget(
                "rules need head atoms but output and hidden budgets are both zero"
            )
        );
    }

    #[test]
    fn fractions_are_validated() {
        let cfg = GeneratorConfig { input_fraction: 1.5, ..Default::default() };
        assert!(matches!(
            random_module(&cfg).unwrap_err(),
            GenerateError::FractionOutOfRange { name: "input_fraction", .. }
        ));
    }

    #[test]
    fn generated_modules_validate() {
        for seed in 0..50 {
            let cfg = GeneratorConfig { seed, ..Default::default() };
            assert!(random_module(&cfg).unwrap().is_valid());
        }
    }

    #[test]
    fn extreme_fractions_do_not_break_pair_budgets() {
        for (input_fraction, output_fraction) in
            [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.0, 0.0)]
        {
            let cfg = GeneratorConfig {
                atom_budget: 4,
                input_fraction,
                output_fraction,
                ..Default::default()
            };
            for kind in [PairKind::DisjointOutputs, PairKind::SharedOutputs] {
                let (m1, m2) = random_pair(&cfg, kind).unwrap();
                assert!(m1.is_valid() && m2.is_valid());
            }
        }
    }

    #[test]
    fn disjoint_pairs_satisfy_the_union_preconditions() {
        for seed in 0..100 {
            let cfg = GeneratorConfig { seed, ..Default::default() };
            let (m1, m2) = random_pair(&cfg, PairKind::DisjointOutputs).unwrap();
            assert!(mutually_independent(&m1, &m2), "seed {seed} produced a dependent pair");
            assert!(compose_sqcup(&m1, &m2).is_ok(), "seed {seed} failed to compose");
        }
    }

    #[test]
    fn shared_pairs_have_common_outputs_and_no_cross_positive_deps() {
        let mut with_common = 0;
        for seed in 0..100 {
            let cfg = GeneratorConfig { seed, ..Default::default() };
            let (m1, m2) = random_pair(&cfg, PairKind::SharedOutputs).unwrap();
            if m1.output().intersection(m2.output()).next().is_some() {
                with_common += 1;
            }
            assert!(compose_relaxed(&m1, &m2).is_ok());
            assert!(mutually_independent(&m1, &m2));
        }
        assert_eq!(with_common, 100, "shared pairs always overlap on outputs");
    }
}
