//! The fixture modules used throughout the test suite and the CLI examples:
//! the car-buying scenario, the counterexample pairs for common outputs and
//! for cyclic dependencies, the minimisation counterexample, and the
//! non-compositionality witness pair.
//!
//! Module sources are embedded from `fixtures/*.mlp`, so the files shipped
//! for CLI use and the modules used in tests cannot drift apart.

use std::collections::BTreeSet;

use crate::compose::compose_sqcup;
use crate::module::{Interpretation, ProgramModule};
use crate::parse::load_module;

pub const PA_SRC: &str = include_str!("../../fixtures/pa.mlp");
pub const PB_SRC: &str = include_str!("../../fixtures/pb.mlp");
pub const PC_SRC: &str = include_str!("../../fixtures/pc.mlp");
pub const MG1_SRC: &str = include_str!("../../fixtures/mg1.mlp");
pub const MG2_SRC: &str = include_str!("../../fixtures/mg2.mlp");
pub const MG2_RENAMED_SRC: &str = include_str!("../../fixtures/mg2_renamed.mlp");
pub const LOOP1_SRC: &str = include_str!("../../fixtures/loop1.mlp");
pub const LOOP2_SRC: &str = include_str!("../../fixtures/loop2.mlp");
pub const MIN1_SRC: &str = include_str!("../../fixtures/min1.mlp");
pub const MIN2_SRC: &str = include_str!("../../fixtures/min2.mlp");
pub const LEMMA2_P1_SRC: &str = include_str!("../../fixtures/lemma2_p1.mlp");
pub const LEMMA2_Q1_SRC: &str = include_str!("../../fixtures/lemma2_q1.mlp");
pub const LEMMA2_P2_SRC: &str = include_str!("../../fixtures/lemma2_p2.mlp");
pub const LEMMA2_Q2_SRC: &str = include_str!("../../fixtures/lemma2_q2.mlp");
pub const EMPTY_SRC: &str = include_str!("../../fixtures/empty.mlp");

/// What is known about a fixture module's stable models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    /// The exact model set.
    Models(BTreeSet<Interpretation>),
    /// Only the count (64 models are not worth spelling out).
    Count(usize),
}

#[derive(Debug, Clone)]
pub struct FixtureModule {
    pub name: &'static str,
    pub module: ProgramModule,
    pub expected: Option<Expected>,
}

/// A named set of modules exercising one documented scenario.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub members: Vec<FixtureModule>,
}

fn parsed(src: &str) -> ProgramModule {
    load_module(src).expect("fixture sources are well-formed").1
}

fn interp(atoms: &[&str]) -> Interpretation {
    Interpretation::new(atoms.iter().map(|s| s.parse().unwrap()))
}

fn model_set(sets: &[&[&str]]) -> Expected {
    Expected::Models(sets.iter().map(|s| interp(s)).collect())
}

/// The worked composition `(pa ⊔ mg1) ⊔ pb` and its two documented models.
pub fn worked_q() -> (ProgramModule, BTreeSet<Interpretation>) {
    let q = compose_sqcup(
        &compose_sqcup(&parsed(PA_SRC), &parsed(MG1_SRC)).expect("pa and mg1 compose"),
        &parsed(PB_SRC),
    )
    .expect("intermediate and pb compose");
    let models = [
        interp(&["safe(c1)", "exp(c1)", "exp(c2)", "car(c1)", "car(c2)", "car(c3)"]),
        interp(&["buy(c1)", "safe(c1)", "exp(c2)", "car(c1)", "car(c2)", "car(c3)"]),
    ]
    .into_iter()
    .collect();
    (q, models)
}

/// All paper-scenario fixtures with their documented stable models.
pub fn fixtures() -> Vec<Fixture> {
    let car_models = ["car(c1)", "car(c2)", "car(c3)"];
    let mg2_first: Vec<&str> =
        ["safe(c1)", "airbag(c1)"].iter().chain(&car_models).copied().collect();
    let mg2_second: Vec<&str> = ["safe(c1)", "safe(c3)", "airbag(c1)", "airbag(c3)"]
        .iter()
        .chain(&car_models)
        .copied()
        .collect();

    let (q, q_models) = worked_q();

    vec![
        Fixture {
            name: "example3",
            members: vec![
                FixtureModule {
                    name: "pa",
                    module: parsed(PA_SRC),
                    expected: Some(Expected::Count(64)),
                },
                FixtureModule {
                    name: "pb",
                    module: parsed(PB_SRC),
                    expected: Some(model_set(&[&["exp(c2)"]])),
                },
                FixtureModule {
                    name: "pc",
                    module: parsed(PC_SRC),
                    expected: Some(model_set(&[&["exp(c3)"]])),
                },
                FixtureModule {
                    name: "mg1",
                    module: parsed(MG1_SRC),
                    expected: Some(model_set(&[&["safe(c1)"]])),
                },
                FixtureModule {
                    name: "mg2",
                    module: parsed(MG2_SRC),
                    expected: Some(Expected::Models(
                        [interp(&mg2_first), interp(&mg2_second)].into_iter().collect(),
                    )),
                },
            ],
        },
        Fixture {
            name: "worked-q",
            members: vec![FixtureModule {
                name: "q",
                module: q,
                expected: Some(Expected::Models(q_models)),
            }],
        },
        Fixture {
            name: "common-outputs",
            members: vec![
                FixtureModule {
                    name: "pb",
                    module: parsed(PB_SRC),
                    expected: Some(model_set(&[&["exp(c2)"]])),
                },
                FixtureModule {
                    name: "pc",
                    module: parsed(PC_SRC),
                    expected: Some(model_set(&[&["exp(c3)"]])),
                },
            ],
        },
        Fixture {
            name: "cyclic-dependencies",
            members: vec![
                FixtureModule {
                    name: "loop1",
                    module: parsed(LOOP1_SRC),
                    expected: Some(model_set(&[&[], &["airbag", "safe"]])),
                },
                FixtureModule {
                    name: "loop2",
                    module: parsed(LOOP2_SRC),
                    expected: Some(model_set(&[&[], &["airbag", "safe"]])),
                },
            ],
        },
        Fixture {
            name: "minimization-counter",
            members: vec![
                FixtureModule {
                    name: "min1",
                    module: parsed(MIN1_SRC),
                    expected: Some(model_set(&[&["a", "b"]])),
                },
                FixtureModule {
                    name: "min2",
                    module: parsed(MIN2_SRC),
                    expected: Some(model_set(&[&[], &["a", "b"]])),
                },
            ],
        },
        Fixture {
            name: "lemma2",
            members: vec![
                FixtureModule {
                    name: "p1",
                    module: parsed(LEMMA2_P1_SRC),
                    expected: Some(model_set(&[&["a"]])),
                },
                FixtureModule {
                    name: "q1",
                    module: parsed(LEMMA2_Q1_SRC),
                    expected: Some(model_set(&[&["a"]])),
                },
                FixtureModule {
                    name: "p2",
                    module: parsed(LEMMA2_P2_SRC),
                    expected: Some(model_set(&[&["b"]])),
                },
                FixtureModule {
                    name: "q2",
                    module: parsed(LEMMA2_Q2_SRC),
                    expected: Some(model_set(&[&["b"]])),
                },
            ],
        },
        Fixture {
            name: "identity",
            members: vec![FixtureModule {
                name: "empty",
                module: parsed(EMPTY_SRC),
                expected: Some(model_set(&[&[]])),
            }],
        },
    ]
}

/// Looks a fixture module up by `"<fixture>/<member>"`.
pub fn fixture_module(path: &str) -> Option<ProgramModule> {
    let (fixture, member) = path.split_once('/')?;
    fixtures()
        .into_iter()
        .find(|f| f.name == fixture)?
        .members
        .into_iter()
        .find(|m| m.name == member)
        .map(|m| m.module)
}
