//! Verification harness: paper-scenario fixtures, seeded random generation,
//! theorem-checking campaigns, and an independent semantics oracle.

pub mod campaign;
pub mod fixtures;
pub mod generator;
pub mod oracle;
pub mod report;

pub use campaign::{
    check_conservative_pair, check_hide_project, check_relaxed_rt_pair, check_rename_recovery,
    count_counterexamples, hide_project_trials, lemma2_demo, rename_recovery_trials,
    report_passes, run_campaign, HarnessError, TheoremId,
};
pub use fixtures::{fixture_module, fixtures, worked_q, Expected, Fixture, FixtureModule};
pub use generator::{random_module, random_pair, GenerateError, GeneratorConfig, PairKind};
pub use report::{write_reports, TheoremReport, Verdict};
