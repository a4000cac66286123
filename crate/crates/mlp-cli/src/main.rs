//! Command-line front end: solve module files, compose them, join their
//! answer sets, check the compositionality theorems, test equivalence, and
//! generate random modules.
//!
//! Exit codes: 0 success or verdict-pass, 1 verdict-fail (including
//! composition precondition failures), 2 usage/parse errors, 3 enumeration
//! cap exceeded.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mlp::harness::{
    self, count_counterexamples, report_passes, GeneratorConfig, HarnessError, TheoremId,
    TheoremReport,
};
use mlp::{
    check_module_theorem, compose_conservative, compose_plus, compose_relaxed,
    compose_relaxed_rt, compose_sqcup, modularly_equivalent, natural_join, stable_models_module,
    visibly_equivalent, AnswerSetCollection, ComposeError, ProgramModule, RenameScope,
    SolveError, DEFAULT_MAX_ATOMS,
};

#[derive(Parser)]
#[command(
    name = "mlp",
    version,
    about = "Answer-set program modules: solve, compose, join, check, equiv, random"
)]
struct Cli {
    /// Enumeration cap: total atoms (auxiliaries included) per enumeration.
    /// Exceeding it refuses with exit code 3; nothing is ever truncated.
    #[arg(long, global = true, env = "MLP_MAX_ATOMS")]
    max_atoms: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the stable models of one or more module files.
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Project models onto the visible atoms (inputs and outputs).
        #[arg(long)]
        visible_only: bool,
        /// Emit JSON instead of text, one document per module.
        #[arg(long)]
        json: bool,
        /// Print only the number of models.
        #[arg(long)]
        count: bool,
    },
    /// Compose two module files with one of the algebra's operators.
    Compose {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum)]
        op: OpArg,
        /// Print the composed module in the module file format.
        #[arg(long)]
        emit_module: bool,
        /// Enumerate and print the composed module's stable models.
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        visible_only: bool,
        #[arg(long)]
        json: bool,
        /// Rename every output of either module, not only the common ones
        /// (relaxed-rt and conservative operators only).
        #[arg(long)]
        rename_all_outputs: bool,
        /// Name used when printing the composed module.
        #[arg(long, default_value = "composed")]
        name: String,
    },
    /// Natural join of the stable models of two module files.
    Join {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check a compositionality theorem on given modules or random ones.
    Check {
        /// One of: module, relaxed-rt, conservative, hide-project,
        /// rename-recovery, lemma2-demo.
        theorem: String,
        /// Module files (two for pair theorems, one for hide-project and
        /// rename-recovery, none for lemma2-demo).
        files: Vec<PathBuf>,
        /// Run a seeded random campaign instead of using files.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Atom budget for random generation.
        #[arg(long, default_value_t = 8)]
        atoms: usize,
        /// Rule budget for random generation.
        #[arg(long, default_value_t = 6)]
        rules: usize,
        #[arg(long, default_value_t = 0.25)]
        input_frac: f64,
        #[arg(long, default_value_t = 0.4)]
        output_frac: f64,
        #[arg(long, default_value_t = 0.2)]
        choice_prob: f64,
        #[arg(long, default_value_t = 0.4)]
        neg_prob: f64,
        /// Allow cross-module positive wiring in both directions when
        /// generating pairs (pairs violating mutual independence are
        /// discarded and regenerated).
        #[arg(long)]
        allow_cross_cycles: bool,
        /// Write one JSON record per trial to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decide visible or modular equivalence of two module files.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Modular)]
        mode: ModeArg,
    },
    /// Generate a random module and print it in the module file format.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        atoms: usize,
        #[arg(long, default_value_t = 6)]
        rules: usize,
        #[arg(long, default_value_t = 0.25)]
        input_frac: f64,
        #[arg(long, default_value_t = 0.4)]
        output_frac: f64,
        #[arg(long, default_value_t = 0.2)]
        choice_prob: f64,
        #[arg(long, default_value_t = 0.4)]
        neg_prob: f64,
        #[arg(long, default_value = "random")]
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Plus,
    Sqcup,
    Relaxed,
    RelaxedRt,
    Conservative,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Visible,
    Modular,
}

/// Failure modes mapped onto the documented exit codes.
enum CliError {
    /// Exit 1: a verdict failed or an operator precondition was violated.
    Verdict(String),
    /// Exit 2: unusable input (parse/ground errors, bad files, bad flags).
    Usage(String),
    /// Exit 3: enumeration cap exceeded.
    Cap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verdict(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Verdict(m) | CliError::Usage(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            SolveError::ReservedCollision { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ComposeError> for CliError {
    fn from(e: ComposeError) -> Self {
        CliError::Verdict(e.to_string())
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Solve(inner) => inner.into(),
            HarnessError::Generate(_) => CliError::Usage(e.to_string()),
            other => CliError::Verdict(other.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<(String, ProgramModule), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    mlp::load_module(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn collection_json(
    name: &str,
    collection: &AnswerSetCollection,
    visible_only: bool,
) -> serde_json::Value {
    let atoms = |set: &BTreeSet<mlp::Atom>| -> Vec<String> {
        set.iter().map(|a| a.to_string()).collect()
    };
    let models: Vec<Vec<String>> = if visible_only {
        collection
            .visible_models()
            .iter()
            .map(|m| m.atoms().iter().map(|a| a.to_string()).collect())
            .collect()
    } else {
        collection
            .models()
            .iter()
            .map(|m| m.atoms().iter().map(|a| a.to_string()).collect())
            .collect()
    };
    json!({
        "module": name,
        "input": atoms(collection.owner_input()),
        "output": atoms(collection.owner_output()),
        "hidden": atoms(collection.owner_hidden()),
        "models": models,
    })
}

fn print_collection(
    name: &str,
    collection: &AnswerSetCollection,
    visible_only: bool,
    json: bool,
    count: bool,
    header: bool,
) {
    if json {
        println!("{}", collection_json(name, collection, visible_only));
        return;
    }
    if header {
        println!("% {name}");
    }
    if count {
        let n = if visible_only { collection.visible_models().len() } else { collection.len() };
        println!("{n}");
        return;
    }
    if visible_only {
        for model in collection.visible_models() {
            println!("{model}");
        }
    } else {
        for model in collection.models() {
            println!("{model}");
        }
    }
}

fn cmd_solve(
    files: &[PathBuf],
    visible_only: bool,
    json: bool,
    count: bool,
    cap: usize,
) -> Result<(), CliError> {
    // Solve everything before printing anything: a cap refusal must not
    // leave partial output behind.
    let mut solved = Vec::new();
    for path in files {
        let (name, module) = load(path)?;
        let collection = stable_models_module(&module, cap)?;
        solved.push((name, collection));
    }
    let header = solved.len() > 1 && !json;
    for (name, collection) in &solved {
        print_collection(name, collection, visible_only, json, count, header);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_compose(
    left: &Path,
    right: &Path,
    op: OpArg,
    emit_module: bool,
    solve: bool,
    visible_only: bool,
    json: bool,
    rename_all: bool,
    name: &str,
    cap: usize,
) -> Result<(), CliError> {
    let (_, p1) = load(left)?;
    let (_, p2) = load(right)?;
    let scope = if rename_all { RenameScope::AllOutputs } else { RenameScope::CommonOutputs };
    let composed = match op {
        OpArg::Plus => compose_plus(&p1, &p2)?,
        OpArg::Sqcup => compose_sqcup(&p1, &p2)?,
        OpArg::Relaxed => compose_relaxed(&p1, &p2)?,
        OpArg::RelaxedRt => compose_relaxed_rt(&p1, &p2, scope)?,
        OpArg::Conservative => compose_conservative(&p1, &p2, scope)?,
    };
    // Without flags the composed module itself is the output.
    let emit_module = emit_module || !solve;
    let collection =
        if solve { Some(stable_models_module(&composed, cap)?) } else { None };
    if emit_module {
        print!("{}", composed.to_text(name));
    }
    if let Some(collection) = collection {
        print_collection(name, &collection, visible_only, json, false, false);
    }
    Ok(())
}

fn cmd_join(left: &Path, right: &Path, json: bool, cap: usize) -> Result<(), CliError> {
    let (_, p1) = load(left)?;
    let (_, p2) = load(right)?;
    let a1 = stable_models_module(&p1, cap)?;
    let a2 = stable_models_module(&p2, cap)?;
    let joined = natural_join(&a1, &a2);
    print_collection("join", &joined, false, json, false, false);
    Ok(())
}

fn describe(report: &TheoremReport) -> String {
    let mut out = format!(
        "{} models vs {} models",
        report.lhs_models.len(),
        report.rhs_models.len()
    );
    if let Some(pre) = &report.failed_precondition {
        out.push_str(&format!("; precondition failed: {pre}"));
    }
    if let Some(witness) = &report.witness {
        out.push_str(&format!("; witness {{{}}}", witness.join(", ")));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    theorem: &str,
    files: &[PathBuf],
    random: bool,
    cfg: GeneratorConfig,
    trials: u64,
    report_path: Option<&Path>,
    cap: usize,
) -> Result<(), CliError> {
    let theorem: TheoremId = theorem.parse().map_err(CliError::Usage)?;
    let reports: Vec<TheoremReport> = if theorem == TheoremId::Lemma2Demo {
        if !files.is_empty() {
            return Err(CliError::Usage(
                "`check lemma2-demo` replays the fixed counterexample and takes no module files"
                    .to_string(),
            ));
        }
        harness::run_campaign(theorem, &cfg, trials)?
    } else if random {
        if !files.is_empty() {
            return Err(CliError::Usage(
                "--random and explicit module files are mutually exclusive".to_string(),
            ));
        }
        harness::run_campaign(theorem, &cfg, trials)?
    } else {
        match theorem {
            TheoremId::Module | TheoremId::RelaxedRt | TheoremId::Conservative => {
                let [left, right] = files else {
                    return Err(CliError::Usage(format!(
                        "`check {theorem}` needs exactly two module files (or --random)"
                    )));
                };
                let (_, p1) = load(left)?;
                let (_, p2) = load(right)?;
                let report = match theorem {
                    TheoremId::Module => check_module_theorem(&p1, &p2, cap)?,
                    TheoremId::RelaxedRt => harness::check_relaxed_rt_pair(&p1, &p2, cap)?,
                    TheoremId::Conservative => {
                        harness::check_conservative_pair(&p1, &p2, cap)?
                    }
                    _ => unreachable!(),
                };
                vec![report]
            }
            TheoremId::HideProject | TheoremId::RenameRecovery => {
                let [path] = files else {
                    return Err(CliError::Usage(format!(
                        "`check {theorem}` needs exactly one module file (or --random)"
                    )));
                };
                let (_, module) = load(path)?;
                match theorem {
                    TheoremId::HideProject => {
                        harness::hide_project_trials(&module, cfg.seed, trials, cap)?
                    }
                    _ => harness::rename_recovery_trials(&module, cfg.seed, trials, cap)?,
                }
            }
            TheoremId::Lemma2Demo => unreachable!("lemma2-demo handled above"),
        }
    };

    if let Some(path) = report_path {
        let file = fs::File::create(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        harness::write_reports(file, &reports)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }

    let failures = count_counterexamples(theorem, &reports);
    if failures == 0 {
        let summary = if reports.len() == 1 {
            describe(&reports[0])
        } else {
            format!("{} trials, 0 counterexamples", reports.len())
        };
        println!("PASS {theorem}: {summary}");
        Ok(())
    } else {
        let first = reports.iter().find(|r| !report_passes(theorem, r)).unwrap();
        println!(
            "FAIL {theorem}: {failures} counterexample(s); trial {}: {}",
            first.trial,
            describe(first)
        );
        Err(CliError::Verdict(format!("{theorem} check failed")))
    }
}

fn cmd_equiv(left: &Path, right: &Path, mode: ModeArg, cap: usize) -> Result<(), CliError> {
    let (_, p1) = load(left)?;
    let (_, p2) = load(right)?;
    let report = match mode {
        ModeArg::Visible => visibly_equivalent(&p1, &p2, cap)?,
        ModeArg::Modular => modularly_equivalent(&p1, &p2, cap)?,
    };
    let mode_name = match mode {
        ModeArg::Visible => "visibly",
        ModeArg::Modular => "modularly",
    };
    if report.equivalent {
        println!("{mode_name} equivalent");
        Ok(())
    } else {
        println!("not {mode_name} equivalent: {}", report.detail);
        Err(CliError::Verdict("modules are not equivalent".to_string()))
    }
}

fn cmd_random(cfg: GeneratorConfig, name: &str) -> Result<(), CliError> {
    let module = harness::random_module(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    print!("{}", module.to_text(name));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cap = cli.max_atoms.unwrap_or(DEFAULT_MAX_ATOMS);
    match cli.command {
        Command::Solve { files, visible_only, json, count } => {
            cmd_solve(&files, visible_only, json, count, cap)
        }
        Command::Compose {
            left,
            right,
            op,
            emit_module,
            solve,
            visible_only,
            json,
            rename_all_outputs,
            name,
        } => cmd_compose(
            &left,
            &right,
            op,
            emit_module,
            solve,
            visible_only,
            json,
            rename_all_outputs,
            &name,
            cap,
        ),
        Command::Join { left, right, json } => cmd_join(&left, &right, json, cap),
        Command::Check {
            theorem,
            files,
            random,
            trials,
            seed,
            atoms,
            rules,
            input_frac,
            output_frac,
            choice_prob,
            neg_prob,
            allow_cross_cycles,
            report,
        } => {
            let cfg = GeneratorConfig {
                atom_budget: atoms,
                rule_budget: rules,
                input_fraction: input_frac,
                output_fraction: output_frac,
                choice_probability: choice_prob,
                negation_probability: neg_prob,
                forbid_cross_positive_cycles: !allow_cross_cycles,
                seed,
            };
            cmd_check(&theorem, &files, random, cfg, trials, report.as_deref(), cap)
        }
        Command::Equiv { left, right, mode } => cmd_equiv(&left, &right, mode, cap),
        Command::Random {
            seed,
            atoms,
            rules,
            input_frac,
            output_frac,
            choice_prob,
            neg_prob,
            name,
        } => {
            let cfg = GeneratorConfig {
                atom_budget: atoms,
                rule_budget: rules,
                input_fraction: input_frac,
                output_fraction: output_frac,
                choice_probability: choice_prob,
                negation_probability: neg_prob,
                forbid_cross_positive_cycles: true,
                seed,
            };
            cmd_random(cfg, &name)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
