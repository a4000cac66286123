//! End-to-end tests of the command-line interface: output formats, exit
//! codes, the cap refusal contract, and round-tripping emitted modules.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../mlp/fixtures")
        .join(name);
    path.to_str().unwrap().to_string()
}

fn mlp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlp"))
        .args(args)
        .env_remove("MLP_MAX_ATOMS")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

#[test]
fn solve_prints_models_in_canonical_order() {
    let out = mlp(&["solve", &fixture("pb.mlp")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{exp(c2)}\n");
}

#[test]
fn solve_empty_module_has_one_empty_model() {
    let out = mlp(&["solve", &fixture("empty.mlp")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{}\n");
}

#[test]
fn solve_count_flag() {
    let out = mlp(&["solve", &fixture("pa.mlp"), "--count"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "64\n");
}

#[test]
fn solve_json_schema() {
    let out = mlp(&["solve", &fixture("pb.mlp"), "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["module"], "pb");
    assert_eq!(value["input"], serde_json::json!([]));
    assert_eq!(value["output"], serde_json::json!(["exp(c2)", "exp(c3)"]));
    assert_eq!(value["hidden"], serde_json::json!([]));
    assert_eq!(value["models"], serde_json::json!([["exp(c2)"]]));
}

#[test]
fn solve_multiple_files_prints_headers() {
    let out = mlp(&["solve", &fixture("pb.mlp"), &fixture("pc.mlp")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "% pb\n{exp(c2)}\n% pc\n{exp(c3)}\n");
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = mlp(&["solve", "no_such_file.mlp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn parse_error_reports_position_and_exits_2() {
    let dir = std::env::temp_dir().join("mlp_cli_test_parse");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.mlp");
    std::fs::write(&path, "module bad\ninput: -\noutput: a\nhidden: -\nrules:\na :- ,\n").unwrap();
    let out = mlp(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("6:"), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_subcommand_usage_error_is_2() {
    let out = mlp(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compose_sqcup_rejects_common_outputs_with_witness() {
    let out = mlp(&["compose", &fixture("pb.mlp"), &fixture("pc.mlp"), "--op", "sqcup"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("exp(c2)") && err.contains("exp(c3)"), "stderr: {err}");
}

#[test]
fn compose_sqcup_rejects_cyclic_pair_with_cycle_witness() {
    let out = mlp(&["compose", &fixture("loop1.mlp"), &fixture("loop2.mlp"), "--op", "sqcup"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("airbag -> safe -> airbag") || stderr(&out).contains("safe -> airbag -> safe"));
}

#[test]
fn compose_relaxed_solves_the_union() {
    let out = mlp(&[
        "compose",
        &fixture("pb.mlp"),
        &fixture("pc.mlp"),
        "--op",
        "relaxed",
        "--solve",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{exp(c2), exp(c3)}\n");
}

#[test]
fn compose_conservative_magazines_visible_model() {
    let out = mlp(&[
        "compose",
        &fixture("mg1.mlp"),
        &fixture("mg2.mlp"),
        "--op",
        "conservative",
        "--solve",
        "--visible-only",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{safe(c1)}\n");
}

#[test]
fn emitted_modules_round_trip_through_the_parser() {
    let out = mlp(&[
        "compose",
        &fixture("pa.mlp"),
        &fixture("mg1.mlp"),
        "--op",
        "sqcup",
        "--emit-module",
        "--name",
        "q1",
    ]);
    assert!(out.status.success());
    let dir = std::env::temp_dir().join("mlp_cli_test_roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q1.mlp");
    std::fs::write(&path, stdout(&out)).unwrap();
    let solved = mlp(&["solve", path.to_str().unwrap(), "--count"]);
    assert!(solved.status.success(), "stderr: {}", stderr(&solved));
    assert_eq!(stdout(&solved), "8\n");
    // Parsing the emitted text reproduces the module exactly.
    let reprinted = mlp(&[
        "compose",
        &fixture("pa.mlp"),
        &fixture("mg1.mlp"),
        "--op",
        "sqcup",
        "--emit-module",
        "--name",
        "q1",
    ]);
    assert_eq!(stdout(&out), stdout(&reprinted));
}

#[test]
fn join_of_common_output_pair_is_empty() {
    let out = mlp(&["join", &fixture("pb.mlp"), &fixture("pc.mlp")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn join_of_cyclic_pair_has_two_models() {
    let out = mlp(&["join", &fixture("loop1.mlp"), &fixture("loop2.mlp")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{}\n{airbag, safe}\n");
}

#[test]
fn join_with_identity_module_is_solve() {
    let direct = mlp(&["solve", &fixture("pb.mlp")]);
    let joined = mlp(&["join", &fixture("pb.mlp"), &fixture("empty.mlp")]);
    assert_eq!(stdout(&direct), stdout(&joined));
}

#[test]
fn check_module_theorem_on_files() {
    let out = mlp(&["check", "module", &fixture("pa.mlp"), &fixture("mg1.mlp")]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS module"));
}

#[test]
fn check_module_theorem_fails_on_common_outputs() {
    let out = mlp(&["check", "module", &fixture("pb.mlp"), &fixture("pc.mlp")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL module"));
}

#[test]
fn check_lemma2_demo_passes() {
    let out = mlp(&["check", "lemma2-demo"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS lemma2-demo"));
}

#[test]
fn check_random_campaign_writes_reports() {
    let dir = std::env::temp_dir().join("mlp_cli_test_reports");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("module.jsonl");
    let out = mlp(&[
        "check",
        "module",
        "--random",
        "--trials",
        "5",
        "--seed",
        "7",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 5);
    for line in body.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(record["theorem"], "module");
        assert_eq!(record["verdict"], "equal");
        assert_eq!(record["seed"], 7);
    }
}

#[test]
fn check_unknown_theorem_is_usage_error() {
    let out = mlp(&["check", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_lemma2_demo_rejects_files() {
    let out = mlp(&["check", "lemma2-demo", &fixture("pb.mlp")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_relaxed_rt_campaign_of_two_hundred_trials() {
    let out = mlp(&["check", "relaxed-rt", "--random", "--trials", "200", "--seed", "7"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "PASS relaxed-rt: 200 trials, 0 counterexamples\n");
}

#[test]
fn check_conservative_on_fixture_files() {
    let out = mlp(&["check", "conservative", &fixture("mg1.mlp"), &fixture("mg2.mlp")]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS conservative"));
}

#[test]
fn check_hide_project_on_a_fixture_file() {
    let out = mlp(&["check", "hide-project", &fixture("pa.mlp"), "--trials", "10", "--seed", "3"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS hide-project"));
}

#[test]
fn check_rename_recovery_on_a_fixture_file() {
    let out =
        mlp(&["check", "rename-recovery", &fixture("mg2.mlp"), "--trials", "10", "--seed", "3"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS rename-recovery"));
}

#[test]
fn equiv_verdicts_and_exit_codes() {
    let same = mlp(&["equiv", &fixture("pb.mlp"), &fixture("pb.mlp"), "--mode", "modular"]);
    assert!(same.status.success());
    assert_eq!(stdout(&same), "modularly equivalent\n");

    let different = mlp(&["equiv", &fixture("pb.mlp"), &fixture("pc.mlp"), "--mode", "visible"]);
    assert_eq!(different.status.code(), Some(1));
    assert!(stdout(&different).starts_with("not visibly equivalent"));
}

#[test]
fn cap_refusal_exits_3_without_partial_output() {
    let out = mlp(&["solve", &fixture("pa.mlp"), "--max-atoms", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty(), "no partial output allowed");
    assert!(stderr(&out).contains("cap"), "stderr: {}", stderr(&out));
}

#[test]
fn cap_env_var_mirrors_the_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_mlp"))
        .args(["solve", &fixture("pa.mlp")])
        .env("MLP_MAX_ATOMS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty());
}

#[test]
fn random_is_deterministic_per_seed() {
    let a = mlp(&["random", "--seed", "42", "--atoms", "6", "--rules", "4"]);
    let b = mlp(&["random", "--seed", "42", "--atoms", "6", "--rules", "4"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let c = mlp(&["random", "--seed", "43", "--atoms", "6", "--rules", "4"]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn random_output_is_loadable() {
    let out = mlp(&["random", "--seed", "9"]);
    assert!(out.status.success());
    let dir = std::env::temp_dir().join("mlp_cli_test_random");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("random.mlp");
    std::fs::write(&path, stdout(&out)).unwrap();
    let solved = mlp(&["solve", path.to_str().unwrap(), "--count"]);
    assert!(solved.status.success(), "stderr: {}", stderr(&solved));
}

#[test]
fn rename_all_outputs_flag_selects_the_wide_scope() {
    // Under the wide scope the private output `a` of lemma2_p1 is renamed
    // too, so the composite hides a__r1 as well.
    let narrow = mlp(&[
        "compose",
        &fixture("lemma2_p1.mlp"),
        &fixture("lemma2_p2.mlp"),
        "--op",
        "relaxed-rt",
        "--emit-module",
    ]);
    let wide = mlp(&[
        "compose",
        &fixture("lemma2_p1.mlp"),
        &fixture("lemma2_p2.mlp"),
        "--op",
        "relaxed-rt",
        "--emit-module",
        "--rename-all-outputs",
    ]);
    assert!(narrow.status.success() && wide.status.success());
    assert!(!stdout(&narrow).contains("a__r1"));
    assert!(stdout(&wide).contains("a__r1"));
    // Both agree on the visible stable models.
    let narrow_models = mlp(&[
        "compose",
        &fixture("lemma2_p1.mlp"),
        &fixture("lemma2_p2.mlp"),
        "--op",
        "relaxed-rt",
        "--solve",
        "--visible-only",
    ]);
    let wide_models = mlp(&[
        "compose",
        &fixture("lemma2_p1.mlp"),
        &fixture("lemma2_p2.mlp"),
        "--op",
        "relaxed-rt",
        "--solve",
        "--visible-only",
        "--rename-all-outputs",
    ]);
    assert_eq!(stdout(&narrow_models), stdout(&wide_models));
    assert_eq!(stdout(&narrow_models), "{a, b}\n");
}
