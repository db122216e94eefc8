//! End-to-end checks of the binary: golden output, exact JSON round trips,
//! exit codes and seed determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_broadcast")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .env_remove("BROADCAST_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn example_matches_the_golden_file() {
    let output = run(&["example"]);
    assert!(output.status.success());
    let golden = std::fs::read_to_string(fixture("golden/example.txt")).unwrap();
    assert_eq!(stdout(&output), golden, "example output drifted from the golden file");
}

#[test]
fn allocate_renders_the_cd_row() {
    let input = fixture("fixtures/example1.csv");
    let output = run(&["allocate", "--rule", "cd", "--input", input.to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("cd"), "{text}");
    assert!(text.contains("3260") && text.contains("640") && text.contains("60"), "{text}");
}

#[test]
fn allocate_json_round_trips_exact_rationals() {
    let input = fixture("fixtures/example1.csv");
    let output = run(&[
        "allocate",
        "--rule",
        "ec:0.5",
        "--rule",
        "ext:2/3,-1/7",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["total"], "3960");
    let shares = value["allocations"][0]["shares"].as_array().unwrap();
    let parsed: Vec<_> = shares
        .iter()
        .map(|s| broadcast_sharing::parse_rat(s.as_str().unwrap()).unwrap())
        .collect();
    assert_eq!(
        parsed,
        vec![
            broadcast_sharing::ratio(5065, 2),
            broadcast_sharing::rat(895),
            broadcast_sharing::ratio(1065, 2),
        ]
    );
    // The second rule's exact fractions survive the trip too.
    let messy: Vec<_> = value["allocations"][1]["shares"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| broadcast_sharing::parse_rat(s.as_str().unwrap()).unwrap())
        .collect();
    let total: broadcast_sharing::Rat = messy.iter().sum();
    assert_eq!(total, broadcast_sharing::rat(3960));
}

#[test]
fn falsify_exits_with_two_on_a_witness_and_is_byte_deterministic() {
    let args = [
        "falsify",
        "--rule",
        "counter:R1",
        "--axiom",
        "AN",
        "--seed",
        "7",
        "--trials",
        "10000",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(2));
    let value: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(value["axiom"], "AN");
    assert!(value["instance"]["problem"]["audience"].is_array());

    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "same command and seed must be byte-identical");
}

#[test]
fn falsify_exits_cleanly_when_exhausted() {
    let output = run(&[
        "falsify", "--rule", "cd", "--axiom", "AN", "--seed", "3", "--trials", "300",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["outcome"], "exhausted");
    assert_eq!(value["trials"], 300);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let output = Command::new(binary())
        .args(["falsify", "--rule", "cd", "--axiom", "AN", "--trials", "50", "--format", "json"])
        .env("BROADCAST_SEED", "99")
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["seed"], 99);
}

#[test]
fn audit_reports_the_split_pattern() {
    let output = run(&[
        "audit",
        "--rule",
        "counter:R5",
        "--axiom",
        "AN,MA,AD",
        "--seed",
        "5",
        "--trials",
        "800",
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(2), "a failing axiom is CI-visible");
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let entries = value["axioms"].as_array().unwrap();
    assert_eq!(entries[0]["id"], "AN");
    assert_eq!(entries[0]["outcome"], "pass");
    assert_eq!(entries[1]["outcome"], "pass");
    assert_eq!(entries[2]["id"], "AD");
    assert_eq!(entries[2]["outcome"], "fail");
    assert!(entries[2]["witness"]["instance"]["left"]["audience"].is_array());
}

#[test]
fn decompose_flags_inconsistency_with_exit_three() {
    let output = run(&["decompose", "--rule", "counter:R1", "--teams", "3"]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stdout(&output).contains("INCONSISTENT"));

    let output = run(&["decompose", "--rule", "cd", "--teams", "3", "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["x"], "1");
    assert_eq!(value["y"], "1");
    assert_eq!(value["z"], "-1");
    assert_eq!(value["consistent"], true);
}

#[test]
fn classify_names_concede_and_divide() {
    let output = run(&["classify", "--x", "1", "--y", "1", "--teams", "3"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("concede-and-divide"));

    let output = run(&["classify", "--x", "0.9", "--y", "0.6", "--teams", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let families: Vec<&str> = value["memberships"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["family"].as_str().unwrap())
        .collect();
    assert_eq!(families, vec!["extended-ec", "extended-uc"]);
}

#[test]
fn compare_separates_threshold_rules_with_exit_two() {
    let output = run(&[
        "compare",
        "--rule-a",
        "counter:R5",
        "--rule-b",
        "equal-split",
        "--n-min",
        "3",
        "--n-max",
        "3",
        "--seed",
        "37",
        "--trials",
        "500",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout(&output).contains("differ on team"));
}

#[test]
fn bad_input_exits_with_one() {
    let output = run(&["allocate", "--rule", "cd", "--input", "/nonexistent.csv"]);
    assert_eq!(output.status.code(), Some(1));

    let output = run(&["allocate", "--rule", "nope", "--input", fixture("fixtures/example1.csv").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));

    let output = run(&["classify", "--x", "1", "--y", "1", "--teams", "2"]);
    assert_eq!(output.status.code(), Some(1));
}
