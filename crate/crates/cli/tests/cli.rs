use std::path::PathBuf;
use std::process::{Command, Output};

use simred_core::{BlockSequence, PolyMatrix, ShiftPlan};
use simred_cli::pairfile::parse_pair;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn simred(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.contains('.') && !a.starts_with('-') { data(a) } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_simred"))
        .args(&args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_status_follows_checks() {
    assert_eq!(simred(&["check-gh", "example2.pair"]).status.code(), Some(0));
    let bad = simred(&["check-gh", "corrupted.pair"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("nonzero entry (1,1): 1+D+D^2+D^3"));
    assert_eq!(simred(&["check-gh", "missing.pair"]).status.code(), Some(2));
}

#[test]
fn parse_errors_report_positions() {
    let dir = std::env::temp_dir().join(format!("simred-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.pair");
    std::fs::write(&bad, "G = 1,D\nH = 1,X\n").unwrap();
    let o = simred(&["check-gh", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 7"), "{err}");

    let plan = dir.join("bad.plan");
    std::fs::write(&plan, "1 0 0 0\n1 0 0 0\n0 1 0\n").unwrap();
    let o = simred(&["reduce", "example2.pair", "--plan", plan.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn illegal_plan_names_the_column() {
    let o = simred(&["transform", "example2.pair", "--plan", "example4.plan"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column"), "{err}");
}

#[test]
fn transformed_pair_round_trips() {
    let o = simred(&["transform", "example2.pair", "--plan", "example2.plan"]);
    assert_eq!(o.status.code(), Some(0));
    let p = parse_pair(&stdout(&o)).unwrap();
    assert_eq!(p.g, "1+D,D,1+D".parse::<PolyMatrix>().unwrap());
    assert_eq!(p.h, "1,0,1;D,1+D,0".parse::<PolyMatrix>().unwrap());
    let plan: ShiftPlan = std::fs::read_to_string(data("example4.plan")).unwrap().parse().unwrap();
    assert_eq!(plan.to_string().parse::<ShiftPlan>().unwrap(), plan);
}

#[test]
fn verify_reports_example_5() {
    let o = simred(&[
        "verify", "example2.pair", "--plan", "example2.plan", "--received", "example5.z", "--n-blocks", "4",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["received"], "001 000 011 010 000");
    assert_eq!(doc["received_shifted"], "000 001 010 011 000");
    assert_eq!(doc["code_states_after"], 2);
    let paths: Vec<BlockSequence> = doc["error_paths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(paths.len(), 4);
}

#[test]
fn decode_finds_the_weight_two_path() {
    let o = simred(&[
        "decode", "example2.pair", "--plan", "example2.plan", "--received", "example5.z", "--n-blocks", "4",
    ]);
    let text = stdout(&o);
    assert!(text.contains("error:     000 100 000 100 000"), "{text}");
    assert!(text.contains("weight:    2"));
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("simred-out-{}.dot", std::process::id()));
    let o = simred(&[
        "code-trellis", "example2.pair", "--n-blocks", "4", "--format", "dot", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["decode", "example4.pair", "--n-blocks", "6", "--seed", "42"];
    assert_eq!(simred(&args).stdout, simred(&args).stdout);
    let other = simred(&["decode", "example4.pair", "--n-blocks", "6", "--seed", "43"]);
    assert_eq!(other.status.code(), Some(0));
}
