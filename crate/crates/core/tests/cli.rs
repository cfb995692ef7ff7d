//! The command-line binary, driven as a subprocess.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klein-poincare")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is one JSON object")
}

#[test]
fn complex_rank_one_series() {
    let o = run(&["series", "--tau", "complex", "--rank", "1", "--genus", "2", "--order", "3"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["coefficients"], serde_json::json!(["1", "4", "7", "8"]));
}

#[test]
fn real_rank_one_series() {
    // (1+t)^4 / (1-t^2) = (1+t)^3 / (1-t): partial sums of 1, 3, 3, 1
    let o = run(&[
        "series", "--tau", "real", "--genus", "3", "--n", "2", "--a", "1", "--rank", "1", "--degree", "5", "--order",
        "6",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["coefficients"], serde_json::json!(["1", "4", "7", "8", "8", "8", "8"]));
}

#[test]
fn output_is_canonical() {
    for method in ["closed", "recursion", "product"] {
        let o = run(&[
            "series", "--tau", "quat", "--genus", "2", "--n", "1", "--rank", "2", "--degree", "2", "--method", method,
            "--order", "10",
        ]);
        assert!(o.status.success());
        let text = stdout(&o);
        let mut again = serde_json::to_string(&json(&o)).unwrap();
        again.push('\n');
        assert_eq!(again, text);
    }
}

#[test]
fn csv_series() {
    let o = run(&["series", "--tau", "complex", "--rank", "1", "--genus", "2", "--order", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "k,coefficient\n0,1\n1,4\n2,7\n");
}

#[test]
fn invalid_parameters_name_the_constraint() {
    let o = run(&["series", "--tau", "quat", "--genus", "2", "--n", "2", "--a", "1", "--rank", "3", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quaternionic with n>0 requires even rank"));
    let o = run(&["series", "--tau", "real", "--genus", "2", "--rank", "2", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("real n=0 requires even degree"));
}

#[test]
fn compare_methods_match() {
    let o = run(&[
        "compare", "--tau", "real", "--genus", "2", "--n", "3", "--a", "0", "--rank", "2", "--degree", "1", "--order",
        "30",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["verdict"], "match");
    let o = run(&["compare", "--tau", "complex", "--genus", "3", "--rank", "4", "--degree", "1", "--order", "30"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["compared"], 31);
}

#[test]
fn corrupted_golden_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().join("golden.json");
    let base =
        ["--tau", "real", "--genus", "2", "--n", "1", "--a", "1", "--rank", "2", "--degree", "1", "--order", "12"];
    let mut args = vec!["series"];
    args.extend(base);
    args.extend(["--out", golden.to_str().unwrap()]);
    assert!(run(&args).status.success());

    let mut compare = vec!["compare"];
    compare.extend(base);
    compare.extend(["--method", "recursion", "--golden", golden.to_str().unwrap()]);
    assert!(run(&compare).status.success());

    let mut record: Value = serde_json::from_str(&std::fs::read_to_string(&golden).unwrap()).unwrap();
    record["coefficients"][7] = Value::from("-1");
    std::fs::write(&golden, serde_json::to_string(&record).unwrap()).unwrap();
    let o = run(&compare);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "mismatch");
    assert_eq!(v["first_mismatch"]["k"], 7);
    assert_eq!(v["first_mismatch"]["right"], "-1");
}

#[test]
fn verify_subset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.jsonl");
    let o = run(&["verify", "--filter", "maximality", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let lines: Vec<Value> =
        std::fs::read_to_string(&out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l["check_id"].as_str().unwrap().contains("maximality") && l["verdict"] == "pass"));
    let ids: Vec<&str> = lines.iter().map(|l| l["check_id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));

    let o = run(&["verify", "--filter", "appendix/complex"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 30);
}

#[test]
fn verify_with_no_matching_checks_passes_trivially() {
    let o = run(&["verify", "--filter", "no-such-check"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
}

#[test]
fn maximality_table() {
    let o = run(&["table", "--g-from", "2", "--g-to", "3", "--r-from", "2", "--r-to", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert!(text.lines().any(|l| l == "2,2,1,128,128,yes"));
    assert!(rows.iter().all(|r| r[5] == "yes" && r[3] == r[4]));
    assert!(!rows.iter().any(|r| r[1] == "4" && r[2] == "2"));
    // coprime pairs (2,1), (3,1), (3,2), (4,1), (4,3) for each of two genera
    assert_eq!(rows.len(), 10);
}
