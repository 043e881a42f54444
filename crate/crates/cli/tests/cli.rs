use std::process::{Command, Output};

use serde_json::Value;

fn relroot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relroot")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = relroot(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn roots_of_g2() {
    let v = json(&["roots", "--type", "G2"]);
    assert_eq!(v["count"], 12);
    let long = v["roots"].as_array().unwrap().iter().filter(|r| r["length"] == "long").count();
    assert_eq!(long, 6);
}

#[test]
fn fold_classifies() {
    let b3 = json(&["fold", "--type", "B3", "--gamma", "trivial", "--levi", "1,2"]);
    assert_eq!(b3["type"], "B2");
    let c3 = json(&["fold", "--type", "C3", "--gamma", "trivial", "--levi", "1,2"]);
    assert_eq!(c3["type"], "BC2");
    assert_eq!(c3["roots"].as_array().unwrap().len(), 12);
}

#[test]
fn parse_errors_exit_nonzero() {
    let out = relroot(&["fold", "--type", "X2"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
    assert!(!relroot(&["verify", "--suite", "bogus"]).status.success());
}

#[test]
fn nmaps_of_c2() {
    let v = json(&["nmaps", "--type", "C2", "--a", "1,0", "--b", "0,1"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[1]["target"], serde_json::json!([2, 1]));
}

#[test]
fn verify_c2_writes_a_canonical_report() {
    let path = std::env::temp_dir().join(format!("relroot-c2-{}.json", std::process::id()));
    let out = relroot(&["verify", "--suite", "c2", "--k", "5", "--report", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["summary"]["pass"], 2);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["wallTime"], 0.0);
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn failing_suite_sets_exit_code() {
    // eps = 1 makes eps^2 - eps vanish, so the long identity cannot be formed
    let out = relroot(&["verify", "--suite", "c2", "--k", "5", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn perfect_rows() {
    let c22 = json(&["perfect", "--type", "C2", "--p", "2"]);
    assert_eq!(c22["derivedIndex"], 2);
    assert_eq!(c22["perfect"], false);
    assert_eq!(json(&["perfect", "--type", "A2", "--p", "2"])["perfect"], true);
}

#[test]
fn cap_env_reports_skip() {
    let out = Command::new(env!("CARGO_BIN_EXE_relroot"))
        .args(["perfect", "--type", "C2", "--p", "3"])
        .env("RELROOT_CAP", "100")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "skipped: cap");
}
