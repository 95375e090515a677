use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclowenzl")).args(args).output().expect("spawn")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn summary(out: &Output) -> Value {
    let recs = records(out);
    let last = recs.last().expect("at least one record").clone();
    assert_eq!(last["record"], "summary");
    last
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclowenzl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn counts_examples() {
    for (r, n, total) in [("2", "2", "12"), ("1", "4", "105"), ("3", "1", "3")] {
        let out = run(&["counts", "--r", r, "--n", n]);
        assert_eq!(out.status.code(), Some(0));
        let s = summary(&out);
        assert_eq!(s["total"], total);
        assert_eq!(s["target"], total);
        assert_eq!(s["equal"], true);
    }
    let out = run(&["counts", "--r", "2", "--n", "2"]);
    let shapes = records(&out).iter().filter(|v| v["record"] == "shape").count();
    assert_eq!(shapes, 5 + 1);
}

#[test]
fn verify_defaults_pass() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let s = summary(&out);
    assert_eq!(s["pass"], true);
    assert_eq!(s["params"]["r"], 2);
    assert_eq!(s["n"], 3);
    assert!(records(&out).iter().any(|v| v["record"] == "relation"));
}

#[test]
fn verify_rejects_non_generic_u() {
    let out = run(&["verify", "--u", "1,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let s = summary(&out);
    assert_eq!(s["error"], "regime");
    assert_eq!(s["pass"], false);
}

#[test]
fn verdicts_agree_across_precisions() {
    for args in [vec!["verify", "--r", "1", "--n", "3"], vec!["verify", "--r", "2", "--n", "2"], vec!["verify", "--u", "1,1", "--n", "2"]] {
        let mut lo = args.clone();
        lo.extend(["--precision", "64"]);
        let mut hi = args.clone();
        hi.extend(["--precision", "256"]);
        let (a, b) = (run(&lo), run(&hi));
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert_eq!(summary(&a)["pass"], summary(&b)["pass"]);
    }
}

#[test]
fn gram_single_row() {
    let out = run(&["gram", "--r", "1", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&out);
    assert_eq!(s["det"], "2");
    assert_eq!(s["equal"], true);
    let json = run(&["gram", "--r", "1", "--lambda", "[[2]]"]);
    assert_eq!(summary(&json)["det"], "2");
    let two = run(&["gram", "--u", "7/2,-4", "--lambda", "1|1"]);
    assert_eq!(two.status.code(), Some(0));
    assert_eq!(summary(&two)["equal"], true);
}

#[test]
fn cellrank_small() {
    let out = run(&["cellrank", "--r", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&out);
    assert_eq!(s["count"], "3");
    assert_eq!(s["rank"]["rank"], 3);
}

#[test]
fn omega_brauer_example() {
    let out = run(&["--r", "1", "--u", "3/2", "omega", "-a", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&out);
    let got: Vec<&str> = s["omega"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(got, ["4", "6", "9", "27/2", "81/4"]);
    assert_eq!(s["admissibility"]["admissible"], true);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["verify", "--r", "2", "--n", "2"]);
    let b = run(&["verify", "--r", "2", "--n", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let path = scratch("out.jsonl");
    let c = run(&["verify", "--r", "2", "--n", "2", "--out", path.to_str().unwrap()]);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn config_overrides_flags() {
    let path = scratch("params.json");
    std::fs::write(&path, r#"{"r": 1, "u": ["3/2"], "N": 6, "precision_bits": 128}"#).unwrap();
    let out = run(&["--r", "2", "--u", "5,-9", "--config", path.to_str().unwrap(), "omega", "-a", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&out);
    assert_eq!(s["params"]["r"], 1);
    assert_eq!(s["params"]["u"][0], "3/2");
    assert_eq!(s["params"]["precision_bits"], 128);
    assert_eq!(s["omega"][0], "4");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--precision", "32"],
        vec!["frobnicate"],
        vec!["gram", "--r", "2", "--lambda", "2"],
        vec!["counts", "--r", "3", "--u", "1,2"],
        vec!["counts", "--u", "x/y"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn every_summary_embeds_params() {
    for args in [vec!["counts"], vec!["cellrank", "--r", "1", "--n", "2"], vec!["omega", "-a", "3"]] {
        let s = summary(&run(&args));
        assert!(s["params"]["u"].is_array());
        assert!(s["params"]["omega"].is_array());
        assert!(s["params"]["N"].is_number());
    }
}
