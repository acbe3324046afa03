use std::process::{Command, Output};

use serde_json::Value;

fn atl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atl")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = atl(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn nf_of_braid_word_has_five_terms() {
    let v = json(&["nf", "--n", "3", "--affine", "g[s1]*g[s2]*g[s1]"]);
    assert_eq!(v["schema"], "atl/1");
    assert_eq!(v["element"]["terms"].as_array().unwrap().len(), 5);
    assert_eq!(v["text"], "-1 - g[s1] - g[s2] - g[s1 s2] - g[s2 s1]");
}

#[test]
fn rho_of_affine_generator() {
    let v = json(&["trace", "--type", "rho", "--n", "3", "g[a]"]);
    assert_eq!(v["value"], "(-1 - v^2)/v^2");
}

#[test]
fn inverse_round_trip() {
    let v = json(&["inv", "--n", "3", "--affine", "g[s1 a]"]);
    let text = v["text"].as_str().unwrap().to_string();
    let back = json(&["mul", "--n", "3", "--affine", &text, "g[s1 a]"]);
    assert_eq!(back["text"], "1");
}

#[test]
fn maps() {
    assert_eq!(json(&["map", "--apply", "psi", "--power", "-1", "--n", "3", "g[s1 a]"])["text"], "g[a s2]");
    assert_eq!(json(&["map", "--apply", "incl", "--n", "2", "g[s1]"])["text"], "g[s1]");
    let e = json(&["map", "--apply", "E", "--n", "1", "g[a]"]);
    assert_eq!(e["text"], "g[s1]");
}

#[test]
fn relation_suite_passes() {
    let out = atl(&["verify", "--suite", "relations", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("ok\n"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["--format", "json", "verify", "--suite", "markov-axioms", "--n", "2", "--samples", "5", "--seed", "9"];
    assert_eq!(atl(&args).stdout, atl(&args).stdout);
}

#[test]
fn reduce_markov_is_consistent() {
    let v = json(&["reduce-markov", "--n", "3", "g[s2 s1 a]*g[s2 s1 a]"]);
    assert_eq!(v["rho_consistent"], true);
    assert_eq!(v["residual"].as_array().unwrap().len(), 0);
}

#[test]
fn enumerate_counts() {
    assert_eq!(json(&["enumerate", "--n", "4"])["count"], 42);
    assert_eq!(json(&["enumerate", "--n", "3", "--affine", "--max-len", "2"])["count"], 10);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(atl(&["nf", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(atl(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(atl(&["nf", "--n", "3", "--affine", "g[s9]"]).status.code(), Some(2));
    assert_eq!(atl(&["nf", "f[s1]^-1"]).status.code(), Some(2));
    assert_eq!(atl(&["enumerate", "--affine"]).status.code(), Some(2));
}

#[test]
fn parse_error_reports_position() {
    let out = atl(&["nf", "g[s1] + * g[s2]"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error at 8"));
}
