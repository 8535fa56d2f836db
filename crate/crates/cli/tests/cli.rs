use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use congruence_cli::cache::Cache;
use congruence_core::series::Series;
use congruence_core::QSeries;
use num_bigint::BigInt;
use serde_json::Value;

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_congruence"));
    cmd.args(args).env_remove("CONGRUENCE_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("CONGRUENCE_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn expand_prints_coefficients() {
    let out = run(&["expand", "y", "--trunc", "5"], None);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["offset"], 1);
    assert_eq!(j["precision"], 5);
    assert_eq!(j["coefficients"], serde_json::json!(["1", "3", "8", "19"]));

    let out = run(&["expand", "F", "--trunc", "6", "--report", "text"], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "F = 1 - q - q^2 - 4*q^3 - q^4 + 19*q^5 + O(q^6)");
}

#[test]
fn u5_of_c() {
    let out = run(&["u5", "c", "--trunc", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["coefficients"], serde_json::json!(["1", "288", "559"]));
}

#[test]
fn cusps_of_y() {
    let out = run(&["cusps", "y"], None);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["function"], "y");
    assert_eq!(j["level"], 10);
    let orders: Vec<(String, String)> = j["orders"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| (o["cusp"].as_str().unwrap().to_string(), o["order"].as_str().unwrap().to_string()))
        .collect();
    assert!(orders.contains(&("0/1".into(), "-1".into())));
    assert_eq!(orders.len(), 4);
}

#[test]
fn verify_witness_reports_pass() {
    let out = run(&["verify", "witness", "--trunc", "200"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let j = json_of(&out);
    assert_eq!(j["all_pass"], true);
    assert_eq!(j["checks"][0]["check_id"], "witness");
    assert_eq!(j["checks"][0]["status"], "pass");
    assert!(j["checks"][0]["anchor"].as_str().unwrap().contains("120y + 1805y^2"));
}

#[test]
fn verify_text_report() {
    let out = run(&["verify", "tables", "--report", "text"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS tables"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["verify", "bogus"],
        &["verify", "witness", "--trunc", "10"],
        &["verify", "main", "--alpha-max", "0"],
        &["expand", "y", "--report", "xml"],
        &["expand", "nope"],
        &["cusps", "nope"],
        &[],
    ] {
        assert_eq!(run(args, None).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
}

#[test]
fn expand_uses_and_validates_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&["expand", "x", "--trunc", "60"], Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    let file = dir.path().join("x_60.txt");
    assert!(file.exists() && dir.path().join("x_60.txt.sha256").exists());

    let second = run(&["expand", "x", "--trunc", "60"], Some(dir.path()));
    assert_eq!(second.stdout, first.stdout);
    assert!(stderr(&second).is_empty());

    fs::write(&file, "x 0 60\ngarbage\n").unwrap();
    let third = run(&["expand", "x", "--trunc", "60"], Some(dir.path()));
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(third.stdout, first.stdout);
    assert!(stderr(&third).contains("warning"), "{}", stderr(&third));
}

#[test]
fn cache_dir_flag_is_overridden_by_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = run(&["expand", "t", "--trunc", "55", "--cache-dir", flag_dir.path().to_str().unwrap()], Some(env_dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert!(env_dir.path().join("t_55.txt").exists());
    assert!(!flag_dir.path().join("t_55.txt").exists());
}

#[test]
fn verify_all_ignores_a_corrupted_cache() {
    let dir = tempfile::tempdir().unwrap();
    // checksum is consistent, contents are wrong
    let bogus: QSeries = Series::from_coeffs(0, (0..5000).map(BigInt::from).collect(), 5000);
    Cache::new(dir.path()).store("c", &bogus);

    let out = run(&["verify", "all"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("warning: ignoring cache file"), "{}", stderr(&out));
    let j = json_of(&out);
    assert_eq!(j["suite"], "all");
    assert_eq!(j["all_pass"], true);
    assert_eq!(j["checks"].as_array().unwrap().len(), 10);
    // a sound file for the longer run replaces the bad one
    assert!(Cache::new(dir.path()).largest("c").unwrap() > 5000);
}
