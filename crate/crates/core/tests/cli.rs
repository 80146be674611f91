use std::process::{Command, Output};

use width2::walk::WalkPairJson;
use width2::WalkPair;

fn width2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_width2"))
        .args(args)
        .env_remove("WIDTH2_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_prints_the_number_of_pairs() {
    let out = width2(&["count", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "5");
}

#[test]
fn sample_json_is_byte_identical_across_runs_and_threads() {
    let args = ["--format", "json", "sample", "--n", "30", "--samples", "5", "--seed", "11", "--method", "decomposed"];
    let a = width2(&args);
    let b = width2(&args);
    let mut threaded: Vec<&str> = vec!["--threads", "1"];
    threaded.extend(args);
    let c = width2(&threaded);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let pairs: Vec<WalkPairJson> = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(pairs.len(), 5);
    for p in &pairs {
        let w = WalkPair::from_json(p).unwrap();
        assert_eq!(w.n(), 30);
    }
}

#[test]
fn experiment_json_is_reproducible() {
    let args = ["--format", "json", "experiment", "window", "--n", "200", "--samples", "300", "--seed", "5"];
    let a = width2(&args);
    let b = width2(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["samples"], 300);
    assert!(v["ks"].as_f64().unwrap() > 0.0);
}

#[test]
fn sampling_without_seed_is_a_usage_error() {
    let out = width2(&["sample", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_exit_codes() {
    assert_eq!(width2(&["verify", "bijection", "--n", "5"]).status.code(), Some(0));
    assert_eq!(width2(&["verify", "symmetry-max", "--n", "6"]).status.code(), Some(0));
    // the literal height symmetrization already fails at n = 2
    assert_eq!(width2(&["verify", "symmetry", "--n", "4"]).status.code(), Some(1));
}

#[test]
fn dp_cap_violation_names_the_flag() {
    let out = width2(&["--dp-cap", "10", "sample", "--n", "20", "--seed", "1", "--method", "dp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--dp-cap"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_width2"))
        .args(["--format", "json", "count", "--n", "6"])
        .env("WIDTH2_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.path().join("count-n6.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["count"], "42");
}

#[test]
fn explicit_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walks.csv");
    let out = width2(&["--format", "csv", "--output", path.to_str().unwrap(), "enumerate", "--n", "3", "--what", "walks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() >= 3, "{text}");
}
