use std::process::{Command, Output};

use serde_json::Value;

fn dpplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpplab"))
        .args(args)
        .env_remove("DPPLAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn ust_exact_distance() {
    let out = dpplab(&["ust", "exact", "--n", "4", "--stat", "distance"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "ust exact");
    assert_eq!(v["results"]["n"], 4);
    assert_eq!(v["results"]["statistic"], "distance_pmf");
    assert_eq!(v["results"]["values"], serde_json::json!([0.5, 0.375, 0.125]));
    assert_eq!(v["timing_ms"], Value::Null);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--seed", "42", "--replicas", "30", "ust", "sample", "--n", "20", "--stat", "distance"];
    let (a, b) = (dpplab(&args), dpplab(&args));
    assert_eq!(a.stdout, b.stdout);
    let other = dpplab(&["--seed", "43", "--replicas", "30", "ust", "sample", "--n", "20", "--stat", "distance"]);
    assert_ne!(json(&a)["results"], json(&other)["results"]);
}

#[test]
fn jobs_do_not_change_results() {
    let base = ["--seed", "9", "--replicas", "40", "lpp", "sample", "--m", "3", "--n", "3"];
    let one = json(&dpplab(&base));
    let mut parallel = base.to_vec();
    parallel.extend(["--jobs", "4"]);
    assert_eq!(one["results"], json(&dpplab(&parallel))["results"]);
}

#[test]
fn usage_errors_exit_two() {
    let out = dpplab(&["--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert_eq!(dpplab(&["ust", "exact", "--n", "1", "--stat", "distance"]).status.code(), Some(2));
    assert_eq!(dpplab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn lyons_small_frames() {
    let out = dpplab(&["dominate", "lyons", "--ground", "4", "--rank", "1", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["results"]["min_margin"].as_f64().unwrap() >= -1e-10);
    assert_eq!(v["results"]["trials"].as_array().unwrap().len(), 20);
}

#[test]
fn failed_checks_exit_one() {
    let out = dpplab(&["dominate", "exact", "--elements", "a,b,c", "--relations", "a<b,a<c", "--p1", "1/3,1/3,1/3", "--p2", "1/9,1/6,13/18"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["results"]["dominated"], false);
    assert_eq!(v["results"]["witness"], serde_json::json!(["b"]));
}

#[test]
fn csv_output() {
    let out = dpplab(&["--format", "csv", "dominate", "flow", "--chain", "--p1", "1/2,1/2", "--p2", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("from,to,mass"));
    assert_eq!(lines.count(), 2);
    assert_eq!(dpplab(&["--format", "csv", "dominate", "identities"]).status.code(), Some(2));
}

#[test]
fn config_file_and_environment_seed() {
    let dir = std::env::temp_dir().join(format!("dpplab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# defaults\nseed = 77\nreplicas = 5\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = json(&dpplab(&["--config", cfg, "ust", "sample", "--n", "6", "--stat", "leaves"]));
    assert_eq!(from_file["seed"], 77);
    assert_eq!(from_file["results"]["values"].as_array().unwrap().len(), 5);
    let flag_wins = json(&dpplab(&["--config", cfg, "--seed", "3", "ust", "sample", "--n", "6", "--stat", "leaves"]));
    assert_eq!(flag_wins["seed"], 3);

    let env = Command::new(env!("CARGO_BIN_EXE_dpplab"))
        .args(["ust", "sample", "--n", "6", "--stat", "leaves"])
        .env("DPPLAB_SEED", "0x10")
        .output()
        .unwrap();
    assert_eq!(json(&env)["seed"], 16);

    let out = dir.join("out.json");
    let status = dpplab(&["--out", out.to_str().unwrap(), "ust", "exact", "--n", "3", "--stat", "distance"]);
    assert_eq!(status.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["results"]["values"], serde_json::json!([2.0 / 3.0, 1.0 / 3.0]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_is_opt_in() {
    let v = json(&dpplab(&["--timing", "ust", "exact", "--n", "5", "--stat", "degree", "--k", "2"]));
    assert!(v["timing_ms"].is_number());
}
