use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn qcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcert"))
        .args(args)
        .env_remove("QCERT_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn passing_run_exits_zero() {
    let out = qcert(&["verify", "--checks", "equ1,lehmer", "--p", "5,11"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["summary"]["fail"], 0);
    assert_eq!(doc["records"].as_array().unwrap().len(), 4);
}

#[test]
fn failing_run_exits_one() {
    let out = qcert(&["verify", "--checks", "equ2", "--p", "5", "--precision", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["records"][0]["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        qcert(&["verify", "--checks", "lehmer", "--p", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qcert(&["verify", "--checks", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcert(&["verify", "--checks", "equ2", "--precision", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qcert(&["verify", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(qcert(&["explain", "nope"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    fs::write(
        &path,
        "checks = [\"la3\"]\nn_list = [2]\nsamples = 2\nseed = 7\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let doc = json(&qcert(&["verify", "--config", p]));
    assert_eq!(doc["config"]["seed"], 7);
    assert_eq!(doc["config"]["samples"], 2);
    let doc = json(&qcert(&["verify", "--config", p, "--samples", "3"]));
    assert_eq!(doc["config"]["samples"], 3);
    assert_eq!(doc["records"].as_array().unwrap().len(), 3);

    fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(qcert(&["verify", "--config", p]).status.code(), Some(2));
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qcert"));
        c.args(["verify", "--checks", "la3", "--n", "2", "--samples", "1"])
            .args(extra);
        match env {
            Some(s) => c.env("QCERT_SEED", s),
            None => c.env_remove("QCERT_SEED"),
        };
        c.output().unwrap()
    };
    assert_eq!(json(&run(None, &[]))["config"]["seed"], 42);
    assert_eq!(json(&run(Some("99"), &[]))["config"]["seed"], 99);
    assert_eq!(
        json(&run(Some("99"), &["--seed", "3"]))["config"]["seed"],
        3
    );
    assert_eq!(run(Some("x"), &[]).status.code(), Some(2));
}

#[test]
fn out_file_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = qcert(&[
        "verify",
        "--checks",
        "equ1",
        "--p",
        "5",
        "--format",
        "markdown",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# qcert report"));
    assert!(text.contains("| equ1 |"));
    assert!(text.contains("pass 1, fail 0, skip 0"));
}

#[test]
fn identical_runs_agree_apart_from_timing() {
    let args = [
        "verify",
        "--checks",
        "theorem_general,equ1",
        "--n",
        "2,5",
        "--p",
        "5",
    ];
    let mut a = json(&qcert(&args));
    let mut b = json(&qcert(&args));
    a.as_object_mut().unwrap().remove("timing");
    b.as_object_mut().unwrap().remove("timing");
    assert_eq!(a, b);
}

#[test]
fn list_and_explain() {
    let out = qcert(&["list-checks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 25);
    assert!(text.lines().any(|l| l.starts_with("theorem_general")));
    let out = qcert(&["explain", "equ4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("status: conjecture"));
}
