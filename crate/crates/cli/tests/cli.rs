use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_colorlink"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn solve_is_deterministic_given_seed() {
    let path = fixture("triangle.json");
    let args = ["--seed", "1", "solve", path.to_str().unwrap()];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let d = doc(&a);
    assert_eq!(d["seed"], 1);
    assert_eq!(d["length"], 3);
}

#[test]
fn t_cycle_on_triangle() {
    let path = fixture("triangle.json");
    let out = run(&["--seed", "2", "t-cycle", "--terminals", "0,1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["length"], 3);
    let mut cycle: Vec<u64> = d["answer"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    cycle.sort();
    assert_eq!(cycle, vec![0, 1, 2]);
    let oracle = run(&["oracle", "t-cycle", "--terminals", "0,1", path.to_str().unwrap()]);
    assert_eq!(doc(&oracle)["length"], 3);
}

#[test]
fn infeasible_exit_code() {
    let path = fixture("triangle.json");
    let out = run(&["--seed", "3", "t-cycle", "--terminals", "3", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(doc(&out)["status"], "infeasible");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/definitely/missing.json"]).status.code(), Some(2));
    let out = run(&["--seed", "1", "longest-linkage-det", fixture("triangle.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_linkage_fixture() {
    let out = run(&["--format", "json", "longest-linkage-det", fixture("chain.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc(&out)["paths"], serde_json::json!([[0, 2, 3, 4]]));
}

#[test]
fn gen_then_solve() {
    let gen = run(&["--seed", "5", "gen", "--n", "40", "--k", "16"]);
    assert_eq!(gen.status.code(), Some(0));
    let mut child = bin()
        .args(["--seed", "5", "solve"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&gen.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["status"], "found");
    assert!(d["length"].as_u64().unwrap() >= 16);
}

#[test]
fn plain_format_echoes_seed() {
    let out = run(&["--seed", "9", "--format", "plain", "solve", fixture("triangle.json").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "seed: 9"));
}
