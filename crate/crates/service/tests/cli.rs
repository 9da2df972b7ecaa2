use std::process::{Command, Output};

use serde_json::Value;

fn hexpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexpoint")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn hexcheck_three() {
    let out = hexpoint(&["hexcheck", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "512/512 colorings: exactly one winner");
    let out = hexpoint(&["hexcheck", "--k", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fixedpoint2d_rotation_json() {
    let out = hexpoint(&["fixedpoint2d", "--map-name", "rotation180", "--eps", "0.01", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let (x, y, r) = (v["x"].as_f64().unwrap(), v["y"].as_f64().unwrap(), v["residual"].as_f64().unwrap());
    assert!(r <= 0.01);
    assert!((x - 0.5).abs() <= 0.01 && (y - 0.5).abs() <= 0.01);
}

#[test]
fn winner_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "k=2\nHX\nVV\n").unwrap();
    let out = hexpoint(&["winner", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse_error") && err.contains("line 2"), "{err}");

    let good = dir.path().join("good.txt");
    std::fs::write(&good, "k=2\nHV\nHV\n").unwrap();
    let out = hexpoint(&["winner", good.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["winner"], "V");
    assert_eq!(v["interfaceWinner"], "V");

    let out = hexpoint(&["winner", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_and_monotonicity() {
    let out = hexpoint(&["solve", "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"], "WinForMover");

    let out = hexpoint(&["solve", "--k", "6"]);
    assert_eq!(out.status.code(), Some(3));

    let out = hexpoint(&["monotonicity", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("monotonicity holds"));
}

#[test]
fn one_dimensional_and_sperner() {
    let out = hexpoint(&["fixedpoint1d", "--map", "1 - x", "--tol", "1e-8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["x"].as_f64().unwrap() - 0.5).abs() <= 1e-8);

    let out = hexpoint(&["fixedpoint1d", "--map", "x + 2", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(2));

    let out = hexpoint(&["sperner", "--m", "1", "--n", "2", "--map", "l1; l0", "--dump"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("v 0 2 0") && text.contains("c 1 1 2"), "{text}");

    let out = hexpoint(&["sperner", "--m", "2", "--n", "4", "--map", "x; y"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hexpoint(&["fixedpoint2d", "--eps", "0.1"]).status.code(), Some(2));
    assert_eq!(hexpoint(&["frobnicate"]).status.code(), Some(2));
}
