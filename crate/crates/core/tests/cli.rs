use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jetframe"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn jet1(e1: &str, e2: &str) -> Value {
    json!({"dim": 1, "order": 2, "base": ["0"], "e1": [[e1]], "e2": [[[e2]]]})
}

#[test]
fn compose_example() {
    let out = run(&["jet", "compose"], &json!([jet1("2", "3"), jet1("1", "1")]).to_string());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), jet1("2", "5"));
}

#[test]
fn invert_example() {
    let out = run(&["jet", "invert"], &jet1("2", "3").to_string());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), jet1("1/2", "-3/8"));
}

#[test]
fn lift3_examples() {
    let out = run(&["jet", "lift3"], r#"{"x": "0", "e": "2", "e2": "4"}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"x": "0", "e": "2", "e2": "4", "e3": "12"}));
    // the same frame as stored coefficients: e2 = 4/2, e3 = 12/6
    let out = run(&["jet", "lift3"], &jet1("2", "2").to_string());
    assert_eq!(stdout_json(&out)["e3"], json!([[[["2"]]]]));
}

#[test]
fn jet_errors_exit_one() {
    for (args, input) in [
        (vec!["jet", "invert"], "{not json"),
        (vec!["jet", "invert"], &jet1("0", "1").to_string() as &str),
        (vec!["jet", "compose"], &json!([jet1("2", "3")]).to_string()),
        (vec!["jet", "lift3"], r#"{"x": "0", "e": "0", "e2": "1"}"#),
    ] {
        let out = run(&args, input);
        assert_eq!(out.status.code(), Some(1), "{args:?} {input}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn schwarzian_examples() {
    let out = run(&["schwarzian", "0,1,0,1"], "");
    assert_eq!((out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned()), (Some(0), "6\n".into()));
    let out = run(&["schwarzian", "0,0,1"], "");
    assert_eq!(out.status.code(), Some(1));
    // truncation of u / (1 + u) = u - u^2 + u^3 at 0: S = 6 - 3/2 * 4 = 0
    let out = run(&["schwarzian", "0,1,-1,1"], "");
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\n");
    let out = run(&["schwarzian", "0,1,0,1", "--point", "1/2"], "");
    assert_eq!(String::from_utf8_lossy(&out.stdout), "-48/49\n");
    let out = run(&["schwarzian", "-1/2,1,-1/2", "--point", "-1/2"], "");
    assert_eq!(String::from_utf8_lossy(&out.stdout), "-2/3\n");
    assert_eq!(run(&["schwarzian", "0,x"], "").status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "bogus"], "").status.code(), Some(2));
    assert_eq!(run(&["verify", "jet", "--format", "yaml"], "").status.code(), Some(2));
    assert_eq!(run(&["jet", "frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&[], "").status.code(), Some(2));
}

#[test]
fn verify_json_is_reproducible() {
    let a = run(&["verify", "brs", "--format", "json"], "");
    let b = run(&["verify", "brs", "--format", "json"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let records = stdout_json(&a);
    let records = records.as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["suite"], "brs");
        assert_eq!(r["residual"], "0");
        assert!(r["reference"].as_str().unwrap().starts_with("eq. ("));
    }
}

#[test]
fn seeds_change_samples_not_verdicts() {
    let a = run(&["verify", "projective", "--seed", "7", "--samples", "10"], "");
    let b = run(&["verify", "projective", "--seed", "7", "--samples", "10"], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("(10 samples)"));
}
