//! End-to-end checks against the compiled binary.

use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ostrowski"))
        .args(args)
        .env_remove("OSTROWSKI_MAX_BITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cf_digits_of_a_decimal_slope() {
    let out = run(&["cf", "--slope", "dec:0.41421356237309504880", "--digits", "5"]);
    let v = json(&out);
    let digits: Vec<&str> = v["digits"].as_array().unwrap().iter().map(|d| d.as_str().unwrap()).collect();
    assert_eq!(digits, ["2", "2", "2", "2", "2"]);
}

#[test]
fn encode_int_table_prints_msb_digits() {
    let out = run(&[
        "encode-int",
        "--slope",
        "quad:(-1+1*sqrt(2))/1",
        "--value",
        "13",
        "--output",
        "table",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 1 0 2 0");
}

#[test]
fn encode_decode_round_trip() {
    let slope = "quad:(-1+1*sqrt(5))/2";
    let enc = json(&run(&["encode-int", "--slope", slope, "--value", "9"]));
    let le: Vec<&str> = enc["digits"].as_array().unwrap().iter().map(|d| d.as_str().unwrap()).collect();
    let dec = json(&run(&["decode-int", "--slope", slope, "--digits-le", &le.join(",")]));
    assert_eq!(dec["value"].as_str().unwrap(), "9");
}

#[test]
fn solve_forward_at_beta_alpha_hits_exactly() {
    let v = json(&run(&[
        "solve",
        "--slope",
        "quad:(-1+1*sqrt(5))/2",
        "--variant",
        "forward",
        "--intercept",
        "quad:(-1+1*sqrt(5))/2",
        "--terms",
        "4",
        "--certify",
    ]));
    assert_eq!(v["exact_hit"].as_u64(), Some(0));
    assert_eq!(v["certificate"]["ok"].as_bool(), Some(true));
}

#[test]
fn verify_all_suites_pass() {
    let out = run(&["verify", "--suite", "all"]);
    let v = json(&out);
    assert_eq!(v["failures"].as_u64(), Some(0));
}

#[test]
fn bad_literal_exits_2() {
    let out = run(&["cf", "--slope", "dec:abc", "--digits", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inadmissible_digits_exit_4() {
    let out = run(&[
        "decode-int",
        "--slope",
        "quad:(-1+1*sqrt(2))/1",
        "--digits-le",
        "0,5",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exhausted_budget_exits_3() {
    let out = run(&[
        "expand-real-alt",
        "--slope",
        "quad:(-1+1*sqrt(2))/1",
        "--intercept",
        "dec:2.75",
        "--digits",
        "2",
        "--max-bits",
        "256",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("256-bit"));
}
