//! End-to-end checks of the command-line binary: output round-trips, exit
//! codes, JSON schema, and agreement between computation routes.

use std::process::{Command, Output};

use homflyzero::poly::LaurentPoly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homflyzero"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

#[test]
fn invariant_prints_reparsable_f() {
    let out = run(&["invariant", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"]);
    assert!(out.status.success());
    let f: LaurentPoly = stdout(&out).parse().unwrap();
    assert_eq!(f, "2v^-2 - v^-4".parse().unwrap());
}

#[test]
fn invariant_homfly_and_json_schema() {
    let out = run(&[
        "invariant",
        "--which",
        "homfly",
        "--json",
        "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    ]);
    assert!(out.status.success());
    let rec: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rec["schema"], 1);
    assert_eq!(rec["which"], "homfly");
    assert!(rec["terms"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn parse_failure_exits_2() {
    let out = run(&["invariant", "X(1,2,3)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run(&[
        "invariant",
        "--max-crossings",
        "2",
        "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_4() {
    let out = run(&["family", "--variant", "Q", "--n", "1"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&[
        "family",
        "--variant",
        "B",
        "--n",
        "2",
        "--mode",
        "closed-form",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn family_modes_agree_on_overlap() {
    // inductive vs closed-form on n = 6, 7 for both variants
    for variant in ["B", "G"] {
        for n in ["6", "7", "-3", "-7"] {
            let a = run(&[
                "family",
                "--variant",
                variant,
                "--n",
                n,
                "--mode",
                "inductive",
            ]);
            let b = run(&[
                "family",
                "--variant",
                variant,
                "--n",
                n,
                "--mode",
                "closed-form",
            ]);
            assert!(a.status.success() && b.status.success());
            assert_eq!(stdout(&a), stdout(&b), "variant {variant}, n = {n}");
        }
    }
}

#[test]
fn family_output_round_trips_and_matches_fixture() {
    let out = run(&[
        "family",
        "--variant",
        "B",
        "--n",
        "2",
        "--mode",
        "inductive",
    ]);
    assert!(out.status.success());
    let f: LaurentPoly = stdout(&out).parse().unwrap();
    let expect: LaurentPoly =
        "2v^2 - 11 + 27v^-2 - 55v^-4 + 122v^-6 - 168v^-8 + 113v^-10 - 29v^-12"
            .parse()
            .unwrap();
    assert_eq!(f, expect);
}

#[test]
fn verify_suites_pass() {
    for suite in [
        "table1",
        "theoremA1",
        "skein-consistency",
        "twist-lemmas",
        "surgery",
    ] {
        let out = run(&["verify", suite]);
        assert!(
            out.status.success(),
            "suite {suite} failed:\n{}",
            stdout(&out)
        );
    }
}

#[test]
fn verify_json_is_structured() {
    let out = run(&["verify", "--json", "surgery"]);
    assert!(out.status.success());
    let rec: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rec["schema"], 1);
    assert_eq!(rec["pass"], true);
    assert!(rec["checks"].as_array().is_some_and(|c| c.len() >= 24));
}

#[test]
fn env_var_overrides_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_homflyzero"))
        .env("HOMFLYZERO_MAX_CROSSINGS", "2")
        .args(["invariant", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
