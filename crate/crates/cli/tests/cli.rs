//! End-to-end runs of the installed binary: output shapes, exit codes, and
//! JSON byte stability.

use std::process::{Command, Output};

fn rotalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn s3_resolves_the_recorded_word() {
    let out = rotalg(&["s3", "-a", "2", "-b", "1", "-c", "1", "-d", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("kappa2"));
}

#[test]
fn s3_json_has_the_word_and_permutation() {
    let out = rotalg(&["s3", "-a", "0", "-b", "-1", "-c", "1", "-d", "0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["s3"], "sigma");
    assert_eq!(v["matrix"]["b"], -1);
}

#[test]
fn non_unimodular_matrices_are_usage_errors() {
    let out = rotalg(&["table", "-a", "1", "-b", "0", "-c", "0", "-d", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("determinant must be 1"));
}

#[test]
fn table_lists_the_four_rows() {
    let out = rotalg(&["table", "-a", "0", "-b", "-1", "-c", "1", "-d", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("phi01 \u{2218} alpha = phi10"));
    assert!(text.contains("s3 class: sigma"));
}

#[test]
fn apply_prints_the_image() {
    let out = rotalg(&["apply", "--spec", "sigma", "--element", "U"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "V^-1");
}

#[test]
fn apply_composite_words_right_to_left() {
    let chained = rotalg(&["apply", "--spec", "sigma.kappa", "--element", "U V"]);
    let inner = rotalg(&["apply", "--spec", "kappa", "--element", "U V"]);
    let outer = rotalg(&["apply", "--spec", "sigma", "--element", stdout(&inner).trim()]);
    assert_eq!(stdout(&chained), stdout(&outer));
}

#[test]
fn malformed_elements_are_usage_errors_with_positions() {
    let out = rotalg(&["apply", "--spec", "sigma", "--element", "U^"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("byte 2"));
}

#[test]
fn unknown_spec_words_are_usage_errors() {
    let out = rotalg(&["apply", "--spec", "rho", "--element", "U"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown automorphism word"));
}

#[test]
fn orbit_lists_all_six_words() {
    let out = rotalg(&["orbit", "--element", "U V"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    for label in ["id:", "sigma:", "kappa:", "kappa2:", "sigma.kappa:", "sigma.kappa2:"] {
        assert!(text.contains(label), "missing {label} in output:\n{text}");
    }
}

#[test]
fn chern_reports_the_character() {
    let out = rotalg(&["chern", "--element", "U V + t^2 U^-1 V^-1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("t^-1 + t"));
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["chern", "--element", "U V + t^2 U^-1 V^-1", "--json"];
    let first = rotalg(&args);
    let second = rotalg(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let args = [
        "pr",
        "--theta",
        "0.41421356237309515",
        "--theta-prime",
        "0.41421356237309515",
        "--grid",
        "8192",
        "--json",
    ];
    let first = rotalg(&args);
    let second = rotalg(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn repmat_prints_both_matrices() {
    let out = rotalg(&["repmat", "--spec", "gamma1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1, 0, 0]"));
    assert!(text.contains("[0, -1, 0]"));
    assert!(text.contains("extended"));
}

#[test]
fn pr_rejects_unreachable_trace_targets() {
    let out = rotalg(&[
        "pr",
        "--theta",
        "0.41421356237309515",
        "--theta-prime",
        "0.3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no band power"));
}

#[test]
fn verify_all_passes() {
    let out = rotalg(&["verify", "--suite", "all"]);
    assert!(out.status.success(), "stdout:\n{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn verify_single_suite_and_json() {
    let out = rotalg(&["verify", "--suite", "lemma21", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["ok"], true);
    assert_eq!(v["suites"][0]["suite"], "lemma21");
}

#[test]
fn verify_unknown_suite_is_a_usage_error() {
    let out = rotalg(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
