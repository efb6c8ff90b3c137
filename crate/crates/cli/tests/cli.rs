//! End-to-end tests of the `nbp` binary: exit codes, output schemas, and
//! determinism of the machine-readable formats.

use std::process::{Command, Output};

fn nbp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn analyze_toral_example() {
    let out = nbp(&["analyze", "--r", "2", "--s", "1", "--n", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["map"]["r"], "2");
    let d: Vec<&str> = value["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|level| level["d"].as_str().unwrap())
        .collect();
    assert_eq!(d, vec!["1", "3", "7", "63"]);
    assert_eq!(value["summary"]["On"], "9");
    assert_eq!(value["summary"]["In"], "54");
    assert_eq!(value["summary"]["nbpn"], "54");
    assert_eq!(value["summary"]["Mn"], "54");
    assert_eq!(value["summary"]["n_toral"]["status"], "true");
}

#[test]
fn analyze_reports_tension_without_failing() {
    let out = nbp(&["analyze", "--r", "1", "--s", "1", "--n", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "findings are not failures");
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["summary"]["nbpn"], "2");
    assert_eq!(value["summary"]["In"], "1");
    assert_eq!(value["summary"]["n_toral"]["status"], "false");
    assert_eq!(value["summary"]["flags"]["nbpn_le_Mn"]["status"], "false");
}

#[test]
fn analyze_csv_matches_rows() {
    let out = nbp(&["analyze", "--r", "2", "--s", "1", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "k,a,b,d,nielsen,an\n1,1,1,1,1,1\n2,3,3,3,3,2\n");
}

#[test]
fn table_columns_match_known_values() {
    let out = nbp(&["table", "--r", "1", "--s", "1", "--max-n", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let an: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(3).unwrap())
        .collect();
    assert_eq!(an, vec!["1", "1", "2", "2", "4", "2"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nbp(&["analyze", "--r", "2", "--s", "1"]).status.code(), Some(2));
    assert_eq!(
        nbp(&["analyze", "--r", "2", "--s", "1", "--n", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(nbp(&["analyze", "--r", "x", "--s", "1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(nbp(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3_with_partial_report() {
    // 2^101 - 1 is a product of two primes far above the trial bound, so
    // orbit counting is unavailable while the report is still emitted.
    let out = nbp(&["analyze", "--r", "2", "--s", "1", "--n", "101", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["summary"]["On"].is_null());
    assert_eq!(value["summary"]["In"], "2535301200456458802993406410750");
    assert_eq!(
        value["summary"]["flags"]["an_equals_nOn"]["status"],
        "not_evaluated"
    );
}

#[test]
fn analyze_counts_survive_a_small_cap() {
    // The stratified count does not enumerate residues, so a tiny cap does
    // not block it.
    let out = nbp(&["analyze", "--r", "2", "--s", "1", "--n", "4", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_cap_exhaustion_exits_3() {
    // d_6 = 63 exceeds the forced cap, so the enumeration-backed checks
    // are skipped and verify signals the partial sweep.
    let out = nbp(&["verify", "--r", "2", "--s", "1", "--max-n", "6", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("skipped"), "{text}");
    assert!(text.contains("violations: 0"), "{text}");
}

#[test]
fn degenerate_map_exits_0() {
    let out = nbp(&["analyze", "--r", "1", "--s", "0", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = nbp(&["hper", "--r", "1", "--s", "0", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(none)"));
}

#[test]
fn verify_exit_codes() {
    let out = nbp(&["verify", "--r", "2", "--s", "1", "--max-n", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("violations: 0, findings: 0"), "{text}");

    let out = nbp(&["verify", "--r", "1", "--s", "1", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0), "findings alone do not fail");
    assert!(stdout(&out).contains("violations: 0, findings: 5"));

    let out = nbp(&["verify", "--r", "1", "--s", "1", "--max-n", "6", "--strict"]);
    assert_eq!(out.status.code(), Some(1), "strict escalates findings");
}

#[test]
fn hper_lists_certified_periods() {
    let out = nbp(&["hper", "--r", "2", "--s", "1", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let periods: Vec<u64> = text
        .lines()
        .skip(1)
        .map(|line| line.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(periods, vec![1, 2, 3, 4]);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for (r, s, n) in [("2", "1", "6"), ("1", "1", "2"), ("-3", "7", "12"), ("1", "0", "4")] {
        let args = ["analyze", "--r", r, "--s", s, "--n", n, "--format", "json"];
        let first = nbp(&args);
        let second = nbp(&args);
        assert_eq!(first.stdout, second.stdout, "r={r} s={s} n={n}");
        assert_eq!(first.status.code(), second.status.code());
    }
}
