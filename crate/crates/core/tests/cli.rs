use std::process::Command;

use ale_moduli::cli::{self, DecayOutput, ResolveReport, SweepReport, TableOutput};
use ale_moduli::kahler::CurvatureReport;
use ale_moduli::moduli::{ModuliDimensions, Table1Row, Table3Row};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("ale-moduli").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out:?} {err:?}"));
    (code, value)
}

fn round_trips<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) {
    let (_, out, _) = run(args);
    let parsed: T = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(serde_json::from_str::<T>(&again).unwrap(), parsed);
    assert_eq!(again.trim_end(), out.trim_end(), "{args:?}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ale-moduli");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["resolve", "--p", "5", "--q", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    let bad = status(&["resolve", "--p", "6", "--q", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty() && bad.stdout.is_empty());
    assert_eq!(status(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(status(&["--version"]).status.code(), Some(0));
    let over = status(&[
        "verify-metric", "--potential", "burns", "--rmin", "1", "--rmax", "8", "--samples", "8",
        "--tolerance", "1e-12",
    ]);
    assert_eq!(over.status.code(), Some(2));
}

#[test]
fn resolve_five_two() {
    let (code, v) = json(&["resolve", "--p", "5", "--q", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["coeffs"], serde_json::json!([3, 2]));
    assert_eq!(v["dual_coeffs"], serde_json::json!([2, 3]));
    assert_eq!(v["embedding_dimension"], 4);
    assert_eq!(
        v["lattice_points"],
        serde_json::json!([["0/5", "5/5"], ["1/5", "2/5"], ["3/5", "1/5"], ["5/5", "0/5"]])
    );
    for (name, verdict) in v["identities"].as_object().unwrap() {
        assert_eq!(verdict, "pass", "{name}");
    }
}

#[test]
fn table_one_contains_the_one_third_row() {
    let (code, v) = json(&["table", "--which", "1", "--pmax", "6", "--json"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["group"], "1/3(1,1)");
    assert_eq!((rows[0]["d"].as_u64(), rows[0]["m"].as_i64()), (Some(5), Some(2)));
    let (code, _, err) = run(&["table", "--which", "2"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn moduli_values() {
    for (group, m) in [("cyclic:5,4", 9), ("dprod:l=3,n=5", 16), ("tprod:l=7", 19), ("t3:l=3", 16)] {
        let (code, v) = json(&["moduli", "--group", group, "--json"]);
        assert_eq!(code, 0, "{group}");
        assert_eq!(v["m"], m, "{group}");
    }
    assert_eq!(run(&["moduli", "--group", "tprod:l=3"]).0, 1);
    assert_eq!(run(&["moduli", "--group", "nonsense"]).0, 1);
}

#[test]
fn flat_metric_verifies() {
    let base = ["verify-metric", "--potential", "flat", "--rmin", "1", "--rmax", "4", "--samples", "8", "--json"];
    let (code, v) = json(&base);
    assert_eq!(code, 0);
    assert_eq!(v["samples"].as_array().unwrap().len(), 8);
    // Flat has no truncation error; what remains is rounding of size
    // ε |Φ| / h⁴, which sits at about 1e-8 for h0 = 1e-2 near |z| = 1.
    let (code, v) = json(&[&base[..], &["--h0", "0.02"]].concat());
    assert_eq!(code, 0);
    assert!(v["max_abs_s"].as_f64().unwrap() < 1e-8, "{}", v["max_abs_s"]);
    assert_eq!(run(&["verify-metric", "--potential", "flat", "--a", "2", "--rmin", "1", "--rmax", "4", "--samples", "8"]).0, 1);
    assert_eq!(run(&["verify-metric", "--potential", "flat", "--rmin", "0.01", "--rmax", "4", "--samples", "8"]).0, 1);
}

#[test]
fn decay_expectations() {
    let args = ["decay", "--potential", "eguchi-hanson", "--a", "1", "--radii", "2:64:11"];
    let (code, _, _) = run(&[&args[..], &["--expect", "4"]].concat());
    assert_eq!(code, 0);
    let (code, _, _) = run(&[&args[..], &["--expect", "2"]].concat());
    assert_eq!(code, 2);
    let (code, v) = json(&["decay", "--potential", "flat", "--radii", "2:64:8", "--json"]);
    assert_eq!(code, 0);
    assert!(v["estimate"]["order"].is_null());
    assert_eq!(run(&["decay", "--potential", "flat", "--radii", "2:8:8"]).0, 1);
}

#[test]
fn riemenschneider_sweeps() {
    let (code, v) = json(&["riemenschneider", "--pmax", "50", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["failures"], 0);
    assert!(v["first_counterexample"].is_null());
    let small = cli::riemenschneider_sweep(5);
    assert_eq!(small.pairs_checked, 2);
    assert_eq!(cli::riemenschneider_sweep(2).pairs_checked, 0);
}

#[test]
fn text_mode_is_a_table() {
    let (code, out, _) = run(&["table", "--which", "3", "--lmax", "13"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("group"));
    assert!(out.contains("tprod:l=7"));
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 4] = [
        &["resolve", "--p", "17", "--q", "5", "--json"],
        &["table", "--which", "3", "--lmax", "60", "--json"],
        &["verify-metric", "--potential", "eguchi-hanson", "--rmin", "1", "--rmax", "8", "--samples", "16", "--json"],
        &["decay", "--potential", "burns", "--radii", "2:64:8"],
    ];
    for args in cases {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn json_round_trips() {
    round_trips::<ResolveReport>(&["resolve", "--p", "19", "--q", "7", "--json"]);
    round_trips::<ModuliDimensions>(&["moduli", "--group", "d2:l=2,n=5", "--json"]);
    round_trips::<TableOutput<Table1Row>>(&["table", "--which", "1", "--pmax", "20", "--json"]);
    round_trips::<TableOutput<Table3Row>>(&["table", "--which", "3", "--lmax", "40", "--json"]);
    round_trips::<SweepReport>(&["riemenschneider", "--pmax", "20", "--json"]);
    round_trips::<CurvatureReport>(&[
        "verify-metric", "--potential", "burns", "--m", "1", "--rmin", "1", "--rmax", "8", "--samples", "8",
        "--delta", "-2", "--json",
    ]);
    round_trips::<DecayOutput>(&["decay", "--potential", "burns", "--radii", "2:64:8", "--json"]);
}
