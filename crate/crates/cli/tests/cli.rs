use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dilated-basis"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn check_reports_equivalence() {
    let out = run(&["check", "--profile", "trapezoid", "--alpha", "0.05", "--support", "1", "--k", "500"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "Equivalent");
    assert_eq!(v["k"], 500);
    assert_eq!(v["profile"]["kind"], "trapezoid");
}

#[test]
fn strict_inconclusive_exits_one() {
    let args = ["check", "--profile", "trapezoid", "--alpha", "0.03", "--k", "1"];
    assert_eq!(run(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--strict");
    let out = run(&strict);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "Inconclusive");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let out = run(&["check", "--profile", "trapezoid", "--alpha", "0.7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ramp width"));
    assert_eq!(run(&["threshold", "--name", "gamma9"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--profile", "trapezoid", "--alpha", "0.1", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_three() {
    let out = run(&["threshold", "--name", "alpha0", "--lo", "0.2", "--hi", "0.4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no sign change"));
}

#[test]
fn threshold_p5() {
    let out = run(&["threshold", "--name", "p5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["name"], "p5");
    assert_eq!(v["k"], 251);
    assert_eq!(v["d"], 2);
    assert!((v["value"].as_f64().unwrap() - 1.02975).abs() < 1e-3);
}

#[test]
fn scan_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = run(&["scan", "--figure", "1-right", "--n", "200", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("alpha,lhs,rhs\n"));
    assert!(!text.contains('\r'));
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 200);

    let js = json(&run(&["scan", "--figure", "1-right", "--n", "200", "--format", "json"]));
    let in_memory: Vec<Vec<f64>> = serde_json::from_value(js["rows"].clone()).unwrap();
    assert_eq!(rows, in_memory);
    assert_eq!(rows[0][0], 0.01);
    assert_eq!(rows[199][0], 0.08);
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--figure", "3-bottom-right", "--n", "50"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["check", "--profile", "cubic", "--beta", "0.04", "--support", "1,3,5,9,25", "--k", "100", "--jobs", "2"];
    let c = run(&args);
    let d = run(&args);
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(json(&c)["mu_method"], "grid-refine");
}

#[test]
fn coefficients_and_multiplier() {
    let v = json(&run(&["coeffs", "--profile", "psine", "--p", "2", "--n", "9"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!((rows[0][1].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let v = json(&run(&["multiplier", "--profile", "jump-smoothed", "--eps", "0.5", "--re", "1"]));
    assert!(v["value"]["re"].as_f64().unwrap() > 1.0);
    let v = json(&run(&["multiplier", "--profile", "trapezoid", "--alpha", "0.25", "--re", "0.5", "--im", "2"]));
    assert!(v["tail_bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn bound_table_is_valid() {
    let out = run(&["bound", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    for row in json(&out).as_array().unwrap() {
        assert_eq!(row["valid"], true);
        let ratio = row["bound"].as_f64().unwrap() / row["reference"].as_f64().unwrap();
        assert!((ratio - 1.0).abs() < 1e-5);
    }
    let v = json(&run(&["bound", "--k", "3", "--p", "1.5", "--counts", "3,3"]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["bound"]["chord_terms"].as_array().unwrap().len(), 3);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
