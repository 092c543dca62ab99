use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tprod"))
        .args(args)
        .env_remove("TP_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn analyze_to(dir: &Path, name: &str, args: &[&str]) -> (Output, Value, String) {
    let report = dir.join(format!("{name}.json"));
    let table = dir.join(format!("{name}.csv"));
    let mut all = vec!["analyze", "--report", report.to_str().unwrap(), "--table", table.to_str().unwrap()];
    all.extend_from_slice(args);
    let out = tprod(&all);
    let json = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    (out, json, std::fs::read_to_string(&table).unwrap())
}

fn schema_errors(report: &Value) -> Vec<String> {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    validator.iter_errors(report).map(|e| e.to_string()).collect()
}

#[test]
fn analyze_cancelling_pair() {
    let dir = tempfile::tempdir().unwrap();
    let (out, json, csv) = analyze_to(dir.path(), "b", &["--u", "(1-z)^-1", "--v-plus", "1-z"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json["verdict"]["kind"], "bounded");
    for row in json["ess_sup"]["rows"].as_array().unwrap() {
        assert!((row["max"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
    assert!(schema_errors(&json).is_empty(), "{:?}", schema_errors(&json));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("N,M,section_norm,kernel_lower_bound,riesz2w_norm,carleson_estimate"));
    assert_eq!(lines.count(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("verdict: bounded"));
}

#[test]
fn analyze_unbounded_pair() {
    let dir = tempfile::tempdir().unwrap();
    let (out, json, _) = analyze_to(dir.path(), "u", &["--u", "(1-z)^-1", "--v-plus", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json["verdict"]["kind"], "unbounded");
    assert!(schema_errors(&json).is_empty());
}

#[test]
fn analyze_trivial_pair() {
    let dir = tempfile::tempdir().unwrap();
    let (_, json, csv) = analyze_to(dir.path(), "t", &["--u", "1", "--v-plus", "1", "--max-degree", "64"]);
    assert_eq!(json["verdict"]["kind"], "bounded");
    assert!((json["riesz2w_norm"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((json["carleson_estimate"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    for line in csv.lines().skip(1) {
        for field in line.split(',').skip(2) {
            assert!((field.parse::<f64>().unwrap() - 1.0).abs() < 1e-9, "{line}");
        }
    }
    assert!(schema_errors(&json).is_empty());
}

#[test]
fn report_schema_rejects_missing_keys() {
    let mut bad: Value = serde_json::json!({"verdict": {"kind": "bounded", "rationale": ""}});
    assert!(!schema_errors(&bad).is_empty());
    bad["verdict"]["kind"] = "maybe".into();
    assert!(!schema_errors(&bad).is_empty());
}

#[test]
fn analyze_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--u", "(1-z)^-1", "--v-plus", "1-z"];
    analyze_to(dir.path(), "a", &args);
    analyze_to(dir.path(), "b", &args);
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn admissible_exit_codes() {
    assert_eq!(code(&tprod(&["admissible", "--u", "(1-z)^-1", "--v-plus", "1-z"])), 0);
    let o = tprod(&["admissible", "--u", "(1-z)^-1", "--v-plus", "0", "--v-minus", "z*(1-z)^-0.33"]);
    assert_eq!(code(&o), 1);
    let json: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["condition_c"]["status"], "fails");
    assert_eq!(json["overall"], false);
    assert_eq!(code(&tprod(&["admissible", "--u", "1", "--v-plus", "z"])), 0);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let o = tprod(&["admissible", "--u", "(1-z", "--v-plus", "z"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(code(&tprod(&["analyze", "--u", "1", "--v-plus", "z^"])), 2);
}

#[test]
fn config_errors_exit_3() {
    assert_eq!(code(&tprod(&["analyze", "--u", "1", "--v-plus", "1", "--max-degree", "48"])), 3);
    assert_eq!(code(&tprod(&["analyze", "--u", "1", "--v-plus", "1", "--radii", "0.5,0.4"])), 3);
    assert_eq!(code(&tprod(&["analyze", "--u", "1", "--v-plus", "1", "--radii", "0.5,1.0"])), 3);
    assert_eq!(code(&tprod(&["--threads", "0", "pathology", "step-function", "--k", "4"])), 3);
    assert_eq!(code(&tprod(&["pathology", "step-function", "--k", "3"])), 3);
    assert_eq!(code(&tprod(&["pathology", "bogus"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_tprod"))
        .args(["pathology", "step-function", "--k", "4"])
        .env("TP_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn pathology_oscillation_order_one() {
    let o = tprod(&["pathology", "oscillation", "--f", "(1-z)^-0.33", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0], ["k", "dist_near", "dist_far", "sup", "inf", "verdict"]);
    assert!(rows[1..].iter().all(|r| r[5] == "bounded"));
}

#[test]
fn pathology_step_function_norm() {
    let o = tprod(&["pathology", "step-function", "--k", "5"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    let col = rows[0].iter().position(|h| h == "norm_sqr").unwrap();
    let want: f64 = (3..=5).map(|k| 1.0 / (k * k) as f64).sum();
    for r in &rows[1..] {
        assert!((r[col].parse::<f64>().unwrap() - want).abs() < 1e-15);
    }
}

#[test]
fn pathology_hp_norm_of_one() {
    let o = tprod(&["pathology", "hp-norm", "--f", "1", "--p", "2"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    let col = rows[0].iter().position(|h| h == "norm").unwrap();
    assert!((rows.last().unwrap()[col].parse::<f64>().unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn pathology_pole_order_table() {
    let o = tprod(&["pathology", "pole-order", "--dyadic", "8", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0][1], "verdict");
    assert_ne!(rows[1][1], "bounded");
    assert_ne!(rows[2][1], "bounded");
    assert_eq!(rows[3][1], "bounded");
}
