use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn escape(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_escape")).args(args).arg("--cache").arg(cache).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn construct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let first = escape(dir.path(), &["--json", "construct", "--m=-10,0,10", "--bits=256", "--out", a.to_str().unwrap()]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = escape(dir.path(), &["construct", "--m=-10,0,10", "--bits=256", "--out", b.to_str().unwrap()]);
    assert!(second.status.success());
    let ra = std::fs::read(a.join("report.json")).unwrap();
    assert_eq!(ra, std::fs::read(b.join("report.json")).unwrap());

    let report: Value = serde_json::from_slice(&ra).unwrap();
    let d_m: f64 = report["D_m"].as_str().unwrap().parse().unwrap();
    assert!((d_m - 2000.0).abs() < 0.01);
    assert_eq!(report["t_vectors"].as_array().unwrap().len(), 3);
}

#[test]
fn repeated_entries_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = escape(dir.path(), &["construct", "--m=0,0,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("entries not distinct"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn later_stages_need_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = escape(dir.path(), &["mass", "--m=-10,0,10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn pipeline_for_k_ten() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path();
    assert!(escape(c, &["construct", "--m=-10,0,10"]).status.success());
    let scan = escape(c, &["--json", "scan", "--m=-10,0,10", "--grid=64"]);
    assert!(scan.status.success(), "{}", String::from_utf8_lossy(&scan.stderr));
    let s = json(&scan);
    let csv = std::fs::read_to_string(s["csv"].as_str().unwrap()).unwrap();
    assert_eq!(csv.lines().count(), 64 * 64 + 1);
    assert!(Path::new(s["svg"].as_str().unwrap()).exists());

    let mass = json(&escape(c, &["--json", "mass", "--m=-10,0,10", "--grid=64", "--delta=0.1"]));
    let f = mass["fraction"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&f));

    let index = escape(c, &["--json", "index", "--m=-10,0,10", "--grid=64"]);
    assert!(index.status.success(), "{}", String::from_utf8_lossy(&index.stderr));
    let v = json(&index);
    assert_eq!(v["certificate"]["index_one"], Value::Bool(true));
    assert_eq!(v["oracle"]["outcome"], Value::String("Confirmed".into()));

    assert!(escape(c, &["visits", "--m=-10,0,10", "--grid=64"]).status.success());
    let dir = Path::new(s["csv"].as_str().unwrap()).parent().unwrap();
    for (schema, file) in [("report", "report.json"), ("scan", "scan-64.json"), ("mass", "mass.json"), ("visits", "visits.json"), ("index", "index.json")] {
        has_required_keys(schema, &dir.join(file));
    }
}

/// Top-level keys listed as required by the documented schema are present.
fn has_required_keys(schema: &str, file: &Path) {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let value: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    for key in schema["required"].as_array().unwrap() {
        assert!(keys.contains(&key.as_str().unwrap()), "{}: missing {key}", file.display());
    }
    for key in &keys {
        assert!(schema["properties"].get(*key).is_some(), "{}: undocumented {key}", file.display());
    }
}

#[test]
fn empty_sweep_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("sweep");
    let out = escape(dir.path(), &["--json", "sweep", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["rows"].as_array().map(Vec::len), Some(0));
}

#[test]
fn cosets_listing() {
    let out = Command::new(env!("CARGO_BIN_EXE_escape")).args(["--json", "cosets", "--d=4"]).output().unwrap();
    let v = json(&out);
    assert_eq!(v["classes"].as_array().unwrap().len(), 6);
}
