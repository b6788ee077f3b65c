use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mgrack::diagram::{serialize, Diagram, Sign};
use mgrack::samples;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgrack"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write_diagram(dir: &TempDir, name: &str, d: &Diagram) -> String {
    let p = path(dir, name);
    std::fs::write(&p, serialize(d)).unwrap();
    p
}

fn build_sample(dir: &TempDir, sample: &str) -> String {
    let p = path(dir, &format!("{sample}.json"));
    let out = run(&["build", "sample", sample, "--out", &p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn verify_group() {
    let dir = TempDir::new().unwrap();
    let s3 = path(&dir, "s3.json");
    let table = mgrack::FiniteGroup::s3_presented().table_rows();
    std::fs::write(&s3, serde_json::json!({"order": 6, "table": table, "identity": 0}).to_string()).unwrap();
    let out = run(&["verify", "--structure", &s3]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "group");
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_rejects_bad_group_with_exit_3() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, r#"{"order":2,"table":[[0,1],[1,1]],"identity":0}"#).unwrap();
    let out = run(&["verify", "--structure", &bad]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"], "not_a_group");
}

#[test]
fn build_semidirect_pipeline() {
    let dir = TempDir::new().unwrap();
    let family = build_sample(&dir, "gfamily-z3-s3");
    let m = path(&dir, "m.json");
    let out = run(&["build", "semidirect", "--gfamily", &family, "--normal", "full", "--out", &m]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--structure", &m]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["elements"], 108);
    assert_eq!(v["components"], serde_json::json!([36, 36, 36]));

    let circle = write_diagram(&dir, "circle.json", &Diagram::circle());
    let out = run(&["count", "--diagram", &circle, "--structure", &m]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 108);
}

#[test]
fn count_theta() {
    let dir = TempDir::new().unwrap();
    let m = build_sample(&dir, "semidirect");
    let theta = write_diagram(&dir, "theta.json", &Diagram::theta());
    let out = run(&["count", "--diagram", &theta, "--structure", &m, "--jobs", "3"]);
    assert_eq!(json(&out)["count"], 3888);
}

#[test]
fn star_exit_codes() {
    let dir = TempDir::new().unwrap();
    let sd = build_sample(&dir, "semidirect");
    let assoc = build_sample(&dir, "associated");
    let kinks = write_diagram(&dir, "kinks.json", &samples::bridged_kinks(Sign::Positive, Sign::Positive));

    let out = run(&["star", "--diagram", &kinks, "--structure", &sd]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert!(v["witness"].is_object() || v["witness"].is_array());

    let out = run(&["star", "--diagram", &kinks, "--structure", &assoc]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["holds"], false);

    let circle = write_diagram(&dir, "circle.json", &Diagram::circle());
    let out = run(&["star", "--diagram", &circle, "--structure", &sd]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn move_round_trip() {
    let dir = TempDir::new().unwrap();
    let theta = write_diagram(&dir, "theta.json", &Diagram::theta());
    let mv = path(&dir, "mv.json");
    std::fs::write(&mv, r#"{"move":"R6","site":{"vertex":0},"variant":"twist_positive"}"#).unwrap();
    let twisted = path(&dir, "twisted.json");
    let out = run(&["move", "--diagram", &theta, "--move", &mv, "--out", &twisted]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = run(&["verify", "--diagram", &twisted]);
    assert_eq!(out.status.code(), Some(0));

    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, r#"{"move":"R2_REMOVE","site":{"middle":0}}"#).unwrap();
    let out = run(&["move", "--diagram", &theta, "--move", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "move_mismatch");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["count", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let out = run(&["count", "--diagram", "/nonexistent.json", "--structure", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_diagram_exit_2() {
    let dir = TempDir::new().unwrap();
    let m = build_sample(&dir, "associated");
    let d = path(&dir, "d.json");
    std::fs::write(&d, r#"{"arcs":[{"id":0,"closed":false}],"crossings":[{"over":0,"under_in":0,"under_out":0}],"vertices":[]}"#).unwrap();
    let out = run(&["count", "--diagram", &d, "--structure", &m]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_diagram_exit_3() {
    let dir = TempDir::new().unwrap();
    let d = path(&dir, "d.json");
    std::fs::write(&d, r#"{"arcs":[{"id":0,"closed":false}],"crossings":[],"vertices":[]}"#).unwrap();
    let out = run(&["verify", "--diagram", &d]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn suite_on_bundled_corpus() {
    let f = fixtures();
    let out = run(&["suite", "--fixtures", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn suite_names_corrupted_fixture() {
    let dir = TempDir::new().unwrap();
    let moves = dir.path().join("moves");
    std::fs::create_dir(&moves).unwrap();
    let src = fixtures().join("moves").join("r3_triangle.json");
    let text = std::fs::read_to_string(src).unwrap();
    // Flip one crossing sign in the recorded after diagram.
    let mut v: Value = serde_json::from_str(&text).unwrap();
    let s = &mut v["after"]["crossings"][0]["sign"];
    *s = Value::from(-s.as_i64().unwrap());
    std::fs::write(moves.join("broken.json"), v.to_string()).unwrap();
    let out = run(&["suite", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert!(report["failures"][0]["fixture"].as_str().unwrap().contains("broken.json"));
}

#[test]
fn suite_empty_corpus_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = run(&["suite", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn version_lists_schemas() {
    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v.to_string().contains("diagram"));
}

#[test]
fn stdout_independent_of_jobs() {
    let dir = TempDir::new().unwrap();
    let m = build_sample(&dir, "semidirect");
    let d = write_diagram(&dir, "d.json", &samples::bridged_kinks(Sign::Negative, Sign::Positive));
    let one = run(&["count", "--diagram", &d, "--structure", &m, "--jobs", "1"]);
    let many = run(&["count", "--diagram", &d, "--structure", &m, "--jobs", "8"]);
    assert_eq!(one.stdout, many.stdout);
}
