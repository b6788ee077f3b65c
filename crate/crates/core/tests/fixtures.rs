//! The committed fixture corpus matches the generators, and the suite
//! passes on it and fails on corrupted copies.
//!
//! Set `MGRACK_BLESS=1` to rewrite the corpus from the generators.

use std::fs;
use std::path::{Path, PathBuf};

use mgrack::formats::{to_json, MoveFixture};
use mgrack::samples::{move_fixtures, sum_fixtures};
use mgrack::suite::run_suite;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn generated() -> Vec<(PathBuf, String)> {
    let mut out = Vec::new();
    for (name, f) in move_fixtures() {
        out.push((Path::new("moves").join(format!("{name}.json")), to_json(&f)));
    }
    for (name, f) in sum_fixtures() {
        out.push((Path::new("sums").join(format!("{name}.json")), to_json(&f)));
    }
    out
}

#[test]
fn corpus_matches_generators() {
    let root = corpus();
    let bless = std::env::var_os("MGRACK_BLESS").is_some();
    for (rel, text) in generated() {
        let path = root.join(&rel);
        if bless {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &text).unwrap();
        }
        let on_disk = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}; run with MGRACK_BLESS=1", path.display()));
        assert_eq!(on_disk, text, "{} is stale", rel.display());
    }
}

#[test]
fn corpus_round_trips() {
    for (rel, text) in generated() {
        if rel.starts_with("moves") {
            let f: MoveFixture = serde_json::from_str(&text).unwrap();
            assert_eq!(to_json(&f), text);
        }
    }
}

#[test]
fn suite_passes_on_corpus() {
    let report = run_suite(&corpus(), 2).unwrap();
    assert!(report.ok(), "{:#?}", report.failures);
    assert_eq!(report.fixtures, generated().len());
}

fn copy_corpus() -> tempfile::TempDir {
    let tmp = tempfile::tempdir().unwrap();
    for sub in ["moves", "sums"] {
        fs::create_dir_all(tmp.path().join(sub)).unwrap();
        for e in fs::read_dir(corpus().join(sub)).unwrap() {
            let p = e.unwrap().path();
            fs::copy(&p, tmp.path().join(sub).join(p.file_name().unwrap())).unwrap();
        }
    }
    tmp
}

#[test]
fn suite_names_corrupted_move_fixture() {
    let tmp = copy_corpus();
    let path = tmp.path().join("moves/r6_twist_positive_split.json");
    let mut f: MoveFixture = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let c = f.after.crossings.last_mut().unwrap();
    c.sign = c.sign.flip();
    fs::write(&path, to_json(&f)).unwrap();
    let report = run_suite(tmp.path(), 1).unwrap();
    assert!(!report.ok());
    assert!(report
        .failures
        .iter()
        .all(|x| x.fixture.ends_with("r6_twist_positive_split.json")));
    assert!(report.failures.iter().any(|x| x.check == "apply"));
}

#[test]
fn suite_names_corrupted_sum_fixture() {
    let tmp = copy_corpus();
    let path = tmp.path().join("sums/bridged_circles.json");
    let text = fs::read_to_string(&path).unwrap().replace(r#""semidirect_star": false"#, r#""semidirect_star": true"#);
    fs::write(&path, text).unwrap();
    let report = run_suite(tmp.path(), 1).unwrap();
    assert_eq!(report.failures.len(), 1);
    assert_eq!(report.failures[0].check, "star:semidirect_z3_s3_s3");

    fs::write(tmp.path().join("moves/garbage.json"), "{\"before\":").unwrap();
    let report = run_suite(tmp.path(), 1).unwrap();
    assert!(report
        .failures
        .iter()
        .any(|x| x.fixture.ends_with("garbage.json") && x.check == "parse"));
}

#[test]
fn empty_corpus_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(matches!(
        run_suite(tmp.path(), 1),
        Err(mgrack::Error::Usage(_))
    ));
}
