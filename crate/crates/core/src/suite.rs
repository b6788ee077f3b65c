//! Runs a fixture corpus: move fixtures under `moves/`, marked-arc
//! fixtures under `sums/`.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::coloring::{check_property_star, count_colorings};
use crate::diagram::{apply_move, is_isomorphic};
use crate::error::{Error, Result};
use crate::formats::{MoveFixture, SumFixture};
use crate::mgr::MultipleGroupRack;
use crate::samples;

/// MGRs every fixture is checked against. The flag marks associated MGRs,
/// which never color a bridge non-trivially.
pub fn bundled_mgrs() -> Vec<(&'static str, MultipleGroupRack, bool)> {
    vec![
        ("associated_z3_s3", samples::associated_example(), true),
        ("associated_shift_z3", samples::associated_shift_rack(), true),
        ("semidirect_z3_s3_s3", samples::semidirect_example(), false),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub fixture: String,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub fixtures: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    out.retain(|p| p.extension().is_some_and(|e| e == "json"));
    out.sort();
    Ok(out)
}

struct Run {
    checks: usize,
    failures: Vec<Failure>,
}

impl Run {
    fn check(&mut self, fixture: &str, check: &str, result: Result<bool>, detail: impl Fn() -> String) {
        self.checks += 1;
        let detail = match result {
            Ok(true) => return,
            Ok(false) => detail(),
            Err(e) => e.to_string(),
        };
        self.failures.push(Failure {
            fixture: fixture.to_string(),
            check: check.to_string(),
            detail,
        });
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    crate::formats::read_json(path)
}

/// Checks every fixture under `dir` against the bundled MGRs.
pub fn run_suite(dir: &Path, jobs: usize) -> Result<SuiteReport> {
    let moves = json_files(&dir.join("moves"))?;
    let sums = json_files(&dir.join("sums"))?;
    if moves.is_empty() && sums.is_empty() {
        return Err(Error::Usage(format!(
            "no fixtures under {}/moves or {}/sums",
            dir.display(),
            dir.display()
        )));
    }
    let mgrs = bundled_mgrs();
    let mut run = Run {
        checks: 0,
        failures: Vec::new(),
    };
    for path in &moves {
        let name = path.display().to_string();
        let fx: MoveFixture = match read(path) {
            Ok(f) => f,
            Err(e) => {
                run.check(&name, "parse", Err(e), String::new);
                continue;
            }
        };
        let matches = apply_move(&fx.before, &fx.mv).map(|d| is_isomorphic(&d, &fx.after));
        run.check(&name, "apply", matches, || {
            "result differs from the recorded after diagram".into()
        });
        run.check(
            &name,
            "after_valid",
            fx.after.validate().map(|_| true).map_err(Error::InvalidDiagram),
            String::new,
        );
        for (label, m, _) in &mgrs {
            let counts = count_colorings(&fx.before, m, jobs)
                .and_then(|a| count_colorings(&fx.after, m, jobs).map(|b| (a, b)));
            let detail = match &counts {
                Ok((a, b)) => format!("{a} colorings before, {b} after"),
                Err(_) => String::new(),
            };
            run.check(&name, &format!("invariance:{label}"), counts.map(|(a, b)| a == b), || {
                detail.clone()
            });
        }
    }
    for path in &sums {
        let name = path.display().to_string();
        let fx: SumFixture = match read(path) {
            Ok(f) => f,
            Err(e) => {
                run.check(&name, "parse", Err(e), String::new);
                continue;
            }
        };
        for (label, m, associated) in &mgrs {
            let expect = if *associated {
                Some(false)
            } else {
                fx.semidirect_star
            };
            let Some(expect) = expect else { continue };
            let got = check_property_star(&fx.diagram, m).map(|r| r.holds);
            let detail = format!("expected {expect}, got {:?}", got.as_ref().ok());
            run.check(&name, &format!("star:{label}"), got.map(|h| h == expect), || {
                detail.clone()
            });
        }
    }
    Ok(SuiteReport {
        fixtures: moves.len() + sums.len(),
        checks: run.checks,
        failures: run.failures,
    })
}
