use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mgrack::coloring::{check_property_star, count_colorings, enumerate_colorings};
use mgrack::diagram::{apply_move, Diagram, MoveSpec};
use mgrack::formats::{
    parse_structure, read_json, schema_versions, to_json, CocycleFile, GFamilyFile, MgrFile, RackFile,
    Structure,
};
use mgrack::group::Subgroup;
use mgrack::rack::GFamily;
use mgrack::suite::run_suite;
use mgrack::{samples, Error, MultipleGroupRack};

#[derive(Parser)]
#[command(name = "mgrack", about = "Multiple group racks and diagram colorings", disable_version_flag = true)]
struct Cli {
    /// Print the crate and file schema versions
    #[arg(long)]
    version: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file against its axioms, or a diagram file
    Verify(VerifyArgs),
    /// Construct a structure and write it as JSON
    #[command(subcommand)]
    Build(Build),
    /// Count colorings of a diagram
    Count(CountArgs),
    /// Check whether some coloring gives the marked arc a non-identity color
    Star(StarArgs),
    /// Apply a local move to a diagram
    Move(MoveArgs),
    /// Run every fixture in a corpus directory
    Suite(SuiteArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "diagram", required_unless_present = "diagram")]
    structure: Option<PathBuf>,
    #[arg(long)]
    diagram: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Build {
    /// Associated MGR of a G-family
    Assoc {
        #[arg(long)]
        gfamily: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// MGR of a G-family over G ⋉ N
    Semidirect {
        #[arg(long)]
        gfamily: PathBuf,
        /// `full`, `trivial`, or comma-separated element indices
        #[arg(long, default_value = "full")]
        normal: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Abelian extension of an MGR by a cocycle
    Abelext {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// G-family of a rack over the cyclic group of its type
    Gfamily {
        #[arg(long)]
        rack: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A bundled sample structure
    Sample {
        #[arg(value_enum)]
        name: SampleName,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleName {
    #[value(name = "gfamily-z3-s3")]
    GfamilyZ3S3,
    Associated,
    Semidirect,
    ShiftRack,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long)]
    structure: PathBuf,
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    jobs: Option<usize>,
    /// Print only the number
    #[arg(long)]
    plain: bool,
    /// Also list up to this many colorings in lexicographic order
    #[arg(long)]
    enumerate: Option<usize>,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long)]
    structure: PathBuf,
}

#[derive(Args)]
struct MoveArgs {
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long = "move")]
    mv: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    fixtures: PathBuf,
    #[arg(long)]
    jobs: Option<usize>,
}

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotAGroup
        | Error::NotNormal
        | Error::NotARack(_)
        | Error::NotAGFamily(_)
        | Error::CocycleInvalid(_)
        | Error::InvalidMgr(_)
        | Error::InvalidDiagram(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Format(_) | Error::Json(_) => "format",
        Error::TooLarge { .. } => "too_large",
        Error::NotAGroup => "not_a_group",
        Error::NotNormal => "not_normal",
        Error::NotARack(_) => "not_a_rack",
        Error::NotAGFamily(_) => "not_a_gfamily",
        Error::CocycleInvalid(_) => "cocycle_invalid",
        Error::InvalidMgr(_) => "invalid_mgr",
        Error::InvalidDiagram(_) => "invalid_diagram",
        Error::MoveMismatch { .. } => "move_mismatch",
        Error::Usage(_) => "usage",
        Error::Io(_) => "io",
    }
}

struct Outcome {
    body: Value,
    code: u8,
}

impl Outcome {
    fn ok(body: Value) -> Outcome {
        Outcome { body, code: 0 }
    }
}

fn jobs(j: Option<usize>) -> usize {
    j.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn read_text(path: &Path) -> mgrack::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> mgrack::Result<Diagram> {
    mgrack::diagram::parse(&read_text(path)?)?.validated()
}

fn load_family(path: &Path) -> mgrack::Result<GFamily> {
    let f: GFamilyFile = serde_json::from_str(&read_text(path)?)?;
    let f = f.into_family()?;
    if let Some(v) = f.first_violation() {
        return Err(Error::NotAGFamily(v));
    }
    Ok(f)
}

/// An MGR file, checked against the axioms.
fn load_mgr(path: &Path) -> mgrack::Result<MultipleGroupRack> {
    let m = match parse_structure(&read_text(path)?)? {
        Structure::Mgr(m) => m,
        other => {
            return Err(Error::Usage(format!(
                "{} holds a {}, expected an MGR",
                path.display(),
                other.kind()
            )))
        }
    };
    if let Some(v) = m.verify_mgr_axioms().first_violation {
        return Err(Error::InvalidMgr(v));
    }
    Ok(m)
}

fn mgr_summary(m: &MultipleGroupRack) -> Value {
    json!({
        "kind": "mgr",
        "elements": m.len(),
        "components": m.components().iter().map(|g| g.order()).collect::<Vec<_>>(),
        "mcq": m.is_mcq(),
    })
}

fn emit(value: Value, structure: String, out: Option<PathBuf>) -> mgrack::Result<Outcome> {
    match out {
        Some(path) => {
            std::fs::write(&path, structure)?;
            let mut v = value;
            v["written"] = json!(path.display().to_string());
            Ok(Outcome::ok(v))
        }
        None => Ok(Outcome::ok(serde_json::from_str(&structure)?)),
    }
}

fn verify(args: VerifyArgs) -> mgrack::Result<Outcome> {
    if let Some(path) = args.diagram {
        let d = mgrack::diagram::parse(&read_text(&path)?)?;
        let violation = d.validate().err();
        return Ok(Outcome {
            code: if violation.is_some() { EXIT_VIOLATION } else { 0 },
            body: json!({
                "kind": "diagram",
                "ok": violation.is_none(),
                "arcs": d.arcs.len(),
                "crossings": d.crossings.len(),
                "vertices": d.vertices.len(),
                "violation": violation,
            }),
        });
    }
    let path = args.structure.expect("clap requires one");
    let s = match parse_structure(&read_text(&path)?) {
        Ok(s) => s,
        Err(e) if exit_code(&e) == EXIT_VIOLATION => {
            return Ok(Outcome {
                code: EXIT_VIOLATION,
                body: json!({"ok": false, "error": error_kind(&e), "message": e.to_string()}),
            })
        }
        Err(e) => return Err(e),
    };
    let body = match &s {
        Structure::Group(g) => json!({
            "kind": "group",
            "ok": true,
            "order": g.order(),
            "commutative": g.is_commutative(),
        }),
        Structure::Rack(r) => json!({
            "kind": "rack",
            "ok": r.verify_rack_axioms(),
            "size": r.size(),
            "quandle": r.is_quandle(),
            "type": r.rack_type().ok(),
        }),
        Structure::GFamily(f) => json!({
            "kind": "gfamily",
            "ok": f.first_violation().is_none(),
            "carrier": f.carrier(),
            "group_order": f.group().order(),
            "first_violation": f.first_violation(),
        }),
        Structure::Mgr(m) => {
            let report = m.verify_mgr_axioms();
            let mut v = mgr_summary(m);
            v["ok"] = json!(report.ok);
            v["first_violation"] = json!(report.first_violation);
            v
        }
    };
    let ok = body["ok"].as_bool() == Some(true);
    Ok(Outcome {
        body,
        code: if ok { 0 } else { EXIT_VIOLATION },
    })
}

fn parse_normal(spec: &str, f: &GFamily) -> mgrack::Result<Subgroup> {
    match spec {
        "full" => Ok(Subgroup::full(f.group())),
        "trivial" => Ok(Subgroup::trivial(f.group())),
        list => {
            let members = list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Usage(format!("bad element index {t:?} in --normal")))
                })
                .collect::<mgrack::Result<Vec<_>>>()?;
            Subgroup::new(f.group(), &members)
        }
    }
}

fn build(b: Build) -> mgrack::Result<Outcome> {
    match b {
        Build::Assoc { gfamily, out } => {
            let m = MultipleGroupRack::associated(&load_family(&gfamily)?)?;
            emit(mgr_summary(&m), to_json(&MgrFile::from_mgr(&m)), out)
        }
        Build::Semidirect {
            gfamily,
            normal,
            out,
        } => {
            let f = load_family(&gfamily)?;
            let n = parse_normal(&normal, &f)?;
            let m = MultipleGroupRack::semidirect(&f, &n)?;
            emit(mgr_summary(&m), to_json(&MgrFile::from_mgr(&m)), out)
        }
        Build::Abelext {
            structure,
            cocycle,
            out,
        } => {
            let base = load_mgr(&structure)?;
            let c: CocycleFile = read_json(&cocycle)?;
            let m = base.abelian_extension(&c.into_cocycle()?)?;
            emit(mgr_summary(&m), to_json(&MgrFile::from_mgr(&m)), out)
        }
        Build::Gfamily { rack, out } => {
            let r: RackFile = read_json(&rack)?;
            let f = GFamily::from_rack(&r.into_rack()?)?;
            let v = json!({"kind": "gfamily", "carrier": f.carrier(), "group_order": f.group().order()});
            emit(v, to_json(&GFamilyFile::from_family(&f)), out)
        }
        Build::Sample { name, out } => {
            let m = match name {
                SampleName::GfamilyZ3S3 => {
                    let f = GFamily::example_z3_s3();
                    let v = json!({"kind": "gfamily", "carrier": 3, "group_order": 6});
                    return emit(v, to_json(&GFamilyFile::from_family(&f)), out);
                }
                SampleName::Associated => samples::associated_example(),
                SampleName::Semidirect => samples::semidirect_example(),
                SampleName::ShiftRack => samples::associated_shift_rack(),
            };
            emit(mgr_summary(&m), to_json(&MgrFile::from_mgr(&m)), out)
        }
    }
}

fn count(a: CountArgs) -> mgrack::Result<Outcome> {
    let d = load_diagram(&a.diagram)?;
    let m = load_mgr(&a.structure)?;
    let n = count_colorings(&d, &m, jobs(a.jobs))?;
    if a.plain {
        println!("{n}");
        return Ok(Outcome {
            body: Value::Null,
            code: 0,
        });
    }
    let mut body = json!({
        "count": n,
        "arcs": d.arcs.len(),
        "elements": m.len(),
    });
    if let Some(k) = a.enumerate {
        let arcs: Vec<u32> = d.arc_ids().map(|a| a.0).collect();
        let list: Vec<Value> = enumerate_colorings(&d, &m, Some(k))?
            .into_iter()
            .map(|c| {
                let labels: Vec<String> = c.colors.iter().map(|&x| m.label(x)).collect();
                json!({"colors": c.colors, "labels": labels})
            })
            .collect();
        body["arc_order"] = json!(arcs);
        body["colorings"] = json!(list);
    }
    Ok(Outcome::ok(body))
}

fn star(a: StarArgs) -> mgrack::Result<Outcome> {
    let d = load_diagram(&a.diagram)?;
    let m = load_mgr(&a.structure)?;
    let r = check_property_star(&d, &m)?;
    let witness = r.witness.as_ref().map(|w| {
        d.arcs
            .iter()
            .zip(&w.colors)
            .map(|(arc, &c)| json!({"arc": arc.id, "color": c, "label": m.label(c)}))
            .collect::<Vec<_>>()
    });
    Ok(Outcome {
        code: if r.holds { 0 } else { EXIT_FALSE },
        body: json!({"holds": r.holds, "marked_arc": r.marked_arc, "witness": witness}),
    })
}

fn apply(a: MoveArgs) -> mgrack::Result<Outcome> {
    let d = load_diagram(&a.diagram)?;
    let mv: MoveSpec = serde_json::from_str(&read_text(&a.mv)?)?;
    let out = apply_move(&d, &mv)?;
    let text = mgrack::diagram::serialize(&out);
    let v = json!({"kind": "diagram", "arcs": out.arcs.len(), "crossings": out.crossings.len()});
    emit(v, text, a.out)
}

fn suite(a: SuiteArgs) -> mgrack::Result<Outcome> {
    let report = run_suite(&a.fixtures, jobs(a.jobs))?;
    Ok(Outcome {
        code: if report.ok() { 0 } else { EXIT_VIOLATION },
        body: serde_json::to_value(&report)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.version {
        let v = json!({"mgrack": env!("CARGO_PKG_VERSION"), "schemas": schema_versions()});
        print!("{}", to_json(&v));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("no command given; see `mgrack --help`");
        return ExitCode::from(EXIT_USAGE);
    };
    let result = match command {
        Command::Verify(a) => verify(a),
        Command::Build(b) => build(b),
        Command::Count(a) => count(a),
        Command::Star(a) => star(a),
        Command::Move(a) => apply(a),
        Command::Suite(a) => suite(a),
    };
    match result {
        Ok(o) => {
            if !o.body.is_null() {
                print!("{}", to_json(&o.body));
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            let v = json!({"error": error_kind(&e), "message": e.to_string()});
            eprint!("{}", to_json(&v));
            ExitCode::from(exit_code(&e))
        }
    }
}
