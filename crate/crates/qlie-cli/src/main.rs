//! Batch front end over the JSON interchange format: analyze, reduce,
//! verify, generate. JSON is the source of truth; human output is a
//! secondary rendering. Exit codes are a contract:
//!
//!   0 success, 1 failed checks or internal limitation, 2 parse/schema,
//!   3 Jacobi failure, 4 not nil-invariant, 5 not solvable,
//!   6 invalid generator parameters.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qlie::catalog::{generate, standard_corpus, Family, FamilySpec};
use qlie::checks::run_checks;
use qlie::json::{
    analyze, chain_to_doc, metric_to_doc, parse_metric, to_json, MetaDoc, NilInvarianceDoc,
};
use qlie::rational::{format_rational, parse_rational};
use qlie::reduction::complete_reduction;
use qlie::{Error, MetricLieAlgebra};

#[derive(Parser)]
#[command(name = "qlie", version, about = "Exact metric Lie algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural and metric analysis of one instance
    Analyze {
        path: PathBuf,
        /// Random vectors for the nil-invariance sample
        #[arg(long, default_value_t = 64)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the JSON report instead of the human summary
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to a file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce to the positive definite abelian core
    Reduce {
        path: PathBuf,
        /// Write the full chain as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the consistency check suite on a file or a corpus directory
    Verify {
        path: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Write instances from the named families
    Generate {
        /// abelian | heisenberg | oscillator | r2 | double_extension_chain | random_solvable
        family: Option<String>,
        /// Family parameters, each a rational like 3 or 1/2
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the entire standard corpus under this directory
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let (code, kind) = match &e {
            Error::Parse(_) => (2, "parse"),
            Error::NotSquare { .. }
            | Error::NotSymmetric { .. }
            | Error::BadBracketIndex { .. }
            | Error::DuplicateBracket { .. }
            | Error::ZeroBracketCoefficient { .. }
            | Error::DimensionMismatch(_) => (2, "schema"),
            Error::JacobiFailure { .. } => (3, "jacobi"),
            Error::NotNilInvariant => (4, "not_nil_invariant"),
            Error::NonSolvable => (5, "non_solvable"),
            Error::InvalidParams(_) => (6, "invalid_params"),
            Error::NoRationalIsotropicVector => (1, "no_rational_isotropic_vector"),
            _ => (1, "internal"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, kind: "io", message: format!("{}: {}", path.display(), e) }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let diag = serde_json::json!({
                "error": { "code": f.code, "kind": f.kind, "message": f.message }
            });
            eprintln!("{}", diag);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Analyze { path, samples, seed, json, out } => {
            let (m, _) = load(&path)?;
            let report = analyze(&m, samples, seed);
            let text = to_json(&report);
            if let Some(out) = &out {
                fs::write(out, &text).map_err(|e| io_failure(out, e))?;
            }
            if json {
                print!("{}", text);
            } else {
                print_analysis(&report);
            }
            Ok(0)
        }
        Cmd::Reduce { path, out, json } => {
            let (m, _) = load(&path)?;
            if !m.algebra.is_solvable() {
                return Err(Error::NonSolvable.into());
            }
            if !m.is_invariant() && !m.nil_invariance_check(64, 0).is_certified() {
                return Err(Error::NotNilInvariant.into());
            }
            let chain = complete_reduction(&m)?;
            let doc = chain_to_doc(m.dim(), &chain);
            let text = to_json(&doc);
            if let Some(out) = &out {
                fs::write(out, &text).map_err(|e| io_failure(out, e))?;
            }
            if json {
                print!("{}", text);
            } else {
                let radical = match &doc.radical_step {
                    Some(r) => format!("radical step removing dim {}", r.radical.len()),
                    None => "no radical step".to_string(),
                };
                println!("steps: {} ({})", doc.step_count, radical);
                println!(
                    "terminal: dim {}, {}abelian, {}",
                    doc.terminal_dim,
                    if doc.terminal.brackets.is_empty() { "" } else { "non-" },
                    if doc.terminal_positive_definite {
                        "positive definite"
                    } else {
                        "not positive definite"
                    }
                );
            }
            Ok(0)
        }
        Cmd::Verify { path, corpus, samples, seed, json } => {
            let files: Vec<(String, PathBuf)> = match (&path, &corpus) {
                (Some(p), None) => vec![(p.display().to_string(), p.clone())],
                (None, Some(dir)) => corpus_files(dir)?,
                _ => {
                    return Err(Error::InvalidParams(
                        "verify takes exactly one of a file path or --corpus".into(),
                    )
                    .into())
                }
            };
            let mut instances = Vec::new();
            for (name, file) in &files {
                let (m, _) = load(file)?;
                let checks: Vec<CheckDoc> = run_checks(&m, samples, seed)
                    .into_iter()
                    .map(|c| CheckDoc {
                        name: c.name.to_string(),
                        passed: c.passed,
                        detail: c.detail,
                    })
                    .collect();
                let all_passed = checks.iter().all(|c| c.passed);
                instances.push(InstanceReport { path: name.clone(), all_passed, checks });
            }
            let all_passed = instances.iter().all(|i| i.all_passed);
            if json {
                let report = VerifyReport { all_passed, instances };
                print!("{}", to_json(&report));
            } else {
                for inst in &instances {
                    println!("{}:", inst.path);
                    for c in &inst.checks {
                        if c.passed {
                            println!("  PASS {}", c.name);
                        } else {
                            println!("  FAIL {} ({})", c.name, c.detail);
                        }
                    }
                }
                let total: usize = instances.iter().map(|i| i.checks.len()).sum();
                println!(
                    "{}: {} checks on {} instances",
                    if all_passed { "all passed" } else { "FAILURES" },
                    total,
                    instances.len()
                );
            }
            Ok(if all_passed { 0 } else { 1 })
        }
        Cmd::Generate { family, params, seed, out, corpus } => {
            match (family, corpus) {
                (Some(fam), None) => {
                    let family = Family::parse(&fam)?;
                    let params = params
                        .iter()
                        .map(|p| {
                            parse_rational(p).map_err(|_| {
                                Error::InvalidParams(format!("bad rational parameter {:?}", p))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let spec = FamilySpec { family, params, seed };
                    let text = instance_json(&spec)?;
                    match &out {
                        Some(out) => {
                            fs::write(out, &text).map_err(|e| io_failure(out, e))?;
                            println!("{}", out.display());
                        }
                        None => print!("{}", text),
                    }
                    Ok(0)
                }
                (None, Some(dir)) => {
                    for (rel, spec) in standard_corpus() {
                        let path = dir.join(format!("{}.json", rel));
                        if let Some(parent) = path.parent() {
                            fs::create_dir_all(parent).map_err(|e| io_failure(parent, e))?;
                        }
                        let text = instance_json(&spec)?;
                        fs::write(&path, &text).map_err(|e| io_failure(&path, e))?;
                        println!("{}", path.display());
                    }
                    Ok(0)
                }
                _ => Err(Error::InvalidParams(
                    "generate takes exactly one of a family or --corpus".into(),
                )
                .into()),
            }
        }
    }
}

fn load(path: &Path) -> Result<(MetricLieAlgebra, Option<MetaDoc>), Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(parse_metric(&text)?)
}

fn instance_json(spec: &FamilySpec) -> Result<String, Failure> {
    let m = generate(spec)?;
    let meta = MetaDoc {
        family: spec.family.name().to_string(),
        params: spec.params.iter().map(format_rational).collect(),
        seed: spec.seed,
    };
    Ok(to_json(&metric_to_doc(&m, Some(meta))))
}

/// JSON files under a corpus directory, sorted by relative path.
fn corpus_files(dir: &Path) -> Result<Vec<(String, PathBuf)>, Failure> {
    fn walk(dir: &Path, root: &Path, out: &mut Vec<(String, PathBuf)>) -> std::io::Result<()> {
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, root, out)?;
            } else if path.extension().is_some_and(|e| e == "json") {
                let rel = path.strip_prefix(root).unwrap_or(&path).display().to_string();
                out.push((rel, path));
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(dir, dir, &mut out).map_err(|e| io_failure(dir, e))?;
    if out.is_empty() {
        return Err(Failure {
            code: 2,
            kind: "io",
            message: format!("{}: no .json files found", dir.display()),
        });
    }
    out.sort();
    Ok(out)
}

#[derive(Serialize)]
struct CheckDoc {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct InstanceReport {
    path: String,
    all_passed: bool,
    checks: Vec<CheckDoc>,
}

#[derive(Serialize)]
struct VerifyReport {
    all_passed: bool,
    instances: Vec<InstanceReport>,
}

fn print_analysis(r: &qlie::AnalysisReport) {
    println!("dim {}, basis {}", r.dim, r.basis_names.join(", "));
    println!(
        "solvable: {}   nilpotent: {}   invariant: {}",
        yn(r.solvable),
        yn(r.nilpotent),
        yn(r.is_invariant)
    );
    println!(
        "signature: ({}, {}, {})   witt index: {}",
        r.signature.plus, r.signature.minus, r.signature.null_dim, r.witt_index
    );
    println!(
        "derived series dims: {:?}   lower central dims: {:?}",
        r.derived_series_dims, r.lower_central_series_dims
    );
    let dim_of = |s: &Option<Vec<Vec<String>>>| match s {
        Some(v) => v.len().to_string(),
        None => "-".to_string(),
    };
    println!(
        "center dim {}; nilradical dim {}; metric radical dim {}; j0 dim {}; reduced core dim {}",
        r.center.len(),
        dim_of(&r.nilradical),
        r.metric_radical.len(),
        dim_of(&r.j0),
        r.reduced_core.len()
    );
    if let Some(w) = &r.invariance_witness {
        println!(
            "invariance fails on ({}, {}, {}) = basis ({}, {}, {})",
            w.i, w.j, w.k, w.names[0], w.names[1], w.names[2]
        );
    }
    match &r.nil_invariance {
        NilInvarianceDoc::Certified { samples, seed, vectors_tested } => println!(
            "nil-invariance: certified on {} vectors (samples {}, seed {})",
            vectors_tested, samples, seed
        ),
        NilInvarianceDoc::Counterexample { vector, witness_pair } => println!(
            "nil-invariance: counterexample at [{}], basis pair ({}, {})",
            vector.join(", "),
            witness_pair[0],
            witness_pair[1]
        ),
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
