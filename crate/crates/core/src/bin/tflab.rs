use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use tflab::io::enumerate::{DEFAULT_MAX_COMPLEMENTED, DEFAULT_MAX_POINTS};
use tflab::io::fuzz::{invariant_suite, seed_from_env};
use tflab::io::report::{render_properties, render_theorems, verdict_text};
use tflab::io::{build_report, enumerate_subframes, enumerate_topoframes, parse, print, same_document, to_json, Document};
use tflab::realfun::{quasi_inverse, separating_element, SetDescriptor, StepFunction};
use tflab::ring_props::{CheckConfig, Verdict};

const EXIT_VALIDATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FAIL: u8 = 3;

#[derive(Parser)]
#[command(name = "tflab", version, about = "Finite topoframes and their rings of continuous functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document.
    Validate { file: PathBuf },
    /// Property flags with witnesses.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Theorem verdicts for a document, or for every enumerated instance.
    Verify {
        #[arg(required_unless_present = "enumerate")]
        file: Option<PathBuf>,
        /// Enumerate every topology on N points.
        #[arg(long, value_name = "N", conflicts_with = "file")]
        enumerate: Option<usize>,
        /// With FILE: enumerate every subframe of its lattice instead of using its `tau`.
        #[arg(long, requires = "file")]
        subframes: bool,
        /// Raise the enumeration bound.
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
        #[arg(long)]
        json: bool,
        /// Print every instance, not only failures.
        #[arg(long)]
        verbose: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate a named function on a set of reals.
    Eval {
        file: PathBuf,
        #[arg(long = "fn")]
        name: String,
        #[arg(long)]
        set: String,
    },
    /// Ring operations on named functions.
    Ring {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        /// Comma-separated names for `separate`.
        #[arg(long, value_delimiter = ',')]
        s: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        t: Vec<String>,
    },
    /// Randomized invariant suite on the document's topoframe.
    Fuzz {
        file: PathBuf,
        /// Defaults to $TFLAB_SEED.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Add,
    Mul,
    Min,
    Max,
    Neg,
    Abs,
    QuasiInverse,
    Separate,
}

enum Failure {
    Usage(String),
    Validation(String),
    Check(String),
}

type Outcome = Result<String, Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn named<'a>(doc: &'a Document, name: Option<&str>, flag: &str) -> Result<&'a StepFunction, Failure> {
    let name = name.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this operation")))?;
    doc.function(name).ok_or_else(|| Failure::Usage(format!("no function named `{name}`")))
}

fn config(seed: Option<u64>) -> CheckConfig {
    let mut c = CheckConfig::default();
    if let Some(s) = seed {
        c.seed = s;
    }
    c
}

fn validate(file: &Path) -> Outcome {
    let doc = load(file)?;
    let tf = &doc.topoframe;
    let reparsed = parse(&print(&doc)).map_err(|e| Failure::Check(format!("printed form does not parse: {e}")))?;
    if !same_document(&doc, &reparsed) {
        return Err(Failure::Check("printed form differs on reparse".into()));
    }
    Ok(format!(
        "valid: {} elements, {} opens, {} clopens, {} functions",
        tf.lattice().size(),
        tf.opens().len(),
        tf.clopen_algebra().len(),
        doc.functions.len()
    ))
}

fn report(file: &Path, json: bool, seed: Option<u64>) -> Outcome {
    let doc = load(file)?;
    let id = file.file_stem().map_or("document".into(), |s| s.to_string_lossy().into_owned());
    let r = build_report(&id, &doc.topoframe, &config(seed));
    Ok(if json { to_json(&r) } else { render_properties(&r).trim_end().to_string() })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    file: Option<&Path>,
    enumerate: Option<usize>,
    subframes: bool,
    max_points: usize,
    json: bool,
    verbose: bool,
    seed: Option<u64>,
) -> Outcome {
    let instances: Vec<(String, Arc<tflab::topoframe::Topoframe>)> = match (file, enumerate) {
        (_, Some(n)) => enumerate_topoframes(n, max_points)
            .map_err(|e| Failure::Usage(e.to_string()))?
            .into_iter()
            .map(|i| (i.id, i.topoframe))
            .collect(),
        (Some(path), None) => {
            let doc = load(path)?;
            let stem = path.file_stem().map_or("document".into(), |s| s.to_string_lossy().into_owned());
            if subframes {
                enumerate_subframes(doc.topoframe.lattice().clone(), DEFAULT_MAX_COMPLEMENTED)
                    .map_err(|e| Failure::Usage(e.to_string()))?
                    .into_iter()
                    .map(|i| (format!("{stem}-{}", i.id), i.topoframe))
                    .collect()
            } else {
                vec![(stem, doc.topoframe)]
            }
        }
        (None, None) => return Err(Failure::Usage("give FILE or --enumerate N".into())),
    };
    let cfg = config(seed);
    let reports: Vec<_> = instances.par_iter().map(|(id, tf)| build_report(id, tf, &cfg)).collect();

    let mut fails = 0;
    let mut unmet = 0;
    for r in &reports {
        for v in &r.theorems.verdicts {
            match v.verdict {
                Verdict::Fail { .. } => fails += 1,
                Verdict::HypothesisNotMet { .. } => unmet += 1,
                Verdict::Pass => {}
            }
        }
    }
    let mut out = String::new();
    if json {
        out = serde_json::to_string_pretty(&reports).expect("reports serialise");
    } else {
        for r in &reports {
            if verbose || r.theorems.has_failure() {
                out.push_str(&render_theorems(r));
                for v in r.theorems.failures() {
                    out.push_str(&format!("  failing: {} {}\n", v.theorem, verdict_text(&v.verdict)));
                }
            }
        }
        out.push_str(&format!(
            "{} instances, {fails} FAIL, {unmet} HYPOTHESIS-NOT-MET",
            reports.len()
        ));
    }
    if fails > 0 {
        Err(Failure::Check(out))
    } else {
        Ok(out)
    }
}

fn eval(file: &Path, name: &str, set: &str) -> Outcome {
    let doc = load(file)?;
    let f = named(&doc, Some(name), "fn")?;
    let x: SetDescriptor = set.parse().map_err(|e| Failure::Usage(format!("--set: {e}")))?;
    Ok(doc.topoframe.lattice().label(f.evaluate(&x)).to_string())
}

fn ring(file: &Path, op: Op, f: Option<&str>, g: Option<&str>, s: &[String], t: &[String]) -> Outcome {
    let doc = load(file)?;
    let binary = |op: fn(&StepFunction, &StepFunction) -> Result<StepFunction, tflab::realfun::RealFunError>| {
        let (a, b) = (named(&doc, f, "f")?, named(&doc, g, "g")?);
        op(a, b).map_err(|e| Failure::Validation(e.to_string()))
    };
    let result = match op {
        Op::Add => binary(StepFunction::add)?,
        Op::Mul => binary(StepFunction::mul)?,
        Op::Min => binary(StepFunction::min)?,
        Op::Max => binary(StepFunction::max)?,
        Op::Neg => named(&doc, f, "f")?.negate(),
        Op::Abs => named(&doc, f, "f")?.abs(),
        Op::QuasiInverse => quasi_inverse(named(&doc, f, "f")?),
        Op::Separate => {
            let lookup = |names: &[String]| -> Result<Vec<StepFunction>, Failure> {
                names.iter().map(|n| named(&doc, Some(n), "s/--t").cloned()).collect()
            };
            let (s, t) = (lookup(s)?, lookup(t)?);
            separating_element(&doc.topoframe, &s, &t).map_err(|e| Failure::Validation(e.to_string()))?
        }
    };
    Ok(tflab::io::document::function_literal(&result))
}

fn fuzz(file: &Path, seed: Option<u64>, count: usize) -> Outcome {
    let doc = load(file)?;
    let seed = seed.unwrap_or_else(seed_from_env);
    let extra: Vec<StepFunction> = doc.functions.iter().map(|(_, f)| f.clone()).collect();
    let outcomes = invariant_suite(&doc.topoframe, &extra, seed, count);
    let mut out = format!("seed {seed}, {count} rounds\n");
    let mut failed = false;
    for o in &outcomes {
        match &o.failure {
            None => out.push_str(&format!("  ok    {} ({} checks)\n", o.name, o.checked)),
            Some(why) => {
                failed = true;
                out.push_str(&format!("  FAIL  {}: {why}\n", o.name));
            }
        }
    }
    let out = out.trim_end().to_string();
    if failed {
        Err(Failure::Check(out))
    } else {
        Ok(out)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Report { file, json, seed } => report(file, *json, *seed),
        Command::Verify { file, enumerate, subframes, max_points, json, verbose, seed } => {
            verify(file.as_deref(), *enumerate, *subframes, *max_points, *json, *verbose, *seed)
        }
        Command::Eval { file, name, set } => eval(file, name, set),
        Command::Ring { file, op, f, g, s, t } => ring(file, *op, f.as_deref(), g.as_deref(), s, t),
        Command::Fuzz { file, seed, count } => fuzz(file, *seed, *count),
    };
    match outcome {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Check(msg)) => {
            println!("{msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
