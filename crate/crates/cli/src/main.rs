use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperreduce::error::Error;
use hyperreduce::reductions::{
    catalog, catalog_entry, reduce, CatalogEntry, ReductionId, ReductionRequest, ZPolicy,
};
use hyperreduce::series::{eval_pfq, EvalResult, PfqSpec, SeriesStatus, DEFAULT_MAX_TERMS, DEFAULT_TOL};
use hyperreduce::verifier::{run_case_with, run_suite_with, FailureKind, SuiteOptions, VerificationCase};

const MAX_TERMS_VAR: &str = "HYPERREDUCE_MAX_TERMS";

/// Generalized hypergeometric series, reduction formulas and their
/// numerical verification.
#[derive(Debug, Parser)]
#[command(name = "hyperreduce", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate pFq(upper; lower; z) by direct summation.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Evaluate a catalog reduction in closed form.
    #[command(allow_negative_numbers = true)]
    Reduce(ReduceArgs),
    /// Check every selected reduction against the series on random cases.
    Verify(VerifyArgs),
    /// List the reduction catalog.
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Upper parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    upper: Vec<f64>,
    /// Lower parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lower: Vec<f64>,
    #[arg(long)]
    z: f64,
    /// Relative stopping tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Term cap (default: $HYPERREDUCE_MAX_TERMS or 200000).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_terms: Option<u64>,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    id: ReductionId,
    /// `a`: a single value, or the comma-separated list for list entries.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<f64>>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Argument; optional for entries with a fixed argument.
    #[arg(long)]
    z: Option<f64>,
    /// Also evaluate the series and compare at the catalog tolerance.
    #[arg(long)]
    check: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Restrict to these entries (comma separated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<ReductionId>,
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
    cases: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run on one thread.
    #[arg(long)]
    serial: bool,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    #[arg(long)]
    id: Option<ReductionId>,
}

/// A failed command and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_precondition() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

fn max_terms_default() -> Result<u64, Failure> {
    match std::env::var(MAX_TERMS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage(format!("{MAX_TERMS_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_TERMS),
    }
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn print_eval(r: &EvalResult) {
    println!("value       {}", sci(r.value));
    println!("abs_err_est {}", sci(r.abs_err_est));
    println!("terms_used  {}", r.terms_used);
    println!("status      {:?}", r.status);
}

fn cmd_eval(args: EvalArgs) -> Result<u8, Failure> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Failure::usage("--tol must be positive"));
    }
    if args.upper.iter().chain(&args.lower).chain([&args.z]).any(|x| !x.is_finite()) {
        return Err(Failure::usage("parameters and z must be finite"));
    }
    let max_terms = match args.max_terms {
        Some(n) => n,
        None => max_terms_default()?,
    };
    let spec = PfqSpec::new(args.upper, args.lower, args.z);
    let r = eval_pfq(&spec, max_terms, args.tol)?;
    print_eval(&r);
    if r.status == SeriesStatus::MaxTermsReached {
        eprintln!("error: {}", Error::NoConvergence { max_terms });
        return Ok(3);
    }
    Ok(0)
}

fn build_request(args: &ReduceArgs) -> Result<ReductionRequest, Failure> {
    let entry = catalog_entry(args.id);
    let mut req = ReductionRequest::new(args.id);
    if let Some(a) = &args.a {
        if entry.takes_list {
            req = req.list(a);
        } else if let [x] = a.as_slice() {
            req = req.scalar("a", *x);
        } else {
            return Err(Failure::usage(format!("{} takes a single value for --a", args.id)));
        }
    }
    for (name, v) in [("b", args.b), ("c", args.c), ("d", args.d)] {
        if let Some(v) = v {
            req = req.scalar(name, v);
        }
    }
    for (name, v) in [("n", args.n), ("m", args.m), ("k", args.k)] {
        if let Some(v) = v {
            req = req.shift(name, v);
        }
    }
    if let Some(z) = args.z {
        req = req.at(z);
    }
    req.validate_signature()?;
    Ok(req)
}

fn cmd_reduce(args: ReduceArgs) -> Result<u8, Failure> {
    let req = build_request(&args)?;
    let r = reduce(&req)?;
    println!("{} at z = {}", req.id, sci(req.z));
    println!("value       {}", sci(r.value));
    println!("abs_err_est {}", sci(r.abs_err_est));
    if !args.check {
        return Ok(0);
    }
    let max_terms = max_terms_default()?;
    let case = VerificationCase::new(format!("{}-cli", req.id), req);
    let res = run_case_with(&case, max_terms, |_| Ok(r));
    println!("series      {}", sci(res.lhs));
    println!("rel_err     {}", sci(res.rel_err));
    match res.failure_kind {
        None => {
            println!("pass (tol_rel {:e}, tol_abs {:e})", case.tol_rel, case.tol_abs);
            Ok(0)
        }
        Some(FailureKind::Mismatch) => {
            println!("FAIL (tol_rel {:e}, tol_abs {:e})", case.tol_rel, case.tol_abs);
            Ok(1)
        }
        Some(_) => Err(Failure {
            code: 3,
            message: res.detail.unwrap_or_else(|| "series evaluation failed".into()),
        }),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let entries = if args.only.is_empty() { ReductionId::ALL.to_vec() } else { args.only };
    let opts = SuiteOptions {
        max_terms: max_terms_default()?,
        parallel: !args.serial,
    };
    let report = run_suite_with(&entries, args.cases, args.seed, opts)?;
    let text = match args.format {
        Format::Json => report.to_jsonl(),
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    };
    match &args.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    let totals = report.totals();
    if args.out.is_some() || !matches!(args.format, Format::Table) {
        eprintln!(
            "{} cases, {} passed, {} failed, {} skipped",
            totals.cases, totals.passed, totals.failed, totals.skipped
        );
    }
    Ok(if totals.failed == 0 { 0 } else { 1 })
}

fn z_text(entry: &CatalogEntry) -> String {
    match entry.z {
        ZPolicy::Fixed(z) => format!("{z}"),
        ZPolicy::Free => "free".into(),
    }
}

fn cmd_catalog(args: CatalogArgs) -> Result<u8, Failure> {
    match args.id {
        Some(id) => {
            let e = catalog_entry(id);
            let (rel, abs) = e.tolerance_class().tolerances();
            println!("id          {}", e.id);
            println!("signature   {}", e.signature());
            println!("z           {}", z_text(e));
            println!("lhs         {}", e.lhs);
            println!("constraints {}", e.constraints);
            println!("tolerance   rel {rel:e}, abs {abs:e}");
            println!("anchor      {}", e.anchor);
        }
        None => {
            println!("{:<18} {:<24} {:<6} anchor", "id", "signature", "z");
            for e in catalog() {
                println!("{:<18} {:<24} {:<6} {}", e.id.to_string(), e.signature(), z_text(e), e.anchor);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Catalog(a) => cmd_catalog(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
