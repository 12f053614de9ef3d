//! `loosepath`: Laplacian H-spectrum of the k-uniform loose path of length
//! three.
//!
//! Exit status: 0 when every check passed, 1 on I/O failure, 2 on invalid
//! arguments, 3 when a bracket does not isolate exactly one root, 4 when a
//! catalog root has no eigenvector witness, 5 when the spectrum disagrees
//! with the claimed count or two cases merge, 6 when a sequence check fails.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loosepath::{
    build_loose_path, compute_spectrum_with, eig_residual, export, sequence, sweep, CaseId,
    Discrepancy, Error, RootFindError, SpectrumOptions, SpectrumReport, MAX_K, RESIDUAL_TOL,
};
use serde::Serialize;

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ISOLATION: u8 = 3;
const EXIT_RESIDUAL: u8 = 4;
const EXIT_DISCREPANCY: u8 = 5;
const EXIT_SEQUENCE: u8 = 6;

#[derive(Parser)]
#[command(
    name = "loosepath",
    version,
    about = "Laplacian H-spectrum of the k-uniform loose path of length three"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute, verify and deduplicate the spectrum for one k.
    Spectrum(SpectrumArgs),
    /// Re-check every eigenpair against the tensor definition.
    Verify(SpectrumArgs),
    /// Spectra for a range of k with distances to the limit points.
    Sweep(SweepArgs),
    /// Follow one case root across k and check its monotone limit.
    Sequence(SequenceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format [default: table for spectrum/verify, csv otherwise].
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    k: usize,
    /// Bisection tolerance on lambda.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Radius for merging roots into one eigenvalue.
    #[arg(long, default_value_t = 1e-9)]
    dedup_tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    kmin: usize,
    #[arg(long)]
    kmax: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SequenceArgs {
    /// Case tag, e.g. O-ii or E-iv-mid.
    #[arg(long = "case")]
    case_id: String,
    #[arg(long)]
    kmax: usize,
    #[command(flatten)]
    out: OutputArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Domain(_) => EXIT_USAGE,
            Error::RootCount { .. } | Error::RootFind(RootFindError::CountMismatch { .. }) => {
                EXIT_ISOLATION
            }
            Error::RootFind(_) => EXIT_ISOLATION,
            Error::Reconstruction { .. } => EXIT_RESIDUAL,
            _ => EXIT_IO,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

fn open_output(out: &OutputArgs) -> Result<Box<dyn Write>, Failure> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", path.display()),
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn check_k(k: usize) -> Result<(), Failure> {
    if (3..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Failure::usage(format!("k = {k} must lie in [3, {MAX_K}]")))
    }
}

fn spectrum_options(args: &SpectrumArgs) -> Result<SpectrumOptions, Failure> {
    check_k(args.k)?;
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Failure::usage(format!(
            "--tol {} must be positive",
            args.tol
        )));
    }
    if !(args.dedup_tol >= args.tol && args.dedup_tol.is_finite()) {
        return Err(Failure::usage(format!(
            "--dedup-tol {} must be at least --tol {}",
            args.dedup_tol, args.tol
        )));
    }
    Ok(SpectrumOptions {
        tol: args.tol,
        dedup_tol: args.dedup_tol,
        ..SpectrumOptions::default()
    })
}

fn warn_all(warnings: &[Discrepancy], k: usize) {
    for w in warnings {
        eprintln!("warning: k = {k}: {w}");
    }
}

/// Exit code for a report's discrepancies; unverified roots take precedence.
fn report_status(warnings: &[Discrepancy]) -> u8 {
    if warnings
        .iter()
        .any(|w| matches!(w, Discrepancy::Unverified { .. }))
    {
        EXIT_RESIDUAL
    } else if warnings.is_empty() {
        0
    } else {
        EXIT_DISCREPANCY
    }
}

fn run_spectrum(args: &SpectrumArgs) -> Result<u8, Failure> {
    let opts = spectrum_options(args)?;
    let report = compute_spectrum_with(args.k, &opts)?;
    let mut out = open_output(&args.out)?;
    match args.out.format.unwrap_or(Format::Table) {
        Format::Table => out.write_all(export::spectrum_table(&report).as_bytes())?,
        Format::Csv => export::spectrum_csv(&report, &mut out)?,
        Format::Json => export::json(&report, &mut out)?,
    }
    out.flush()?;
    let warnings = report.warnings();
    warn_all(&warnings, report.k);
    Ok(report_status(&warnings))
}

#[derive(Serialize)]
struct VerifyRow {
    case_id: CaseId,
    lambda: f64,
    residual: f64,
    pass: bool,
}

fn verify_rows(report: &SpectrumReport) -> Result<Vec<VerifyRow>, Failure> {
    let path = build_loose_path(report.k, 3)?;
    report
        .case_results
        .iter()
        .map(|r| {
            let residual = match r.cluster_id {
                Some(c) => eig_residual(&path, r.lambda, &report.entries[c].x)?,
                None => r.residual,
            };
            Ok(VerifyRow {
                case_id: r.case_id,
                lambda: r.lambda,
                residual,
                pass: r.cluster_id.is_some() && residual <= RESIDUAL_TOL,
            })
        })
        .collect()
}

fn run_verify(args: &SpectrumArgs) -> Result<u8, Failure> {
    let opts = spectrum_options(args)?;
    let report = compute_spectrum_with(args.k, &opts)?;
    let rows = verify_rows(&report)?;
    let mut out = open_output(&args.out)?;
    match args.out.format.unwrap_or(Format::Table) {
        Format::Table => {
            for r in &rows {
                writeln!(
                    out,
                    "{:<12} {:>20} {:>11.3e}  {}",
                    r.case_id.tag(),
                    export::sig17(r.lambda),
                    r.residual,
                    if r.pass { "PASS" } else { "FAIL" }
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "k,case_id,lambda,residual,status")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    report.k,
                    r.case_id,
                    export::sig17(r.lambda),
                    export::sig17(r.residual),
                    if r.pass { "pass" } else { "fail" }
                )?;
            }
        }
        Format::Json => export::json(&rows, &mut out)?,
    }
    out.flush()?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        eprintln!(
            "warning: k = {}: {failed} case(s) failed verification",
            report.k
        );
        Ok(EXIT_RESIDUAL)
    } else {
        Ok(0)
    }
}

fn run_sweep(args: &SweepArgs) -> Result<u8, Failure> {
    check_k(args.kmin)?;
    check_k(args.kmax)?;
    if args.kmin > args.kmax {
        return Err(Failure::usage(format!(
            "--kmin {} exceeds --kmax {}",
            args.kmin, args.kmax
        )));
    }
    let rows = sweep(args.kmin, args.kmax)?;
    let mut out = open_output(&args.out)?;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Table => out.write_all(export::sweep_table(&rows).as_bytes())?,
        Format::Csv => export::sweep_csv(&rows, &mut out)?,
        Format::Json => export::json(&rows, &mut out)?,
    }
    out.flush()?;

    let mismatched = rows.iter().filter(|r| !r.count_matches_claim).count();
    let unverified: usize = rows.iter().map(|r| r.unverified.len()).sum();
    let merged = rows
        .iter()
        .filter(|r| r.case_ids.iter().any(|c| c.len() > 1))
        .count();
    if mismatched > 0 {
        eprintln!("warning: {mismatched} k value(s) disagree with the claimed eigenvalue count");
    }
    if merged > 0 {
        eprintln!("warning: {merged} k value(s) have merged case roots");
    }
    if unverified > 0 {
        eprintln!("warning: {unverified} catalog root(s) have no eigenvector witness");
        Ok(EXIT_RESIDUAL)
    } else if mismatched + merged > 0 {
        Ok(EXIT_DISCREPANCY)
    } else {
        Ok(0)
    }
}

fn run_sequence(args: &SequenceArgs) -> Result<u8, Failure> {
    let case = CaseId::from_str(&args.case_id).map_err(Failure::from)?;
    let check = sequence(case, args.kmax)?;
    let mut out = open_output(&args.out)?;
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Table => out.write_all(export::sequence_table(&check).as_bytes())?,
        Format::Csv => export::sequence_csv(&check, &mut out)?,
        Format::Json => export::json(&check, &mut out)?,
    }
    out.flush()?;
    if check.passed() {
        Ok(0)
    } else {
        eprintln!(
            "warning: {case}: monotone {}, in bracket {}, converging {}",
            check.monotone, check.within_bracket, check.converging
        );
        Ok(EXIT_SEQUENCE)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(a) => run_spectrum(a),
        Command::Verify(a) => run_verify(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Sequence(a) => run_sequence(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
