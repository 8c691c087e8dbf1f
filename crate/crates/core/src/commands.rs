//! Command-line front end. The binary is a thin wrapper over [`main_with`].

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::analyzer::{analyze_with, AnalyzeOptions, DEFAULT_TOL};
use crate::angle::{default_grid, RationalAngle, Time};
use crate::error::{Error, Result};
use crate::io::{load_spec, matrix_rows, to_json_string, ReportDocument, Timings};
use crate::neps::{neps_adjacency, NepsSpec, DEFAULT_SIZE_CAP, SIZE_CAP_ENV};
use crate::oracle::{certify, ORACLE_TOL};
use crate::reproduce::run_examples;
use crate::spectral::{neps_spectrum, transition_with, TransitionOptions};

#[derive(Debug, Parser)]
#[command(name = "pstneps", version, about = "Quantum walks on NEPS of complete graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the adjacency matrix, degree and spectrum.
    Build(BuildArgs),
    /// Dump H(t).
    Transition(TransitionArgs),
    /// Detect PST/periodicity and check every applicable sufficient condition.
    Analyze(AnalyzeArgs),
    /// Compare the analytic H(t) with the series oracle.
    Certify(CertifyArgs),
    /// Reproduce the bundled worked examples.
    Examples(ExamplesArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Largest vertex count accepted.
    #[arg(long, env = SIZE_CAP_ENV, default_value_t = DEFAULT_SIZE_CAP)]
    pub size_cap: usize,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Omit wall-clock timings from reports.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub spec: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TransitionArgs {
    pub spec: PathBuf,
    /// Time as a fraction p/q meaning pπ/q.
    #[arg(long, conflicts_with = "raw_time", required_unless_present = "raw_time")]
    pub time: Option<RationalAngle>,
    /// Time in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub raw_time: Option<f64>,
    /// Cross-check against the full-spectrum path.
    #[arg(long)]
    pub verify_paths: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub spec: PathBuf,
    /// Comma-separated fractions p/q; defaults to the scan grid.
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<RationalAngle>>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub verify_paths: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub spec: PathBuf,
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<RationalAngle>>,
    #[arg(long, default_value_t = ORACLE_TOL)]
    pub tol: f64,
    /// Perturb the analytic matrix before comparing.
    #[arg(long, hide = true)]
    pub corrupt: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ExamplesArgs {
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct SpectrumEntry {
    eigenvalue: i64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct BuildReport {
    spec: NepsSpec,
    vertices: usize,
    degree: usize,
    adjacency: Vec<Vec<u8>>,
    spectrum: Vec<SpectrumEntry>,
    eigenvalues: Vec<i64>,
}

#[derive(Serialize)]
struct TransitionReport {
    spec: NepsSpec,
    time: Time,
    unitarity_residual: f64,
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct CertifyEntry {
    time: RationalAngle,
    deviation: f64,
    passed: bool,
}

#[derive(Serialize)]
struct CertifyReport {
    spec: NepsSpec,
    tolerance: f64,
    passed: bool,
    results: Vec<CertifyEntry>,
}

fn load(path: &std::path::Path, common: &Common) -> Result<NepsSpec> {
    let (_, spec) = load_spec(path)?;
    let spec = spec.with_size_cap(common.size_cap);
    spec.check_size_cap()?;
    Ok(spec)
}

fn emit<T: Serialize>(common: &Common, report: T, started: Instant, out: &mut dyn Write) -> Result<()> {
    let timings = (!common.no_timings).then(|| Timings {
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    });
    let text = to_json_string(&ReportDocument::new(report, timings))?;
    match &common.output {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            context: format!("writing {}", path.display()),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(|source| Error::Io {
            context: "writing stdout".into(),
            source,
        }),
    }
}

fn grid_or(times: &Option<Vec<RationalAngle>>) -> Vec<RationalAngle> {
    times.clone().unwrap_or_else(default_grid)
}

/// Runs a parsed command. Returns the process exit code; errors map through
/// [`Error::exit_code`].
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    match cli.command {
        Command::Build(args) => {
            let spec = load(&args.spec, &args.common)?;
            let adjacency = neps_adjacency(&spec)?;
            let adjacency = (0..adjacency.dim())
                .map(|i| adjacency.row(i).iter().map(|z| z.re as u8).collect())
                .collect();
            let spectrum = neps_spectrum(&spec);
            let eigenvalues = spectrum
                .iter()
                .flat_map(|&(l, k)| std::iter::repeat_n(l, k))
                .collect();
            let report = BuildReport {
                vertices: spec.vertex_count(),
                degree: spec.degree(),
                adjacency,
                spectrum: spectrum
                    .into_iter()
                    .map(|(eigenvalue, multiplicity)| SpectrumEntry { eigenvalue, multiplicity })
                    .collect(),
                eigenvalues,
                spec,
            };
            emit(&args.common, report, started, out)?;
            Ok(0)
        }
        Command::Transition(args) => {
            let spec = load(&args.spec, &args.common)?;
            let time = match (args.time, args.raw_time) {
                (Some(a), _) => Time::from(a),
                (None, Some(t)) if t.is_finite() => Time::from(t),
                (None, t) => return Err(Error::InvalidTime(format!("{t:?}"))),
            };
            let opts = TransitionOptions {
                verify_paths: args.verify_paths,
                ..Default::default()
            };
            let h = transition_with(&spec, time, opts)?;
            let report = TransitionReport {
                spec,
                time,
                unitarity_residual: h.unitarity_residual(),
                matrix: matrix_rows(&h),
            };
            emit(&args.common, report, started, out)?;
            Ok(0)
        }
        Command::Analyze(args) => {
            let spec = load(&args.spec, &args.common)?;
            let times: Vec<Time> = grid_or(&args.times).into_iter().map(Time::from).collect();
            let opts = AnalyzeOptions {
                tol: args.tol,
                verify_paths: args.verify_paths,
            };
            let report = analyze_with(&spec, &times, opts)?;
            let code = if report.has_discrepancy() { 2 } else { 0 };
            emit(&args.common, report, started, out)?;
            Ok(code)
        }
        Command::Certify(args) => {
            let spec = load(&args.spec, &args.common)?;
            let mut results = Vec::new();
            for t in grid_or(&args.times) {
                let mut h = transition_with(&spec, t.into(), TransitionOptions::default())?;
                if args.corrupt {
                    h[(0, 0)] += Complex64::new(1e-3, 0.0);
                }
                let c = certify(&spec, t.radians(), &h, args.tol)?;
                results.push(CertifyEntry {
                    time: t,
                    deviation: c.deviation,
                    passed: c.passed,
                });
            }
            let passed = results.iter().all(|r| r.passed);
            let report = CertifyReport {
                spec,
                tolerance: args.tol,
                passed,
                results,
            };
            emit(&args.common, report, started, out)?;
            Ok(if passed { 0 } else { 2 })
        }
        Command::Examples(args) => {
            let checks = run_examples(args.tol)?;
            let passed = checks.iter().all(|c| c.passed);
            if args.common.output.is_some() {
                emit(&args.common, &checks, started, out)?;
            } else {
                let mut table = String::new();
                for c in &checks {
                    table.push_str(&format!(
                        "{:<12} {:<46} {:>10.3e}  {}\n",
                        c.example,
                        c.check,
                        c.value,
                        if c.passed { "ok" } else { "FAIL" }
                    ));
                }
                out.write_all(table.as_bytes()).map_err(|source| Error::Io {
                    context: "writing stdout".into(),
                    source,
                })?;
            }
            Ok(if passed { 0 } else { 2 })
        }
    }
}

/// Parses `args`, runs, prints any error to stderr and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
