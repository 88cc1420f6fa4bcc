//! `critstrip`: evaluate, verify and scan from the command line.
//!
//! Exit codes: 0 clean, 1 violation where a bound is claimed, 2 finding in a
//! conjectural or exploratory region, 3 evaluation or domain error, 4 I/O
//! error, 64 usage error.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use critstrip::chi::{chi, chi_identity_residual};
use critstrip::lemmas::{run_suite, Inequality, SuiteConfig};
use critstrip::point::{ComplexPoint, EvalConfig};
use critstrip::scan::{
    emit_figure_grid, locate_zero, scan_chi_modulus, scan_condition_a, scan_hn_bound, scan_theorem,
    with_workers, write_figure_file, GridSpec, ScanError, ScanReport, Severity, StripRect,
};
use critstrip::zeta::{zeta, zeta_deriv};
use critstrip::EvalError;

const EXIT_VIOLATION: u8 = 1;
const EXIT_FINDING: u8 = 2;
const EXIT_EVAL: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "critstrip", version, about = "Numerical checks of |ζ(1−s)| ≤ |ζ(s)| on the left half of the critical strip")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for scans, figure emission and lemma suites.
    #[arg(long, global = true, env = "CRITSTRIP_WORKERS", default_value_t = 1)]
    workers: usize,

    /// Absolute error target for series evaluations.
    #[arg(long, global = true, default_value_t = 1e-12)]
    target_error: f64,

    /// Term budget for series evaluations.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_terms: usize,

    /// Output format; `csv` for figures and violation lists, `json` otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Omit wall-clock time from reports so reruns are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// ζ, ζ′, |g| and the functional-equation residual at one point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Randomised checks of the elementary inequalities.
    VerifyLemmas {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        /// Restrict to the named inequality; repeatable.
        #[arg(long = "only")]
        only: Vec<String>,
    },
    /// Sweep a margin over a rectangle of the strip.
    Scan {
        #[arg(value_enum)]
        quantity: QuantityArg,
        #[command(flatten)]
        rect: RectArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Partial-product length for `hn-bound`.
        #[arg(long, default_value_t = 3)]
        n_terms: usize,
        /// Fixed ordinate for `hn-bound`.
        #[arg(long, default_value_t = 12.0)]
        t_fixed: f64,
        /// Number of σ samples for `hn-bound`.
        #[arg(long, default_value_t = 500)]
        sigma_steps: usize,
    },
    /// The |g(s)| surface as CSV (`sigma,t,abs_g,margin`).
    EmitFigure {
        #[command(flatten)]
        rect: RectArgs,
        #[arg(long)]
        d_sigma: Option<f64>,
        #[arg(long)]
        d_t: Option<f64>,
    },
    /// Ordinate of a zero of ζ(1/2 + it) near a guess.
    LocateZero {
        #[arg(long)]
        t_guess: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    #[value(name = "chi", alias = "chi_modulus")]
    Chi,
    #[value(name = "theorem")]
    Theorem,
    #[value(name = "hn-bound", alias = "hN_bound")]
    HnBound,
    #[value(name = "condition-a", alias = "condition_A")]
    ConditionA,
}

#[derive(Args)]
struct RectArgs {
    #[arg(long)]
    sigma_min: Option<f64>,
    #[arg(long)]
    sigma_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<f64>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    d_sigma: Option<f64>,
    #[arg(long)]
    d_t: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    refine_threshold: f64,
    #[arg(long, default_value_t = 4)]
    max_refine_depth: u8,
    /// Uniform lattice only.
    #[arg(long)]
    no_refine: bool,
}

/// Rectangle and step defaults for one command.
struct Defaults {
    rect: [f64; 4],
    d_sigma: f64,
    d_t: f64,
}

const THEOREM_DEFAULTS: Defaults = Defaults { rect: [0.0, 0.5, 12.0, 50.0], d_sigma: 0.01, d_t: 0.05 };
const CONDITION_A_DEFAULTS: Defaults = Defaults { rect: [0.01, 0.49, 6.5, 50.0], d_sigma: 0.01, d_t: 0.02 };
const FIGURE_DEFAULTS: Defaults = Defaults { rect: [0.0, 0.5, 6.0, 12.0], d_sigma: 0.01, d_t: 0.01 };

impl RectArgs {
    fn resolve(&self, d: &Defaults) -> Result<StripRect, Failure> {
        Ok(StripRect::new(
            self.sigma_min.unwrap_or(d.rect[0]),
            self.sigma_max.unwrap_or(d.rect[1]),
            self.t_min.unwrap_or(d.rect[2]),
            self.t_max.unwrap_or(d.rect[3]),
        )?)
    }
}

impl GridArgs {
    fn resolve(&self, d: &Defaults) -> Result<GridSpec, Failure> {
        let depth = if self.no_refine { 0 } else { self.max_refine_depth };
        Ok(GridSpec::new(
            self.d_sigma.unwrap_or(d.d_sigma),
            self.d_t.unwrap_or(d.d_t),
            self.refine_threshold,
            depth,
        )?)
    }
}

/// Why a command stopped early, mapped onto an exit code.
enum Failure {
    Usage(String),
    Eval { kind: &'static str, message: String },
    Io(io::Error),
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Eval { kind: e.kind(), message: e.to_string() }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Eval(e) => e.into(),
            ScanError::Io(e) => Failure::Io(e),
            ScanError::Setup(message) => Failure::Eval { kind: "domain", message },
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn report(&self) -> u8 {
        let (kind, message, code) = match self {
            Failure::Usage(m) => ("usage", m.clone(), EXIT_USAGE),
            Failure::Eval { kind, message } => (*kind, message.clone(), EXIT_EVAL),
            Failure::Io(e) => ("io", e.to_string(), EXIT_IO),
        };
        let record = serde_json::json!({ "error": { "kind": kind, "message": message } });
        eprintln!("{record}");
        code
    }
}

#[derive(Serialize)]
struct ComplexValue {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct EvalRecord {
    s: ComplexPoint,
    zeta: ComplexValue,
    zeta_prime: Option<ComplexValue>,
    chi_abs: f64,
    fe_residual: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => ExitCode::from(f.report()),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let cfg = EvalConfig::new(cli.target_error, cli.max_terms).map_err(|e| Failure::Usage(e.to_string()))?;
    if cli.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    match &cli.command {
        Command::Eval { sigma, t } => {
            reject_format(cli, Format::Csv)?;
            cmd_eval(cli, *sigma, *t, &cfg)
        }
        Command::VerifyLemmas { samples, seed, only } => {
            reject_format(cli, Format::Csv)?;
            cmd_verify_lemmas(cli, *samples, *seed, only)
        }
        Command::Scan { quantity, rect, grid, n_terms, t_fixed, sigma_steps } => {
            let report = with_workers(cli.workers, || -> Result<ScanReport, Failure> {
                Ok(match quantity {
                    QuantityArg::Chi => scan_chi_modulus(&rect.resolve(&THEOREM_DEFAULTS)?, &grid.resolve(&THEOREM_DEFAULTS)?, &cfg)?,
                    QuantityArg::Theorem => scan_theorem(&rect.resolve(&THEOREM_DEFAULTS)?, &grid.resolve(&THEOREM_DEFAULTS)?, &cfg)?,
                    QuantityArg::ConditionA => {
                        scan_condition_a(&rect.resolve(&CONDITION_A_DEFAULTS)?, &grid.resolve(&CONDITION_A_DEFAULTS)?, &cfg)?
                    }
                    QuantityArg::HnBound => scan_hn_bound(*n_terms, *t_fixed, *sigma_steps, &cfg)?,
                })
            })?;
            let report = if cli.no_timing { report.without_timing() } else { report };
            let body = match cli.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json() + "\n",
                Format::Csv => violations_csv(&report),
            };
            write_output(cli.out.as_deref(), &body)?;
            Ok(match report.severity {
                Severity::Clean => 0,
                Severity::Violation => EXIT_VIOLATION,
                Severity::Finding => EXIT_FINDING,
            })
        }
        Command::EmitFigure { rect, d_sigma, d_t } => {
            reject_format(cli, Format::Json)?;
            let rect = rect.resolve(&FIGURE_DEFAULTS)?;
            let grid = GridSpec::uniform(
                d_sigma.unwrap_or(FIGURE_DEFAULTS.d_sigma),
                d_t.unwrap_or(FIGURE_DEFAULTS.d_t),
            )?;
            with_workers(cli.workers, || -> Result<(), Failure> {
                match &cli.out {
                    Some(path) => write_figure_file(&rect, &grid, &cfg, path).map(drop)?,
                    None => emit_figure_grid(&rect, &grid, &cfg, &mut io::stdout().lock()).map(drop)?,
                }
                Ok(())
            })?;
            Ok(0)
        }
        Command::LocateZero { t_guess, tol } => {
            reject_format(cli, Format::Csv)?;
            let t = locate_zero(*t_guess, *tol, &cfg)?;
            let record = serde_json::json!({ "t_guess": t_guess, "t": t });
            write_output(cli.out.as_deref(), &(serde_json::to_string_pretty(&record).unwrap() + "\n"))?;
            Ok(0)
        }
    }
}

fn reject_format(cli: &Cli, unsupported: Format) -> Result<(), Failure> {
    if cli.format == Some(unsupported) {
        let name = if unsupported == Format::Csv { "csv" } else { "json" };
        return Err(Failure::Usage(format!("--format {name} is not available for this command")));
    }
    Ok(())
}

fn cmd_eval(cli: &Cli, sigma: f64, t: f64, cfg: &EvalConfig) -> Result<u8, Failure> {
    let point = ComplexPoint::new(sigma, t)?;
    let s = point.to_complex();
    let z = zeta(s, cfg)?;
    let zeta_prime = if sigma > 0.0 { Some(zeta_deriv(s, cfg)?) } else { None };
    let record = EvalRecord {
        s: point,
        zeta: ComplexValue { re: z.re, im: z.im },
        zeta_prime: zeta_prime.map(|d| ComplexValue { re: d.re, im: d.im }),
        chi_abs: chi(s, cfg)?.norm(),
        fe_residual: chi_identity_residual(s, cfg)?,
    };
    write_output(cli.out.as_deref(), &(serde_json::to_string_pretty(&record).unwrap() + "\n"))?;
    Ok(0)
}

fn cmd_verify_lemmas(cli: &Cli, samples: usize, seed: u64, only: &[String]) -> Result<u8, Failure> {
    if samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let selected = only
        .iter()
        .map(|name| {
            Inequality::from_name(name).ok_or_else(|| Failure::Usage(format!("unknown inequality `{name}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let report = run_suite(&SuiteConfig { samples, seed, workers: cli.workers }, &selected);
    write_output(cli.out.as_deref(), &(serde_json::to_string_pretty(&report).unwrap() + "\n"))?;
    Ok(if report.is_clean() { 0 } else { EXIT_VIOLATION })
}

fn violations_csv(report: &ScanReport) -> String {
    let mut out = String::from("sigma,t,margin\n");
    for v in &report.violations {
        out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", v.sigma, v.t, v.margin));
    }
    out
}

/// Standard output, or `path` via a temporary file so no partial output is
/// left behind on failure.
fn write_output(path: Option<&Path>, body: &str) -> io::Result<()> {
    match path {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
