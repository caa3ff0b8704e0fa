//! `paramseries`: evaluate representations, run the self-check suite, sweep
//! the transform parameter and print the constant blocks.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or domain error,
//! 3 convergence failure.

mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use paramseries::par::Execution;
use paramseries::specialfn::{Context, EvalConfig, ReprParams, Representation};
use paramseries::studies::{mu_sweep, StudyConfig};
use paramseries::verify::{run_checks, VerifyConfig, FAULT_DELTA, FAULT_ZETA_ARG};
use paramseries::{Error, PrecisionPolicy, Real, StoppingRule};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Parser)]
#[command(name = "paramseries", version, about = "Parameterized binomial series transform")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one representation at one parameter value.
    Eval(EvalArgs),
    /// Run the built-in identity and oracle checks.
    Verify(VerifyArgs),
    /// Terms-to-tolerance and final error over a grid of mu values.
    Sweep(SweepArgs),
    /// pi, Euler's constant and M through several representations each.
    Constants(CommonArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Target precision in bits.
    #[arg(long, env = "PARAMSERIES_PRECISION", default_value_t = 256)]
    precision: usize,
    /// Absolute tolerance; defaults to 1e-30 scaled with the precision.
    #[arg(long)]
    tolerance: Option<String>,
    #[arg(long, default_value_t = 1000)]
    max_terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReprArgs {
    /// Representation id, e.g. zeta, polylog, gamma-loggamma.
    representation: String,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long)]
    a: Option<String>,
    /// Prefix variant for gamma-zeta-excess, or form for the elliptic integrals.
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    repr: ReprArgs,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    mu: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these checks (repeatable or comma separated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Largest n for the exact identity checks.
    #[arg(long, default_value_t = 200)]
    n_max: u64,
    /// Test hook: corrupt one zeta value so the suite must fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    repr: ReprArgs,
    /// Comma separated mu values; empty for a header-only sweep.
    #[arg(long, allow_hyphen_values = true)]
    mu_grid: String,
    /// Evaluate the grid on the calling thread only.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    common: CommonArgs,
}

/// A failure that maps onto an exit code.
enum Failure {
    Usage(String),
    NotConverged(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConverged(_) | Error::NoConvergentMu => Failure::NotConverged(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Constants(args) => cmd_constants(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::NotConverged(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NOT_CONVERGED)
        }
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
    }
}

fn parse_real(text: &str, what: &str, bits: usize) -> Result<Real, Failure> {
    Real::parse(text.trim(), bits).map_err(|e| Failure::Usage(format!("--{what}: {e}")))
}

impl CommonArgs {
    fn check_precision(&self) -> Result<(), Failure> {
        if self.precision < 64 {
            return Err(Failure::Usage(format!("--precision must be at least 64 bits, got {}", self.precision)));
        }
        Ok(())
    }

    /// `1e-30` at 256 bits, scaled in proportion to the precision.
    fn tolerance(&self) -> Result<Real, Failure> {
        self.check_precision()?;
        let bits = self.precision;
        let tol = match &self.tolerance {
            Some(t) => parse_real(t, "tolerance", bits)?,
            None => Real::parse(&format!("1e-{}", (30 * bits / 256).max(1)), bits).expect("literal"),
        };
        let floor = Real::pow2(-((bits + PrecisionPolicy::EXTRA_GUARD) as i64), 64);
        if tol <= floor {
            return Err(Failure::Usage(format!(
                "--tolerance must exceed 2^-{} at {bits} bits",
                bits + PrecisionPolicy::EXTRA_GUARD
            )));
        }
        Ok(tol)
    }

    fn eval_config(&self) -> Result<EvalConfig, Failure> {
        let stop = StoppingRule::new(self.tolerance()?, self.max_terms)?;
        Ok(EvalConfig::new(stop, PrecisionPolicy::new(self.precision)))
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        emit(self.out.as_ref(), text)
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

impl ReprArgs {
    fn build(&self, bits: usize) -> Result<(Representation, Vec<(&'static str, String)>), Failure> {
        let mut shown = Vec::new();
        let mut real = |v: &Option<String>, name: &'static str| -> Result<Option<Real>, Failure> {
            match v {
                Some(t) => {
                    shown.push((name, t.trim().to_string()));
                    parse_real(t, name, bits).map(Some)
                }
                None => Ok(None),
            }
        };
        let params = ReprParams {
            x: real(&self.x, "x")?,
            s: real(&self.s, "s")?,
            a: real(&self.a, "a")?,
            variant: self.variant.clone(),
        };
        if let Some(v) = &self.variant {
            shown.push(("variant", v.clone()));
        }
        let rep = Representation::from_id(&self.representation, &params)?;
        Ok((rep, shown))
    }
}

fn cmd_eval(args: EvalArgs) -> Result<(), Failure> {
    let common = &args.common;
    common.check_precision()?;
    let bits = common.precision;
    let (rep, params) = args.repr.build(bits)?;
    let cfg = common.eval_config()?;
    // the Lerch form ties mu to x
    let mu = match &rep {
        Representation::Lerch { x, .. } => x.clone(),
        _ => parse_real(&args.mu, "mu", bits)?,
    };
    let (rep_out, failure) = match rep.evaluate(&mu, &cfg) {
        Ok(r) => (r, None),
        Err(Error::NotConverged(r)) => {
            let msg = Error::NotConverged(r.clone()).to_string();
            (*r, Some(Failure::NotConverged(msg)))
        }
        Err(e) => return Err(e.into()),
    };
    let text = report::eval(common.format, rep.id(), &params, &mu, bits, &rep_out);
    common.emit(&text)?;
    failure.map_or(Ok(()), Err)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.format == Format::Csv {
        return Err(Failure::Usage("verify supports --format plain or json".into()));
    }
    let mut cfg = VerifyConfig {
        only: args.only.clone(),
        n_max: args.n_max,
        ..VerifyConfig::default()
    };
    if args.inject_fault {
        let delta = Real::parse(FAULT_DELTA, 256).expect("literal");
        cfg.context = Arc::new(Context::with_fault(FAULT_ZETA_ARG, delta));
    }
    let outcome = run_checks(&cfg)?;
    emit(args.out.as_ref(), &report::verify(args.format, &outcome))?;
    if outcome.passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let common = &args.common;
    common.check_precision()?;
    let bits = common.precision;
    let (rep, params) = args.repr.build(bits)?;
    let grid = args
        .mu_grid
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_real(t, "mu-grid", bits))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cfg = StudyConfig::new(rep, grid, common.tolerance()?, common.max_terms);
    cfg.precision_bits = bits;
    if args.sequential {
        cfg.execution = Execution::Sequential;
    }
    // validation runs before any evaluation, so a bad grid writes nothing
    cfg.validate()?;
    let records = mu_sweep(&cfg)?;
    let text = report::sweep(common.format, cfg.representation.id(), &params, bits, &records);
    common.emit(&text)
}

fn cmd_constants(args: CommonArgs) -> Result<(), Failure> {
    if args.format == Format::Csv {
        return Err(Failure::Usage("constants supports --format plain or json".into()));
    }
    let cfg = args.eval_config()?;
    let blocks = report::constant_blocks(&cfg)?;
    args.emit(&report::constants(args.format, args.precision, &blocks))
}
