//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Exit status: 0 success, 1 usage error, 2 domain error, 3 verification
//! failure, 4 term budget exceeded.

mod commands;
mod grid;
mod record;

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use grid::{parse_degree_range, parse_grid, GridPoint};
pub use record::{Field, OutputRecord, Sink};

use crate::hyper::HyperError;
use crate::numeric::ComplexLiteral;
use crate::trinomial::{Mode, TrinomialError};
use crate::verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Default oracle seed.
pub const DEFAULT_SEED: u64 = 0x7269_6e6f;

#[derive(Parser, Debug)]
#[command(name = "trinomia", version, about = "Hypergeometric solutions of x^n - x + t = 0")]
pub struct Cli {
    /// Emit line-delimited JSON records instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Print x- or y-family series coefficients.
    Series(SeriesArgs),
    /// Run identity checks.
    Verify(VerifyArgs),
    /// List all n roots with the branch relations.
    Branches(BranchesArgs),
    /// Compare series and oracle cost over a grid of t.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Precision {
    /// Working precision in decimal digits.
    #[arg(long, default_value_t = 40)]
    pub digits: u32,
    /// Target accuracy; defaults to 10^-(digits-10).
    #[arg(long)]
    pub eps: Option<f64>,
    /// Seed of the root-finding oracle.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub n: u32,
    /// Real or complex literal: 0.1, 1/4, 0.3+0.1i.
    #[arg(long, allow_hyphen_values = true)]
    pub t: ComplexLiteral,
    /// auto, series, oracle or large-t.
    #[arg(long, default_value = "auto")]
    pub mode: Mode,
    #[command(flatten)]
    pub precision: Precision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    X,
    Y,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub n: u32,
    #[arg(long, value_enum, default_value = "x")]
    pub kind: SeriesKind,
    /// Family index; at least 1 for x.
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    /// Highest power of t printed.
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    /// Print prime factorizations.
    #[arg(long)]
    pub factored: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Degrees, e.g. 3 or 2..5 (inclusive).
    #[arg(long, default_value = "2..6", value_parser = parse_degree_range)]
    pub n: RangeInclusive<u32>,
    /// Truncation order of the formal checks.
    #[arg(short = 'K', long = "K", alias = "order", default_value_t = 40)]
    pub order: usize,
    /// Tolerance of the branch relations.
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    /// Random t per degree for the branch relations.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also print the regenerated coefficient tables.
    #[arg(long)]
    pub tables: bool,
}

#[derive(Args, Debug)]
pub struct BranchesArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub t: ComplexLiteral,
    #[command(flatten)]
    pub precision: Precision,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value = "2..6", value_parser = parse_degree_range)]
    pub n: RangeInclusive<u32>,
    /// Points `a,b,c` or a range `a..b`; a suffix `r` scales by r_n.
    #[arg(long, default_value = "0.5r..0.95r", allow_hyphen_values = true)]
    pub t: String,
    /// Grid points of a range.
    #[arg(long, default_value_t = 4)]
    pub points: usize,
    /// Timing repetitions; the median is reported.
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    /// Comma-separated table instead of records.
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    #[command(flatten)]
    pub precision: Precision,
}

/// A failed command: message and exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<TrinomialError> for Failure {
    fn from(e: TrinomialError) -> Self {
        let code = match &e {
            TrinomialError::Hyper(HyperError::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_DOMAIN,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<HyperError> for Failure {
    fn from(e: HyperError) -> Self {
        TrinomialError::from(e).into()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_USAGE, format!("output error: {e}"))
    }
}

/// Parses `args` (program name first) and runs the command against the
/// process's standard streams. Returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut sink = Sink { json: cli.json, out, err };
    let result = match &cli.command {
        Command::Solve(a) => commands::cmd_solve(a, &mut sink),
        Command::Series(a) => commands::cmd_series(a, &mut sink),
        Command::Verify(a) => commands::cmd_verify(a, &mut sink),
        Command::Branches(a) => commands::cmd_branches(a, &mut sink),
        Command::Bench(a) => commands::cmd_bench(a, &mut sink),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            if sink.json {
                let mut rec = OutputRecord::new(command_name(&cli.command));
                rec.status = "error".into();
                rec.push("exit_code", f.code);
                rec.push("error", &f.message);
                let _ = sink.emit(&rec, |_| String::new());
            }
            let _ = writeln!(sink.err, "error: {}", f.message);
            f.code
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve(_) => "solve",
        Command::Series(_) => "series",
        Command::Verify(_) => "verify",
        Command::Branches(_) => "branches",
        Command::Bench(_) => "bench",
    }
}
