//! Front end for the `rudin-shapiro` crate.
//!
//! Every command produces one text artifact (CSV or a single JSON object)
//! and a status. Exit codes: 0 success, 1 failed check, 2 usage error.

pub mod commands;
pub mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run, CliError, Outcome, Status};

#[derive(Debug, Parser)]
#[command(
    name = "rscorr",
    version,
    about = "Rudin-Shapiro autocorrelations, matrix recurrences and JSR estimates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a Rudin-Shapiro sequence or a generalized one from a sign pattern.
    Gen(GenArgs),
    /// Tabulate aperiodic or periodic autocorrelations.
    Autocorr(AutocorrArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Estimate the joint spectral radius of {MA, MB}.
    Jsr(JsrArgs),
    /// Maximizing shifts against the nearest third of 2^(m+1).
    Table(TableArgs),
    /// Merit factor series.
    Merit(MeritArgs),
    /// |C_m(k)| against k.
    Plotdata(PlotArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output file, or a directory to receive the default file name.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFormat {
    Symbols,
    Ints,
    Compact,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub m: u32,
    /// Sign pattern f(0) f(1) ... f(m-1), e.g. 001.
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long, value_enum, default_value_t = GenFormat::Symbols)]
    pub format: GenFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Aperiodic,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMethod {
    Naive,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct AutocorrArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = Kind::Aperiodic)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = TableMethod::Fast)]
    pub method: TableMethod,
    /// Also compute the direct sums and require equality (m <= 12).
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    pub format: DataFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Recurrences,
    Lemma4,
    Theorem12,
    Decomposition,
    Lemma6,
    Remark1,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest order checked; for remark1, the longest word.
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JsrMethod {
    Bnb,
    Polytope,
}

#[derive(Debug, Args)]
pub struct JsrArgs {
    #[arg(long, value_enum, default_value_t = JsrMethod::Bnb)]
    pub method: JsrMethod,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    /// Containment tolerance for the polytope run.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Upper bounds use norms after conjugation by diag(1, 1, s).
    #[arg(long, default_value_t = 1.0)]
    pub norm_scale: f64,
    #[arg(long, default_value_t = 10)]
    pub max_rounds: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 16)]
    pub m_max: u32,
    /// Rank shifts by signed value instead of absolute value.
    #[arg(long)]
    pub signed: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct MeritArgs {
    #[arg(long, default_value_t = 12)]
    pub m_max: u32,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub m: u32,
    #[command(flatten)]
    pub out: OutArgs,
}
