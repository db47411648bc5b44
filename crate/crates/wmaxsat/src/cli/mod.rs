//! Command-line front end (solve, bench, analyze, verify).
//!
//! Exit codes: 0 success, 1 failed verification checks, 2 unreadable or
//! unparsable input, 3 contract violations (bad parameters, configs or
//! capacities), 4 `analyze` without any reference optimum.

pub mod commands;
pub mod config;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use thiserror::Error;

use crate::formula::ParseError;
use crate::walksat::BreakMetric;
use config::SearchArgs;

/// Everything that can go wrong in the front end, tagged with its exit code.
#[derive(Error, Debug)]
pub enum CliError {
    /// Unreadable input or unwritable output (exit 2).
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// An instance file that does not parse (exit 2).
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    /// Invalid parameters, configs or capacities (exit 3).
    #[error("{0}")]
    Contract(String),
    /// `analyze` has no optimum to compare against (exit 4).
    #[error("no reference optimum available: {0}")]
    MissingReference(String),
    /// `verify` found failing checks (exit 1).
    #[error("{failed} of {checked} checked instances failed verification")]
    ChecksFailed { failed: usize, checked: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Contract(_) => 3,
            CliError::MissingReference(_) => 4,
            CliError::ChecksFailed { .. } => 1,
        }
    }
}

/// What a subcommand prints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Weighted MAX-SAT via two-phase backbone-guided local search.
#[derive(Parser, Debug)]
#[command(name = "wmaxsat", version, about, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one instance and report the best assignment found.
    Solve(SolveArgs),
    /// Run a benchmark campaign over many instances and seeds.
    Bench(BenchArgs),
    /// Sample local optima and measure their distance to an optimum.
    Analyze(AnalyzeArgs),
    /// Machine-check the exact-oracle identities on small instances.
    Verify(VerifyArgs),
}

#[derive(clap::Args, Debug)]
pub struct SolveArgs {
    /// Instance file (DIMACS WCNF or the weighted benchmark format).
    pub instance: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    /// TOML config; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Known-optima CSV (`instance,optimum[,baseline]`).
    #[arg(long)]
    pub optima_table: Option<PathBuf>,
    /// Also write the full JSON report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// What to print on stdout.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Worker threads for the parallel tries (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Resume from saved phase-1 frequencies (JSON) and run only phase 2.
    #[arg(long)]
    pub freqs_in: Option<PathBuf>,
    /// Save the phase-1 frequencies as JSON.
    #[arg(long)]
    pub freqs_out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct BenchArgs {
    /// Instance files or patterns with `*` in the file name; falls back to
    /// the config's `instances` list.
    pub instances: Vec<String>,
    /// TOML config with the campaign definition.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Repetitions per instance, each with a seed derived from the master.
    #[arg(long)]
    pub reps: Option<u32>,
    /// Known-optima CSV (`instance,optimum[,baseline]`).
    #[arg(long)]
    pub optima_table: Option<PathBuf>,
    /// Write the results here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default: csv).
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads for the parallel tries (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct AnalyzeArgs {
    /// Instance file (DIMACS WCNF or the weighted benchmark format).
    pub instance: PathBuf,
    /// Independent sampling tries to collect.
    #[arg(long, default_value_t = 50)]
    pub tries: u32,
    /// Try length: a try performs up to num−1 flips.
    #[arg(long)]
    pub num: Option<u32>,
    /// Initial noise probability.
    #[arg(long)]
    pub p0: Option<f64>,
    /// Noise adjustment step in (0,1).
    #[arg(long)]
    pub phi: Option<f64>,
    /// Master seed; one RNG stream per try is derived from it.
    #[arg(long, env = "WMAXSAT_SEED")]
    pub seed: Option<u64>,
    /// Break metric: count | weight.
    #[arg(long)]
    pub break_metric: Option<BreakMetric>,
    /// Exact-enumeration capacity for computing the reference optimum.
    #[arg(long)]
    pub cap: Option<u32>,
    /// Reference assignment (a file whose first line is a '0'/'1' string),
    /// for instances beyond the exact cap.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Write the results here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default: csv).
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads for the parallel tries (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Instance files to check; with no files and no --random, 20 random
    /// instances are checked.
    pub instances: Vec<PathBuf>,
    /// Also check this many random small instances.
    #[arg(long)]
    pub random: Option<u32>,
    /// Master seed for the random instances.
    #[arg(long, env = "WMAXSAT_SEED")]
    pub seed: Option<u64>,
    /// Exact-enumeration capacity; larger instances are skipped with a warning.
    #[arg(long)]
    pub cap: Option<u32>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses the process arguments, runs the subcommand, and returns the exit
/// code; errors are printed to stderr.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve(args) => commands::cmd_solve(args),
        Command::Bench(args) => commands::cmd_bench(args),
        Command::Analyze(args) => commands::cmd_analyze(args),
        Command::Verify(args) => commands::cmd_verify(args),
    }
}
