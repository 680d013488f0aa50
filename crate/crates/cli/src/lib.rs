//! `evostall` command-line front end.
//!
//! Exit codes: 0 success, 1 failed self-check, 2 usage or validation
//! error, 3 I/O error.

pub mod commands;
pub mod config;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::run;
pub use config::{parse_config, CliConfig, Settings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] evostall::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "evostall", version, about = "Stagnation-terminated metaheuristics and gradient-norm audits")]
pub struct Cli {
    /// Base seed (experiment/run) or stream seed (nominal).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory for CSV files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 = one per core.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Skip per-generation curve capture.
    #[arg(long, global = true)]
    pub no_curves: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate the nominal pairwise dynamics and print per-step contraction.
    Nominal(NominalArgs),
    /// Evaluate a benchmark and its gradient at a point.
    Bench(BenchArgs),
    /// One stagnation-terminated run.
    Run(RunArgs),
    /// The full function × algorithm × T × run grid.
    Experiment(GridArgs),
    /// Self-checks: exact contraction, optimum certificates, gradient oracle.
    Verify,
}

#[derive(Debug, Args)]
pub struct NominalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// mutual_random or ring.
    #[arg(long, default_value = "mutual_random")]
    pub pairing: String,
    /// Frozen individuals, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub stagnant: Vec<usize>,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub function: String,
    /// Comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "optimum")]
    pub point: Option<String>,
    /// Use the known optimum; branch `plus` (default) or `minus`.
    #[arg(long, num_args = 0..=1, default_missing_value = "plus")]
    pub optimum: Option<String>,
    /// Dimension of the optimum.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_delimiter = ',')]
    pub functions: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub algorithms: Option<Vec<String>>,
    /// Stagnation horizons.
    #[arg(long = "T", value_delimiter = ',')]
    pub t_values: Option<Vec<u64>>,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Settings shared by `run` and `experiment`.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// key = value file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// `lo,hi` applied to every coordinate.
    #[arg(long, allow_hyphen_values = true)]
    pub bounds: Option<String>,
    #[arg(long)]
    pub max_generations: Option<u64>,
    #[arg(long)]
    pub stationarity_threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub function: String,
    #[arg(long)]
    pub algorithm: String,
    #[arg(long = "T")]
    pub t: u64,
    /// Run index within the cell.
    #[arg(long, default_value_t = 0)]
    pub run: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}
