//! Experiment configuration: a flat `key = value` file layered under
//! command-line flags.
//!
//! ```text
//! # comments and blank lines are ignored
//! functions = zhou1, zhou3
//! algorithms = gwo, lshade
//! T = 100, 1000
//! runs = 10
//! ```
//!
//! List values are comma separated. `bounds` is a `lo, hi` pair applied to
//! every coordinate.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use evostall::harness::{
    DEFAULT_DIM, DEFAULT_MAX_GENERATIONS, DEFAULT_RUNS, DEFAULT_SEED, DEFAULT_STATIONARITY_THRESHOLD,
    DEFAULT_T_VALUES,
};
use evostall::{AlgorithmId, BenchmarkId, Bounds, ExperimentConfig};

use crate::CliError;

pub const KEYS: [&str; 12] = [
    "functions",
    "algorithms",
    "T",
    "runs",
    "base_seed",
    "dim",
    "bounds",
    "max_generations",
    "stationarity_threshold",
    "output_dir",
    "curve_capture",
    "workers",
];

pub const DEFAULT_OUTPUT_DIR: &str = "results";
pub const DEFAULT_BOUNDS: (f64, f64) = (-100.0, 100.0);

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    /// Curve capture is `experiment.capture_curves`.
    pub experiment: ExperimentConfig,
    pub output_dir: PathBuf,
    /// 0 = one worker per core.
    pub workers: usize,
}

/// Partially specified settings; `None` means "not given here".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub functions: Option<Vec<BenchmarkId>>,
    pub algorithms: Option<Vec<AlgorithmId>>,
    pub t_values: Option<Vec<u64>>,
    pub runs: Option<usize>,
    pub base_seed: Option<u64>,
    pub dim: Option<usize>,
    pub bounds: Option<(f64, f64)>,
    pub max_generations: Option<u64>,
    pub stationarity_threshold: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub curve_capture: Option<bool>,
    pub workers: Option<usize>,
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

fn scalar<T: FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| usage(format!("{key}: cannot parse {:?}", raw.trim())))
}

fn list<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|e| usage(format!("{key}: {e}"))))
        .collect()
}

pub(crate) fn pair(key: &str, raw: &str) -> Result<(f64, f64), CliError> {
    match list::<f64>(key, raw)?.as_slice() {
        &[lo, hi] => Ok((lo, hi)),
        other => Err(usage(format!("{key}: expected `lo, hi`, got {} values", other.len()))),
    }
}

fn boolean(key: &str, raw: &str) -> Result<bool, CliError> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(usage(format!("{key}: expected true or false, got {other:?}"))),
    }
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("line {}: expected `key = value`", n + 1)))?;
            s.set(key.trim(), value)?;
        }
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "functions" => self.functions = Some(list(key, value)?),
            "algorithms" => self.algorithms = Some(list(key, value)?),
            "T" => self.t_values = Some(list(key, value)?),
            "runs" => self.runs = Some(scalar(key, value)?),
            "base_seed" | "seed" => self.base_seed = Some(scalar(key, value)?),
            "dim" => self.dim = Some(scalar(key, value)?),
            "bounds" => self.bounds = Some(pair(key, value)?),
            "max_generations" => self.max_generations = Some(scalar(key, value)?),
            "stationarity_threshold" => self.stationarity_threshold = Some(scalar(key, value)?),
            "output_dir" => self.output_dir = Some(PathBuf::from(value.trim())),
            "curve_capture" => self.curve_capture = Some(boolean(key, value)?),
            "workers" => self.workers = Some(scalar(key, value)?),
            other => {
                return Err(usage(format!(
                    "unknown config key `{other}` (valid keys: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Fields set in `over` win.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            functions: over.functions.or(self.functions),
            algorithms: over.algorithms.or(self.algorithms),
            t_values: over.t_values.or(self.t_values),
            runs: over.runs.or(self.runs),
            base_seed: over.base_seed.or(self.base_seed),
            dim: over.dim.or(self.dim),
            bounds: over.bounds.or(self.bounds),
            max_generations: over.max_generations.or(self.max_generations),
            stationarity_threshold: over.stationarity_threshold.or(self.stationarity_threshold),
            output_dir: over.output_dir.or(self.output_dir),
            curve_capture: over.curve_capture.or(self.curve_capture),
            workers: over.workers.or(self.workers),
        }
    }

    /// Fills in defaults and validates.
    pub fn resolve(self) -> Result<CliConfig, CliError> {
        let dim = self.dim.unwrap_or(DEFAULT_DIM);
        if dim < 2 {
            return Err(usage(format!("dim: must be >= 2, got {dim}")));
        }
        let (lo, hi) = self.bounds.unwrap_or(DEFAULT_BOUNDS);
        let bounds = Bounds::uniform(dim, lo, hi).map_err(|e| usage(format!("bounds: {e}")))?;
        let experiment = ExperimentConfig {
            functions: self.functions.unwrap_or_else(|| BenchmarkId::ALL.to_vec()),
            algorithms: self.algorithms.unwrap_or_else(|| AlgorithmId::ALL.to_vec()),
            t_values: self.t_values.unwrap_or_else(|| DEFAULT_T_VALUES.to_vec()),
            runs: self.runs.unwrap_or(DEFAULT_RUNS),
            base_seed: self.base_seed.unwrap_or(DEFAULT_SEED),
            dim,
            bounds,
            max_generations: self.max_generations.unwrap_or(DEFAULT_MAX_GENERATIONS),
            stationarity_threshold: self.stationarity_threshold.unwrap_or(DEFAULT_STATIONARITY_THRESHOLD),
            capture_curves: self.curve_capture.unwrap_or(true),
        };
        experiment.validate()?;
        Ok(CliConfig {
            experiment,
            output_dir: self.output_dir.unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR)),
            workers: self.workers.unwrap_or(0),
        })
    }
}

/// Reads `file` (if any) and applies `flags` on top.
pub fn parse_config(file: Option<&Path>, flags: Settings) -> Result<CliConfig, CliError> {
    let base = match file {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    base.overlay(flags).resolve()
}
