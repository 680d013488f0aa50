//! Stagnation-terminated experiment runs and the gradient-norm audit.
//!
//! A run stops at the first generation `g` with
//! `g − last_improvement_gen ≥ T` (stagnation) or at `max_generations`
//! (generation cap), whichever comes first. The terminal best point is then
//! audited by the Euclidean norm of the analytic gradient: a run that has
//! "converged" in the stagnation sense is only deemed stationary if that
//! norm is at most the configured threshold.

pub mod report;

use std::fmt;

use crate::algorithms::{default_params, AlgoState, AlgorithmId};
use crate::benchmarks::BenchmarkId;
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::point::{norm, Bounds, Point};
use crate::rng::{derive_stream, Label};

pub const DEFAULT_T_VALUES: [u64; 5] = [100, 200, 300, 500, 1000];
pub const DEFAULT_RUNS: usize = 30;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_DIM: usize = 3;
pub const DEFAULT_MAX_GENERATIONS: u64 = 20_000;
pub const DEFAULT_STATIONARITY_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub functions: Vec<BenchmarkId>,
    pub algorithms: Vec<AlgorithmId>,
    /// Stagnation horizons.
    pub t_values: Vec<u64>,
    pub runs: usize,
    pub base_seed: u64,
    pub dim: usize,
    pub bounds: Bounds,
    pub max_generations: u64,
    pub stationarity_threshold: f64,
    /// Keep per-generation best values in each record.
    pub capture_curves: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            functions: BenchmarkId::ALL.to_vec(),
            algorithms: AlgorithmId::ALL.to_vec(),
            t_values: DEFAULT_T_VALUES.to_vec(),
            runs: DEFAULT_RUNS,
            base_seed: DEFAULT_SEED,
            dim: DEFAULT_DIM,
            bounds: Bounds::uniform(DEFAULT_DIM, -100.0, 100.0).expect("valid default bounds"),
            max_generations: DEFAULT_MAX_GENERATIONS,
            stationarity_threshold: DEFAULT_STATIONARITY_THRESHOLD,
            capture_curves: true,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.functions.is_empty() {
            return bad("functions: at least one benchmark is required".into());
        }
        if self.algorithms.is_empty() {
            return bad("algorithms: at least one algorithm is required".into());
        }
        if self.t_values.is_empty() {
            return bad("T: at least one stagnation horizon is required".into());
        }
        if self.runs < 1 {
            return bad(format!("runs: must be >= 1, got {}", self.runs));
        }
        if self.dim < 2 {
            return bad(format!("dim: must be >= 2, got {}", self.dim));
        }
        if self.bounds.dim() != self.dim {
            return bad(format!(
                "bounds: dimension {} does not match dim {}",
                self.bounds.dim(),
                self.dim
            ));
        }
        if self.max_generations < 1 {
            return bad("max_generations: must be >= 1".into());
        }
        if let Some(t) = self.t_values.iter().find(|&&t| t < 1 || t >= self.max_generations) {
            return bad(format!(
                "T: every value must satisfy 1 <= T < max_generations ({}), got {t}",
                self.max_generations
            ));
        }
        if !(self.stationarity_threshold > 0.0) {
            return bad(format!(
                "stationarity_threshold: must be > 0, got {}",
                self.stationarity_threshold
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Stagnation,
    GenerationCap,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Stagnation => "stagnation",
            Termination::GenerationCap => "generation_cap",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub function: BenchmarkId,
    pub algorithm: AlgorithmId,
    pub t: u64,
    pub run_index: usize,
    pub seed_path: Vec<Label>,
    pub best_point: Point,
    pub best_value: f64,
    pub grad_norm: f64,
    pub generations: u64,
    pub evaluations: u64,
    pub termination: Termination,
    /// `(generation, best_value)` for every generation including 0; empty
    /// unless curve capture is on.
    pub curve: Vec<(u64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub function: BenchmarkId,
    pub t: u64,
    pub algorithm: AlgorithmId,
    pub mean_grad_norm: f64,
    pub stationary_fraction: f64,
    pub mean_generations: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stationary,
    NonStationary,
}

/// Seed path of one run: `[function, algorithm, T, run_index]`.
pub fn seed_path(function: BenchmarkId, algorithm: AlgorithmId, t: u64, run_index: usize) -> Vec<Label> {
    vec![
        function.name().into(),
        algorithm.name().into(),
        Label::Int(t),
        Label::Int(run_index as u64),
    ]
}

/// Euclidean norm of the analytic gradient of `function` at `x`.
pub fn gradient_norm(function: BenchmarkId, x: &[f64]) -> Result<f64> {
    Ok(norm(&function.grad(x)?))
}

/// Steps `state` until `T` generations pass without strict improvement or
/// `max_generations` is reached. The curve holds `(generation, best)` from
/// the current generation onwards when `capture` is set.
pub fn run_until_stagnant(
    state: &mut AlgoState,
    t: u64,
    max_generations: u64,
    capture: bool,
) -> (Termination, Vec<(u64, f64)>) {
    let mut curve = Vec::new();
    if capture {
        curve.push((state.generation(), state.best().1));
    }
    let termination = loop {
        state.step();
        let g = state.generation();
        if capture {
            curve.push((g, state.best().1));
        }
        if g - state.tracker().last_improvement_gen() >= t {
            break Termination::Stagnation;
        }
        if g >= max_generations {
            break Termination::GenerationCap;
        }
    };
    (termination, curve)
}

pub fn run_single(
    function: BenchmarkId,
    algorithm: AlgorithmId,
    t: u64,
    run_index: usize,
    cfg: &ExperimentConfig,
) -> Result<RunRecord> {
    cfg.validate()?;
    let objective = function.objective(cfg.bounds.clone())?;
    let params = default_params(algorithm, cfg.dim).with_schedule_horizon(cfg.max_generations);
    let path = seed_path(function, algorithm, t, run_index);
    let rng = derive_stream(cfg.base_seed, path.clone());
    let mut state = AlgoState::init(params, objective, rng)?;

    let (termination, curve) = run_until_stagnant(&mut state, t, cfg.max_generations, cfg.capture_curves);

    let (best_point, best_value) = state.best();
    Ok(RunRecord {
        function,
        algorithm,
        t,
        run_index,
        seed_path: path,
        grad_norm: gradient_norm(function, best_point)?,
        best_point: best_point.clone(),
        best_value,
        generations: state.generation(),
        evaluations: state.evaluations(),
        termination,
        curve,
    })
}

/// Per-(function, T, algorithm) aggregates, ordered by that key.
pub fn summarize(records: &[RunRecord], threshold: f64) -> Vec<SummaryRow> {
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.function, r.t, r.algorithm, r.run_index));
    sorted
        .chunk_by(|a, b| (a.function, a.t, a.algorithm) == (b.function, b.t, b.algorithm))
        .map(|group| {
            let n = group.len() as f64;
            let first = group[0];
            SummaryRow {
                function: first.function,
                t: first.t,
                algorithm: first.algorithm,
                mean_grad_norm: group.iter().map(|r| r.grad_norm).sum::<f64>() / n,
                stationary_fraction: group.iter().filter(|r| r.grad_norm <= threshold).count() as f64 / n,
                mean_generations: group.iter().map(|r| r.generations as f64).sum::<f64>() / n,
                runs: group.len(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    /// Ordered by (function, algorithm, T, run).
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

/// Runs the whole grid. The result does not depend on `executor`.
pub fn run_experiment(cfg: &ExperimentConfig, executor: Executor) -> Result<Experiment> {
    cfg.validate()?;
    let mut keys = Vec::new();
    for &f in &cfg.functions {
        for &a in &cfg.algorithms {
            for &t in &cfg.t_values {
                for run in 0..cfg.runs {
                    keys.push((f, a, t, run));
                }
            }
        }
    }
    keys.sort();
    keys.dedup();
    let records = executor
        .map(keys, |(f, a, t, run)| run_single(f, a, t, run, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&records, cfg.stationarity_threshold);
    Ok(Experiment { records, summary })
}

pub fn audit_optimality(record: &RunRecord, threshold: f64) -> Result<Verdict> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidConfig(format!("threshold must be > 0, got {threshold}")));
    }
    Ok(if record.grad_norm <= threshold {
        Verdict::Stationary
    } else {
        Verdict::NonStationary
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::OptimumBranch;

    fn record_at(point: Point, grad_norm: f64) -> RunRecord {
        RunRecord {
            function: BenchmarkId::Zhou1,
            algorithm: AlgorithmId::Gwo,
            t: 100,
            run_index: 0,
            seed_path: seed_path(BenchmarkId::Zhou1, AlgorithmId::Gwo, 100, 0),
            best_point: point,
            best_value: 0.0,
            grad_norm,
            generations: 100,
            evaluations: 0,
            termination: Termination::Stagnation,
            curve: vec![],
        }
    }

    #[test]
    fn audit_examples() {
        let opt = BenchmarkId::Zhou1.optimum(3, OptimumBranch::Plus).unwrap();
        let g = gradient_norm(BenchmarkId::Zhou1, &opt).unwrap();
        let r = record_at(opt, g);
        assert_eq!(audit_optimality(&r, 1e-4).unwrap(), Verdict::Stationary);

        let far = record_at(Point::new(vec![0.0; 3]).unwrap(), 2.12e8);
        assert_eq!(audit_optimality(&far, 1.0).unwrap(), Verdict::NonStationary);
        assert!(audit_optimality(&far, 0.0).is_err());
    }

    #[test]
    fn audit_is_monotone_in_threshold() {
        let r = record_at(Point::new(vec![0.0; 3]).unwrap(), 0.5);
        let thresholds = [0.1, 0.49, 0.5, 0.51, 3.0, 1e9];
        let mut seen_stationary = false;
        for t in thresholds {
            let v = audit_optimality(&r, t).unwrap();
            if seen_stationary {
                assert_eq!(v, Verdict::Stationary);
            }
            seen_stationary |= v == Verdict::Stationary;
        }
        assert!(seen_stationary);
    }

    #[test]
    fn config_validation_names_the_field() {
        let mut cfg = ExperimentConfig {
            runs: 0,
            ..Default::default()
        };
        assert!(cfg.validate().unwrap_err().to_string().contains("runs"));
        cfg.runs = 1;
        cfg.t_values = vec![20_000];
        assert!(cfg.validate().unwrap_err().to_string().contains("T"));
        cfg.t_values = vec![100];
        cfg.dim = 4;
        assert!(cfg.validate().unwrap_err().to_string().contains("bounds"));
    }

    #[test]
    fn summary_groups_and_averages() {
        let mk = |alg, run, g| RunRecord {
            algorithm: alg,
            run_index: run,
            grad_norm: g,
            ..record_at(Point::new(vec![0.0; 3]).unwrap(), g)
        };
        let records = vec![
            mk(AlgorithmId::Woa, 0, 4.0),
            mk(AlgorithmId::Gwo, 1, 1e-3),
            mk(AlgorithmId::Gwo, 0, 3.0),
        ];
        let s = summarize(&records, 1e-2);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].algorithm, AlgorithmId::Gwo);
        assert_eq!(s[0].runs, 2);
        assert_eq!(s[0].mean_grad_norm, (3.0 + 1e-3) / 2.0);
        assert_eq!(s[0].stationary_fraction, 0.5);
        assert_eq!(s[1].mean_grad_norm, 4.0);
    }
}
