pub mod benchmarks;
pub mod error;
pub mod objective;
pub mod point;
pub mod rng;
pub mod tracker;

pub use benchmarks::{fd_gradient, BenchmarkId, OptimumBranch};
pub use error::{Error, Result};
pub use objective::ObjectiveSpec;
pub use point::{clamp, Bounds, Point};
pub use rng::{derive_stream, Label, RngStream};
pub use tracker::{update_best, BestTracker};
pub mod algorithms;
pub mod nominal;

pub use algorithms::{default_params, AlgoState, AlgorithmId, ParamSet};
pub mod exec;
pub mod harness;

pub use exec::Executor;
pub use harness::{
    audit_optimality, run_experiment, run_single, run_until_stagnant, ExperimentConfig, RunRecord, SummaryRow, Termination,
    Verdict,
};
pub mod verify;
