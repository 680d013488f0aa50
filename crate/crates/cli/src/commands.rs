use std::io::Write;
use std::path::{Path, PathBuf};

use evostall::harness::report::{self, fmt_f64};
use evostall::harness::{gradient_norm, summarize, Experiment};
use evostall::nominal::{centred_init, simulate, step_ratios, NominalConfig, Pairing};
use evostall::verify::run_checks;
use evostall::{derive_stream, run_experiment, run_single, AlgorithmId, BenchmarkId, Executor, OptimumBranch};

use crate::config::{parse_config, pair, CliConfig, Settings};
use crate::{BenchArgs, Cli, CliError, Command, CommonArgs, GridArgs, NominalArgs, RunArgs};

/// Half-width of the box the nominal initial positions are drawn from.
const NOMINAL_SPREAD: f64 = 1.0;

fn parse<T: std::str::FromStr>(raw: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    raw.parse().map_err(|e: T::Err| CliError::Usage(e.to_string()))
}

fn parse_all<T: std::str::FromStr>(raw: &Option<Vec<String>>) -> Result<Option<Vec<T>>, CliError>
where
    T::Err: std::fmt::Display,
{
    raw.as_ref().map(|v| v.iter().map(|s| parse(s.trim())).collect()).transpose()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(",")
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Nominal(args) => nominal(args, cli.seed.unwrap_or(0), out),
        Command::Bench(args) => bench(args, out),
        Command::Run(args) => single(&cli, args, out),
        Command::Experiment(grid) => experiment(&cli, grid, out),
        Command::Verify => verify(out),
    }
}

/// Config from `--config`, then command flags, then the global flags.
pub fn resolve(cli: &Cli, common: &CommonArgs, grid: Option<&GridArgs>) -> Result<CliConfig, CliError> {
    let flags = Settings {
        functions: grid.map(|g| parse_all(&g.functions)).transpose()?.flatten(),
        algorithms: grid.map(|g| parse_all(&g.algorithms)).transpose()?.flatten(),
        t_values: grid.and_then(|g| g.t_values.clone()),
        runs: common.runs,
        base_seed: cli.seed,
        dim: common.dim,
        bounds: common.bounds.as_deref().map(|b| pair("bounds", b)).transpose()?,
        max_generations: common.max_generations,
        stationarity_threshold: common.stationarity_threshold,
        output_dir: cli.out.clone(),
        curve_capture: cli.no_curves.then_some(false),
        workers: cli.workers,
    };
    parse_config(common.config.as_deref(), flags)
}

fn nominal(args: &NominalArgs, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let pairing: Pairing = parse(&args.pairing)?;
    let cfg = NominalConfig::new(args.alpha, args.n, args.dim, pairing).with_stagnant(args.stagnant.iter().copied());
    cfg.validate()?;
    let mut rng = derive_stream(seed, ["nominal"]);
    let init = centred_init(&cfg, NOMINAL_SPREAD, &mut rng)?;
    let sim = simulate(&cfg, init, args.steps, &mut rng)?;
    let errors = sim.errors.values();
    let ratios = step_ratios(errors);
    let predicted = cfg.predicted_factor().map(fmt_f64).unwrap_or_default();

    writeln!(out, "step,diameter,predicted_factor,measured_factor").map_err(stdout_err)?;
    for (k, e) in errors.iter().enumerate() {
        let measured = match k {
            0 => String::new(),
            _ => ratios[k - 1].map(fmt_f64).unwrap_or_default(),
        };
        writeln!(out, "{k},{},{predicted},{measured}", fmt_f64(*e)).map_err(stdout_err)?;
    }
    Ok(())
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let id: BenchmarkId = parse(&args.function)?;
    let x: Vec<f64> = match (&args.point, &args.optimum) {
        (Some(p), _) => p
            .split(',')
            .map(|c| parse::<f64>(c.trim()))
            .collect::<Result<_, _>>()?,
        (None, Some(branch)) => id.optimum(args.dim, parse::<OptimumBranch>(branch)?)?.into_inner(),
        (None, None) => return Err(CliError::Usage("give --point or --optimum".into())),
    };
    let value = id.eval(&x)?;
    let grad = id.grad(&x)?;
    let norm = gradient_norm(id, &x)?;
    let body = format!(
        "function,{}\npoint,{}\nvalue,{}\ngradient,{}\ngrad_norm,{}\n",
        id.name(),
        join(&x),
        fmt_f64(value),
        join(&grad),
        fmt_f64(norm)
    );
    out.write_all(body.as_bytes()).map_err(stdout_err)
}

fn emit(cfg: &CliConfig, experiment: &Experiment, out: &mut dyn Write) -> Result<(), CliError> {
    let written = report::write_all(&cfg.output_dir, experiment).map_err(io_err(&cfg.output_dir))?;
    out.write_all(report::summary_table(&experiment.summary).as_bytes())
        .map_err(stdout_err)?;
    eprintln!("wrote {} file(s) to {}", written.len(), cfg.output_dir.display());
    Ok(())
}

fn single(cli: &Cli, args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let function: BenchmarkId = parse(&args.function)?;
    let algorithm: AlgorithmId = parse(&args.algorithm)?;
    let mut cfg = resolve(cli, &args.common, None)?;
    cfg.experiment.functions = vec![function];
    cfg.experiment.algorithms = vec![algorithm];
    cfg.experiment.t_values = vec![args.t];
    cfg.experiment.validate()?;
    let record = run_single(function, algorithm, args.t, args.run, &cfg.experiment)?;
    let records = vec![record];
    let summary = summarize(&records, cfg.experiment.stationarity_threshold);
    emit(&cfg, &Experiment { records, summary }, out)
}

fn experiment(cli: &Cli, grid: &GridArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = resolve(cli, &grid.common, Some(grid))?;
    let result = run_experiment(&cfg.experiment, Executor::with_workers(cfg.workers))?;
    emit(&cfg, &result, out)
}

fn verify(out: &mut dyn Write) -> Result<(), CliError> {
    let checks = run_checks();
    let mut failed = 0;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!c.passed);
        writeln!(out, "{status} {}: {}", c.name, c.detail).map_err(stdout_err)?;
    }
    writeln!(out, "{}/{} checks passed", checks.len() - failed, checks.len()).map_err(stdout_err)?;
    match failed {
        0 => Ok(()),
        n => Err(CliError::ChecksFailed(n)),
    }
}
