use evostall::harness::report::{self, fmt_f64};
use evostall::harness::{gradient_norm, summarize};
use evostall::{
    default_params, derive_stream, run_experiment, run_single, run_until_stagnant, AlgoState, AlgorithmId,
    BenchmarkId, Bounds, Executor, ExperimentConfig, ObjectiveSpec, RunRecord, Termination,
};

fn small(runs: usize, t: u64) -> ExperimentConfig {
    ExperimentConfig {
        functions: BenchmarkId::ALL.to_vec(),
        algorithms: AlgorithmId::ALL.to_vec(),
        t_values: vec![t],
        runs,
        ..ExperimentConfig::default()
    }
}

/// Generation of the last strict decrease in the curve (0 if none).
fn last_improvement(curve: &[(u64, f64)]) -> u64 {
    curve
        .windows(2)
        .filter(|w| w[1].1 < w[0].1)
        .map(|w| w[1].0)
        .last()
        .unwrap_or(0)
}

fn check_replay(r: &RunRecord) {
    assert_eq!(r.curve.first().map(|c| c.0), Some(0));
    assert_eq!(r.curve.last().unwrap().0, r.generations);
    assert_eq!(r.curve.last().unwrap().1, r.best_value);
    assert!(r.curve.windows(2).all(|w| w[1].1 <= w[0].1 && w[1].0 == w[0].0 + 1));
    if r.termination == Termination::Stagnation {
        assert_eq!(r.generations - last_improvement(&r.curve), r.t, "{:?}", r.seed_path);
    }
}

#[test]
fn never_improving_run_stops_at_exactly_t() {
    let dom = Bounds::uniform(3, -1.0, 1.0).unwrap();
    for id in AlgorithmId::ALL {
        let flat = ObjectiveSpec::new("flat", |_: &[f64]| 1.0, |x: &[f64]| vec![0.0; x.len()], vec![], dom.clone())
            .unwrap();
        let mut s = AlgoState::init(default_params(id, 3), flat, derive_stream(1, ["flat"])).unwrap();
        let (term, curve) = run_until_stagnant(&mut s, 100, 20_000, true);
        assert_eq!(term, Termination::Stagnation);
        assert_eq!(s.generation(), 100, "{}", id.name());
        assert_eq!(curve.len(), 101);
    }
}

#[test]
fn cap_is_reported_separately() {
    let sphere = ObjectiveSpec::sphere(Bounds::uniform(3, -100.0, 100.0).unwrap()).unwrap();
    let mut s = AlgoState::init(default_params(AlgorithmId::Lshade, 3), sphere, derive_stream(1, ["cap"])).unwrap();
    let (term, curve) = run_until_stagnant(&mut s, 50, 10, false);
    assert_eq!(term, Termination::GenerationCap);
    assert_eq!(s.generation(), 10);
    assert!(curve.is_empty());
}

#[test]
fn stagnation_replay_holds_for_every_record() {
    for t in [100, 1000] {
        let exp = run_experiment(&small(2, t), Executor::Auto).unwrap();
        assert_eq!(exp.records.len(), 3 * 6 * 2);
        exp.records.iter().for_each(check_replay);
    }
}

#[test]
fn records_recompute_and_summaries_average() {
    let cfg = ExperimentConfig {
        functions: vec![BenchmarkId::Zhou1],
        algorithms: vec![AlgorithmId::Gwo],
        t_values: vec![100],
        runs: 3,
        ..ExperimentConfig::default()
    };
    let exp = run_experiment(&cfg, Executor::Sequential).unwrap();
    assert_eq!(exp.records.len(), 3);
    assert_eq!(exp.summary.len(), 1);
    assert_eq!(exp.summary[0].runs, 3);
    for r in &exp.records {
        assert!(r.grad_norm >= 0.0);
        assert_eq!(r.grad_norm.to_bits(), gradient_norm(r.function, &r.best_point).unwrap().to_bits());
        assert_eq!(r, &run_single(r.function, r.algorithm, r.t, r.run_index, &cfg).unwrap());
    }
    let mean = exp.records.iter().map(|r| r.grad_norm).sum::<f64>() / 3.0;
    let got = exp.summary[0].mean_grad_norm;
    assert!((got - mean).abs() <= 1e-15 * mean.abs());
}

#[test]
fn summary_is_ordered_and_sized() {
    let mut cfg = small(2, 100);
    cfg.t_values = vec![200, 100];
    let exp = run_experiment(&cfg, Executor::Auto).unwrap();
    assert_eq!(exp.summary.len(), 3 * 2 * 6);
    let keys: Vec<_> = exp.summary.iter().map(|s| (s.function, s.t, s.algorithm)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(summarize(&exp.records, cfg.stationarity_threshold), exp.summary);
}

#[test]
fn serial_and_parallel_output_is_byte_identical() {
    let cfg = small(2, 100);
    let render = |exec| {
        let exp = run_experiment(&cfg, exec).unwrap();
        let mut recs = Vec::new();
        let mut sums = Vec::new();
        report::write_records(&mut recs, &exp.records).unwrap();
        report::write_summary(&mut sums, &exp.summary).unwrap();
        (recs, sums, report::curve_files(&exp.records))
    };
    let serial = render(Executor::Sequential);
    assert_eq!(serial, render(Executor::with_workers(8)));
    assert_eq!(serial, render(Executor::Auto));
}

#[test]
fn written_floats_round_trip() {
    let exp = run_experiment(&small(1, 100), Executor::Auto).unwrap();
    for r in &exp.records {
        for v in [r.best_value, r.grad_norm] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}

#[test]
fn invalid_configs_name_the_field() {
    let mut cfg = ExperimentConfig { runs: 0, ..ExperimentConfig::default() };
    assert!(run_experiment(&cfg, Executor::Sequential).unwrap_err().to_string().contains("runs"));
    cfg.runs = 1;
    cfg.t_values = vec![20_000];
    assert!(cfg.validate().unwrap_err().to_string().contains('T'));
}
