use std::path::Path;
use std::process::{Command, Output};

fn evostall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evostall")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_owned()).collect()
}

fn measured(args: &[&str]) -> Vec<f64> {
    let o = evostall(args);
    assert!(o.status.success());
    column(&stdout(&o), "measured_factor")
        .iter()
        .skip(1)
        .map(|v| v.parse().unwrap())
        .collect()
}

fn field(text: &str, key: &str) -> Vec<f64> {
    let line = text.lines().find(|l| l.starts_with(&format!("{key},"))).unwrap();
    line.split(',').skip(1).map(|v| v.parse().unwrap()).collect()
}

#[test]
fn nominal_reports_exact_factors() {
    for (args, want) in [
        (&["nominal", "--alpha", "0.25", "--n", "2"][..], 0.5),
        (&["nominal", "--alpha", "1.5", "--n", "2", "--stagnant", "1"][..], 0.5),
        (&["nominal", "--alpha", "1.5", "--n", "2"][..], 2.0),
    ] {
        let m = measured(args);
        assert_eq!(m.len(), 50);
        assert!(m.iter().all(|r| (r - want).abs() < 1e-12), "{args:?}: {m:?}");
    }
}

#[test]
fn nominal_rejects_bad_population() {
    assert_eq!(evostall(&["nominal", "--alpha", "0.5", "--n", "1"]).status.code(), Some(2));
    assert_eq!(evostall(&["nominal", "--alpha", "0.5", "--n", "2", "--stagnant", "0,1"]).status.code(), Some(2));
    assert_eq!(evostall(&["nominal", "--alpha", "0.5", "--pairing", "star"]).status.code(), Some(2));
}

#[test]
fn bench_at_the_known_optimum() {
    let o = evostall(&["bench", "zhou1", "--point", "1,2,8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "value"), vec![0.0]);
    assert_eq!(field(&text, "grad_norm"), vec![0.0]);

    let text = stdout(&evostall(&["bench", "zhou2", "--optimum", "plus"]));
    assert_eq!(field(&text, "point").len(), 3);
    assert!(field(&text, "value")[0] <= 1e-8);
}

#[test]
fn bench_unknown_function_lists_valid_names() {
    let o = evostall(&["bench", "zhou9", "--point", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("zhou1, zhou2, zhou3"), "{err}");
    assert_eq!(evostall(&["bench", "zhou1", "--point", "1"]).status.code(), Some(2));
}

#[test]
fn experiment_writes_one_summary_row_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res");
    let o = evostall(&[
        "experiment", "--functions", "zhou1,zhou3", "--algorithms", "gwo,hho,lshade", "--T", "100,200",
        "--runs", "2", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 2 * 2 * 3);
    let records = std::fs::read_to_string(out.join("records.csv")).unwrap();
    assert_eq!(records.lines().count(), 1 + 2 * 2 * 3 * 2);
    assert!(out.join("curve_zhou3_lshade_T200.csv").exists());

    // printed table carries the same number strings as the CSV
    let table = stdout(&o);
    for line in summary.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let row = table.lines().find(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            t.len() == cells.len() && t[..3] == cells[..3]
        });
        assert_eq!(row.unwrap().split_whitespace().collect::<Vec<_>>(), cells);
    }
}

#[test]
fn config_file_and_flags_layer() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.kv");
    let out = dir.path().join("res");
    std::fs::write(&cfg, "# small grid\nfunctions = zhou2\nalgorithms = woa\nT = 100, 200\nruns = 1\ncurve_capture = false\n").unwrap();
    let o = evostall(&["experiment", "--config", cfg.to_str().unwrap(), "--T", "100", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(column(&summary, "T"), vec!["100"]);
    assert!(!out.join("curve_zhou2_woa_T100.csv").exists());

    std::fs::write(&cfg, "populaton = 4\n").unwrap();
    let o = evostall(&["experiment", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("populaton"));
}

#[test]
fn exit_codes() {
    assert_eq!(evostall(&["experiment", "--runs", "0"]).status.code(), Some(2));
    assert_eq!(evostall(&["experiment", "--config", "/nonexistent/grid.kv"]).status.code(), Some(3));
    assert_eq!(evostall(&["frobnicate"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let out = blocker.join("sub");
    let o = evostall(&["run", "--function", "zhou1", "--algorithm", "gwo", "--T", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn run_writes_a_single_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    let args = ["run", "--function", "zhou1", "--algorithm", "clpso", "--T", "100", "--run", "4", "--seed", "7"];
    let o = evostall(&[&args[..], &["--out", out.to_str().unwrap()]].concat());
    assert!(o.status.success());
    let records = std::fs::read_to_string(Path::new(out).join("records.csv")).unwrap();
    assert_eq!(column(&records, "run"), vec!["4"]);
    assert_eq!(column(&records, "termination"), vec!["stagnation"]);
}

#[test]
fn negative_leading_values_parse() {
    let o = evostall(&["bench", "zhou2", "--point", "-1,-1.4142135623730951,1.6817928305074292"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(field(&stdout(&o), "value")[0] < 1e-8);

    let dir = tempfile::tempdir().unwrap();
    let args = ["run", "--function", "zhou1", "--algorithm", "woa", "--T", "50", "--bounds", "-20,20"];
    let o = evostall(&[&args[..], &["--out", dir.path().to_str().unwrap()]].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
