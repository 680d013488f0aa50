//! CSV and plain-text renderings of experiment results.
//!
//! Floats are written with 17 significant digits in scientific notation,
//! which round-trips every `f64` exactly.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use super::{Experiment, RunRecord, SummaryRow};

pub const RECORDS_HEADER: &str = "function,algorithm,T,run,best_value,grad_norm,generations,evaluations,termination";
pub const SUMMARY_HEADER: &str = "function,T,algorithm,mean_grad_norm,stationary_fraction,mean_generations,runs";
pub const CURVE_HEADER: &str = "run,generation,best_value";

/// Round-trip exact text for `v`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        // "inf", "-inf", "NaN" all parse back with str::parse::<f64>
        format!("{v}")
    }
}

pub fn write_records<W: Write>(mut out: W, records: &[RunRecord]) -> io::Result<()> {
    writeln!(out, "{RECORDS_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.function,
            r.algorithm,
            r.t,
            r.run_index,
            fmt_f64(r.best_value),
            fmt_f64(r.grad_norm),
            r.generations,
            r.evaluations,
            r.termination
        )?;
    }
    Ok(())
}

fn summary_cells(row: &SummaryRow) -> [String; 7] {
    [
        row.function.to_string(),
        row.t.to_string(),
        row.algorithm.to_string(),
        fmt_f64(row.mean_grad_norm),
        fmt_f64(row.stationary_fraction),
        fmt_f64(row.mean_generations),
        row.runs.to_string(),
    ]
}

pub fn write_summary<W: Write>(mut out: W, summary: &[SummaryRow]) -> io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for row in summary {
        writeln!(out, "{}", summary_cells(row).join(","))?;
    }
    Ok(())
}

/// Curve CSV contents keyed by file name, one file per (function, algorithm, T).
pub fn curve_files(records: &[RunRecord]) -> BTreeMap<String, String> {
    let mut files: BTreeMap<String, String> = BTreeMap::new();
    for r in records {
        let name = format!("curve_{}_{}_T{}.csv", r.function, r.algorithm, r.t);
        let body = files.entry(name).or_insert_with(|| format!("{CURVE_HEADER}\n"));
        for (g, v) in &r.curve {
            body.push_str(&format!("{},{},{}\n", r.run_index, g, fmt_f64(*v)));
        }
    }
    files
}

/// The summary as an aligned text table, using the same number strings as
/// the CSV.
pub fn summary_table(summary: &[SummaryRow]) -> String {
    let header: Vec<String> = SUMMARY_HEADER.split(',').map(str::to_owned).collect();
    let rows: Vec<[String; 7]> = summary.iter().map(summary_cells).collect();
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_owned()
    };
    let mut out = line(&header);
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// Writes `records.csv`, `summary.csv` and (when any record carries a
/// curve) the curve CSVs into `dir`, creating it if needed. Returns the
/// paths written.
pub fn write_all(dir: &Path, experiment: &Experiment) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let path = dir.join("records.csv");
    let mut buf = Vec::new();
    write_records(&mut buf, &experiment.records)?;
    fs::write(&path, buf)?;
    written.push(path);

    let path = dir.join("summary.csv");
    let mut buf = Vec::new();
    write_summary(&mut buf, &experiment.summary)?;
    fs::write(&path, buf)?;
    written.push(path);

    if experiment.records.iter().any(|r| !r.curve.is_empty()) {
        for (name, body) in curve_files(&experiment.records) {
            let path = dir.join(name);
            fs::write(&path, body)?;
            written.push(path);
        }
    }
    Ok(written)
}
