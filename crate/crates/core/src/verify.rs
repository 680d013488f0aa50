//! Self-checks behind the `verify` subcommand: exact contraction of the
//! nominal dynamics, optimum certificates, and gradient/finite-difference
//! agreement.

use rand::Rng;

use crate::benchmarks::{fd_gradient, BenchmarkId, OptimumBranch};
use crate::nominal::{measured_contraction, simulate, step_ratios, NominalConfig, Pairing};
use crate::point::{norm, Point};
use crate::rng::derive_stream;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Largest deviation of any per-step error ratio from `expected`.
fn ratio_deviation(alpha: f64, stagnant: bool, steps: usize) -> (f64, f64) {
    let mut cfg = NominalConfig::new(alpha, 2, 3, Pairing::MutualRandom);
    if stagnant {
        cfg = cfg.with_stagnant([1]);
    }
    // Centred frame: symmetric pair, or the frozen member at the origin, so
    // rounding stays relative to the shrinking gap rather than to |x|.
    let v = [3.5, -1.5, 0.75];
    let init = if stagnant {
        vec![Point::new(v.to_vec()).unwrap(), Point::new(vec![0.0; 3]).unwrap()]
    } else {
        vec![
            Point::new(v.iter().map(|c| -c).collect()).unwrap(),
            Point::new(v.to_vec()).unwrap(),
        ]
    };
    let expected = cfg.predicted_factor().unwrap();
    let sim = simulate(&cfg, init, steps, &mut derive_stream(0, ["verify", "nominal"])).unwrap();
    let worst = step_ratios(sim.errors.values())
        .into_iter()
        .flatten()
        .map(|r| (r - expected).abs())
        .fold(0.0, f64::max);
    let measured = measured_contraction(&sim.errors).unwrap_or(f64::NAN);
    (worst, measured)
}

/// Mixed tolerance: relative `rel` where `|analytic| > 1`, absolute `abs` elsewhere.
pub fn gradient_agrees(analytic: &[f64], numeric: &[f64], rel: f64, abs: f64) -> bool {
    analytic.iter().zip(numeric).all(|(a, n)| {
        if a.abs() > 1.0 {
            ((a - n) / a).abs() <= rel
        } else {
            (a - n).abs() <= abs
        }
    })
}

pub fn run_checks() -> Vec<Check> {
    let mut checks = Vec::new();

    for alpha in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let (worst, _) = ratio_deviation(alpha, false, 50);
        checks.push(Check::new(
            format!("mutual pair contracts by |1-2a| (a={alpha})"),
            worst <= 1e-12,
            format!("max ratio deviation {worst:.3e}"),
        ));
    }
    for alpha in [1.1, 1.5, 1.9] {
        let (_, frozen) = ratio_deviation(alpha, true, 50);
        let (_, mutual) = ratio_deviation(alpha, false, 50);
        let ok = (frozen - (1.0 - alpha).abs()).abs() <= 1e-12
            && (mutual - (1.0 - 2.0 * alpha).abs()).abs() <= 1e-12
            && frozen < 1.0
            && mutual > 1.0;
        checks.push(Check::new(
            format!("frozen partner converges where mutual diverges (a={alpha})"),
            ok,
            format!("frozen {frozen:.15} mutual {mutual:.15}"),
        ));
    }

    for id in BenchmarkId::ALL {
        let mut worst_value: f64 = 0.0;
        let mut worst_grad: f64 = 0.0;
        for n in 2..=5 {
            for &b in &[OptimumBranch::Plus, OptimumBranch::Minus] {
                let p = id.optimum(n, b).unwrap();
                worst_value = worst_value.max(id.eval(&p).unwrap());
                worst_grad = worst_grad.max(norm(&id.grad(&p).unwrap()));
            }
        }
        checks.push(Check::new(
            format!("{id} optimum certificate (n=2..5)"),
            worst_value <= 1e-8 && worst_grad <= 1e-4,
            format!("max f {worst_value:.3e}, max |grad| {worst_grad:.3e}"),
        ));
    }

    for id in BenchmarkId::ALL {
        let mut rng = derive_stream(2024, ["verify", "gradient", id.name()]);
        let mut plain_bad = 0;
        let mut richardson_bad = 0;
        let h = 1e-7;
        for _ in 0..100 {
            let x: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..=2.0)).collect();
            let g = id.grad(&x).unwrap();
            let coarse = fd_gradient(id, &x, h).unwrap();
            let fine = fd_gradient(id, &x, h / 2.0).unwrap();
            let extrapolated: Vec<f64> = coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
            plain_bad += usize::from(!gradient_agrees(&g, &coarse, 1e-3, 1e-2));
            richardson_bad += usize::from(!gradient_agrees(&g, &extrapolated, 1e-3, 1e-2));
        }
        checks.push(Check::new(
            format!("{id} gradient vs central difference h=1e-7"),
            plain_bad == 0,
            format!("{plain_bad}/100 points outside tolerance"),
        ));
        checks.push(Check::new(
            format!("{id} gradient vs Richardson-extrapolated difference"),
            richardson_bad == 0,
            format!("{richardson_bad}/100 points outside tolerance"),
        ));
    }

    checks
}
