//! The nominal optimizer: individuals move toward a neighbour by a fixed
//! fraction `alpha` of the gap, `x_i ← x_i + α (x_j − x_i)`.
//!
//! With both members of a pair moving, the pair error scales by `1 − 2α`
//! per step. If the neighbour is frozen (stagnant), the error scales by
//! `1 − α`, which converges on the wider range `0 < α < 2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::point::{distance, Point};
use crate::rng::RngStream;

/// Entries smaller than this are treated as zero by [`measured_contraction`].
pub const CONTRACTION_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// Each step draws a uniform perfect matching over all individuals.
    MutualRandom,
    /// Synchronous `x_i ← x_i + α (x_{i+1 mod N} − x_i)`.
    Ring,
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pairing::MutualRandom => "mutual_random",
            Pairing::Ring => "ring",
        })
    }
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mutual_random" | "mutual" | "random" => Ok(Pairing::MutualRandom),
            "ring" => Ok(Pairing::Ring),
            _ => Err(Error::UnknownName {
                name: s.to_owned(),
                valid: "mutual_random, ring".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NominalConfig {
    pub alpha: f64,
    pub n_individuals: usize,
    pub dim: usize,
    pub pairing: Pairing,
    /// Indices whose positions never change.
    pub stagnant: BTreeSet<usize>,
}

impl NominalConfig {
    pub fn new(alpha: f64, n_individuals: usize, dim: usize, pairing: Pairing) -> Self {
        Self {
            alpha,
            n_individuals,
            dim,
            pairing,
            stagnant: BTreeSet::new(),
        }
    }

    pub fn with_stagnant(mut self, stagnant: impl IntoIterator<Item = usize>) -> Self {
        self.stagnant = stagnant.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::InvalidConfig(format!("alpha must be finite, got {}", self.alpha)));
        }
        if self.n_individuals < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_individuals must be >= 2, got {}",
                self.n_individuals
            )));
        }
        if self.dim < 1 {
            return Err(Error::DimensionTooSmall { min: 1, actual: 0 });
        }
        if let Some(&bad) = self.stagnant.iter().find(|&&i| i >= self.n_individuals) {
            return Err(Error::InvalidConfig(format!(
                "stagnant index {bad} out of range for {} individuals",
                self.n_individuals
            )));
        }
        if self.stagnant.len() >= self.n_individuals {
            return Err(Error::InvalidConfig(
                "every individual is stagnant; at least one must move".into(),
            ));
        }
        Ok(())
    }

    /// Closed-form per-step error factor for the two-individual system,
    /// `|1 − 2α|` when both move and `|1 − α|` when one is frozen.
    pub fn predicted_factor(&self) -> Option<f64> {
        if self.n_individuals != 2 {
            return None;
        }
        match self.stagnant.len() {
            0 => Some((1.0 - 2.0 * self.alpha).abs()),
            1 => Some((1.0 - self.alpha).abs()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NominalState {
    pub positions: Vec<Point>,
    pub k: u64,
}

/// Per-step population diameter, starting with the initial state.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorSequence(pub Vec<f64>);

impl ErrorSequence {
    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub trajectory: Vec<NominalState>,
    pub errors: ErrorSequence,
}

fn same_dim(a: &Point, b: &Point) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok(())
}

fn toward(x: &[f64], target: &[f64], alpha: f64) -> Vec<f64> {
    x.iter().zip(target).map(|(a, b)| a + alpha * (b - a)).collect()
}

/// Both individuals move toward each other.
pub fn pair_step(xi: &Point, xj: &Point, alpha: f64) -> Result<(Point, Point)> {
    same_dim(xi, xj)?;
    Ok((
        Point::new(toward(xi, xj, alpha))?,
        Point::new(toward(xj, xi, alpha))?,
    ))
}

/// Only `xi` moves; `xj_frozen` is stagnant.
pub fn stagnant_step(xi: &Point, xj_frozen: &Point, alpha: f64) -> Result<Point> {
    same_dim(xi, xj_frozen)?;
    Point::new(toward(xi, xj_frozen, alpha))
}

/// Maximum pairwise Euclidean distance.
pub fn diameter(positions: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in positions.iter().enumerate() {
        for b in &positions[i + 1..] {
            d = d.max(distance(a, b));
        }
    }
    d
}

fn step_once(cfg: &NominalConfig, positions: &[Point], rng: &mut RngStream) -> Result<Vec<Point>> {
    let alpha = cfg.alpha;
    let frozen = |i: usize| cfg.stagnant.contains(&i);
    let mut next = positions.to_vec();
    match cfg.pairing {
        Pairing::Ring => {
            let n = positions.len();
            for i in (0..n).filter(|&i| !frozen(i)) {
                next[i] = Point::new(toward(&positions[i], &positions[(i + 1) % n], alpha))?;
            }
        }
        Pairing::MutualRandom => {
            let mut order: Vec<usize> = (0..positions.len()).collect();
            order.shuffle(rng);
            // an odd individual out stays put
            for pair in order.chunks_exact(2) {
                let (i, j) = (pair[0], pair[1]);
                match (frozen(i), frozen(j)) {
                    (false, false) => {
                        let (a, b) = pair_step(&positions[i], &positions[j], alpha)?;
                        next[i] = a;
                        next[j] = b;
                    }
                    (false, true) => next[i] = stagnant_step(&positions[i], &positions[j], alpha)?,
                    (true, false) => next[j] = stagnant_step(&positions[j], &positions[i], alpha)?,
                    (true, true) => {}
                }
            }
        }
    }
    Ok(next)
}

/// Runs `steps` synchronous updates from `init`.
///
/// The trajectory and error sequence both hold `steps + 1` entries, the
/// first being the initial state. Fails with [`Error::NonFinite`] if a
/// diverging configuration overflows.
pub fn simulate(
    cfg: &NominalConfig,
    init: Vec<Point>,
    steps: usize,
    rng: &mut RngStream,
) -> Result<Simulation> {
    cfg.validate()?;
    if init.len() != cfg.n_individuals {
        return Err(Error::InvalidConfig(format!(
            "expected {} initial points, got {}",
            cfg.n_individuals,
            init.len()
        )));
    }
    if let Some(p) = init.iter().find(|p| p.dim() != cfg.dim) {
        return Err(Error::DimensionMismatch {
            expected: cfg.dim,
            actual: p.dim(),
        });
    }
    if steps < 1 {
        return Err(Error::InvalidConfig("steps must be >= 1".into()));
    }

    let mut errors = Vec::with_capacity(steps + 1);
    let mut trajectory = Vec::with_capacity(steps + 1);
    errors.push(diameter(&init));
    trajectory.push(NominalState {
        positions: init,
        k: 0,
    });
    for k in 1..=steps as u64 {
        let next = step_once(cfg, &trajectory.last().unwrap().positions, rng)?;
        errors.push(diameter(&next));
        trajectory.push(NominalState { positions: next, k });
    }
    Ok(Simulation {
        trajectory,
        errors: ErrorSequence(errors),
    })
}

/// Uniform random positions in `[-half_width, half_width]^dim`, translated so
/// that the first stagnant individual (or, with none, the centroid) sits at
/// the origin. Error dynamics are translation invariant, and in this frame
/// rounding stays relative to the gaps being measured.
pub fn centred_init(cfg: &NominalConfig, half_width: f64, rng: &mut RngStream) -> Result<Vec<Point>> {
    use rand::Rng;

    let mut raw: Vec<Vec<f64>> = (0..cfg.n_individuals)
        .map(|_| (0..cfg.dim).map(|_| rng.random_range(-half_width..=half_width)).collect())
        .collect();
    let origin: Vec<f64> = match cfg.stagnant.iter().next() {
        Some(&j) => raw[j].clone(),
        None => (0..cfg.dim)
            .map(|d| raw.iter().map(|x| x[d]).sum::<f64>() / cfg.n_individuals as f64)
            .collect(),
    };
    for x in &mut raw {
        for (v, o) in x.iter_mut().zip(&origin) {
            *v -= o;
        }
    }
    raw.into_iter().map(Point::new).collect()
}

/// Per-step ratios `e[k+1] / e[k]` over consecutive entries that are both
/// above [`CONTRACTION_FLOOR`]. `None` where a ratio is unusable.
pub fn step_ratios(errors: &[f64]) -> Vec<Option<f64>> {
    let usable = |e: f64| e.is_finite() && e >= CONTRACTION_FLOOR;
    errors
        .windows(2)
        .map(|w| (usable(w[0]) && usable(w[1])).then(|| w[1] / w[0]))
        .collect()
}

/// Geometric mean of the per-step error ratios.
pub fn measured_contraction(errors: &ErrorSequence) -> Result<f64> {
    let ratios: Vec<f64> = step_ratios(&errors.0).into_iter().flatten().collect();
    if ratios.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 consecutive non-zero errors, found {} usable ratios",
            ratios.len()
        )));
    }
    let mean_log = ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64;
    Ok(mean_log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;
    use rand::Rng;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn two(alpha: f64) -> NominalConfig {
        NominalConfig::new(alpha, 2, 1, Pairing::MutualRandom)
    }

    #[test]
    fn pair_step_examples() {
        assert_eq!(pair_step(&p(&[0.0]), &p(&[4.0]), 0.5).unwrap(), (p(&[2.0]), p(&[2.0])));
        let (a, b) = pair_step(&p(&[0.0]), &p(&[8.0]), 0.25).unwrap();
        assert_eq!((a[0], b[0]), (2.0, 6.0));
        let (a, b) = pair_step(&p(&[0.0]), &p(&[2.0]), 1.0).unwrap();
        assert_eq!((a[0], b[0]), (2.0, 0.0));
    }

    #[test]
    fn stagnant_step_examples() {
        assert_eq!(stagnant_step(&p(&[4.0]), &p(&[0.0]), 1.5).unwrap(), p(&[-2.0]));
        assert_eq!(stagnant_step(&p(&[4.0]), &p(&[0.0]), 1.0).unwrap(), p(&[0.0]));
        assert_eq!(stagnant_step(&p(&[4.0]), &p(&[0.0]), 2.5).unwrap(), p(&[-6.0]));
    }

    #[test]
    fn steps_reject_dimension_mismatch() {
        assert!(pair_step(&p(&[0.0]), &p(&[1.0, 2.0]), 0.5).is_err());
        assert!(stagnant_step(&p(&[0.0, 1.0]), &p(&[1.0]), 0.5).is_err());
    }

    #[test]
    fn pair_sum_is_preserved() {
        let mut rng = derive_stream(3, ["pair-sum"]);
        for _ in 0..1000 {
            let a: Vec<f64> = (0..4).map(|_| rng.random_range(-100.0..100.0)).collect();
            let b: Vec<f64> = (0..4).map(|_| rng.random_range(-100.0..100.0)).collect();
            let alpha = rng.random_range(0.0..2.0);
            let (a2, b2) = pair_step(&p(&a), &p(&b), alpha).unwrap();
            for d in 0..4 {
                let before = a[d] + b[d];
                let after = a2[d] + b2[d];
                assert!((before - after).abs() <= 4.0 * f64::EPSILON * 200.0);
            }
        }
    }

    #[test]
    fn two_individuals_follow_closed_form() {
        let cfg = NominalConfig::new(0.3, 2, 1, Pairing::MutualRandom);
        let init = vec![p(&[-5.0]), p(&[5.0])];
        let sim = simulate(&cfg, init, 40, &mut derive_stream(0, ["n2"])).unwrap();
        for (k, e) in sim.errors.values().iter().enumerate() {
            let expected = 10.0 * 0.4f64.powi(k as i32);
            assert!((e - expected).abs() <= 1e-12 * expected, "k={k} {e} vs {expected}");
        }
    }

    #[test]
    fn frozen_partner_gives_one_minus_alpha() {
        let cfg = NominalConfig::new(1.5, 2, 1, Pairing::MutualRandom).with_stagnant([1]);
        let init = vec![p(&[10.0]), p(&[0.0])];
        let sim = simulate(&cfg, init, 40, &mut derive_stream(0, ["n2s"])).unwrap();
        for (k, e) in sim.errors.values().iter().enumerate() {
            let expected = 10.0 * 0.5f64.powi(k as i32);
            assert!((e - expected).abs() <= 1e-12 * expected);
        }
        assert!(sim.trajectory.iter().all(|s| s.positions[1] == p(&[0.0])));
    }

    #[test]
    fn measured_contraction_examples() {
        let cases = [
            (two(0.25), 0.5),
            (two(0.8).with_stagnant([0]), 0.2),
            (two(1.2), 1.4),
        ];
        for (cfg, expected) in cases {
            let init = vec![p(&[0.0]), p(&[8.0])];
            let sim = simulate(&cfg, init, 30, &mut derive_stream(1, ["mc"])).unwrap();
            let m = measured_contraction(&sim.errors).unwrap();
            assert!((m - expected).abs() <= 1e-12, "{m} vs {expected}");
        }
    }

    #[test]
    fn measured_contraction_needs_three_entries() {
        let err = measured_contraction(&ErrorSequence(vec![4.0, 2.0])).unwrap_err();
        assert!(matches!(err, Error::InsufficientData(_)));
        // alpha = 0.5 collapses the pair to zero after one step
        let err = measured_contraction(&ErrorSequence(vec![4.0, 0.0, 0.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::InsufficientData(_)));
        assert_eq!(measured_contraction(&ErrorSequence(vec![8.0, 4.0, 2.0])).unwrap(), 0.5);
    }

    #[test]
    fn centred_init_places_the_origin() {
        let mut rng = derive_stream(6, ["centred"]);
        let cfg = NominalConfig::new(0.3, 4, 2, Pairing::Ring);
        let init = centred_init(&cfg, 100.0, &mut rng).unwrap();
        for d in 0..2 {
            let c: f64 = init.iter().map(|x| x[d]).sum::<f64>() / 4.0;
            assert!(c.abs() < 1e-12);
        }
        let cfg = cfg.with_stagnant([2]);
        let init = centred_init(&cfg, 100.0, &mut rng).unwrap();
        assert_eq!(init[2].coords(), &[0.0, 0.0]);
    }

    #[test]
    fn all_stagnant_is_rejected() {
        let cfg = NominalConfig::new(0.5, 2, 1, Pairing::Ring).with_stagnant([0, 1]);
        let init = vec![p(&[0.0]), p(&[1.0])];
        assert!(simulate(&cfg, init, 5, &mut derive_stream(0, ["x"])).is_err());
        let cfg = NominalConfig::new(0.5, 2, 1, Pairing::Ring).with_stagnant([5]);
        assert!(cfg.validate().is_err());
        assert!(NominalConfig::new(0.5, 1, 1, Pairing::Ring).validate().is_err());
    }

    fn random_init(rng: &mut RngStream, n: usize, dim: usize) -> Vec<Point> {
        (0..n)
            .map(|_| p(&(0..dim).map(|_| rng.random_range(-100.0..100.0)).collect::<Vec<_>>()))
            .collect()
    }

    #[test]
    fn ring_of_eight_reaches_consensus() {
        let mut rng = derive_stream(8, ["ring"]);
        let init = random_init(&mut rng, 8, 3);
        let cfg = NominalConfig::new(0.5, 8, 3, Pairing::Ring);
        let sim = simulate(&cfg, init, 500, &mut rng).unwrap();
        assert!(*sim.errors.values().last().unwrap() <= 1e-6);
    }

    #[test]
    fn ring_consensus_across_sizes_and_alphas() {
        let mut rng = derive_stream(8, ["ring-sweep"]);
        for n in 2..=16 {
            for alpha in [0.2, 0.5, 0.8] {
                let init = random_init(&mut rng, n, 3);
                let cfg = NominalConfig::new(alpha, n, 3, Pairing::Ring);
                let sim = simulate(&cfg, init, 4000, &mut rng).unwrap();
                let e = sim.errors.values();
                assert!(e[e.len() - 1] <= 1e-6, "n={n} alpha={alpha}: {}", e[e.len() - 1]);
                // long-run monotone: each 100-step block ends lower than it started
                for block in e.chunks(100).take_while(|b| b[0] > 1e-9) {
                    assert!(block[block.len() - 1] <= block[0]);
                }
            }
        }
    }

    #[test]
    fn mutual_random_preserves_centroid() {
        let mut rng = derive_stream(4, ["centroid"]);
        for n in [3, 4, 7, 10] {
            let init = random_init(&mut rng, n, 2);
            let cfg = NominalConfig::new(0.35, n, 2, Pairing::MutualRandom);
            let sim = simulate(&cfg, init, 200, &mut rng).unwrap();
            let centroid = |s: &NominalState| {
                let mut c = [0.0; 2];
                for x in &s.positions {
                    c[0] += x[0] / n as f64;
                    c[1] += x[1] / n as f64;
                }
                c
            };
            let c0 = centroid(&sim.trajectory[0]);
            for s in &sim.trajectory {
                let c = centroid(s);
                assert!((c[0] - c0[0]).abs() < 1e-12 && (c[1] - c0[1]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stagnant_members_never_move() {
        let mut rng = derive_stream(5, ["frozen"]);
        let init = random_init(&mut rng, 6, 3);
        for pairing in [Pairing::Ring, Pairing::MutualRandom] {
            let cfg = NominalConfig::new(0.6, 6, 3, pairing).with_stagnant([1, 4]);
            let sim = simulate(&cfg, init.clone(), 100, &mut rng).unwrap();
            for s in &sim.trajectory {
                assert_eq!(s.positions[1], init[1]);
                assert_eq!(s.positions[4], init[4]);
            }
        }
    }
}
