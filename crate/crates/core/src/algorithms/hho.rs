//! Harris hawks optimization.
//!
//! The escaping energy `E = 2(1 − t)·E0`, `E0 ~ U(−1, 1)`, picks between
//! exploration (`|E| ≥ 1`) and four besiege modes. The two "rapid dive"
//! modes try a greedy move and then a Lévy-flight perturbation of it, keeping
//! either only if it beats the hawk's current fitness.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use statrs::function::gamma::gamma;

use super::{Ctx, Member};

/// Mantegna's scale for a Lévy-stable step with index `beta`.
fn levy_sigma(beta: f64) -> f64 {
    let num = gamma(1.0 + beta) * (PI * beta / 2.0).sin();
    let den = gamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    (num / den).powf(1.0 / beta)
}

fn levy(dim: usize, beta: f64, sigma: f64, ctx: &mut Ctx) -> Vec<f64> {
    (0..dim)
        .map(|_| {
            let u: f64 = ctx.rng.sample::<f64, _>(StandardNormal) * sigma;
            let v: f64 = ctx.rng.sample(StandardNormal);
            0.01 * u / v.abs().powf(1.0 / beta)
        })
        .collect()
}

fn mean_position(pop: &[Member], dim: usize) -> Vec<f64> {
    let mut m = vec![0.0; dim];
    for h in pop {
        for (acc, v) in m.iter_mut().zip(&h.x) {
            *acc += v;
        }
    }
    let n = pop.len() as f64;
    m.iter_mut().for_each(|v| *v /= n);
    m
}

pub(crate) fn step(pop: &mut [Member], beta: f64, t: f64, ctx: &mut Ctx) {
    let dim = ctx.objective.dim();
    let n = pop.len();
    let sigma = levy_sigma(beta);
    let rabbit = ctx.best();
    let e1 = 2.0 * (1.0 - t);
    let lo = ctx.lo().to_vec();
    let hi = ctx.hi().to_vec();
    // hawks whose new position still needs an evaluation
    let mut pending = vec![false; n];

    for i in 0..n {
        let e0 = 2.0 * ctx.rng.random::<f64>() - 1.0;
        let energy = e1 * e0;
        let x = pop[i].x.clone();

        if energy.abs() >= 1.0 {
            let q: f64 = ctx.rng.random();
            let next: Vec<f64> = if q < 0.5 {
                let j = ctx.rng.random_range(0..n);
                let x_rand = pop[j].x.clone();
                let r1: f64 = ctx.rng.random();
                let r2: f64 = ctx.rng.random();
                (0..dim).map(|d| x_rand[d] - r1 * (x_rand[d] - 2.0 * r2 * x[d]).abs()).collect()
            } else {
                let mean = mean_position(pop, dim);
                let r3: f64 = ctx.rng.random();
                let r4: f64 = ctx.rng.random();
                (0..dim)
                    .map(|d| (rabbit[d] - mean[d]) - r3 * (lo[d] + r4 * (hi[d] - lo[d])))
                    .collect()
            };
            pop[i].x = next;
            pending[i] = true;
            continue;
        }

        let r: f64 = ctx.rng.random();
        let soft = energy.abs() >= 0.5;
        if r >= 0.5 {
            let next: Vec<f64> = if soft {
                let jump = 2.0 * (1.0 - ctx.rng.random::<f64>());
                (0..dim)
                    .map(|d| (rabbit[d] - x[d]) - energy * (jump * rabbit[d] - x[d]).abs())
                    .collect()
            } else {
                (0..dim).map(|d| rabbit[d] - energy * (rabbit[d] - x[d]).abs()).collect()
            };
            pop[i].x = next;
            pending[i] = true;
            continue;
        }

        // progressive rapid dives
        let jump = 2.0 * (1.0 - ctx.rng.random::<f64>());
        let anchor = if soft { x.clone() } else { mean_position(pop, dim) };
        let dive: Vec<f64> = (0..dim)
            .map(|d| rabbit[d] - energy * (jump * rabbit[d] - anchor[d]).abs())
            .collect();
        let mut y = dive.clone();
        let fy = ctx.evaluate(&mut y);
        if fy < pop[i].f {
            pop[i] = Member { x: y, f: fy };
            continue;
        }
        let lf = levy(dim, beta, sigma, ctx);
        let mut z: Vec<f64> = (0..dim)
            .map(|d| dive[d] + ctx.rng.random::<f64>() * lf[d])
            .collect();
        let fz = ctx.evaluate(&mut z);
        if fz < pop[i].f {
            pop[i] = Member { x: z, f: fz };
        }
    }

    for (hawk, todo) in pop.iter_mut().zip(pending) {
        if todo {
            hawk.f = ctx.evaluate(&mut hawk.x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levy_sigma_for_beta_one_and_a_half() {
        // Γ(2.5) sin(0.75π) / (Γ(1.25) · 1.5 · 2^0.25), raised to 1/1.5
        let expected: f64 = (1.329_340_388_179_137_f64 * 0.707_106_781_186_547_6
            / (0.906_402_477_055_477 * 1.5 * 1.189_207_115_002_721))
            .powf(1.0 / 1.5);
        assert!((levy_sigma(1.5) - expected).abs() < 1e-12);
        assert!((levy_sigma(1.5) - 0.696_574_502_557_696).abs() < 1e-9);
    }
}
