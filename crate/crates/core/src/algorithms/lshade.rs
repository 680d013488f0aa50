//! SHADE with linear population size reduction.
//!
//! current-to-pbest/1/bin mutation with an external archive, success-history
//! adaptation of F (Cauchy) and CR (normal) through weighted Lehmer means,
//! and a population that shrinks linearly from its initial size to
//! `min_pop` over the schedule horizon, dropping the worst members.

use rand::Rng;
use rand_distr::{Cauchy, Distribution, Normal};

use super::params::LshadeParams;
use super::{ranking, Ctx, Member};

#[derive(Debug, Clone)]
pub(crate) struct History {
    m_f: Vec<f64>,
    /// `None` is the terminal value: CR is pinned to 0 from then on.
    m_cr: Vec<Option<f64>>,
    slot: usize,
    archive: Vec<Vec<f64>>,
    initial_pop: usize,
}

/// Population size scheduled for generation `gen`.
pub(crate) fn scheduled_size(initial: usize, min: usize, gen: u64, horizon: u64) -> usize {
    let t = (gen as f64 / horizon as f64).min(1.0);
    let n = (initial as f64 + (min as f64 - initial as f64) * t).round() as usize;
    n.clamp(min, initial)
}

/// `Σ w·v² / Σ w·v`, or `None` when the denominator vanishes.
fn weighted_lehmer(values: &[f64], weights: &[f64]) -> Option<f64> {
    let num: f64 = values.iter().zip(weights).map(|(v, w)| w * v * v).sum();
    let den: f64 = values.iter().zip(weights).map(|(v, w)| w * v).sum();
    (den > 0.0).then(|| num / den)
}

impl History {
    pub(crate) fn new(p: &LshadeParams, initial_pop: usize) -> Self {
        Self {
            m_f: vec![0.5; p.memory_size],
            m_cr: vec![Some(0.5); p.memory_size],
            slot: 0,
            archive: Vec::new(),
            initial_pop,
        }
    }

    fn sample_f(&self, r: usize, ctx: &mut Ctx) -> f64 {
        let cauchy = Cauchy::new(self.m_f[r], 0.1).expect("finite memory and positive scale");
        loop {
            let f = cauchy.sample(ctx.rng);
            if f > 0.0 {
                return f.min(1.0);
            }
        }
    }

    fn sample_cr(&self, r: usize, ctx: &mut Ctx) -> f64 {
        match self.m_cr[r] {
            None => 0.0,
            Some(m) => Normal::new(m, 0.1)
                .expect("positive scale")
                .sample(ctx.rng)
                .clamp(0.0, 1.0),
        }
    }

    fn trim_archive(&mut self, limit: usize, ctx: &mut Ctx) {
        while self.archive.len() > limit {
            let k = ctx.rng.random_range(0..self.archive.len());
            self.archive.swap_remove(k);
        }
    }

    pub(crate) fn step(&mut self, pop: &mut Vec<Member>, p: &LshadeParams, gen: u64, horizon: u64, ctx: &mut Ctx) {
        let n = pop.len();
        let dim = ctx.objective.dim();
        let order = ranking(pop);
        let top = ((p.p_best * n as f64).round() as usize).clamp(2, n);

        let mut trials = Vec::with_capacity(n);
        for i in 0..n {
            let r = ctx.rng.random_range(0..self.m_f.len());
            let cr = self.sample_cr(r, ctx);
            let f = self.sample_f(r, ctx);
            let pb = order[ctx.rng.random_range(0..top)];
            let r1 = ctx.index_excluding(n, &[i]);
            let r2 = ctx.index_excluding(n + self.archive.len(), &[i, r1]);
            let x_r2 = if r2 < n { &pop[r2].x } else { &self.archive[r2 - n] };
            let j_rand = ctx.rng.random_range(0..dim);
            let xi = &pop[i].x;
            let mut u = xi.clone();
            for d in 0..dim {
                if d == j_rand || ctx.rng.random::<f64>() <= cr {
                    u[d] = xi[d] + f * (pop[pb].x[d] - xi[d]) + f * (pop[r1].x[d] - x_r2[d]);
                }
            }
            trials.push((u, f, cr));
        }

        let mut s_f = Vec::new();
        let mut s_cr = Vec::new();
        let mut gains = Vec::new();
        for (i, (mut u, f, cr)) in trials.into_iter().enumerate() {
            let fu = ctx.evaluate(&mut u);
            if fu < pop[i].f {
                let gain = pop[i].f - fu;
                gains.push(if gain.is_finite() { gain } else { f64::MAX });
                s_f.push(f);
                s_cr.push(cr);
                let old = std::mem::replace(&mut pop[i], Member { x: u, f: fu });
                self.archive.push(old.x);
            }
        }
        let limit = (p.archive_rate * n as f64).round() as usize;
        self.trim_archive(limit, ctx);

        if !s_f.is_empty() {
            let total: f64 = gains.iter().sum();
            let weights: Vec<f64> = if total.is_finite() && total > 0.0 {
                gains.iter().map(|g| g / total).collect()
            } else {
                vec![1.0 / gains.len() as f64; gains.len()]
            };
            if let Some(mf) = weighted_lehmer(&s_f, &weights) {
                self.m_f[self.slot] = mf;
            }
            let max_cr = s_cr.iter().cloned().fold(0.0, f64::max);
            self.m_cr[self.slot] = match self.m_cr[self.slot] {
                None => None,
                Some(_) if max_cr == 0.0 => None,
                Some(old) => Some(weighted_lehmer(&s_cr, &weights).unwrap_or(old)),
            };
            self.slot = (self.slot + 1) % self.m_f.len();
        }

        let target = scheduled_size(self.initial_pop, p.min_pop, gen, horizon);
        if target < pop.len() {
            let mut order = ranking(pop);
            order.truncate(target);
            order.sort_unstable();
            let mut keep = order.into_iter().peekable();
            let mut idx = 0;
            pop.retain(|_| {
                let k = keep.peek() == Some(&idx);
                if k {
                    keep.next();
                }
                idx += 1;
                k
            });
            let limit = (p.archive_rate * pop.len() as f64).round() as usize;
            self.trim_archive(limit, ctx);
        }
    }
}
