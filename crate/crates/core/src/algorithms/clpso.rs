//! Comprehensive learning particle swarm optimizer.
//!
//! Each dimension of a particle's velocity learns from one exemplar's
//! personal best. A particle's exemplars are drawn by binary tournament with
//! probability `Pc_i` per dimension (its own pbest otherwise) and are redrawn
//! after `refresh_gap` generations without personal-best improvement.

use rand::Rng;

use super::params::ClpsoParams;
use super::{Ctx, Member};

#[derive(Debug, Clone)]
pub(crate) struct Swarm {
    velocity: Vec<Vec<f64>>,
    pbest: Vec<Member>,
    /// `exemplar[i][d]` is the particle whose pbest drives dimension `d` of particle `i`.
    exemplar: Vec<Vec<usize>>,
    stale: Vec<u32>,
    learn_prob: Vec<f64>,
    vmax: Vec<f64>,
}

/// Learning probability of particle `i` out of `n`.
fn learning_probability(i: usize, n: usize, p: &ClpsoParams) -> f64 {
    if n < 2 {
        return p.pc_min;
    }
    let ramp = ((10.0 * i as f64 / (n - 1) as f64).exp() - 1.0) / (10f64.exp() - 1.0);
    p.pc_min + (p.pc_max - p.pc_min) * ramp
}

impl Swarm {
    pub(crate) fn new(pop: &[Member], p: &ClpsoParams, ctx: &mut Ctx) -> Self {
        let n = pop.len();
        let vmax: Vec<f64> = ctx
            .lo()
            .iter()
            .zip(ctx.hi())
            .map(|(l, h)| p.vmax_fraction * (h - l))
            .collect();
        let velocity = (0..n)
            .map(|_| vmax.iter().map(|v| ctx.rng.random_range(-v..=*v)).collect())
            .collect();
        let mut swarm = Self {
            velocity,
            pbest: pop.to_vec(),
            exemplar: vec![Vec::new(); n],
            stale: vec![0; n],
            learn_prob: (0..n).map(|i| learning_probability(i, n, p)).collect(),
            vmax,
        };
        for i in 0..n {
            swarm.assign_exemplars(i, ctx);
        }
        swarm
    }

    fn assign_exemplars(&mut self, i: usize, ctx: &mut Ctx) {
        let n = self.pbest.len();
        let dim = self.vmax.len();
        let mut ex = vec![i; dim];
        for slot in ex.iter_mut() {
            if ctx.rng.random::<f64>() < self.learn_prob[i] {
                let a = ctx.index_excluding(n, &[i]);
                let b = if n > 2 { ctx.index_excluding(n, &[i, a]) } else { a };
                *slot = if self.pbest[b].f < self.pbest[a].f { b } else { a };
            }
        }
        if ex.iter().all(|&e| e == i) {
            let d = ctx.rng.random_range(0..dim);
            ex[d] = ctx.index_excluding(n, &[i]);
        }
        self.exemplar[i] = ex;
    }

    pub(crate) fn step(&mut self, pop: &mut [Member], p: &ClpsoParams, t: f64, ctx: &mut Ctx) {
        let w = p.w_max - (p.w_max - p.w_min) * t;
        let dim = self.vmax.len();
        for i in 0..pop.len() {
            if self.stale[i] >= p.refresh_gap {
                self.assign_exemplars(i, ctx);
                self.stale[i] = 0;
            }
            let mut next = pop[i].x.clone();
            for d in 0..dim {
                let target = self.pbest[self.exemplar[i][d]].x[d];
                let r: f64 = ctx.rng.random();
                let v = w * self.velocity[i][d] + p.c * r * (target - next[d]);
                let v = v.clamp(-self.vmax[d], self.vmax[d]);
                self.velocity[i][d] = v;
                next[d] += v;
            }
            let f = ctx.evaluate(&mut next);
            if f < self.pbest[i].f {
                self.pbest[i] = Member { x: next.clone(), f };
                self.stale[i] = 0;
            } else {
                self.stale[i] += 1;
            }
            pop[i] = Member { x: next, f };
        }
    }
}
