//! Whale optimization algorithm.
//!
//! Each whale either encircles the best-so-far position, searches toward a
//! random whale (when `|A| ≥ 1`), or follows a logarithmic spiral around the
//! best, each with the probabilities of the original method. Whales are
//! updated in place, so later whales see earlier whales' new positions.

use std::f64::consts::PI;

use rand::Rng;

use super::{Ctx, Member};

pub(crate) fn step(pop: &mut [Member], a_start: f64, spiral_b: f64, t: f64, ctx: &mut Ctx) {
    let dim = ctx.objective.dim();
    let n = pop.len();
    let a = a_start * (1.0 - t);
    // a2 runs from -1 to -2 and sets the spiral parameter range
    let a2 = -1.0 - t;
    let leader = ctx.best();
    for i in 0..n {
        let r1: f64 = ctx.rng.random();
        let r2: f64 = ctx.rng.random();
        let big_a = 2.0 * a * r1 - a;
        let big_c = 2.0 * r2;
        let l = (a2 - 1.0) * ctx.rng.random::<f64>() + 1.0;
        let p: f64 = ctx.rng.random();
        let mut next = pop[i].x.clone();
        for d in 0..dim {
            if p < 0.5 {
                if big_a.abs() >= 1.0 {
                    let j = ctx.rng.random_range(0..n);
                    let x_rand = pop[j].x[d];
                    let dist = (big_c * x_rand - next[d]).abs();
                    next[d] = x_rand - big_a * dist;
                } else {
                    let dist = (big_c * leader[d] - next[d]).abs();
                    next[d] = leader[d] - big_a * dist;
                }
            } else {
                let dist = (leader[d] - next[d]).abs();
                next[d] = dist * (spiral_b * l).exp() * (2.0 * PI * l).cos() + leader[d];
            }
        }
        let f = ctx.evaluate(&mut next);
        pop[i] = Member { x: next, f };
    }
}
