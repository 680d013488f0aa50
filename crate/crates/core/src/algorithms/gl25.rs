//! Global-then-local steady-state real-coded GA with PBX-α crossover.
//!
//! A generation is `pop_size` steady-state iterations. Each iteration builds
//! one offspring around a female parent with parent-centric BLX-α (PBX-α),
//! whose interval width is the female/male distance, and the offspring
//! replaces the worst member if strictly better.
//!
//! - Global phase (first `global_fraction` of the schedule): uniform female,
//!   male by negative assortative mating (farthest of `nam_candidates`
//!   random members), wide interval `alpha_global`.
//! - Local phase: female drawn from the `local_females` best members, uniform
//!   male, narrow interval `alpha_local`.
//!
//! See FIDELITY.md at the repository root for how this relates to the
//! original operator set.

use rand::Rng;

use super::params::Gl25Params;
use super::{ranking, Ctx, Member};
use crate::point::distance;

/// PBX-α: each gene is drawn uniformly from `[f − Iα, f + Iα] ∩ [lo, hi]`,
/// with `I = |f − m|`.
pub(crate) fn pbx_alpha(female: &[f64], male: &[f64], alpha: f64, ctx: &mut Ctx) -> Vec<f64> {
    let mut child = Vec::with_capacity(female.len());
    for d in 0..female.len() {
        let spread = (female[d] - male[d]).abs() * alpha;
        let l = (female[d] - spread).max(ctx.lo()[d]);
        let u = (female[d] + spread).min(ctx.hi()[d]);
        child.push(if u > l { ctx.rng.random_range(l..=u) } else { female[d] });
    }
    child
}

fn worst(pop: &[Member]) -> usize {
    let mut w = 0;
    for (i, m) in pop.iter().enumerate() {
        if m.f > pop[w].f {
            w = i;
        }
    }
    w
}

pub(crate) fn step(pop: &mut [Member], p: &Gl25Params, t: f64, ctx: &mut Ctx) {
    let n = pop.len();
    let global = t < p.global_fraction;
    for _ in 0..n {
        let (female, male, alpha) = if global {
            let fi = ctx.rng.random_range(0..n);
            let mut mi = ctx.index_excluding(n, &[fi]);
            let mut best_gap = distance(&pop[fi].x, &pop[mi].x);
            for _ in 1..p.nam_candidates {
                let c = ctx.index_excluding(n, &[fi]);
                let gap = distance(&pop[fi].x, &pop[c].x);
                if gap > best_gap {
                    best_gap = gap;
                    mi = c;
                }
            }
            (fi, mi, p.alpha_global)
        } else {
            let order = ranking(pop);
            let fi = order[ctx.rng.random_range(0..p.local_females.min(n))];
            let mi = ctx.index_excluding(n, &[fi]);
            (fi, mi, p.alpha_local)
        };
        let mut child = pbx_alpha(&pop[female].x, &pop[male].x, alpha, ctx);
        let fc = ctx.evaluate(&mut child);
        let w = worst(pop);
        if fc < pop[w].f {
            pop[w] = Member { x: child, f: fc };
        }
    }
}
