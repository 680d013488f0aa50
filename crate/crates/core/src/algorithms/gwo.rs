//! Grey wolf optimizer.
//!
//! The three best positions seen so far (alpha, beta, delta) lead the pack.
//! Each wolf moves to the mean of three pulls, one per leader:
//! `X_k = L_k − A·|C·L_k − X|` with `A = 2a·r1 − a`, `C = 2·r2`, and `a`
//! decaying linearly from `a_start` to 0 over the schedule.

use rand::Rng;

use super::{ranking, Ctx, Member};

#[derive(Debug, Clone)]
pub(crate) struct Leaders {
    /// alpha, beta, delta; best first
    slots: Vec<Member>,
}

impl Leaders {
    pub(crate) fn new(pop: &[Member]) -> Self {
        let slots = ranking(pop).into_iter().take(3).map(|i| pop[i].clone()).collect();
        Self { slots }
    }

    fn offer(&mut self, x: &[f64], f: f64) {
        // strict improvement pushes the others down a rank
        if let Some(pos) = self.slots.iter().position(|m| f < m.f) {
            self.slots.insert(pos, Member { x: x.to_vec(), f });
            self.slots.truncate(3);
        }
    }

    pub(crate) fn step(&mut self, pop: &mut [Member], a: f64, ctx: &mut Ctx) {
        let dim = ctx.objective.dim();
        for wolf in pop.iter_mut() {
            let mut next = vec![0.0; dim];
            for leader in &self.slots {
                for d in 0..dim {
                    let r1: f64 = ctx.rng.random();
                    let r2: f64 = ctx.rng.random();
                    let big_a = 2.0 * a * r1 - a;
                    let big_c = 2.0 * r2;
                    let dist = (big_c * leader.x[d] - wolf.x[d]).abs();
                    next[d] += leader.x[d] - big_a * dist;
                }
            }
            let k = self.slots.len() as f64;
            next.iter_mut().for_each(|v| *v /= k);
            let f = ctx.evaluate(&mut next);
            wolf.x = next;
            wolf.f = f;
        }
        for wolf in pop.iter() {
            self.offer(&wolf.x, wolf.f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: f64) -> Member {
        Member { x: vec![f], f }
    }

    #[test]
    fn leaders_keep_the_three_best() {
        let pop = vec![m(5.0), m(1.0), m(3.0), m(2.0)];
        let mut l = Leaders::new(&pop);
        assert_eq!(l.slots.iter().map(|s| s.f).collect::<Vec<_>>(), vec![1.0, 2.0, 3.0]);
        l.offer(&[0.5], 0.5);
        assert_eq!(l.slots.iter().map(|s| s.f).collect::<Vec<_>>(), vec![0.5, 1.0, 2.0]);
        l.offer(&[9.0], 2.0); // tie with delta keeps the incumbent
        assert_eq!(l.slots[2].x, vec![2.0]);
        l.offer(&[1.5], 1.5);
        assert_eq!(l.slots.iter().map(|s| s.f).collect::<Vec<_>>(), vec![0.5, 1.0, 1.5]);
    }
}
