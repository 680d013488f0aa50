//! Six population-based metaheuristics behind one generation-stepped
//! interface.
//!
//! Every candidate is clamped to the domain before evaluation, every
//! evaluation is offered to the state's [`BestTracker`], and non-finite
//! objective values compare as `+inf`.

mod clpso;
mod gl25;
mod gwo;
mod hho;
mod lshade;
pub mod params;
mod woa;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::objective::ObjectiveSpec;
use crate::point::Point;
use crate::rng::RngStream;
use crate::tracker::BestTracker;

pub use params::{default_params, AlgoParams, ParamSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgorithmId {
    Gl25,
    Clpso,
    Lshade,
    Gwo,
    Woa,
    Hho,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::Gl25,
        AlgorithmId::Clpso,
        AlgorithmId::Lshade,
        AlgorithmId::Gwo,
        AlgorithmId::Woa,
        AlgorithmId::Hho,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Gl25 => "gl25",
            AlgorithmId::Clpso => "clpso",
            AlgorithmId::Lshade => "lshade",
            AlgorithmId::Gwo => "gwo",
            AlgorithmId::Woa => "woa",
            AlgorithmId::Hho => "hho",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| Error::UnknownName {
                name: s.to_owned(),
                valid: "gl25, clpso, lshade, gwo, woa, hho".into(),
            })
    }
}

/// A population member with its cached fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub x: Vec<f64>,
    pub f: f64,
}

#[derive(Debug, Clone)]
enum Memory {
    Gl25,
    Clpso(clpso::Swarm),
    Lshade(lshade::History),
    Gwo(gwo::Leaders),
    Woa,
    Hho,
}

/// Everything an algorithm needs to evaluate candidates during one step.
pub(crate) struct Ctx<'a> {
    objective: &'a ObjectiveSpec,
    tracker: &'a mut BestTracker,
    evaluations: &'a mut u64,
    rng: &'a mut RngStream,
    /// Generation index being produced; improvements are stamped with it.
    gen: u64,
}

impl Ctx<'_> {
    /// Clamps `x` into the domain, evaluates it, and offers it to the tracker.
    fn evaluate(&mut self, x: &mut [f64]) -> f64 {
        self.objective.domain().clamp_in_place(x);
        let f = self.objective.fitness(x);
        *self.evaluations += 1;
        self.tracker.offer(x, f, self.gen);
        f
    }

    fn lo(&self) -> &[f64] {
        self.objective.domain().lo()
    }

    fn hi(&self) -> &[f64] {
        self.objective.domain().hi()
    }

    fn best(&self) -> Vec<f64> {
        self.tracker.best_point().coords().to_vec()
    }

    /// Uniform index in `0..n` different from every entry of `exclude`.
    fn index_excluding(&mut self, n: usize, exclude: &[usize]) -> usize {
        debug_assert!(n > exclude.len());
        loop {
            let i = self.rng.random_range(0..n);
            if !exclude.contains(&i) {
                return i;
            }
        }
    }
}

/// Fraction of the schedule already consumed at generation `gen`, in [0, 1].
pub(crate) fn progress(gen: u64, horizon: u64) -> f64 {
    (gen as f64 / horizon as f64).min(1.0)
}

/// Index of the best member; the first one wins ties.
pub(crate) fn argmin(pop: &[Member]) -> usize {
    let mut best = 0;
    for (i, m) in pop.iter().enumerate() {
        if m.f < pop[best].f {
            best = i;
        }
    }
    best
}

/// Member indices sorted by fitness, ties by index.
pub(crate) fn ranking(pop: &[Member]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pop.len()).collect();
    idx.sort_by(|&a, &b| pop[a].f.total_cmp(&pop[b].f).then(a.cmp(&b)));
    idx
}

/// One metaheuristic run in progress.
#[derive(Debug, Clone)]
pub struct AlgoState {
    algorithm: AlgorithmId,
    params: ParamSet,
    objective: ObjectiveSpec,
    population: Vec<Member>,
    memory: Memory,
    tracker: BestTracker,
    generation: u64,
    evaluations: u64,
    rng: RngStream,
}

impl AlgoState {
    /// Samples and evaluates the initial population uniformly in the domain.
    pub fn init(params: ParamSet, objective: ObjectiveSpec, mut rng: RngStream) -> Result<Self> {
        params.validate()?;
        let algorithm = params.algorithm();
        let dom = objective.domain().clone();
        let mut population = Vec::with_capacity(params.pop_size);
        for _ in 0..params.pop_size {
            let x: Vec<f64> = dom
                .lo()
                .iter()
                .zip(dom.hi())
                .map(|(l, h)| l + (h - l) * rng.random::<f64>())
                .collect();
            let f = objective.fitness(&x);
            population.push(Member { x, f });
        }
        let seed = argmin(&population);
        let mut tracker = BestTracker::new(Point::new(population[seed].x.clone())?, population[seed].f, 0);
        let mut evaluations = population.len() as u64;

        let memory = {
            let mut ctx = Ctx {
                objective: &objective,
                tracker: &mut tracker,
                evaluations: &mut evaluations,
                rng: &mut rng,
                gen: 0,
            };
            match &params.specific {
                AlgoParams::Gl25(_) => Memory::Gl25,
                AlgoParams::Clpso(p) => Memory::Clpso(clpso::Swarm::new(&population, p, &mut ctx)),
                AlgoParams::Lshade(p) => Memory::Lshade(lshade::History::new(p, params.pop_size)),
                AlgoParams::Gwo { .. } => Memory::Gwo(gwo::Leaders::new(&population)),
                AlgoParams::Woa { .. } => Memory::Woa,
                AlgoParams::Hho { .. } => Memory::Hho,
            }
        };

        Ok(Self {
            algorithm,
            params,
            objective,
            population,
            memory,
            tracker,
            generation: 0,
            evaluations,
            rng,
        })
    }

    /// Runs one full generation.
    pub fn step(&mut self) {
        let gen = self.generation;
        let mut ctx = Ctx {
            objective: &self.objective,
            tracker: &mut self.tracker,
            evaluations: &mut self.evaluations,
            rng: &mut self.rng,
            gen: gen + 1,
        };
        let horizon = self.params.schedule_horizon;
        let t = progress(gen, horizon);
        let pop = &mut self.population;
        match (&self.params.specific, &mut self.memory) {
            (AlgoParams::Gl25(p), Memory::Gl25) => gl25::step(pop, p, t, &mut ctx),
            (AlgoParams::Clpso(p), Memory::Clpso(swarm)) => swarm.step(pop, p, t, &mut ctx),
            (AlgoParams::Lshade(p), Memory::Lshade(hist)) => {
                hist.step(pop, p, gen + 1, horizon, &mut ctx)
            }
            (AlgoParams::Gwo { a_start }, Memory::Gwo(leaders)) => {
                leaders.step(pop, a_start * (1.0 - t), &mut ctx)
            }
            (AlgoParams::Woa { a_start, spiral_b }, Memory::Woa) => {
                woa::step(pop, *a_start, *spiral_b, t, &mut ctx)
            }
            (AlgoParams::Hho { levy_beta }, Memory::Hho) => hho::step(pop, *levy_beta, t, &mut ctx),
            _ => unreachable!("memory variant always matches the parameter variant"),
        }
        self.generation += 1;
    }

    /// Best point and value found so far.
    pub fn best(&self) -> (&Point, f64) {
        (self.tracker.best_point(), self.tracker.best_value())
    }

    pub fn algorithm(&self) -> AlgorithmId {
        self.algorithm
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn objective(&self) -> &ObjectiveSpec {
        &self.objective
    }

    pub fn population(&self) -> &[Member] {
        &self.population
    }

    pub fn tracker(&self) -> &BestTracker {
        &self.tracker
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }
}

/// Free-function form of [`AlgoState::init`] with the algorithm given explicitly.
pub fn init(id: AlgorithmId, params: ParamSet, objective: ObjectiveSpec, rng: RngStream) -> Result<AlgoState> {
    if params.algorithm() != id {
        return Err(Error::InvalidConfig(format!(
            "parameter set is for {}, not {id}",
            params.algorithm()
        )));
    }
    if objective.dim() == 0 {
        return Err(Error::DimensionTooSmall { min: 1, actual: 0 });
    }
    AlgoState::init(params, objective, rng)
}
