use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::AlgorithmId;
use crate::error::{Error, Result};

/// The embedded defaults table, as shipped in `defaults.kv`.
pub const DEFAULTS_TABLE: &str = include_str!("defaults.kv");

/// Parses a flat `key = value` table of numbers.
pub fn parse_table(text: &str) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!("defaults line {}: expected key = value", lineno + 1))
        })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            Error::InvalidConfig(format!("defaults line {}: `{}` is not a number", lineno + 1, value.trim()))
        })?;
        out.insert(key.trim().to_owned(), value);
    }
    Ok(out)
}

fn table() -> &'static BTreeMap<String, f64> {
    static TABLE: OnceLock<BTreeMap<String, f64>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(DEFAULTS_TABLE).expect("embedded defaults table is valid"))
}

fn get(key: &str) -> f64 {
    *table()
        .get(key)
        .unwrap_or_else(|| panic!("embedded defaults table has no `{key}`"))
}

fn get_usize(key: &str) -> usize {
    get(key) as usize
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gl25Params {
    /// Fraction of the schedule spent in the global phase.
    pub global_fraction: f64,
    /// PBX-α exploration width in the global phase.
    pub alpha_global: f64,
    /// PBX-α exploration width in the local phase.
    pub alpha_local: f64,
    /// Candidates drawn for negative assortative mating.
    pub nam_candidates: usize,
    /// Number of best individuals eligible as female parents in the local phase.
    pub local_females: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClpsoParams {
    pub w_max: f64,
    pub w_min: f64,
    pub c: f64,
    /// Generations without personal-best improvement before exemplars are reassigned.
    pub refresh_gap: u32,
    /// Velocity clamp as a fraction of each dimension's range.
    pub vmax_fraction: f64,
    pub pc_min: f64,
    pub pc_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LshadeParams {
    pub min_pop: usize,
    pub memory_size: usize,
    pub p_best: f64,
    pub archive_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgoParams {
    Gl25(Gl25Params),
    Clpso(ClpsoParams),
    Lshade(LshadeParams),
    Gwo { a_start: f64 },
    Woa { a_start: f64, spiral_b: f64 },
    Hho { levy_beta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    /// Initial population size (LSHADE shrinks from here).
    pub pop_size: usize,
    pub schedule_horizon: u64,
    pub specific: AlgoParams,
}

impl ParamSet {
    pub fn with_schedule_horizon(mut self, horizon: u64) -> Self {
        self.schedule_horizon = horizon;
        self
    }

    pub fn algorithm(&self) -> AlgorithmId {
        match self.specific {
            AlgoParams::Gl25(_) => AlgorithmId::Gl25,
            AlgoParams::Clpso(_) => AlgorithmId::Clpso,
            AlgoParams::Lshade(_) => AlgorithmId::Lshade,
            AlgoParams::Gwo { .. } => AlgorithmId::Gwo,
            AlgoParams::Woa { .. } => AlgorithmId::Woa,
            AlgoParams::Hho { .. } => AlgorithmId::Hho,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.pop_size < 4 {
            return bad(format!("pop_size must be >= 4, got {}", self.pop_size));
        }
        if self.schedule_horizon < 1 {
            return bad("schedule_horizon must be >= 1".into());
        }
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        match &self.specific {
            AlgoParams::Gl25(p) => {
                if !unit(p.global_fraction) || p.alpha_global <= 0.0 || p.alpha_local <= 0.0 {
                    return bad(format!("invalid GL25 parameters {p:?}"));
                }
                if p.nam_candidates < 1 || p.local_females < 1 || p.local_females > self.pop_size {
                    return bad(format!("invalid GL25 mating parameters {p:?}"));
                }
            }
            AlgoParams::Clpso(p) => {
                if !(p.w_min <= p.w_max) || p.c <= 0.0 || p.refresh_gap < 1 {
                    return bad(format!("invalid CLPSO parameters {p:?}"));
                }
                if !(p.vmax_fraction > 0.0) || !unit(p.pc_min) || !unit(p.pc_max) || p.pc_min > p.pc_max {
                    return bad(format!("invalid CLPSO parameters {p:?}"));
                }
            }
            AlgoParams::Lshade(p) => {
                if p.min_pop < 4 || p.min_pop > self.pop_size || p.memory_size < 1 {
                    return bad(format!("invalid LSHADE sizes {p:?}"));
                }
                if !(p.p_best > 0.0 && p.p_best <= 1.0) || p.archive_rate < 0.0 {
                    return bad(format!("invalid LSHADE rates {p:?}"));
                }
            }
            AlgoParams::Gwo { a_start } | AlgoParams::Woa { a_start, .. } => {
                if !(*a_start > 0.0) {
                    return bad(format!("a_start must be > 0, got {a_start}"));
                }
            }
            AlgoParams::Hho { levy_beta } => {
                if !(*levy_beta > 0.0 && *levy_beta <= 2.0) {
                    return bad(format!("levy_beta must be in (0, 2], got {levy_beta}"));
                }
            }
        }
        Ok(())
    }
}

/// Original-publication defaults for `id` in `dim` dimensions.
pub fn default_params(id: AlgorithmId, dim: usize) -> ParamSet {
    let schedule_horizon = get("schedule_horizon") as u64;
    let (pop_size, specific) = match id {
        AlgorithmId::Gl25 => (
            get_usize("gl25.pop_size"),
            AlgoParams::Gl25(Gl25Params {
                global_fraction: get("gl25.global_fraction"),
                alpha_global: get("gl25.alpha_global"),
                alpha_local: get("gl25.alpha_local"),
                nam_candidates: get_usize("gl25.nam_candidates"),
                local_females: get_usize("gl25.local_females"),
            }),
        ),
        AlgorithmId::Clpso => (
            get_usize("clpso.pop_size"),
            AlgoParams::Clpso(ClpsoParams {
                w_max: get("clpso.w_max"),
                w_min: get("clpso.w_min"),
                c: get("clpso.c"),
                refresh_gap: get("clpso.refresh_gap") as u32,
                vmax_fraction: get("clpso.vmax_fraction"),
                pc_min: get("clpso.pc_min"),
                pc_max: get("clpso.pc_max"),
            }),
        ),
        AlgorithmId::Lshade => {
            let min_pop = get_usize("lshade.min_pop");
            (
                (get_usize("lshade.pop_per_dim") * dim).max(min_pop),
                AlgoParams::Lshade(LshadeParams {
                    min_pop,
                    memory_size: get_usize("lshade.memory_size"),
                    p_best: get("lshade.p_best"),
                    archive_rate: get("lshade.archive_rate"),
                }),
            )
        }
        AlgorithmId::Gwo => (
            get_usize("gwo.pop_size"),
            AlgoParams::Gwo {
                a_start: get("gwo.a_start"),
            },
        ),
        AlgorithmId::Woa => (
            get_usize("woa.pop_size"),
            AlgoParams::Woa {
                a_start: get("woa.a_start"),
                spiral_b: get("woa.spiral_b"),
            },
        ),
        AlgorithmId::Hho => (
            get_usize("hho.pop_size"),
            AlgoParams::Hho {
                levy_beta: get("hho.levy_beta"),
            },
        ),
    };
    ParamSet {
        pop_size,
        schedule_horizon,
        specific,
    }
}
