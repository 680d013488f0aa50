use crate::error::{Error, Result};
use crate::point::Point;

/// Best-so-far record with strict-improvement acceptance.
///
/// `best_value` never increases. Ties leave the tracker untouched, so a
/// plateau counts as stagnation.
#[derive(Debug, Clone, PartialEq)]
pub struct BestTracker {
    best_point: Point,
    best_value: f64,
    last_improvement_gen: u64,
    improvement_count: u64,
}

impl BestTracker {
    /// Seeds the tracker with an initial incumbent at generation `gen`.
    /// A non-finite seed value is stored as `+inf` so any finite candidate
    /// replaces it.
    pub fn new(point: Point, value: f64, gen: u64) -> Self {
        Self {
            best_point: point,
            best_value: if value.is_finite() { value } else { f64::INFINITY },
            last_improvement_gen: gen,
            improvement_count: 0,
        }
    }

    pub fn best_point(&self) -> &Point {
        &self.best_point
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    pub fn last_improvement_gen(&self) -> u64 {
        self.last_improvement_gen
    }

    pub fn improvement_count(&self) -> u64 {
        self.improvement_count
    }

    /// Offers a candidate. Returns `Ok(true)` on strict improvement.
    pub fn update(&mut self, candidate: &[f64], value: f64, gen: u64) -> Result<bool> {
        if !value.is_finite() {
            return Err(Error::NonFinite(value));
        }
        if candidate.len() != self.best_point.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.best_point.dim(),
                actual: candidate.len(),
            });
        }
        if value < self.best_value {
            self.best_point = Point::new(candidate.to_vec())?;
            self.best_value = value;
            self.last_improvement_gen = self.last_improvement_gen.max(gen);
            self.improvement_count += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Like [`update`](Self::update) but silently drops non-finite values.
    pub(crate) fn offer(&mut self, candidate: &[f64], value: f64, gen: u64) -> bool {
        self.update(candidate, value, gen).unwrap_or(false)
    }
}

/// Copy-on-update form of [`BestTracker::update`].
pub fn update_best(t: &BestTracker, candidate: &Point, value: f64, gen: u64) -> Result<BestTracker> {
    let mut next = t.clone();
    next.update(candidate, value, gen)?;
    Ok(next)
}
