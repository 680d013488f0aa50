use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite point in the search space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionTooSmall { min: 1, actual: 0 });
        }
        if let Some(&bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Point) -> f64 {
        distance(&self.0, &other.0)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Axis-aligned box domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl Bounds {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                actual: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(Error::DimensionTooSmall { min: 1, actual: 0 });
        }
        for (d, (&l, &h)) in lo.iter().zip(&hi).enumerate() {
            // also rejects NaN
            if !(l < h) || !l.is_finite() || !h.is_finite() {
                return Err(Error::InvalidBounds { dim: d, lo: l, hi: h });
            }
        }
        Ok(Self { lo, hi })
    }

    /// The same `[lo, hi]` interval in every one of `dim` dimensions.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| *l <= *v && *v <= *h)
    }

    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        for (v, (l, h)) in x.iter_mut().zip(self.lo.iter().zip(&self.hi)) {
            // NaN goes to the lower bound so the result is always inside
            *v = if v.is_nan() { *l } else { v.clamp(*l, *h) };
        }
    }
}

/// Per-coordinate clipping of `p` into `b`.
pub fn clamp(p: &Point, b: &Bounds) -> Result<Point> {
    if p.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            actual: p.dim(),
        });
    }
    let mut coords = p.0.clone();
    b.clamp_in_place(&mut coords);
    Ok(Point(coords))
}
