use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::point::{Bounds, Point};

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A box-constrained objective with an analytic gradient and known optima.
///
/// Cloning is cheap; the callables are shared.
#[derive(Clone)]
pub struct ObjectiveSpec {
    name: String,
    evaluator: Arc<EvalFn>,
    gradient: Arc<GradFn>,
    known_optima: Vec<Point>,
    domain: Bounds,
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("known_optima", &self.known_optima)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl ObjectiveSpec {
    pub fn new(
        name: impl Into<String>,
        evaluator: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        known_optima: Vec<Point>,
        domain: Bounds,
    ) -> Result<Self> {
        let dim = domain.dim();
        for opt in &known_optima {
            if opt.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: opt.dim(),
                });
            }
            let interior = opt
                .iter()
                .zip(domain.lo().iter().zip(domain.hi()))
                .all(|(x, (l, h))| l < x && x < h);
            if !interior {
                return Err(Error::InvalidConfig(format!(
                    "known optimum {:?} is not strictly inside the domain",
                    opt.coords()
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            gradient: Arc::new(gradient),
            known_optima,
            domain,
        })
    }

    /// Sum of squares over `domain`, minimised at the origin.
    pub fn sphere(domain: Bounds) -> Result<Self> {
        let origin = Point::new(vec![0.0; domain.dim()])?;
        Self::new(
            "sphere",
            |x: &[f64]| x.iter().map(|v| v * v).sum(),
            |x: &[f64]| x.iter().map(|v| 2.0 * v).collect(),
            vec![origin],
            domain,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &Bounds {
        &self.domain
    }

    pub fn known_optima(&self) -> &[Point] {
        &self.known_optima
    }

    /// Raw objective value; may be non-finite far from the optimum.
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.evaluator)(x)
    }

    /// Objective value with non-finite results mapped to `+inf`.
    pub fn fitness(&self, x: &[f64]) -> f64 {
        let v = self.eval(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        (self.gradient)(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimum_on_boundary_is_rejected() {
        let b = Bounds::uniform(2, 0.0, 1.0).unwrap();
        let opt = Point::new(vec![0.0, 0.5]).unwrap();
        let r = ObjectiveSpec::new("edge", |_| 0.0, |x| vec![0.0; x.len()], vec![opt], b);
        assert!(r.is_err());
    }

    #[test]
    fn fitness_maps_non_finite_to_infinity() {
        let b = Bounds::uniform(1, -1.0, 1.0).unwrap();
        let f = ObjectiveSpec::new("nan", |_| f64::NAN, |x| vec![0.0; x.len()], vec![], b).unwrap();
        assert_eq!(f.fitness(&[0.0]), f64::INFINITY);
    }

    #[test]
    fn sphere_basics() {
        let f = ObjectiveSpec::sphere(Bounds::uniform(3, -100.0, 100.0).unwrap()).unwrap();
        assert_eq!(f.eval(&[1.0, 2.0, 3.0]), 14.0);
        assert_eq!(f.gradient(&[1.0, 2.0, 3.0]), vec![2.0, 4.0, 6.0]);
        assert_eq!(f.known_optima()[0].coords(), &[0.0, 0.0, 0.0]);
    }
}
