//! The Zhou1, Zhou2 and Zhou3 test functions.
//!
//! Each function is a sum of squared residuals plus high-frequency squared
//! sines of those residuals, so every residual chain that vanishes is a global
//! minimizer with value 0, while almost every other point has an enormous
//! gradient. Zhou2 and Zhou3 square the residual inside the sine of each
//! summand; Zhou1 does not. All three square the first residual inside its
//! sine.
//!
//! With `u = x[0] - 1` (Zhou1) or `u = x[0] + 1` (Zhou2, Zhou3) and
//! `K = 1e4`:
//!
//! ```text
//! zhou1 = u² + sin²(K u²) + Σ K r² + K sin²(K r),      r = x[i+1] - 2 x[i]²
//! zhou2 = u² + sin²(K u²) + Σ K s² + K sin²(K s²),     s = x[i+1]² + 2 x[i]
//! zhou3 = u² (1 + sin²(K u²)) + Σ K s² (1 + K sin²(K s²)),  s = x[i+1]² + 2^(i+1) x[i]
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::objective::ObjectiveSpec;
use crate::point::{Bounds, Point};

const K: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BenchmarkId {
    Zhou1,
    Zhou2,
    Zhou3,
}

/// Sign of the final coordinate of the Zhou2/Zhou3 optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptimumBranch {
    Plus,
    Minus,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 3] = [BenchmarkId::Zhou1, BenchmarkId::Zhou2, BenchmarkId::Zhou3];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkId::Zhou1 => "zhou1",
            BenchmarkId::Zhou2 => "zhou2",
            BenchmarkId::Zhou3 => "zhou3",
        }
    }

    /// Branches that give distinct optima for this function.
    pub fn branches(self) -> &'static [OptimumBranch] {
        match self {
            BenchmarkId::Zhou1 => &[OptimumBranch::Plus],
            _ => &[OptimumBranch::Plus, OptimumBranch::Minus],
        }
    }

    pub fn eval(self, x: &[f64]) -> Result<f64> {
        check_dim(x.len())?;
        Ok(self.eval_unchecked(x))
    }

    pub fn grad(self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(x.len())?;
        Ok(self.grad_unchecked(x))
    }

    pub(crate) fn eval_unchecked(self, x: &[f64]) -> f64 {
        match self {
            BenchmarkId::Zhou1 => {
                let u = x[0] - 1.0;
                let mut f = u * u + sin2(K * u * u);
                for w in x.windows(2) {
                    let r = w[1] - 2.0 * w[0] * w[0];
                    f += K * r * r + K * sin2(K * r);
                }
                f
            }
            BenchmarkId::Zhou2 => {
                let u = x[0] + 1.0;
                let mut f = u * u + sin2(K * u * u);
                for w in x.windows(2) {
                    let s = w[1] * w[1] + 2.0 * w[0];
                    f += K * s * s + K * sin2(K * s * s);
                }
                f
            }
            BenchmarkId::Zhou3 => {
                let u = x[0] + 1.0;
                let mut f = u * u * (1.0 + sin2(K * u * u));
                let mut coef = 1.0;
                for w in x.windows(2) {
                    coef *= 2.0;
                    let s = w[1] * w[1] + coef * w[0];
                    f += K * s * s * (1.0 + K * sin2(K * s * s));
                }
                f
            }
        }
    }

    pub(crate) fn grad_unchecked(self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let mut g = vec![0.0; n];
        match self {
            BenchmarkId::Zhou1 => {
                let u = x[0] - 1.0;
                // d/du [u² + sin²(K u²)] = 2u + sin(2K u²)·2K u
                g[0] += 2.0 * u + 2.0 * K * u * (2.0 * K * u * u).sin();
                for i in 0..n - 1 {
                    let r = x[i + 1] - 2.0 * x[i] * x[i];
                    // d/dr [K r² + K sin²(K r)] = 2K r + K² sin(2K r)
                    let dr = 2.0 * K * r + K * K * (2.0 * K * r).sin();
                    g[i + 1] += dr;
                    g[i] -= 4.0 * x[i] * dr;
                }
            }
            BenchmarkId::Zhou2 => {
                let u = x[0] + 1.0;
                g[0] += 2.0 * u + 2.0 * K * u * (2.0 * K * u * u).sin();
                for i in 0..n - 1 {
                    let s = x[i + 1] * x[i + 1] + 2.0 * x[i];
                    // d/ds [K s² + K sin²(K s²)] = 2K s + K sin(2K s²)·2K s
                    let ds = 2.0 * K * s + 2.0 * K * K * s * (2.0 * K * s * s).sin();
                    g[i + 1] += 2.0 * x[i + 1] * ds;
                    g[i] += 2.0 * ds;
                }
            }
            BenchmarkId::Zhou3 => {
                let u = x[0] + 1.0;
                let theta = K * u * u;
                // d/du [u² (1 + sin²θ)] = 2u (1 + sin²θ) + u² sin(2θ)·2K u
                g[0] += 2.0 * u * (1.0 + sin2(theta)) + 2.0 * K * u * u * u * (2.0 * theta).sin();
                let mut coef = 1.0;
                for i in 0..n - 1 {
                    coef *= 2.0;
                    let s = x[i + 1] * x[i + 1] + coef * x[i];
                    let theta = K * s * s;
                    // d/ds [K s² (1 + K sin²θ)] = 2K s (1 + K sin²θ) + K s²·K sin(2θ)·2K s
                    let ds = 2.0 * K * s * (1.0 + K * sin2(theta))
                        + 2.0 * K * K * K * s * s * s * (2.0 * theta).sin();
                    g[i + 1] += 2.0 * x[i + 1] * ds;
                    g[i] += coef * ds;
                }
            }
        }
        g
    }

    /// The global minimizer in `dim` dimensions.
    ///
    /// Zhou2 and Zhou3 follow the constraint chain `x[i+1]² = -c_i x[i]`
    /// with the negative root at interior indices and `branch` choosing the
    /// sign of the last coordinate. `branch` is ignored for Zhou1.
    pub fn optimum(self, dim: usize, branch: OptimumBranch) -> Result<Point> {
        check_dim(dim)?;
        let mut x = Vec::with_capacity(dim);
        match self {
            BenchmarkId::Zhou1 => {
                x.push(1.0);
                for i in 0..dim - 1 {
                    x.push(2.0 * x[i] * x[i]);
                }
            }
            BenchmarkId::Zhou2 | BenchmarkId::Zhou3 => {
                x.push(-1.0);
                let mut coef = 1.0f64;
                for i in 0..dim - 1 {
                    coef *= 2.0;
                    let c = if self == BenchmarkId::Zhou3 { coef } else { 2.0 };
                    let mag = (-c * x[i]).sqrt();
                    let last = i == dim - 2;
                    let sign = match (last, branch) {
                        (true, OptimumBranch::Plus) => 1.0,
                        _ => -1.0,
                    };
                    x.push(sign * mag);
                }
            }
        }
        Point::new(x)
    }

    /// Wraps the function as an [`ObjectiveSpec`] over `domain`.
    ///
    /// Optima that fall outside the domain interior are omitted from
    /// `known_optima` (Zhou1's doubly exponential chain leaves [-100, 100]
    /// beyond three dimensions).
    pub fn objective(self, domain: Bounds) -> Result<ObjectiveSpec> {
        let dim = domain.dim();
        check_dim(dim)?;
        let mut optima = Vec::new();
        for &b in self.branches() {
            let p = self.optimum(dim, b)?;
            let inside = p
                .iter()
                .zip(domain.lo().iter().zip(domain.hi()))
                .all(|(x, (l, h))| l < x && x < h);
            if inside {
                optima.push(p);
            }
        }
        ObjectiveSpec::new(
            self.name(),
            move |x: &[f64]| self.eval_unchecked(x),
            move |x: &[f64]| self.grad_unchecked(x),
            optima,
            domain,
        )
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchmarkId::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownName {
                name: s.to_owned(),
                valid: "zhou1, zhou2, zhou3".into(),
            })
    }
}

impl FromStr for OptimumBranch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(OptimumBranch::Plus),
            "minus" | "-" => Ok(OptimumBranch::Minus),
            _ => Err(Error::UnknownName {
                name: s.to_owned(),
                valid: "plus, minus".into(),
            }),
        }
    }
}

/// Central-difference gradient of `id` at `x` with step `h`.
pub fn fd_gradient(id: BenchmarkId, x: &[f64], h: f64) -> Result<Vec<f64>> {
    check_dim(x.len())?;
    if !(h > 0.0) {
        return Err(Error::InvalidConfig(format!("finite-difference step must be > 0, got {h}")));
    }
    let mut probe = x.to_vec();
    let mut g = Vec::with_capacity(x.len());
    for d in 0..x.len() {
        probe[d] = x[d] + h;
        let up = id.eval_unchecked(&probe);
        probe[d] = x[d] - h;
        let down = id.eval_unchecked(&probe);
        probe[d] = x[d];
        g.push((up - down) / (2.0 * h));
    }
    Ok(g)
}

fn sin2(t: f64) -> f64 {
    let s = t.sin();
    s * s
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::DimensionTooSmall { min: 2, actual: dim })
    } else {
        Ok(())
    }
}
