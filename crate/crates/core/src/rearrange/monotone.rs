//! Non-decreasing maps `ψ : R -> R` and composition `ψ ∘ f`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};
use crate::geometry::GridFunction;

/// Right-continuous non-decreasing piecewise-linear map.
///
/// Knots have non-decreasing abscissae; two knots sharing an abscissa form a
/// jump, and the map takes the second (right) value there. Outside the knot
/// range the terminal slopes continue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MonotoneFile", into = "MonotoneFile")]
pub struct MonotoneMap {
    knots: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct MonotoneFile {
    knots: Vec<[f64; 2]>,
}

impl TryFrom<MonotoneFile> for MonotoneMap {
    type Error = SymmError;
    fn try_from(f: MonotoneFile) -> Result<Self> {
        Self::new(f.knots.into_iter().map(|[t, v]| (t, v)).collect())
    }
}

impl From<MonotoneMap> for MonotoneFile {
    fn from(m: MonotoneMap) -> Self {
        Self { knots: m.knots.into_iter().map(|(t, v)| [t, v]).collect() }
    }
}

impl MonotoneMap {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(SymmError::InvalidBreakpoints("need at least two knots".into()));
        }
        if knots.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return Err(SymmError::InvalidBreakpoints("non-finite knot".into()));
        }
        for (k, w) in knots.windows(2).enumerate() {
            if w[1].0 < w[0].0 {
                return Err(SymmError::InvalidBreakpoints("abscissae must not decrease".into()));
            }
            if w[1].1 < w[0].1 {
                return Err(SymmError::NonMonotoneMap(k));
            }
        }
        if knots.windows(3).any(|w| w[0].0 == w[2].0) {
            return Err(SymmError::InvalidBreakpoints("at most two knots per abscissa".into()));
        }
        if knots[0].0 == knots[1].0 || knots[knots.len() - 2].0 == knots[knots.len() - 1].0 {
            return Err(SymmError::InvalidBreakpoints("terminal segments must have positive length".into()));
        }
        Ok(Self { knots })
    }

    /// The step `v < t -> lo`, `v >= t -> hi`.
    pub fn step(t: f64, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(t - 1.0, lo), (t, lo), (t, hi), (t + 1.0, hi)])
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn eval(&self, t: f64) -> f64 {
        let k = &self.knots;
        let j = k.partition_point(|p| p.0 <= t);
        let (p, q) = if j == 0 {
            (k[0], k[1])
        } else if j == k.len() {
            (k[j - 2], k[j - 1])
        } else {
            (k[j - 1], k[j])
        };
        if q.0 == p.0 {
            // only reachable when t sits just before a jump: constant piece
            return p.1;
        }
        p.1 + (t - p.0) * (q.1 - p.1) / (q.0 - p.0)
    }
}

/// `ψ ∘ f`.
pub fn compose_monotone(f: &GridFunction, psi: &MonotoneMap) -> Result<GridFunction> {
    f.map(|v| psi.eval(v))
}
