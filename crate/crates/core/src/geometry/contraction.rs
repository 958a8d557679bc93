//! Piecewise-linear 1-Lipschitz maps of the real line.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};

/// Slack allowed on the Lipschitz bound.
pub const LIPSCHITZ_TOL: f64 = 1e-12;

/// A continuous piecewise-linear map `R -> R` with every slope in `[-1, 1]`.
///
/// Beyond the first and last breakpoint the terminal segment's slope is
/// continued, so the bound holds on all of `R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ContractionFile", into = "ContractionFile")]
pub struct PLContraction {
    breakpoints: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct ContractionFile {
    breakpoints: Vec<[f64; 2]>,
}

impl TryFrom<ContractionFile> for PLContraction {
    type Error = SymmError;
    fn try_from(f: ContractionFile) -> Result<Self> {
        Self::new(f.breakpoints.into_iter().map(|[t, p]| (t, p)).collect())
    }
}

impl From<PLContraction> for ContractionFile {
    fn from(c: PLContraction) -> Self {
        Self { breakpoints: c.breakpoints.into_iter().map(|(t, p)| [t, p]).collect() }
    }
}

impl PLContraction {
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(SymmError::InvalidBreakpoints("need at least two breakpoints".into()));
        }
        if breakpoints.iter().any(|(t, p)| !t.is_finite() || !p.is_finite()) {
            return Err(SymmError::InvalidBreakpoints("non-finite breakpoint".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(SymmError::InvalidBreakpoints("abscissae must increase strictly".into()));
        }
        let c = Self { breakpoints };
        for (segment, slope) in c.slopes().into_iter().enumerate() {
            if slope.abs() > 1.0 + LIPSCHITZ_TOL {
                return Err(SymmError::NotAContraction { segment, slope });
            }
        }
        Ok(c)
    }

    pub fn identity() -> Self {
        Self { breakpoints: vec![(0.0, 0.0), (1.0, 1.0)] }
    }

    /// `t -> slope * t + intercept`.
    pub fn affine(slope: f64, intercept: f64) -> Result<Self> {
        Self::new(vec![(0.0, intercept), (1.0, slope + intercept)])
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// Breakpoint abscissae.
    pub fn knots(&self) -> impl Iterator<Item = f64> + '_ {
        self.breakpoints.iter().map(|b| b.0)
    }

    /// Slope of each segment between consecutive breakpoints.
    pub fn slopes(&self) -> Vec<f64> {
        self.breakpoints.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect()
    }

    pub fn eval(&self, t: f64) -> f64 {
        let b = &self.breakpoints;
        let k = b.partition_point(|p| p.0 <= t);
        let (p, q) = if k == 0 {
            (b[0], b[1])
        } else if k == b.len() {
            (b[k - 2], b[k - 1])
        } else {
            (b[k - 1], b[k])
        };
        p.1 + (t - p.0) * (q.1 - p.1) / (q.0 - p.0)
    }

    /// Slope of the piece containing `t` (right derivative).
    pub fn slope_at(&self, t: f64) -> f64 {
        let b = &self.breakpoints;
        let k = b.partition_point(|p| p.0 <= t).clamp(1, b.len() - 1);
        (b[k].1 - b[k - 1].1) / (b[k].0 - b[k - 1].0)
    }

    /// Every slope has modulus one within `tol`.
    pub fn is_eikonal(&self, tol: f64) -> bool {
        self.slopes().iter().all(|s| (s.abs() - 1.0).abs() <= tol)
    }

    /// A single slope on `[lo, hi]` (within `tol`).
    pub fn is_affine_on(&self, lo: f64, hi: f64, tol: f64) -> bool {
        let mut probes: Vec<f64> = self.knots().filter(|&t| t > lo && t < hi).collect();
        probes.push(lo);
        let s0 = self.slope_at(lo);
        probes.iter().all(|&t| (self.slope_at(t) - s0).abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_steep_segments() {
        let err = PLContraction::new(vec![(0.0, 0.0), (1.0, 0.5), (2.0, 2.0)]).unwrap_err();
        assert!(matches!(err, SymmError::NotAContraction { segment: 1, .. }));
        assert!(PLContraction::new(vec![(0.0, 0.0)]).is_err());
        assert!(PLContraction::new(vec![(1.0, 0.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn extends_terminal_slopes() {
        let c = PLContraction::new(vec![(-1.0, 1.0), (0.0, 0.0), (1.0, 0.5)]).unwrap();
        assert_eq!(c.eval(-3.0), 3.0);
        assert_eq!(c.eval(3.0), 1.5);
        assert_eq!(c.eval(0.5), 0.25);
        assert_eq!(c.slope_at(-5.0), -1.0);
        assert_eq!(c.slope_at(0.0), 0.5);
    }

    #[test]
    fn affine_detection() {
        let c = PLContraction::new(vec![(-1.0, 1.0), (0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert!(c.is_affine_on(0.0, 1.0, 1e-12));
        assert!(c.is_affine_on(-5.0, 0.0, 1e-12));
        assert!(!c.is_affine_on(-0.5, 0.5, 1e-12));
        assert!(c.is_eikonal(1e-12));
    }

    #[test]
    fn json_round_trip_validates() {
        let c: PLContraction = serde_json::from_str(r#"{"breakpoints":[[0,0],[1,-1]]}"#).unwrap();
        assert_eq!(c.eval(2.0), -2.0);
        assert!(serde_json::from_str::<PLContraction>(r#"{"breakpoints":[[0,0],[1,3]]}"#).is_err());
    }

    fn contraction() -> impl Strategy<Value = PLContraction> {
        (prop::collection::vec((0.01f64..1.0, -1.0f64..1.0), 1..8), -2.0f64..2.0, -2.0f64..2.0).prop_map(
            |(steps, t0, p0)| {
                let mut bp = vec![(t0, p0)];
                for (dt, slope) in steps {
                    let (t, p) = *bp.last().unwrap();
                    bp.push((t + dt, p + slope * dt));
                }
                PLContraction::new(bp).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn lipschitz_on_random_pairs(c in contraction(), pairs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 100)) {
            for (s, t) in pairs {
                prop_assert!((c.eval(s) - c.eval(t)).abs() <= (s - t).abs() * (1.0 + 1e-12) + 1e-12);
            }
        }
    }
}
