//! Maps defined cell by cell from the pair `(f(x), f(x†))`.
//!
//! An associated pair `F = (F^+, F^-)` gives
//! `Tf(x) = F^+(f(x), f(x†))` on `H^+` and `F^-(f(x), f(x†))` on `H^-`.

use std::fmt;

use serde::Serialize;

use super::polarize::apply_pointwise;
use super::transform::FunctionMap;
use crate::error::{Result, SymmError};
use crate::geometry::{Grid, GridFunction, LatticeReflection, OrientedHyperplane};

type Binary = fn(f64, f64) -> f64;

#[derive(Clone, Copy)]
pub struct AssociatedFunctionPair {
    pub name: &'static str,
    pub plus: Binary,
    pub minus: Binary,
}

impl fmt::Debug for AssociatedFunctionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AssociatedFunctionPair").field("name", &self.name).finish()
    }
}

impl PartialEq for AssociatedFunctionPair {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

fn first(r: f64, _: f64) -> f64 {
    r
}

fn second(_: f64, s: f64) -> f64 {
    s
}

fn mean(r: f64, s: f64) -> f64 {
    (r + s) / 2.0
}

fn switch_plus(r: f64, s: f64) -> f64 {
    if r + s >= 0.0 {
        r.max(s)
    } else {
        r.min(s)
    }
}

fn switch_minus(r: f64, s: f64) -> f64 {
    if r + s >= 0.0 {
        r.min(s)
    } else {
        r.max(s)
    }
}

impl AssociatedFunctionPair {
    /// `(max, min)`: polarization.
    pub const MAX_MIN: Self = Self { name: "max-min", plus: f64::max, minus: f64::min };
    /// `(min, max)`: reflected polarization.
    pub const MIN_MAX: Self = Self { name: "min-max", plus: f64::min, minus: f64::max };
    /// Identity.
    pub const FIRST: Self = Self { name: "first", plus: first, minus: first };
    /// Reflection.
    pub const SECOND: Self = Self { name: "second", plus: second, minus: second };
    /// Averages the two values; not a rearrangement.
    pub const MEAN: Self = Self { name: "mean", plus: mean, minus: mean };
    /// Polarizes toward `H^+` where `r + s >= 0` and toward `H^-` elsewhere.
    /// Discontinuous and not monotone, yet it permutes every pair.
    pub const SIGN_SWITCH: Self = Self { name: "sign-switch", plus: switch_plus, minus: switch_minus };

    pub fn catalog() -> Vec<Self> {
        vec![Self::MAX_MIN, Self::MIN_MAX, Self::FIRST, Self::SECOND, Self::MEAN, Self::SIGN_SWITCH]
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Self::catalog().into_iter().find(|p| p.name == name).ok_or_else(|| SymmError::UnknownName(name.to_string()))
    }

    /// Checks that `{F^+(r, s), F^-(s, r)} = {r, s}` as multisets.
    pub fn preserves_pair(&self, r: f64, s: f64) -> bool {
        let a = (self.plus)(r, s);
        let b = (self.minus)(s, r);
        (a == r && b == s) || (a == s && b == r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FvaluesCheck {
    pub holds: bool,
    pub checked: usize,
    pub violation: Option<(f64, f64)>,
}

/// Tests the value-permutation condition on every ordered pair drawn from
/// `samples`.
pub fn check_fvalues(pair: &AssociatedFunctionPair, samples: &[f64]) -> FvaluesCheck {
    let mut checked = 0;
    for &r in samples {
        for &s in samples {
            checked += 1;
            if !pair.preserves_pair(r, s) {
                return FvaluesCheck { holds: false, checked, violation: Some((r, s)) };
            }
        }
    }
    FvaluesCheck { holds: true, checked, violation: None }
}

/// `F^+(r, r) = F^-(r, r)` on every sample: values on `H` are well defined.
pub fn diagonal_coincides(pair: &AssociatedFunctionPair, samples: &[f64]) -> bool {
    samples.iter().all(|&r| (pair.plus)(r, r) == (pair.minus)(r, r))
}

/// The transformer built from an associated pair and a hyperplane.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseMap {
    pub pair: AssociatedFunctionPair,
    pub hyperplane: OrientedHyperplane,
}

/// Validates `h` against `grid` and builds the map.
pub fn build_pointwise_map(
    pair: AssociatedFunctionPair,
    hyperplane: OrientedHyperplane,
    grid: &Grid,
) -> Result<PointwiseMap> {
    LatticeReflection::new(grid, &hyperplane)?;
    Ok(PointwiseMap { pair, hyperplane })
}

impl FunctionMap for PointwiseMap {
    fn name(&self) -> String {
        format!("pointwise({})", self.pair.name)
    }

    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        apply_pointwise(f, &self.hyperplane, self.pair.plus, self.pair.minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples() -> Vec<f64> {
        vec![-3.0, -1.5, -0.5, 0.0, 0.25, 1.0, 2.0, 7.5]
    }

    #[test]
    fn catalog_fvalues() {
        let holds: Vec<(&str, bool)> =
            AssociatedFunctionPair::catalog().iter().map(|p| (p.name, check_fvalues(p, &samples()).holds)).collect();
        assert_eq!(
            holds,
            vec![
                ("max-min", true),
                ("min-max", true),
                ("first", true),
                ("second", true),
                ("mean", false),
                ("sign-switch", true)
            ]
        );
        let mean = check_fvalues(&AssociatedFunctionPair::MEAN, &samples());
        let (r, s) = mean.violation.unwrap();
        assert_ne!(r, s);
    }

    #[test]
    fn diagonals_coincide() {
        for p in AssociatedFunctionPair::catalog() {
            assert!(diagonal_coincides(&p, &samples()), "{}", p.name);
        }
    }

    #[test]
    fn max_min_map_is_polarization() {
        let g = Grid::centered(&[8, 6], 0.5).unwrap();
        let h = OrientedHyperplane::new(vec![0.0, -1.0], 0.0, true).unwrap();
        let f = GridFunction::from_fn(g.clone(), |x| (3.0 * x[0] - x[1]).cos()).unwrap();
        let m = build_pointwise_map(AssociatedFunctionPair::MAX_MIN, h.clone(), &g).unwrap();
        assert_eq!(m.apply(&f).unwrap(), super::super::polarize::polarize(&f, &h).unwrap());
    }

    #[test]
    fn unknown_names_and_misaligned_planes_fail() {
        assert!(matches!(AssociatedFunctionPair::by_name("median"), Err(SymmError::UnknownName(_))));
        let g = Grid::centered(&[4, 4], 1.0).unwrap();
        let h = OrientedHyperplane::new(vec![1.0, 0.0], 0.25, true).unwrap();
        assert!(matches!(
            build_pointwise_map(AssociatedFunctionPair::FIRST, h, &g),
            Err(SymmError::MisalignedHyperplane)
        ));
    }
}
