//! Polarization (two-point symmetrization) and general maps that are
//! pointwise with respect to a hyperplane.

use crate::error::Result;
use crate::geometry::{GridFunction, GridSet, LatticeReflection, OrientedHyperplane, Side};

/// Evaluates `Tf(x) = F^+(f(x), f†(x))` on `H^+` and `F^-(f(x), f†(x))` on
/// `H^-`. Centers on `H` use `F^+(f(x), f(x))`. Reflections that leave the
/// grid read `essinf f`.
pub fn apply_pointwise(
    f: &GridFunction,
    h: &OrientedHyperplane,
    plus: impl Fn(f64, f64) -> f64,
    minus: impl Fn(f64, f64) -> f64,
) -> Result<GridFunction> {
    let refl = LatticeReflection::new(f.grid(), h)?;
    let floor = f.essinf();
    let values = (0..f.grid().len())
        .map(|i| {
            let v = f.get(i);
            match refl.side(i) {
                Side::On => plus(v, v),
                Side::Plus => plus(v, refl.image(i).map_or(floor, |j| f.get(j))),
                Side::Minus => minus(v, refl.image(i).map_or(floor, |j| f.get(j))),
            }
        })
        .collect();
    GridFunction::new(f.grid().clone(), values)
}

/// `P_H f`: `max(f, f†)` on `H^+`, `min(f, f†)` on `H^-`.
pub fn polarize(f: &GridFunction, h: &OrientedHyperplane) -> Result<GridFunction> {
    apply_pointwise(f, h, f64::max, f64::min)
}

/// `P_H† f = (P_H f)†`, which is `min(f, f†)` on `H^+` and `max` on `H^-`.
pub fn polarize_reflected(f: &GridFunction, h: &OrientedHyperplane) -> Result<GridFunction> {
    apply_pointwise(f, h, f64::min, f64::max)
}

/// The set with `1_{P_H A} = P_H 1_A`.
pub fn polarize_set(a: &GridSet, h: &OrientedHyperplane) -> Result<GridSet> {
    GridSet::from_indicator(&polarize(&a.indicator(), h)?)
}

pub fn polarize_set_reflected(a: &GridSet, h: &OrientedHyperplane) -> Result<GridSet> {
    GridSet::from_indicator(&polarize_reflected(&a.indicator(), h)?)
}
