//! Rebuilding a function transformer from its set map via super-level sets.

use crate::error::Result;
use crate::geometry::GridFunction;

use super::set_map::SetMap;
use super::transform::FunctionMap;

/// `Tf(x) = max{ t > min f : x ∈ ∂{f >= t} }` over the values `t` taken by
/// `f`, and `min f` where no level applies.
pub fn layer_cake_rearrangement(map: &SetMap, f: &GridFunction) -> Result<GridFunction> {
    let levels = f.levels();
    let floor = levels[0];
    let mut out = vec![floor; f.grid().len()];
    for &t in &levels[1..] {
        let image = map.apply(&f.super_level_set(t, false))?;
        for i in image.cells() {
            // levels ascend, so the last hit is the maximum
            out[i] = t;
        }
    }
    GridFunction::new(f.grid().clone(), out)
}

/// Same reconstruction through strict super-level sets: the cells of
/// `∂{f > v_{k-1}}` receive `v_k`.
pub fn layer_cake_strict(map: &SetMap, f: &GridFunction) -> Result<GridFunction> {
    let levels = f.levels();
    let mut out = vec![levels[0]; f.grid().len()];
    for w in levels.windows(2) {
        let image = map.apply(&f.super_level_set(w[0], true))?;
        for i in image.cells() {
            out[i] = w[1];
        }
    }
    GridFunction::new(f.grid().clone(), out)
}

/// The function transformer determined by a set map.
#[derive(Clone, Debug)]
pub struct LayerCake(pub SetMap);

impl FunctionMap for LayerCake {
    fn name(&self) -> String {
        format!("layer-cake({})", self.0.name())
    }

    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        layer_cake_rearrangement(&self.0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{reflect_grid_function, Grid, OrientedHyperplane};
    use crate::rearrange::polarize::polarize;

    fn three_levels() -> GridFunction {
        let g = Grid::centered(&[8, 8], 0.5).unwrap();
        GridFunction::from_fn(g, |x| {
            if (x[0] + 0.5).hypot(x[1] + 1.0) < 0.8 {
                2.0
            } else if x[0] + x[1] < 0.0 {
                1.0
            } else {
                0.0
            }
        })
        .unwrap()
    }

    #[test]
    fn recovers_polarization_identity_and_reflection() {
        let f = three_levels();
        let h = OrientedHyperplane::new(vec![0.0, 1.0], 0.0, true).unwrap();
        let pol = SetMap::Polarization(h.clone());
        assert_eq!(layer_cake_rearrangement(&pol, &f).unwrap(), polarize(&f, &h).unwrap());
        assert_eq!(layer_cake_strict(&pol, &f).unwrap(), polarize(&f, &h).unwrap());
        assert_eq!(layer_cake_rearrangement(&SetMap::Identity, &f).unwrap(), f);
        let refl = SetMap::Reflection(h.clone());
        assert_eq!(layer_cake_rearrangement(&refl, &f).unwrap(), reflect_grid_function(&f, &h).unwrap());
    }

    #[test]
    fn brute_force_level_by_level() {
        // {Tf >= t} = ∂{f >= t} for every level t
        let f = three_levels();
        let h = OrientedHyperplane::new(vec![1.0, 0.0], 0.0, false).unwrap();
        let pol = SetMap::Polarization(h);
        let tf = layer_cake_rearrangement(&pol, &f).unwrap();
        for t in f.levels() {
            assert_eq!(tf.super_level_set(t, false), pol.apply(&f.super_level_set(t, false)).unwrap());
        }
    }
}
