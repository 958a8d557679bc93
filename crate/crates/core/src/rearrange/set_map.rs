//! Set maps `∂ : GridSet -> GridSet`.

use std::fmt;
use std::sync::Arc;

use crate::chord::{blaschke_composite, chord_move_gridset, cog_reflect, near_swap, shake_set};
use crate::error::Result;
use crate::geometry::{reflect_grid_set, Axis, GridSet, OrientedHyperplane, PLContraction, Point2};

use super::polarize::{polarize_set, polarize_set_reflected};
use super::transform::FunctionMap;

#[derive(Clone)]
pub enum SetMap {
    Identity,
    Reflection(OrientedHyperplane),
    Polarization(OrientedHyperplane),
    PolarizationReflected(OrientedHyperplane),
    /// Chords parallel to `axis` moved by their midpoints.
    ChordMove {
        contraction: PLContraction,
        axis: Axis,
    },
    /// Blaschke shaking of the `H^-` part toward `H`.
    Shake(OrientedHyperplane),
    /// Shaking after polarization.
    BlaschkeShake(OrientedHyperplane),
    /// Reflection in the hyperplane through the center of gravity.
    CogReflect {
        axis: Axis,
    },
    /// Reflection of the cells within `width` of `H`.
    NearSwap {
        hyperplane: OrientedHyperplane,
        width: f64,
    },
    /// `∂_T A = {T 1_A = 1}`.
    Induced(Arc<dyn FunctionMap>),
}

impl fmt::Debug for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `∂_T`.
pub fn induced_set_map(t: Arc<dyn FunctionMap>) -> SetMap {
    SetMap::Induced(t)
}

fn unit_axis(n: usize, axis: Axis) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[axis.0] = 1.0;
    v
}

impl SetMap {
    pub fn name(&self) -> String {
        match self {
            SetMap::Identity => "identity".into(),
            SetMap::Reflection(_) => "reflection".into(),
            SetMap::Polarization(_) => "polarization".into(),
            SetMap::PolarizationReflected(_) => "polarization-reflected".into(),
            SetMap::ChordMove { axis, .. } => format!("chord-move(axis {})", axis.0),
            SetMap::Shake(_) => "shake".into(),
            SetMap::BlaschkeShake(_) => "shake-after-polarization".into(),
            SetMap::CogReflect { axis } => format!("cog-reflect(axis {})", axis.0),
            SetMap::NearSwap { width, .. } => format!("near-swap(width {width})"),
            SetMap::Induced(t) => format!("induced({})", t.name()),
        }
    }

    pub fn apply(&self, a: &GridSet) -> Result<GridSet> {
        match self {
            SetMap::Identity => Ok(a.clone()),
            SetMap::Reflection(h) => reflect_grid_set(a, h),
            SetMap::Polarization(h) => polarize_set(a, h),
            SetMap::PolarizationReflected(h) => polarize_set_reflected(a, h),
            SetMap::ChordMove { contraction, axis } => chord_move_gridset(a, contraction, *axis),
            SetMap::Shake(h) => shake_set(a, h),
            SetMap::BlaschkeShake(h) => blaschke_composite(a, h),
            SetMap::CogReflect { axis } => cog_reflect(a, *axis),
            SetMap::NearSwap { hyperplane, width } => near_swap(a, hyperplane, *width),
            SetMap::Induced(t) => {
                let image = t.apply(&a.indicator())?;
                a.grid().ensure_same(image.grid())?;
                let mask = image.values().iter().map(|&v| v == 1.0).collect();
                GridSet::new(a.grid().clone(), mask)
            }
        }
    }

    /// The hyperplane `H` the map is built around, if any. Chord and
    /// center-of-gravity maps use `axis^⊥` through the origin with the axis
    /// direction pointing into `H^+`.
    pub fn hyperplane(&self, ndim: usize) -> Option<OrientedHyperplane> {
        match self {
            SetMap::Reflection(h)
            | SetMap::Polarization(h)
            | SetMap::PolarizationReflected(h)
            | SetMap::Shake(h)
            | SetMap::BlaschkeShake(h)
            | SetMap::NearSwap { hyperplane: h, .. } => Some(h.clone()),
            SetMap::ChordMove { axis, .. } | SetMap::CogReflect { axis } => {
                (axis.0 < ndim).then(|| OrientedHyperplane::new(unit_axis(ndim, *axis), 0.0, true).ok()).flatten()
            }
            SetMap::Identity | SetMap::Induced(_) => None,
        }
    }

    /// Direction `u` and contraction `φ` when the map moves chords parallel
    /// to `u` by `t -> φ(t)` in the plane, which lets it act exactly on
    /// convex polygons.
    pub fn contraction(&self) -> Option<(Point2, PLContraction)> {
        let canonical = |h: &OrientedHyperplane, pts: [(f64, f64); 3]| -> Option<(Point2, PLContraction)> {
            if h.dim() != 2 {
                return None;
            }
            let nu = h.positive_normal();
            let b = h.offset() * if h.positive() { 1.0 } else { -1.0 };
            let shifted = pts.map(|(t, p)| (t + b, p + b));
            Some(([nu[0], nu[1]], PLContraction::new(shifted.to_vec()).ok()?))
        };
        match self {
            SetMap::Identity => Some(([0.0, 1.0], PLContraction::identity())),
            SetMap::Reflection(h) => canonical(h, [(-1.0, 1.0), (0.0, 0.0), (1.0, -1.0)]),
            SetMap::Polarization(h) => canonical(h, [(-1.0, 1.0), (0.0, 0.0), (1.0, 1.0)]),
            SetMap::PolarizationReflected(h) => canonical(h, [(-1.0, -1.0), (0.0, 0.0), (1.0, -1.0)]),
            SetMap::ChordMove { contraction, axis } if axis.0 < 2 => {
                let u = if axis.0 == 0 { [1.0, 0.0] } else { [0.0, 1.0] };
                Some((u, contraction.clone()))
            }
            _ => None,
        }
    }
}
