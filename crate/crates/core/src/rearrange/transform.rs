//! Function transformers `T : grid functions -> grid functions`.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::polarize::{polarize, polarize_reflected};
use crate::error::Result;
use crate::geometry::{reflect_grid_function, GridFunction, OrientedHyperplane};

/// A map between grid functions on the same grid.
pub trait FunctionMap: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn apply(&self, f: &GridFunction) -> Result<GridFunction>;
}

impl<T: FunctionMap + ?Sized> FunctionMap for Arc<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        (**self).apply(f)
    }
}

impl<T: FunctionMap + ?Sized> FunctionMap for &T {
    fn name(&self) -> String {
        (**self).name()
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        (**self).apply(f)
    }
}

/// The four pointwise rearrangements: `Id`, `†`, `P_H`, `P_H† = † ∘ P_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CanonicalKind {
    Identity,
    Reflection,
    Polarization,
    PolarizationReflected,
}

impl CanonicalKind {
    pub const ALL: [CanonicalKind; 4] = [
        CanonicalKind::Identity,
        CanonicalKind::Reflection,
        CanonicalKind::Polarization,
        CanonicalKind::PolarizationReflected,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CanonicalKind::Identity => "Id",
            CanonicalKind::Reflection => "reflection",
            CanonicalKind::Polarization => "P_H",
            CanonicalKind::PolarizationReflected => "P_H-reflected",
        }
    }

    /// The chord-movement contraction realizing this map.
    pub fn contraction_value(self, t: f64) -> f64 {
        match self {
            CanonicalKind::Identity => t,
            CanonicalKind::Reflection => -t,
            CanonicalKind::Polarization => t.abs(),
            CanonicalKind::PolarizationReflected => -t.abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Canonical {
    pub kind: CanonicalKind,
    pub hyperplane: OrientedHyperplane,
}

impl Canonical {
    pub fn new(kind: CanonicalKind, hyperplane: OrientedHyperplane) -> Self {
        Self { kind, hyperplane }
    }
}

impl FunctionMap for Canonical {
    fn name(&self) -> String {
        self.kind.label().to_string()
    }

    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        match self.kind {
            CanonicalKind::Identity => Ok(f.clone()),
            CanonicalKind::Reflection => reflect_grid_function(f, &self.hyperplane),
            CanonicalKind::Polarization => polarize(f, &self.hyperplane),
            CanonicalKind::PolarizationReflected => polarize_reflected(f, &self.hyperplane),
        }
    }
}

/// `f -> f + c`.
#[derive(Clone, Debug)]
pub struct Shift(pub f64);

impl FunctionMap for Shift {
    fn name(&self) -> String {
        format!("shift({})", self.0)
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        f.map(|v| v + self.0)
    }
}

/// `f -> a f`.
#[derive(Clone, Debug)]
pub struct Scale(pub f64);

impl FunctionMap for Scale {
    fn name(&self) -> String {
        format!("scale({})", self.0)
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        f.map(|v| v * self.0)
    }
}

/// `f -> c`.
#[derive(Clone, Debug)]
pub struct ConstantMap(pub f64);

impl FunctionMap for ConstantMap {
    fn name(&self) -> String {
        format!("constant({})", self.0)
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        GridFunction::constant(f.grid().clone(), self.0)
    }
}

/// Moves every cell value to a fixed random cell. Equimeasurable, but it
/// tears apart neighbouring values.
#[derive(Clone, Debug)]
pub struct CellScramble {
    pub seed: u64,
}

impl FunctionMap for CellScramble {
    fn name(&self) -> String {
        format!("scramble({})", self.seed)
    }
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        let mut perm: Vec<usize> = (0..f.grid().len()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(self.seed));
        let values = perm.iter().map(|&j| f.get(j)).collect();
        GridFunction::new(f.grid().clone(), values)
    }
}
