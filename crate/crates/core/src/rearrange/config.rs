//! JSON map descriptions, e.g.
//! `{"map":"polarize","normal":[1,0],"offset":0,"positive":"+"}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};
use crate::geometry::{Axis, OrientedHyperplane, PLContraction};

use super::layer_cake::LayerCake;
use super::pointwise::{AssociatedFunctionPair, PointwiseMap};
use super::set_map::SetMap;
use super::transform::{Canonical, CanonicalKind, CellScramble, ConstantMap, FunctionMap, Scale, Shift};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapConfig {
    pub map: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<f64>>,
    #[serde(default)]
    pub offset: f64,
    #[serde(default = "default_positive")]
    pub positive: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction: Option<PLContraction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn default_positive() -> String {
    "+".into()
}

/// Parses `+` / `-`.
pub fn parse_orientation(s: &str) -> Result<bool> {
    match s {
        "+" => Ok(true),
        "-" => Ok(false),
        other => Err(SymmError::Config(format!("orientation must be + or -, got {other:?}"))),
    }
}

impl MapConfig {
    pub fn named(map: &str) -> Self {
        Self {
            map: map.into(),
            normal: None,
            offset: 0.0,
            positive: default_positive(),
            axis: None,
            contraction: None,
            width: None,
            pair: None,
            value: None,
            seed: None,
        }
    }

    pub fn hyperplane(&self) -> Result<OrientedHyperplane> {
        let normal =
            self.normal.clone().ok_or_else(|| SymmError::Config(format!("map {:?} needs a normal", self.map)))?;
        OrientedHyperplane::new(normal, self.offset, parse_orientation(&self.positive)?)
    }

    fn axis(&self) -> Result<Axis> {
        self.axis.map(Axis).ok_or_else(|| SymmError::Config(format!("map {:?} needs an axis", self.map)))
    }

    fn number(&self) -> Result<f64> {
        self.value.ok_or_else(|| SymmError::Config(format!("map {:?} needs a value", self.map)))
    }

    pub fn set_map(&self) -> Result<SetMap> {
        Ok(match self.map.as_str() {
            "identity" => SetMap::Identity,
            "reflect" => SetMap::Reflection(self.hyperplane()?),
            "polarize" => SetMap::Polarization(self.hyperplane()?),
            "polarize-reflected" => SetMap::PolarizationReflected(self.hyperplane()?),
            "chord" => SetMap::ChordMove {
                contraction: self
                    .contraction
                    .clone()
                    .ok_or_else(|| SymmError::Config("chord map needs a contraction".into()))?,
                axis: self.axis()?,
            },
            "shake" => SetMap::Shake(self.hyperplane()?),
            "blaschke" => SetMap::BlaschkeShake(self.hyperplane()?),
            "cog" => SetMap::CogReflect { axis: self.axis()? },
            "near-swap" => SetMap::NearSwap { hyperplane: self.hyperplane()?, width: self.width.unwrap_or(1.0) },
            other => return Err(SymmError::UnknownName(other.to_string())),
        })
    }

    /// Function transformers; set-map names yield their layer-cake
    /// transformer.
    pub fn function_map(&self) -> Result<Arc<dyn FunctionMap>> {
        let canonical =
            |kind| -> Result<Arc<dyn FunctionMap>> { Ok(Arc::new(Canonical::new(kind, self.hyperplane()?))) };
        match self.map.as_str() {
            "identity" => Ok(Arc::new(Shift(0.0))),
            "reflect" => canonical(CanonicalKind::Reflection),
            "polarize" => canonical(CanonicalKind::Polarization),
            "polarize-reflected" => canonical(CanonicalKind::PolarizationReflected),
            "pointwise" => {
                let name =
                    self.pair.as_deref().ok_or_else(|| SymmError::Config("pointwise map needs a pair".into()))?;
                Ok(Arc::new(PointwiseMap {
                    pair: AssociatedFunctionPair::by_name(name)?,
                    hyperplane: self.hyperplane()?,
                }))
            }
            "shift" => Ok(Arc::new(Shift(self.number()?))),
            "scale" => Ok(Arc::new(Scale(self.number()?))),
            "constant" => Ok(Arc::new(ConstantMap(self.number()?))),
            "scramble" => Ok(Arc::new(CellScramble { seed: self.seed.unwrap_or(0) })),
            _ => Ok(Arc::new(LayerCake(self.set_map()?))),
        }
    }
}
