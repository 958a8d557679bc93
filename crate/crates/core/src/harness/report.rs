//! Verdicts and replayable counterexamples.

use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexPolygon, GridFunction, GridSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Equimeasurable,
    Monotonic,
    L1Contracting,
    L2Contracting,
    LinfContracting,
    ModulusReducing,
    SetMonotonic,
    MeasurePreserving,
    HSymmetricInvariant,
    HSymmetricCylinderInvariant,
    BallsToBalls,
    RespectsHCylinders,
    PerimeterPreserving,
    TwoBallUnionInvariant,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Equimeasurable => "equimeasurable",
            Property::Monotonic => "monotonic",
            Property::L1Contracting => "l1-contracting",
            Property::L2Contracting => "l2-contracting",
            Property::LinfContracting => "linf-contracting",
            Property::ModulusReducing => "modulus-reducing",
            Property::SetMonotonic => "set-monotonic",
            Property::MeasurePreserving => "measure-preserving",
            Property::HSymmetricInvariant => "h-symmetric-invariant",
            Property::HSymmetricCylinderInvariant => "h-symmetric-cylinder-invariant",
            Property::BallsToBalls => "balls-to-balls",
            Property::RespectsHCylinders => "respects-h-cylinders",
            Property::PerimeterPreserving => "perimeter-preserving",
            Property::TwoBallUnionInvariant => "two-ball-union-invariant",
        }
    }

    /// Exponent for the `L^p` checks.
    pub fn lp_exponent(self) -> Option<f64> {
        match self {
            Property::L1Contracting => Some(1.0),
            Property::L2Contracting => Some(2.0),
            Property::LinfContracting => Some(f64::INFINITY),
            _ => None,
        }
    }

    pub fn lp(p: f64) -> Option<Self> {
        if p == 1.0 {
            Some(Property::L1Contracting)
        } else if p == 2.0 {
            Some(Property::L2Contracting)
        } else if p == f64::INFINITY {
            Some(Property::LinfContracting)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The map is undefined on the inputs this check needs.
    NotApplicable,
}

/// Inputs that reproduce a failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    Function { f: GridFunction },
    FunctionPair { f: GridFunction, g: GridFunction },
    Set { a: GridSet },
    SetPair { a: GridSet, b: GridSet },
    Polygon { k: ConvexPolygon },
}

/// What went wrong on a counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Offending cells, when the failure is local.
    pub cells: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(detail: impl Into<String>) -> Self {
        Self { cells: Vec::new(), detail: detail.into() }
    }

    pub fn at(cells: Vec<usize>, detail: impl Into<String>) -> Self {
        Self { cells, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub map: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
    /// Trials run; a failing run stops at the first failing trial.
    pub trials: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }
}
