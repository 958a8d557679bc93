//! Seeded property checks for function transformers and set maps.
//!
//! Each check runs independent trials (trial `i` draws from
//! [`trial_rng`]`(seed, i)`), so reports do not depend on thread count.
//! The first failing trial in index order becomes the counterexample, and
//! the `*_violation` functions re-run it from the payload alone.

mod classify;
mod functions;
mod generate;
mod report;
mod sets;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::Grid;

pub use classify::{classify_rearrangement, Classification, ClassifyReport};
pub use functions::{
    check_equimeasurable, check_lp_contracting, check_modulus_reducing, check_monotonic, equimeasurable_violation,
    lp_violation, modulus_profile, modulus_violation, monotonic_violation, replay_function, ModulusProfile,
    MODULUS_TOL,
};
pub use generate::{
    box_raster, disk_raster, doubled_coords, polygon_raster, random_convex_polygon, random_symmetric_polygon,
    trial_rng, FunctionGenerator,
};
pub use report::{Counterexample, Property, PropertyReport, Verdict, Violation};
pub use sets::{
    ball_violation, check_set_property, check_set_property_about, check_setmap_properties, invariance_violation,
    measure_violation, perimeter_violation, polygon_perimeter_violation, replay_set, respects_cylinders_violation,
    set_monotonic_violation, suite_hyperplane, PERIMETER_TOL, SET_PROPERTIES,
};

/// Trial count, seed, grid and function generator for a run.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub trials: usize,
    pub seed: u64,
    pub grid: Grid,
    pub generator: FunctionGenerator,
}

impl CheckConfig {
    /// 32×32 cells of side 1/8 on `[-2, 2]^2` with blob functions.
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials: trials.max(1),
            seed,
            grid: Grid::centered(&[32, 32], 0.125).expect("valid grid"),
            generator: FunctionGenerator::Blobs,
        }
    }

    /// 64×64 cells of side 1/16 on `[-2, 2]^2`, the default for set suites.
    pub fn sets(trials: usize, seed: u64) -> Self {
        Self { grid: Grid::centered(&[64, 64], 0.0625).expect("valid grid"), ..Self::new(trials, seed) }
    }

    pub fn with_grid(mut self, grid: Grid) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_generator(mut self, generator: FunctionGenerator) -> Self {
        self.generator = generator;
        self
    }
}

pub(crate) enum Outcome {
    Pass,
    Fail(Counterexample, Violation),
    /// The map could not be evaluated on this trial's inputs.
    Skip(String),
}

impl Outcome {
    pub(crate) fn from_check(
        result: crate::Result<Option<Violation>>,
        counterexample: impl FnOnce() -> Counterexample,
    ) -> Self {
        match result {
            Ok(None) => Outcome::Pass,
            Ok(Some(v)) => Outcome::Fail(counterexample(), v),
            Err(e) => Outcome::Skip(e.to_string()),
        }
    }
}

pub(crate) fn run_trials(
    property: Property,
    map: String,
    trials: usize,
    seed: u64,
    trial: impl Fn(&mut ChaCha8Rng) -> Outcome + Sync,
) -> PropertyReport {
    let trials = trials.max(1);
    let outcomes: Vec<Outcome> = (0..trials as u64).into_par_iter().map(|i| trial(&mut trial_rng(seed, i))).collect();
    let mut skipped = 0;
    let mut first_skip = None;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Pass => {}
            Outcome::Skip(msg) => {
                skipped += 1;
                first_skip.get_or_insert(msg);
            }
            Outcome::Fail(ce, v) => {
                return PropertyReport {
                    property,
                    map,
                    verdict: Verdict::Fails,
                    counterexample: Some(ce),
                    violation: Some(v),
                    trials: i + 1,
                    seed,
                    note: None,
                };
            }
        }
    }
    let verdict = if skipped == trials { Verdict::NotApplicable } else { Verdict::Holds };
    let note = first_skip.map(|msg| format!("{skipped} of {trials} trials not evaluable: {msg}"));
    PropertyReport { property, map, verdict, counterexample: None, violation: None, trials, seed, note }
}

/// A report that needs no trials.
pub(crate) fn not_applicable(property: Property, map: String, seed: u64, note: impl Into<String>) -> PropertyReport {
    PropertyReport {
        property,
        map,
        verdict: Verdict::NotApplicable,
        counterexample: None,
        violation: None,
        trials: 0,
        seed,
        note: Some(note.into()),
    }
}
