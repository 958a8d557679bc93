//! Set maps that separate the characterizing properties, each with the
//! verdict pattern it is known to produce.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chord::sawtooth_contraction;
use crate::error::{Result, SymmError};
use crate::geometry::{Axis, ConvexPolygon, Grid, GridSet, OrientedHyperplane};
use crate::harness::{
    check_set_property, classify_rearrangement, disk_raster, doubled_coords, perimeter_violation, polygon_raster,
    random_convex_polygon, set_monotonic_violation, trial_rng, CheckConfig, Classification, Counterexample, Property,
    PropertyReport, Verdict, Violation,
};
use crate::rearrange::{polarize_set, LayerCake, SetMap};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GalleryConfig {
    pub trials: usize,
    pub seed: u64,
}

impl Default for GalleryConfig {
    fn default() -> Self {
        Self { trials: 30, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Checked,
    /// The map has no visible effect on grid sets.
    NotRepresentable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GalleryRow {
    pub example: String,
    pub description: String,
    pub status: RowStatus,
    pub expected: BTreeMap<String, Verdict>,
    pub observed: BTreeMap<String, Verdict>,
    pub matches: bool,
    pub note: String,
    pub reports: Vec<PropertyReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub example: String,
    pub status: RowStatus,
    pub matches: bool,
    pub verdicts: BTreeMap<String, Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GalleryReport {
    pub seed: u64,
    pub trials: usize,
    pub all_match: bool,
    pub rows: Vec<GalleryRow>,
}

impl GalleryReport {
    pub fn summary(&self) -> Vec<SummaryRow> {
        self.rows
            .iter()
            .map(|r| SummaryRow {
                example: r.example.clone(),
                status: r.status,
                matches: r.matches,
                verdicts: r.observed.clone(),
            })
            .collect()
    }

    pub fn mismatches(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| !r.matches).map(|r| r.example.as_str()).collect()
    }
}

/// 64×64 cells of side 1/16 on `[-2, 2]^2`.
pub fn gallery_grid() -> Grid {
    Grid::centered(&[64, 64], 0.0625).expect("valid grid")
}

/// `{y = 0}` with the upper half-plane positive.
pub fn gallery_hyperplane() -> OrientedHyperplane {
    OrientedHyperplane::axis_aligned(2, Axis(1), 0.0, true).expect("valid hyperplane")
}

struct RowBuilder {
    example: &'static str,
    description: &'static str,
    status: RowStatus,
    expected: Vec<(String, Verdict)>,
    reports: Vec<PropertyReport>,
    extra: Vec<(String, Verdict)>,
    note: String,
}

impl RowBuilder {
    fn new(example: &'static str, description: &'static str) -> Self {
        Self {
            example,
            description,
            status: RowStatus::Checked,
            expected: Vec::new(),
            reports: Vec::new(),
            extra: Vec::new(),
            note: String::new(),
        }
    }

    fn expect(&mut self, check: &str, v: Verdict) {
        self.expected.push((check.to_string(), v));
    }

    fn suite(&mut self, map: &SetMap, cfg: &GalleryConfig, props: &[(Property, Verdict)]) {
        let check = CheckConfig::sets(cfg.trials, cfg.seed).with_grid(gallery_grid());
        for &(p, v) in props {
            self.expect(p.name(), v);
            self.reports.push(check_set_property(map, p, &check));
        }
    }

    fn fixture(
        &mut self,
        map: &SetMap,
        property: Property,
        expected: Verdict,
        ce: Counterexample,
        result: Result<Option<Violation>>,
        seed: u64,
    ) {
        self.expect(property.name(), expected);
        let (verdict, violation, note) = match result {
            Ok(Some(v)) => (Verdict::Fails, Some(v), None),
            Ok(None) => (Verdict::Holds, None, None),
            Err(e) => (Verdict::NotApplicable, None, Some(e.to_string())),
        };
        self.reports.push(PropertyReport {
            property,
            map: map.name(),
            verdict,
            counterexample: (verdict == Verdict::Fails).then_some(ce),
            violation,
            trials: 1,
            seed,
            note,
        });
    }

    fn finish(self) -> GalleryRow {
        let expected: BTreeMap<String, Verdict> = self.expected.into_iter().collect();
        let mut observed: BTreeMap<String, Verdict> =
            self.reports.iter().map(|r| (r.property.name().to_string(), r.verdict)).collect();
        observed.extend(self.extra);
        GalleryRow {
            example: self.example.into(),
            description: self.description.into(),
            status: self.status,
            matches: expected == observed,
            expected,
            observed,
            note: self.note,
            reports: self.reports,
        }
    }
}

const CONVEX_SET_PROPERTIES: [Property; 7] = [
    Property::SetMonotonic,
    Property::MeasurePreserving,
    Property::HSymmetricInvariant,
    Property::HSymmetricCylinderInvariant,
    Property::BallsToBalls,
    Property::RespectsHCylinders,
    Property::PerimeterPreserving,
];

/// Chord movement by the distance to the nearest integer.
pub fn sawtooth_map() -> SetMap {
    SetMap::ChordMove { contraction: sawtooth_contraction(1.0, -4.0, 4.0).expect("valid sawtooth"), axis: Axis(1) }
}

fn sawtooth_row(cfg: &GalleryConfig) -> GalleryRow {
    let mut row = RowBuilder::new(
        "sawtooth-chord-map",
        "chords orthogonal to H move by the distance of their midpoint to the nearest integer",
    );
    let map = sawtooth_map();
    let all_hold: Vec<(Property, Verdict)> = CONVEX_SET_PROPERTIES.iter().map(|&p| (p, Verdict::Holds)).collect();
    row.suite(&map, cfg, &all_hold);
    row.expect("canonical-match", Verdict::Fails);
    let check = CheckConfig::sets(cfg.trials.min(20), cfg.seed).with_grid(gallery_grid());
    let verdict = match classify_rearrangement(Arc::new(LayerCake(map)), Some(&gallery_hyperplane()), &check) {
        Ok(c) => {
            row.note = format!("classified as {}: {}", c.classification.label(), c.note);
            if c.classification == Classification::Other {
                Verdict::Fails
            } else {
                Verdict::Holds
            }
        }
        Err(e) => {
            row.note = e.to_string();
            Verdict::NotApplicable
        }
    };
    row.extra.push(("canonical-match".into(), verdict));
    row.finish()
}

/// Two disks of radius 1/2 centered at `(0, ±3/4)`.
pub fn mirrored_disks(grid: &Grid) -> GridSet {
    let upper = disk_raster(grid, &doubled_coords(grid, &[0.0, 0.75]).expect("lattice point"), 8.0);
    let lower = disk_raster(grid, &doubled_coords(grid, &[0.0, -0.75]).expect("lattice point"), 8.0);
    upper.union(&lower)
}

fn shake_row(cfg: &GalleryConfig) -> GalleryRow {
    let mut row = RowBuilder::new(
        "shake-after-polarization",
        "polarization followed by sliding each chord's lower part up against H",
    );
    let h = gallery_hyperplane();
    let map = SetMap::BlaschkeShake(h.clone());
    row.suite(
        &map,
        cfg,
        &[
            (Property::SetMonotonic, Verdict::Holds),
            (Property::MeasurePreserving, Verdict::Holds),
            (Property::RespectsHCylinders, Verdict::Holds),
            (Property::TwoBallUnionInvariant, Verdict::Fails),
        ],
    );
    let grid = gallery_grid();
    let mut agree = Verdict::Holds;
    for i in 0..20 {
        let mut rng = trial_rng(cfg.seed, i);
        let k = random_convex_polygon(&mut rng, [0.0, 0.0], 0.3, 1.2);
        let a = polygon_raster(&grid, &k);
        match (map.apply(&a), polarize_set(&a, &h)) {
            (Ok(x), Ok(y)) if x == y => {}
            _ => agree = Verdict::Fails,
        }
    }
    row.expect("equals-polarization-on-convex", Verdict::Holds);
    row.extra.push(("equals-polarization-on-convex".into(), agree));
    let disks = mirrored_disks(&grid);
    let differs = match (map.apply(&disks), polarize_set(&disks, &h)) {
        (Ok(x), Ok(y)) if x == y => Verdict::Holds,
        _ => Verdict::Fails,
    };
    row.expect("equals-polarization-on-two-balls", Verdict::Fails);
    row.extra.push(("equals-polarization-on-two-balls".into(), differs));
    row.finish()
}

/// The double cone `conv{(0, ±1), (±1, 0)}` and its upper half.
pub fn cone_fixture(grid: &Grid) -> (GridSet, GridSet) {
    let cone = ConvexPolygon::new(vec![[-1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).expect("triangle");
    let double = ConvexPolygon::new(vec![[0.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]).expect("square");
    (polygon_raster(grid, &cone), polygon_raster(grid, &double))
}

fn cog_row(cfg: &GalleryConfig) -> GalleryRow {
    let mut row = RowBuilder::new("cog-reflection", "reflection in the translate of H through the center of gravity");
    let map = SetMap::CogReflect { axis: Axis(1) };
    row.suite(
        &map,
        cfg,
        &[
            (Property::MeasurePreserving, Verdict::Holds),
            (Property::HSymmetricInvariant, Verdict::Holds),
            (Property::PerimeterPreserving, Verdict::Holds),
            (Property::TwoBallUnionInvariant, Verdict::Holds),
        ],
    );
    let (cone, double) = cone_fixture(&gallery_grid());
    let result = set_monotonic_violation(&map, &cone, &double);
    row.fixture(
        &map,
        Property::SetMonotonic,
        Verdict::Fails,
        Counterexample::SetPair { a: cone, b: double },
        result,
        cfg.seed,
    );
    row.finish()
}

fn closure_row(_: &GalleryConfig) -> GalleryRow {
    let mut row = RowBuilder::new("closure-of-interior", "closure of the interior");
    row.status = RowStatus::NotRepresentable;
    row.note = "not representable at grid scale: a union of closed cells is the closure of its interior, \
                so the map is the identity on grid sets and its loss of measure cannot be exhibited"
        .into();
    row.finish()
}

/// The square `[0, 1] × [-1/4, 3/4]`, which straddles `{y = 0}`.
pub fn straddling_square(grid: &Grid) -> GridSet {
    GridSet::from_fn(grid.clone(), |x| (0.0..1.0).contains(&x[0]) && (-0.25..0.75).contains(&x[1]))
}

fn near_swap_row(cfg: &GalleryConfig) -> GalleryRow {
    let mut row = RowBuilder::new("near-swap", "reflection of the points within distance 1/2 of H");
    let map = SetMap::NearSwap { hyperplane: gallery_hyperplane(), width: 0.5 };
    row.suite(
        &map,
        cfg,
        &[
            (Property::SetMonotonic, Verdict::Holds),
            (Property::MeasurePreserving, Verdict::Holds),
            (Property::HSymmetricInvariant, Verdict::Holds),
            (Property::TwoBallUnionInvariant, Verdict::Holds),
        ],
    );
    let square = straddling_square(&gallery_grid());
    let result = perimeter_violation(&map, &square);
    row.fixture(
        &map,
        Property::PerimeterPreserving,
        Verdict::Fails,
        Counterexample::Set { a: square },
        result,
        cfg.seed,
    );
    row.finish()
}

/// Runs every row; rows are computed in parallel and reported in a fixed
/// order.
pub fn build_gallery(cfg: &GalleryConfig) -> GalleryReport {
    let rows: [fn(&GalleryConfig) -> GalleryRow; 5] = [sawtooth_row, shake_row, cog_row, closure_row, near_swap_row];
    let rows: Vec<GalleryRow> = rows.par_iter().map(|row| row(cfg)).collect();
    GalleryReport { seed: cfg.seed, trials: cfg.trials, all_match: rows.iter().all(|r| r.matches), rows }
}

/// [`build_gallery`], failing with `GalleryMismatch` when a row deviates
/// from its expected verdicts.
pub fn run_gallery(cfg: &GalleryConfig) -> Result<GalleryReport> {
    let report = build_gallery(cfg);
    if report.all_match {
        Ok(report)
    } else {
        Err(SymmError::GalleryMismatch(report.mismatches().join(", ")))
    }
}
