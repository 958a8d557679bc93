//! Deciding whether a rearrangement is one of `Id`, `†`, `P_H`, `P_H†`.
//!
//! This certifies the grid analogue only: grid functions do not separate
//! the function classes the continuum statement is made on.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};
use crate::geometry::{Axis, GridSet, OrientedHyperplane};
use crate::rearrange::{Canonical, CanonicalKind, FunctionMap, SetMap};

use super::generate::{disk_raster, trial_rng, FunctionGenerator};
use super::report::{Counterexample, Property, PropertyReport, Verdict};
use super::sets::{ball_violation, check_set_property_about};
use super::{check_equimeasurable, check_monotonic, CheckConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Identity,
    Reflection,
    Polarization,
    PolarizationReflected,
    Other,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::Other => "other",
            c => c.canonical().expect("canonical").label(),
        }
    }

    pub fn canonical(self) -> Option<CanonicalKind> {
        match self {
            Classification::Identity => Some(CanonicalKind::Identity),
            Classification::Reflection => Some(CanonicalKind::Reflection),
            Classification::Polarization => Some(CanonicalKind::Polarization),
            Classification::PolarizationReflected => Some(CanonicalKind::PolarizationReflected),
            Classification::Other => None,
        }
    }
}

impl From<CanonicalKind> for Classification {
    fn from(k: CanonicalKind) -> Self {
        match k {
            CanonicalKind::Identity => Classification::Identity,
            CanonicalKind::Reflection => Classification::Reflection,
            CanonicalKind::Polarization => Classification::Polarization,
            CanonicalKind::PolarizationReflected => Classification::PolarizationReflected,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub map: String,
    pub classification: Classification,
    pub hyperplane: OrientedHyperplane,
    /// `(t, φ(t))`: signed distance to `H` of a probe ball's center before
    /// and after the map.
    pub phi: Vec<(f64, f64)>,
    pub two_ball_union: Verdict,
    /// Input on which the map departs from every canonical map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Counterexample>,
    pub note: String,
}

/// Signed distances of the probe centers from `H`.
pub const PROBE_OFFSETS: [f64; 4] = [-0.75, -0.25, 0.25, 0.75];

/// Probe radius in cells.
pub const PROBE_RADIUS: f64 = 4.0;

fn require(report: PropertyReport) -> Result<()> {
    if report.holds() {
        return Ok(());
    }
    let detail = report.violation.map(|v| v.detail).or(report.note).unwrap_or_default();
    Err(SymmError::NotARearrangement(format!("{} {:?}: {detail}", report.property.name(), report.verdict)))
}

/// Classifies `t` relative to `h` (default `{x_1 = 0}`, `e_1` into `H^+`)
/// on the planar grid of `cfg`.
///
/// Fails with `NotARearrangement` unless `t` passes the equimeasurability
/// and monotonicity checks on nested convex functions.
pub fn classify_rearrangement(
    t: Arc<dyn FunctionMap>,
    h: Option<&OrientedHyperplane>,
    cfg: &CheckConfig,
) -> Result<ClassifyReport> {
    let grid = &cfg.grid;
    if grid.ndim() != 2 {
        return Err(SymmError::InvalidGrid("classification runs on planar grids".into()));
    }
    let convex = cfg.clone().with_generator(FunctionGenerator::NestedConvex);
    require(check_equimeasurable(&*t, &convex))?;
    require(check_monotonic(&*t, &convex))?;

    let h = match h {
        Some(h) => h.clone(),
        None => OrientedHyperplane::axis_aligned(2, Axis(1), 0.0, true)?,
    };
    let induced = SetMap::Induced(t.clone());
    let mut report = ClassifyReport {
        map: t.name(),
        classification: Classification::Other,
        hyperplane: h.clone(),
        phi: Vec::new(),
        two_ball_union: Verdict::NotApplicable,
        witness: None,
        note: String::new(),
    };

    // balls must go to translated balls; φ is read from the displacement
    let spacing = grid.spacing();
    let nu = h.positive_normal();
    let foot: Vec<f64> = h.normal().iter().map(|c| c * h.offset()).collect();
    let mut probes = Vec::new();
    for s in PROBE_OFFSETS {
        let center: Vec<i64> =
            (0..2).map(|k| (2.0 * (foot[k] + s * nu[k] - grid.origin()[k]) / spacing).round() as i64).collect();
        let disk = disk_raster(grid, &center, PROBE_RADIUS);
        if let Some(v) = ball_violation(&induced, &disk)? {
            report.note = format!("ball probe at t = {s}: {}", v.detail);
            report.witness = Some(Counterexample::Set { a: disk });
            return Ok(report);
        }
        let image = induced.apply(&disk)?;
        let (c0, c1) = (centroid(&disk), centroid(&image));
        let t0 = h.oriented_distance(&c0);
        let moved: f64 = (0..2).map(|k| (c1[k] - c0[k]) * nu[k]).sum();
        report.phi.push((t0, t0 + moved));
        probes.push(disk);
    }

    let two_ball = check_set_property_about(&induced, Property::TwoBallUnionInvariant, &h, cfg);
    report.two_ball_union = two_ball.verdict;
    if two_ball.fails() {
        report.note = "not invariant on a symmetric union of two disjoint balls".into();
        report.witness = two_ball.counterexample;
        return Ok(report);
    }

    let tol = spacing / 2.0 + 1e-9;
    let deviation = |k: CanonicalKind, &(s, p): &(f64, f64)| (p - k.contraction_value(s)).abs();
    let Some(kind) = CanonicalKind::ALL.into_iter().find(|&k| report.phi.iter().all(|e| deviation(k, e) <= tol)) else {
        // the probe farthest from every canonical contraction
        let worst = (0..probes.len())
            .max_by(|&i, &j| {
                let d = |i: usize| {
                    CanonicalKind::ALL.iter().map(|&k| deviation(k, &report.phi[i])).fold(f64::INFINITY, f64::min)
                };
                d(i).total_cmp(&d(j)).then(j.cmp(&i))
            })
            .expect("probes");
        let (s, p) = report.phi[worst];
        report.note = format!("ball at t = {s} moved to {p}, which no canonical contraction produces");
        report.witness = Some(Counterexample::Set { a: probes.swap_remove(worst) });
        return Ok(report);
    };

    let canonical = Canonical::new(kind, h.clone());
    for trial in 0..cfg.trials as u64 {
        let mut rng = trial_rng(cfg.seed, trial);
        for generator in [FunctionGenerator::NestedConvex, cfg.generator] {
            let f = generator.sample(&mut rng, grid);
            if t.apply(&f)? != canonical.apply(&f)? {
                report.note = format!("balls move as under {}, but a function does not", kind.label());
                report.witness = Some(Counterexample::Function { f });
                return Ok(report);
            }
        }
    }
    report.classification = kind.into();
    report.note = format!("agrees with {} on {} probe pairs", kind.label(), cfg.trials);
    Ok(report)
}

fn centroid(a: &GridSet) -> Vec<f64> {
    a.centroid().map_or(vec![0.0; 2], |c| c[..2].to_vec())
}
