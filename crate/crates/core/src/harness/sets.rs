//! Checks for set maps on planar grids.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::chord::{chord_move_polygon, perimeter_region};
use crate::error::{Result, SymmError};
use crate::geometry::{
    reflect_grid_set, Axis, ConvexPolygon, Grid, GridSet, OrientedHyperplane, PLContraction, Point2,
};
use crate::rearrange::SetMap;

use super::generate::{box_raster, disk_raster, polygon_raster, random_convex_polygon};
use super::report::{Counterexample, Property, PropertyReport, Violation};
use super::{not_applicable, run_trials, CheckConfig, Outcome};

/// Absolute slack for perimeter comparisons.
pub const PERIMETER_TOL: f64 = 1e-9;

pub const SET_PROPERTIES: [Property; 8] = [
    Property::SetMonotonic,
    Property::MeasurePreserving,
    Property::HSymmetricInvariant,
    Property::HSymmetricCylinderInvariant,
    Property::BallsToBalls,
    Property::RespectsHCylinders,
    Property::PerimeterPreserving,
    Property::TwoBallUnionInvariant,
];

/// Placement attempts before a trial gives up on its inputs.
const ATTEMPTS: usize = 64;

/// The map's own hyperplane, or `{x_1 = 0}` with `e_1` pointing into `H^+`
/// for maps without one.
pub fn suite_hyperplane(map: &SetMap, ndim: usize) -> OrientedHyperplane {
    map.hyperplane(ndim).unwrap_or_else(|| {
        OrientedHyperplane::axis_aligned(ndim, Axis(ndim.min(2) - 1), 0.0, true).expect("valid axis")
    })
}

fn image(map: &SetMap, a: &GridSet) -> Result<GridSet> {
    let out = map.apply(a)?;
    a.grid().ensure_same(out.grid())?;
    Ok(out)
}

/// For `A ⊆ B`: cells of `∂A` outside `∂B`.
pub fn set_monotonic_violation(map: &SetMap, a: &GridSet, b: &GridSet) -> Result<Option<Violation>> {
    let (ia, ib) = (image(map, a)?, image(map, b)?);
    let cells: Vec<usize> = ia.cells().filter(|&i| !ib.contains(i)).collect();
    Ok((!cells.is_empty()).then(|| Violation::at(cells, "image of the smaller set leaves the image of the larger")))
}

pub fn measure_violation(map: &SetMap, a: &GridSet) -> Result<Option<Violation>> {
    let ia = image(map, a)?;
    Ok((ia.count() != a.count()).then(|| Violation::new(format!("{} cells mapped to {}", a.count(), ia.count()))))
}

/// Cells where `∂A` and `A` differ.
pub fn invariance_violation(map: &SetMap, a: &GridSet) -> Result<Option<Violation>> {
    let ia = image(map, a)?;
    let cells = ia.symmetric_difference(a);
    Ok((!cells.is_empty()).then(|| Violation::at(cells, "image differs from the set")))
}

fn bounding_box(a: &GridSet) -> Option<([i64; 3], [i64; 3])> {
    let g = a.grid();
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for i in a.cells() {
        let idx = g.coords(i);
        for k in 0..g.ndim() {
            lo[k] = lo[k].min(idx[k] as i64);
            hi[k] = hi[k].max(idx[k] as i64);
        }
    }
    (lo[0] <= hi[0]).then_some((lo, hi))
}

fn translate(a: &GridSet, shift: &[i64]) -> Option<GridSet> {
    let g = a.grid();
    let n = g.ndim();
    let mut out = GridSet::empty(g.clone());
    for i in a.cells() {
        let idx = g.coords(i);
        let moved: Vec<i64> = (0..n).map(|k| idx[k] as i64 + shift[k]).collect();
        out.set(g.checked_flat_index(&moved)?, true);
    }
    Some(out)
}

/// For a disk raster `A`: `None` when `∂A` is a lattice translate of `A`.
pub fn ball_violation(map: &SetMap, a: &GridSet) -> Result<Option<Violation>> {
    let ia = image(map, a)?;
    let (Some((lo, _)), Some((ilo, _))) = (bounding_box(a), bounding_box(&ia)) else {
        return Ok(Some(Violation::new("empty image")));
    };
    let shift: Vec<i64> = (0..3).map(|k| ilo[k] - lo[k]).collect();
    Ok(match translate(a, &shift) {
        Some(moved) if moved == ia => None,
        Some(moved) => Some(Violation::at(moved.symmetric_difference(&ia), "image is not a translated ball")),
        None => Some(Violation::new("image is not a translated ball")),
    })
}

/// Lines orthogonal to `H`, keyed by the projection of cell centers onto `H`.
fn line_key(grid: &Grid, nu: &[f64], i: usize) -> Vec<i64> {
    let n = grid.ndim();
    let x = grid.center(i);
    let s: f64 = (0..n).map(|k| x[k] * nu[k]).sum();
    (0..n).map(|k| ((x[k] - s * nu[k]) / grid.spacing() * 64.0).round() as i64).collect()
}

/// Cells of `∂A` on lines orthogonal to `H` that miss `A`.
pub fn respects_cylinders_violation(map: &SetMap, h: &OrientedHyperplane, a: &GridSet) -> Result<Option<Violation>> {
    let ia = image(map, a)?;
    let g = a.grid();
    let nu = h.positive_normal();
    let lines: HashSet<Vec<i64>> = a.cells().map(|i| line_key(g, &nu, i)).collect();
    let cells: Vec<usize> = ia.cells().filter(|&i| !lines.contains(&line_key(g, &nu, i))).collect();
    Ok((!cells.is_empty()).then(|| Violation::at(cells, "image leaves the cylinder over the set")))
}

/// Grid boundary length of `∂A` against that of `A`.
pub fn perimeter_violation(map: &SetMap, a: &GridSet) -> Result<Option<Violation>> {
    let ia = image(map, a)?;
    let (before, after) = (a.grid_perimeter(), ia.grid_perimeter());
    Ok(((before - after).abs() > PERIMETER_TOL)
        .then(|| Violation::new(format!("grid perimeter {before} became {after}"))))
}

/// Exact perimeter of the chord-moved polygon against that of `K`.
pub fn polygon_perimeter_violation(u: Point2, phi: &PLContraction, k: &ConvexPolygon) -> Result<Option<Violation>> {
    let region = chord_move_polygon(k, phi, u)?;
    let (before, after) = (k.perimeter(), perimeter_region(&region));
    Ok(((before - after).abs() > PERIMETER_TOL).then(|| Violation::new(format!("perimeter {before} became {after}"))))
}

/// Re-runs a set-property counterexample.
pub fn replay_set(property: Property, map: &SetMap, ce: &Counterexample) -> Result<Option<Violation>> {
    match (property, ce) {
        (Property::SetMonotonic, Counterexample::SetPair { a, b }) => set_monotonic_violation(map, a, b),
        (Property::MeasurePreserving, Counterexample::Set { a }) => measure_violation(map, a),
        (
            Property::HSymmetricInvariant | Property::HSymmetricCylinderInvariant | Property::TwoBallUnionInvariant,
            Counterexample::Set { a },
        ) => invariance_violation(map, a),
        (Property::BallsToBalls, Counterexample::Set { a }) => ball_violation(map, a),
        (Property::RespectsHCylinders, Counterexample::Set { a }) => {
            respects_cylinders_violation(map, &suite_hyperplane(map, a.grid().ndim()), a)
        }
        (Property::PerimeterPreserving, Counterexample::Set { a }) => perimeter_violation(map, a),
        (Property::PerimeterPreserving, Counterexample::Polygon { k }) => {
            let (u, phi) = map
                .contraction()
                .ok_or_else(|| SymmError::Config(format!("{} has no chord contraction", map.name())))?;
            polygon_perimeter_violation(u, &phi, k)
        }
        (p, _) => Err(SymmError::Config(format!("no set replay for {} with this payload", p.name()))),
    }
}

/// Placement helpers for one grid and hyperplane.
struct Sampler<'a> {
    grid: &'a Grid,
    h: &'a OrientedHyperplane,
    half: f64,
    mid: [f64; 2],
}

impl<'a> Sampler<'a> {
    fn new(grid: &'a Grid, h: &'a OrientedHyperplane) -> Self {
        let s = grid.spacing();
        let w: Vec<f64> = grid.dims().iter().map(|&d| d as f64 * s / 2.0).collect();
        let o = grid.origin();
        Self { grid, h, half: w[0].min(w[1]), mid: [o[0] + w[0], o[1] + w[1]] }
    }

    fn point(&self, rng: &mut ChaCha8Rng, spread: f64) -> Point2 {
        [
            self.mid[0] + rng.gen_range(-spread..spread) * self.half,
            self.mid[1] + rng.gen_range(-spread..spread) * self.half,
        ]
    }

    /// `A` and its reflection both lie in the grid.
    fn fits(&self, a: &GridSet) -> bool {
        !a.is_empty() && reflect_grid_set(a, self.h).map_or(true, |r| r.count() == a.count())
    }

    fn retry<T>(&self, mut make: impl FnMut() -> Option<T>) -> Option<T> {
        (0..ATTEMPTS).find_map(|_| make())
    }

    fn polygon(&self, rng: &mut ChaCha8Rng) -> ConvexPolygon {
        let c = self.point(rng, 0.35);
        random_convex_polygon(rng, c, 0.12 * self.half, 0.35 * self.half)
    }

    fn convex(&self, rng: &mut ChaCha8Rng) -> Option<GridSet> {
        self.retry(|| Some(polygon_raster(self.grid, &self.polygon(rng))).filter(|a| self.fits(a)))
    }

    fn nested(&self, rng: &mut ChaCha8Rng) -> Option<(GridSet, GridSet)> {
        self.retry(|| {
            let p = self.polygon(rng);
            let q = p.scale_about(p.centroid(), rng.gen_range(1.05..1.5));
            let (a, b) = (polygon_raster(self.grid, &p), polygon_raster(self.grid, &q));
            (self.fits(&a) && self.fits(&b)).then_some((a, b))
        })
    }

    fn symmetrized(&self, a: GridSet) -> Result<Option<GridSet>> {
        let s = a.intersection(&reflect_grid_set(&a, self.h)?);
        Ok((!s.is_empty()).then_some(s))
    }

    /// `(foot on H, unit normal, direction along H)`.
    fn frame(&self) -> (Point2, Point2, Point2) {
        let n = self.h.normal();
        let nu = self.h.positive_normal();
        let foot = [n[0] * self.h.offset(), n[1] * self.h.offset()];
        (foot, [nu[0], nu[1]], [nu[1], -nu[0]])
    }

    fn symmetric(&self, rng: &mut ChaCha8Rng) -> Result<Option<GridSet>> {
        let (foot, nu, w) = self.frame();
        for _ in 0..ATTEMPTS {
            let along = rng.gen_range(-0.35..0.35) * self.half;
            let across = rng.gen_range(-0.15..0.15) * self.half;
            let c = [foot[0] + along * w[0] + across * nu[0], foot[1] + along * w[1] + across * nu[1]];
            let p = random_convex_polygon(rng, c, 0.12 * self.half, 0.35 * self.half);
            if let Some(s) = self.symmetrized(polygon_raster(self.grid, &p))? {
                if self.fits(&s) {
                    return Ok(Some(s));
                }
            }
        }
        Ok(None)
    }

    /// Rectangle with sides along `H` and `ν`, centered on `H`.
    fn cylinder(&self, rng: &mut ChaCha8Rng) -> Result<Option<GridSet>> {
        let (foot, nu, w) = self.frame();
        for _ in 0..ATTEMPTS {
            let x0 = rng.gen_range(-0.4..0.4) * self.half;
            let a = rng.gen_range(0.1..0.4) * self.half;
            let s = rng.gen_range(0.1..0.4) * self.half;
            let corner = |x: f64, y: f64| [foot[0] + x * w[0] + y * nu[0], foot[1] + x * w[1] + y * nu[1]];
            let rect =
                ConvexPolygon::hull(&[corner(x0 - a, -s), corner(x0 + a, -s), corner(x0 + a, s), corner(x0 - a, s)])?;
            if let Some(c) = self.symmetrized(polygon_raster(self.grid, &rect))? {
                if self.fits(&c) {
                    return Ok(Some(c));
                }
            }
        }
        Ok(None)
    }

    fn disk(&self, rng: &mut ChaCha8Rng, spread: f64) -> GridSet {
        let h = self.grid.spacing();
        let p = self.point(rng, spread);
        let center: Vec<i64> = (0..2).map(|k| (2.0 * (p[k] - self.grid.origin()[k]) / h).round() as i64).collect();
        let rmax = (0.3 * self.half / h).max(4.5);
        disk_raster(self.grid, &center, rng.gen_range(4.0..rmax))
    }

    fn ball(&self, rng: &mut ChaCha8Rng) -> Option<GridSet> {
        self.retry(|| Some(self.disk(rng, 0.35)).filter(|a| self.fits(a)))
    }

    /// `B ∪ B†` for a disk `B` disjoint from its reflection.
    fn two_balls(&self, rng: &mut ChaCha8Rng) -> Result<Option<GridSet>> {
        for _ in 0..ATTEMPTS {
            let b = self.disk(rng, 0.6);
            let r = reflect_grid_set(&b, self.h)?;
            if r.count() == b.count() && b.intersection(&r).is_empty() {
                return Ok(Some(b.union(&r)));
            }
        }
        Ok(None)
    }

    fn rectangle(&self, rng: &mut ChaCha8Rng) -> Option<GridSet> {
        let dims = self.grid.dims();
        self.retry(|| {
            let mut lo = [0; 2];
            let mut hi = [0; 2];
            for k in 0..2 {
                let d = dims[k] as f64;
                lo[k] = rng.gen_range((0.2 * d) as usize..(0.5 * d) as usize);
                hi[k] = rng.gen_range(lo[k] + 1..((0.8 * d) as usize).max(lo[k] + 2));
            }
            Some(box_raster(self.grid, &lo, &hi)).filter(|a| self.fits(a))
        })
    }
}

fn set_outcome(result: Result<Option<Violation>>, a: &GridSet) -> Outcome {
    Outcome::from_check(result, || Counterexample::Set { a: a.clone() })
}

fn no_input(what: &str) -> Outcome {
    Outcome::Skip(format!("could not place {what} on the grid"))
}

/// One set property over `cfg.trials` trials on `cfg.grid`, relative to
/// [`suite_hyperplane`].
pub fn check_set_property(map: &SetMap, property: Property, cfg: &CheckConfig) -> PropertyReport {
    check_set_property_about(map, property, &suite_hyperplane(map, cfg.grid.ndim()), cfg)
}

/// [`check_set_property`] relative to a given hyperplane.
pub fn check_set_property_about(
    map: &SetMap,
    property: Property,
    h: &OrientedHyperplane,
    cfg: &CheckConfig,
) -> PropertyReport {
    let grid = &cfg.grid;
    if grid.ndim() != 2 || h.dim() != 2 {
        return not_applicable(property, map.name(), cfg.seed, "set suites run on planar grids");
    }
    let contraction = map.contraction();
    let sampler = Sampler::new(grid, h);
    run_trials(property, map.name(), cfg.trials, cfg.seed, |rng| {
        let fallible = |r: Result<Option<GridSet>>, what: &str, check: &dyn Fn(&GridSet) -> Outcome| match r {
            Ok(Some(a)) => check(&a),
            Ok(None) => no_input(what),
            Err(e) => Outcome::Skip(e.to_string()),
        };
        match property {
            Property::SetMonotonic => match sampler.nested(rng) {
                Some((a, b)) => Outcome::from_check(set_monotonic_violation(map, &a, &b), || Counterexample::SetPair {
                    a: a.clone(),
                    b: b.clone(),
                }),
                None => no_input("nested sets"),
            },
            Property::MeasurePreserving => match sampler.convex(rng) {
                Some(a) => set_outcome(measure_violation(map, &a), &a),
                None => no_input("a convex set"),
            },
            Property::HSymmetricInvariant => {
                fallible(sampler.symmetric(rng), "a symmetric set", &|a| set_outcome(invariance_violation(map, a), a))
            }
            Property::HSymmetricCylinderInvariant => {
                fallible(sampler.cylinder(rng), "a cylinder", &|a| set_outcome(invariance_violation(map, a), a))
            }
            Property::TwoBallUnionInvariant => fallible(sampler.two_balls(rng), "two disjoint balls", &|a| {
                set_outcome(invariance_violation(map, a), a)
            }),
            Property::BallsToBalls => match sampler.ball(rng) {
                Some(a) => set_outcome(ball_violation(map, &a), &a),
                None => no_input("a ball"),
            },
            Property::RespectsHCylinders => match sampler.convex(rng) {
                Some(a) => set_outcome(respects_cylinders_violation(map, h, &a), &a),
                None => no_input("a convex set"),
            },
            Property::PerimeterPreserving => match &contraction {
                Some((u, phi)) => {
                    let k = sampler.polygon(rng);
                    Outcome::from_check(polygon_perimeter_violation(*u, phi, &k), || Counterexample::Polygon {
                        k: k.clone(),
                    })
                }
                None => match sampler.rectangle(rng) {
                    Some(a) => set_outcome(perimeter_violation(map, &a), &a),
                    None => no_input("a rectangle"),
                },
            },
            other => Outcome::Skip(format!("{} is not a set property", other.name())),
        }
    })
}

/// Every property in [`SET_PROPERTIES`], in that order.
pub fn check_setmap_properties(map: &SetMap, cfg: &CheckConfig) -> Vec<PropertyReport> {
    SET_PROPERTIES.iter().map(|&p| check_set_property(map, p, cfg)).collect()
}
