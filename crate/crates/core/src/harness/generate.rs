//! Seeded random inputs for the property checks.
//!
//! Every function generator produces integer values, so distribution
//! profiles and `L^p` sums compare exactly.

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexPolygon, Frame, Grid, GridFunction, GridSet, Point2};

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Half-widths and center of the grid box.
fn extent(grid: &Grid) -> (Vec<f64>, Vec<f64>) {
    let h = grid.spacing();
    let half: Vec<f64> = grid.dims().iter().map(|&d| d as f64 * h / 2.0).collect();
    let mid: Vec<f64> = grid.origin().iter().zip(&half).map(|(o, w)| o + w).collect();
    (half, mid)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionGenerator {
    /// Sums of 1 to 5 ball indicators with integer weights 0 to 8.
    Blobs,
    /// [`FunctionGenerator::Blobs`] shifted down by 4, so values change sign.
    SignedBlobs,
    /// Integer-weighted sums of nested convex sets: every super-level set is
    /// convex. Suitable for maps that are only defined on convex sets.
    NestedConvex,
}

struct Ball {
    center: Vec<f64>,
    radius: f64,
    weight: f64,
}

fn random_balls(rng: &mut ChaCha8Rng, grid: &Grid, count: usize, min_weight: u32) -> Vec<Ball> {
    let (half, mid) = extent(grid);
    let scale = half.iter().copied().fold(f64::INFINITY, f64::min);
    (0..count)
        .map(|_| Ball {
            center: half.iter().zip(&mid).map(|(w, m)| m + rng.gen_range(-0.7..0.7) * w).collect(),
            radius: rng.gen_range(0.1..0.45) * scale,
            weight: rng.gen_range(min_weight..=8) as f64,
        })
        .collect()
}

fn sum_of_balls(grid: &Grid, balls: &[Ball]) -> GridFunction {
    GridFunction::from_fn(grid.clone(), |x| {
        balls
            .iter()
            .filter(|b| b.center.iter().zip(x).map(|(c, xi)| (c - xi).powi(2)).sum::<f64>() <= b.radius * b.radius)
            .map(|b| b.weight)
            .sum()
    })
    .expect("finite sums")
}

struct Nest {
    /// Base convex body: a polygon in the plane, an ellipsoid otherwise.
    polygon: Option<ConvexPolygon>,
    center: Vec<f64>,
    semi_axes: Vec<f64>,
    scales: Vec<f64>,
    weights: Vec<f64>,
}

impl Nest {
    fn random(rng: &mut ChaCha8Rng, grid: &Grid) -> Self {
        let (half, mid) = extent(grid);
        let scale = half.iter().copied().fold(f64::INFINITY, f64::min);
        let center: Vec<f64> = mid.iter().map(|m| m + rng.gen_range(-0.2..0.2) * scale).collect();
        let levels = rng.gen_range(1..=6);
        let mut scales: Vec<f64> = (0..levels).map(|_| rng.gen_range(0.2..1.0)).collect();
        scales.sort_by(|a, b| b.total_cmp(a));
        let weights = (0..levels).map(|_| rng.gen_range(1..=3) as f64).collect();
        let polygon =
            (grid.ndim() == 2).then(|| random_convex_polygon(rng, [center[0], center[1]], 0.25 * scale, 0.5 * scale));
        let semi_axes = (0..grid.ndim()).map(|_| rng.gen_range(0.2..0.5) * scale).collect();
        Self { polygon, center, semi_axes, scales, weights }
    }

    fn contains(&self, x: &[f64], s: f64) -> bool {
        match &self.polygon {
            Some(p) => {
                let c = p.centroid();
                // x ∈ c + s (P - c)  <=>  c + (x - c)/s ∈ P
                p.contains([c[0] + (x[0] - c[0]) / s, c[1] + (x[1] - c[1]) / s])
            }
            None => {
                self.center
                    .iter()
                    .zip(&self.semi_axes)
                    .zip(x)
                    .map(|((c, a), xi)| ((xi - c) / (a * s)).powi(2))
                    .sum::<f64>()
                    <= 1.0
            }
        }
    }

    fn raster(&self, grid: &Grid, grow: f64) -> GridFunction {
        GridFunction::from_fn(grid.clone(), |x| {
            self.scales.iter().zip(&self.weights).filter(|(s, _)| self.contains(x, *s * grow)).map(|(_, w)| w).sum()
        })
        .expect("finite sums")
    }
}

fn pointwise_max(f: &GridFunction, g: &GridFunction) -> GridFunction {
    let values = f.values().iter().zip(g.values()).map(|(a, b)| a.max(*b)).collect();
    GridFunction::new(f.grid().clone(), values).expect("finite")
}

impl FunctionGenerator {
    pub fn sample(&self, rng: &mut ChaCha8Rng, grid: &Grid) -> GridFunction {
        match self {
            FunctionGenerator::Blobs => {
                let n = rng.gen_range(1..=5);
                sum_of_balls(grid, &random_balls(rng, grid, n, 0))
            }
            FunctionGenerator::SignedBlobs => {
                FunctionGenerator::Blobs.sample(rng, grid).map(|v| v - 4.0).expect("finite")
            }
            FunctionGenerator::NestedConvex => Nest::random(rng, grid).raster(grid, 1.0),
        }
    }

    /// A pair `f <= g`.
    pub fn sample_ordered(&self, rng: &mut ChaCha8Rng, grid: &Grid) -> (GridFunction, GridFunction) {
        match self {
            FunctionGenerator::Blobs | FunctionGenerator::SignedBlobs => {
                let f = self.sample(rng, grid);
                let extra = rng.gen_range(1..=3);
                let bump = sum_of_balls(grid, &random_balls(rng, grid, extra, 1));
                let g =
                    GridFunction::new(grid.clone(), f.values().iter().zip(bump.values()).map(|(a, b)| a + b).collect())
                        .expect("finite");
                (f, g)
            }
            FunctionGenerator::NestedConvex => {
                let nest = Nest::random(rng, grid);
                let f = nest.raster(grid, 1.0);
                let g = nest.raster(grid, rng.gen_range(1.05..1.3));
                let g = pointwise_max(&f, &g);
                (f, g)
            }
        }
    }

    /// Two independent samples.
    pub fn sample_pair(&self, rng: &mut ChaCha8Rng, grid: &Grid) -> (GridFunction, GridFunction) {
        (self.sample(rng, grid), self.sample(rng, grid))
    }
}

/// Convex hull of 3 to 8 points at random angles around `center`, with radii
/// in `[rmin, rmax]`.
pub fn random_convex_polygon(rng: &mut ChaCha8Rng, center: Point2, rmin: f64, rmax: f64) -> ConvexPolygon {
    loop {
        let k = rng.gen_range(3..=8);
        let pts: Vec<Point2> = (0..k)
            .map(|_| {
                let a = rng.gen_range(0.0..TAU);
                let r = rng.gen_range(rmin..=rmax);
                [center[0] + r * a.cos(), center[1] + r * a.sin()]
            })
            .collect();
        if let Ok(p) = ConvexPolygon::hull(&pts) {
            if p.area() > 1e-3 * rmax * rmax {
                return p;
            }
        }
    }
}

/// A random convex polygon symmetric about the line `u^⊥` through the
/// origin, with its projection onto that line centered at `x0`.
pub fn random_symmetric_polygon(rng: &mut ChaCha8Rng, u: Point2, x0: f64, rmin: f64, rmax: f64) -> ConvexPolygon {
    let frame = Frame::new(u).expect("non-zero direction");
    loop {
        let k = rng.gen_range(2..=5);
        let mut pts = Vec::with_capacity(2 * k);
        for _ in 0..k {
            let a = rng.gen_range(0.0..TAU / 2.0);
            let r = rng.gen_range(rmin..=rmax);
            let (x, y) = (x0 + r * a.cos(), r * a.sin());
            pts.push(frame.from_frame([x, y]));
            pts.push(frame.from_frame([x, -y]));
        }
        if let Ok(p) = ConvexPolygon::hull(&pts) {
            if p.area() > 1e-3 * rmax * rmax {
                return p;
            }
        }
    }
}

/// Cells whose centers lie in `p`.
pub fn polygon_raster(grid: &Grid, p: &ConvexPolygon) -> GridSet {
    GridSet::from_fn(grid.clone(), |x| p.contains([x[0], x[1]]))
}

/// Doubled lattice coordinates `2 (x - origin) / h` of a point, when they are
/// integers (cell centers are odd, cell corners even).
pub fn doubled_coords(grid: &Grid, x: &[f64]) -> Option<Vec<i64>> {
    let h = grid.spacing();
    x.iter()
        .zip(grid.origin())
        .map(|(xi, o)| {
            let d = 2.0 * (xi - o) / h;
            let r = d.round();
            ((d - r).abs() < 1e-9).then_some(r as i64)
        })
        .collect()
}

/// Cells whose centers lie in the closed ball of radius `radius` (in cells)
/// about a lattice point given in doubled coordinates. Integer arithmetic
/// keeps the raster exactly symmetric about its center.
pub fn disk_raster(grid: &Grid, center: &[i64], radius: f64) -> GridSet {
    let r2 = (2.0 * radius).powi(2);
    let n = grid.ndim();
    let mask = (0..grid.len())
        .map(|i| {
            let idx = grid.coords(i);
            let d2: i64 = (0..n).map(|k| (2 * idx[k] as i64 + 1 - center[k]).pow(2)).sum();
            d2 as f64 <= r2
        })
        .collect();
    GridSet::new(grid.clone(), mask).expect("sized mask")
}

/// Cells with `lo[k] <= index_k <= hi[k]` on every axis.
pub fn box_raster(grid: &Grid, lo: &[usize], hi: &[usize]) -> GridSet {
    let n = grid.ndim();
    let mask = (0..grid.len())
        .map(|i| {
            let idx = grid.coords(i);
            (0..n).all(|k| idx[k] >= lo[k] && idx[k] <= hi[k])
        })
        .collect();
    GridSet::new(grid.clone(), mask).expect("sized mask")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(7, 3).gen();
        let b: u64 = trial_rng(7, 3).gen();
        let c: u64 = trial_rng(7, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn ordered_pairs_are_ordered_and_integer() {
        let g = Grid::centered(&[32, 32], 0.125).unwrap();
        for gen in [FunctionGenerator::Blobs, FunctionGenerator::SignedBlobs, FunctionGenerator::NestedConvex] {
            for t in 0..10 {
                let (f, h) = gen.sample_ordered(&mut trial_rng(1, t), &g);
                assert!(f.le(&h));
                assert!(f.values().iter().all(|v| v.fract() == 0.0));
            }
        }
    }

    #[test]
    fn nested_convex_levels_have_contiguous_columns() {
        let g = Grid::centered(&[32, 32], 0.125).unwrap();
        for t in 0..10 {
            let f = FunctionGenerator::NestedConvex.sample(&mut trial_rng(2, t), &g);
            for level in f.levels() {
                let a = f.super_level_set(level, false);
                for axis in 0..2 {
                    for start in g.column_starts(crate::geometry::Axis(axis)) {
                        let hits: Vec<usize> = g
                            .column(crate::geometry::Axis(axis), start)
                            .enumerate()
                            .filter(|(_, i)| a.contains(*i))
                            .map(|(k, _)| k)
                            .collect();
                        if let (Some(first), Some(last)) = (hits.first(), hits.last()) {
                            assert_eq!(last - first + 1, hits.len());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn disks_are_symmetric() {
        let g = Grid::centered(&[16, 16], 0.25).unwrap();
        let c = doubled_coords(&g, &[0.5, -0.25]).unwrap();
        let d = disk_raster(&g, &c, 5.0);
        let h = crate::geometry::OrientedHyperplane::new(vec![0.0, 1.0], -0.25, true).unwrap();
        assert_eq!(crate::geometry::reflect_grid_set(&d, &h).unwrap(), d);
        assert!(doubled_coords(&g, &[0.1, 0.0]).is_none());
    }
}
