//! Brute-force chord movement as a union of moved translates
//! `∪_t (K_t + φ(t) u)` with `K_t = (K - t u) ∩ (K† + t u)`, sampled over `t`.
//!
//! Used as an independent check of [`super::chord_move_polygon`].

use rayon::prelude::*;

use crate::error::{Result, SymmError};
use crate::geometry::{ConvexPolygon, Frame, PLContraction, Point2};

use super::region::ChordMovedRegion;

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Sutherland-Hodgman clipping of a convex polygon by a counter-clockwise
/// convex polygon. Degenerate results (points, segments) are kept.
pub fn clip_convex(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let mut out = subject.to_vec();
    let m = clip.len();
    for e in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[e], clip[(e + 1) % m]);
        let input = std::mem::take(&mut out);
        let n = input.len();
        for i in 0..n {
            let (p, q) = (input[i], input[(i + 1) % n]);
            let (dp, dq) = (cross(a, b, p), cross(a, b, q));
            if dp >= 0.0 {
                out.push(p);
            }
            if (dp >= 0.0) != (dq >= 0.0) {
                let s = dp / (dp - dq);
                out.push([p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
            }
        }
    }
    out
}

/// Chord `(lo, hi)` of a convex vertex list at abscissa `x`.
fn vertical_chord(poly: &[Point2], x: f64) -> Option<(f64, f64)> {
    let n = poly.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let (xmin, xmax) = (a[0].min(b[0]), a[0].max(b[0]));
        if x < xmin || x > xmax {
            continue;
        }
        if a[0] == b[0] {
            lo = lo.min(a[1].min(b[1]));
            hi = hi.max(a[1].max(b[1]));
        } else {
            let y = a[1] + (x - a[0]) / (b[0] - a[0]) * (b[1] - a[1]);
            lo = lo.min(y);
            hi = hi.max(y);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Moved translates in the frame of `u`, one per sampled `t`.
#[derive(Clone, Debug)]
pub struct SampledUnion {
    pub frame: Frame,
    pub pieces: Vec<Vec<Point2>>,
    pub t_range: (f64, f64),
    pub samples: usize,
}

impl SampledUnion {
    /// Spacing between consecutive `t` samples.
    pub fn step(&self) -> f64 {
        (self.t_range.1 - self.t_range.0) / (self.samples - 1) as f64
    }

    /// Merged chord intervals of the union at `x`.
    pub fn chord_set(&self, x: f64) -> Vec<(f64, f64)> {
        let mut iv: Vec<(f64, f64)> = self.pieces.iter().filter_map(|p| vertical_chord(p, x)).collect();
        merge(&mut iv)
    }
}

fn merge(iv: &mut [(f64, f64)]) -> Vec<(f64, f64)> {
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(iv.len());
    for &(lo, hi) in iv.iter() {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Samples `t` uniformly over the range of `K` along `u` and collects
/// `K_t + φ(t) u` for every non-empty `K_t`.
pub fn union_of_translates(k: &ConvexPolygon, phi: &PLContraction, u: Point2, samples: usize) -> Result<SampledUnion> {
    if samples < 2 {
        return Err(SymmError::Config("need at least two samples".into()));
    }
    let frame = Frame::new(u)?;
    let body: Vec<Point2> = k.vertices().iter().map(|&p| frame.to_frame(p)).collect();
    // reflection in H flips the u-coordinate and the orientation
    let mirrored: Vec<Point2> = body.iter().rev().map(|p| [p[0], -p[1]]).collect();
    let lo = body.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let hi = body.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
    let mut pieces = Vec::new();
    for s in 0..samples {
        let t = lo + (hi - lo) * s as f64 / (samples - 1) as f64;
        let down: Vec<Point2> = body.iter().map(|p| [p[0], p[1] - t]).collect();
        let up: Vec<Point2> = mirrored.iter().map(|p| [p[0], p[1] + t]).collect();
        let kt = clip_convex(&down, &up);
        if kt.is_empty() {
            continue;
        }
        let shift = phi.eval(t);
        pieces.push(kt.into_iter().map(|p| [p[0], p[1] + shift]).collect());
    }
    Ok(SampledUnion { frame, pieces, t_range: (lo, hi), samples })
}

fn interval_distance(y: f64, iv: &[(f64, f64)]) -> f64 {
    iv.iter()
        .map(|&(lo, hi)| {
            if y < lo {
                lo - y
            } else if y > hi {
                y - hi
            } else {
                0.0
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn directed(xs: &[f64], from: &[Vec<(f64, f64)>], to: &[Vec<(f64, f64)>], per_chord: usize) -> f64 {
    let mut worst = 0.0f64;
    for (i, chords) in from.iter().enumerate() {
        for &(lo, hi) in chords {
            for s in 0..=per_chord {
                let y = lo + (hi - lo) * s as f64 / per_chord as f64;
                let mut best = interval_distance(y, &to[i]);
                for step in 1..xs.len() {
                    let mut any = false;
                    for j in [i.checked_sub(step), Some(i + step)].into_iter().flatten() {
                        if j >= xs.len() {
                            continue;
                        }
                        let dx = (xs[j] - xs[i]).abs();
                        if dx >= best {
                            continue;
                        }
                        any = true;
                        best = best.min(dx.hypot(interval_distance(y, &to[j])));
                    }
                    if !any {
                        break;
                    }
                }
                worst = worst.max(best);
            }
        }
    }
    worst
}

/// Hausdorff distance between the sampled union and a chord-moved region,
/// evaluated on `columns` equally spaced chords across the region's domain
/// with `per_chord` points on each interval.
///
/// Chords shrink to points at the ends of the domain, where the sampled
/// union thins out first, so extra columns are placed at geometrically
/// decreasing distances from both ends.
pub fn hausdorff_to_region(union: &SampledUnion, region: &ChordMovedRegion, columns: usize, per_chord: usize) -> f64 {
    let [a, b] = region.omega;
    let columns = columns.max(2);
    let spacing = (b - a) / (columns - 1) as f64;
    let mut xs: Vec<f64> = (0..columns).map(|i| a + spacing * i as f64).collect();
    let mut d = spacing / 2.0;
    while d > 1e-12 * (b - a) {
        xs.push(a + d);
        xs.push(b - d);
        d /= 2.0;
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let ours: Vec<Vec<(f64, f64)>> = xs.par_iter().map(|&x| union.chord_set(x)).collect();
    let theirs: Vec<Vec<(f64, f64)>> = xs.iter().map(|&x| region.chord(x).into_iter().collect()).collect();
    directed(&xs, &ours, &theirs, per_chord).max(directed(&xs, &theirs, &ours, per_chord))
}
