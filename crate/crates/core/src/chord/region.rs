//! Exact chord movement of convex polygons.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};
use crate::geometry::{ConvexPolygon, Frame, PLContraction, PlGraph, Point2};

/// Relative slack for convexity of the boundary graphs.
pub const CONVEXITY_SLACK: f64 = 1e-9;

/// Breakpoints closer than this fraction of the domain width are merged.
pub const BREAKPOINT_MERGE: f64 = 1e-12;

/// A planar region given chordwise: over every `x` in `omega` its
/// intersection with the line through `x` parallel to `u` is the segment
/// from `g^-(x)` to `g^+(x)` along `u`. Coordinates are in the frame of `u`
/// (see [`Frame`]).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChordMovedRegion {
    pub u: Point2,
    pub omega: [f64; 2],
    pub gplus: Vec<Point2>,
    pub gminus: Vec<Point2>,
}

impl ChordMovedRegion {
    /// Checks shape: matching abscissae covering `omega`, `g^- <= g^+`.
    pub fn validate(&self) -> Result<()> {
        Frame::new(self.u)?;
        for g in [&self.gplus, &self.gminus] {
            PlGraph::new(g.clone())?;
            if g[0][0] != self.omega[0] || g[g.len() - 1][0] != self.omega[1] {
                return Err(SymmError::InvalidPolygon("graphs must span omega".into()));
            }
        }
        if self.gplus.len() != self.gminus.len()
            || self.gplus.iter().zip(&self.gminus).any(|(p, m)| p[0] != m[0] || p[1] < m[1])
        {
            return Err(SymmError::InvalidPolygon("need g- <= g+ on shared breakpoints".into()));
        }
        Ok(())
    }

    pub fn frame(&self) -> Frame {
        Frame::new(self.u).expect("validated direction")
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.gplus.iter().map(|p| p[0])
    }

    /// `(g^-(x), g^+(x))` for `x` in `omega`.
    pub fn chord(&self, x: f64) -> Option<(f64, f64)> {
        if x < self.omega[0] || x > self.omega[1] {
            return None;
        }
        Some((interp(&self.gminus, x), interp(&self.gplus, x)))
    }

    pub fn contains(&self, p: Point2) -> bool {
        let q = self.frame().to_frame(p);
        self.chord(q[0]).is_some_and(|(lo, hi)| q[1] >= lo && q[1] <= hi)
    }

    pub fn area(&self) -> f64 {
        self.gplus
            .windows(2)
            .zip(self.gminus.windows(2))
            .map(|(p, m)| (p[1][0] - p[0][0]) * ((p[0][1] - m[0][1]) + (p[1][1] - m[1][1])) / 2.0)
            .sum()
    }

    /// Upper and lower chains: `g^+` traversed left to right and `g^-`.
    pub fn graph_length(&self) -> f64 {
        arc(&self.gplus) + arc(&self.gminus)
    }

    /// `g^+` concave and `g^-` convex, up to [`CONVEXITY_SLACK`].
    pub fn is_convex(&self) -> bool {
        let slopes =
            |g: &[Point2]| -> Vec<f64> { g.windows(2).map(|w| (w[1][1] - w[0][1]) / (w[1][0] - w[0][0])).collect() };
        let (sp, sm) = (slopes(&self.gplus), slopes(&self.gminus));
        let scale = sp.iter().chain(&sm).fold(1.0f64, |m, s| m.max(s.abs()));
        let tol = CONVEXITY_SLACK * scale;
        sp.windows(2).all(|w| w[1] <= w[0] + tol) && sm.windows(2).all(|w| w[1] >= w[0] - tol)
    }

    /// Converts a convex region back to vertex form in world coordinates.
    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        if !self.is_convex() {
            return Err(SymmError::InvalidPolygon("region is not convex".into()));
        }
        let frame = self.frame();
        let pts: Vec<Point2> = self.gminus.iter().chain(self.gplus.iter()).map(|&q| frame.from_frame(q)).collect();
        ConvexPolygon::hull(&pts)
    }
}

fn interp(g: &[Point2], x: f64) -> f64 {
    let k = g.partition_point(|q| q[0] <= x);
    if k == 0 {
        return g[0][1];
    }
    if k == g.len() {
        return g[g.len() - 1][1];
    }
    let (a, b) = (g[k - 1], g[k]);
    a[1] + (x - a[0]) / (b[0] - a[0]) * (b[1] - a[1])
}

fn arc(g: &[Point2]) -> f64 {
    g.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum()
}

/// Moves every chord of `k` parallel to `u` so that its midpoint `t` goes to
/// `phi(t)`.
///
/// The output breakpoints are the union of the polygon's own breakpoints
/// and the abscissae where the chord midpoint crosses a knot of `phi`, so
/// both output graphs are exactly piecewise linear.
pub fn chord_move_polygon(k: &ConvexPolygon, phi: &PLContraction, u: Point2) -> Result<ChordMovedRegion> {
    if k.area() <= 0.0 {
        return Err(SymmError::DegenerateBody);
    }
    let profile = k.chord_profile(u)?;
    let base = profile.breakpoints();
    let knots: Vec<f64> = phi.knots().collect();
    let mut xs = base.clone();
    for w in base.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (t0, t1) = (profile.midpoint(x0), profile.midpoint(x1));
        if t0 == t1 {
            continue;
        }
        let (tlo, thi) = (t0.min(t1), t0.max(t1));
        for &tau in &knots {
            if tau > tlo && tau < thi {
                let x = x0 + (tau - t0) / (t1 - t0) * (x1 - x0);
                if x > x0 && x < x1 {
                    xs.push(x);
                }
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    // the two chains of a symmetric body can disagree in the last bits; a
    // sliver segment between such twins has meaningless slope
    let (a, b) = profile.domain();
    let eps = BREAKPOINT_MERGE * (b - a);
    xs.dedup_by(|next, prev| *next - *prev <= eps);
    if let Some(last) = xs.last_mut() {
        *last = b;
    }

    let mut gplus = Vec::with_capacity(xs.len());
    let mut gminus = Vec::with_capacity(xs.len());
    for &x in &xs {
        let (lo, hi) = profile.chord(x);
        let mid = phi.eval((lo + hi) / 2.0);
        let half = (hi - lo) / 2.0;
        gplus.push([x, mid + half]);
        gminus.push([x, mid - half]);
    }
    Ok(ChordMovedRegion { u: profile.frame.u, omega: [a, b], gplus, gminus })
}

/// Exact perimeter: both graphs plus the chords over the ends of `omega`.
pub fn perimeter_region(r: &ChordMovedRegion) -> f64 {
    let n = r.gplus.len();
    let ends = (r.gplus[0][1] - r.gminus[0][1]) + (r.gplus[n - 1][1] - r.gminus[n - 1][1]);
    r.graph_length() + ends
}

/// `K` itself in chordwise form.
pub fn region_of_polygon(k: &ConvexPolygon, u: Point2) -> Result<ChordMovedRegion> {
    chord_move_polygon(k, &PLContraction::identity(), u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn unit_square_perimeter() {
        let r = region_of_polygon(&square(), [0.0, 1.0]).unwrap();
        assert_eq!(r.omega, [0.0, 1.0]);
        assert_eq!(perimeter_region(&r), 4.0);
        assert_eq!(r.area(), 1.0);
        assert!(r.is_convex());
        r.validate().unwrap();
    }

    #[test]
    fn pulls_back_contraction_knots() {
        // midpoints of the triangle's chords run from 0 to 0.5 across x in [0,1]
        let tri = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]).unwrap();
        let phi = PLContraction::new(vec![(0.0, 0.0), (0.25, 0.25), (1.0, 0.25)]).unwrap();
        let r = chord_move_polygon(&tri, &phi, [0.0, 1.0]).unwrap();
        let xs: Vec<f64> = r.breakpoints().collect();
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);
        assert_eq!(r.gplus[2], [1.0, 0.75]);
        assert_eq!(r.gminus[2], [1.0, -0.25]);
    }

    #[test]
    fn degenerate_is_rejected() {
        let k = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]).unwrap().scale_about([0.0, 0.0], 0.0);
        assert!(chord_move_polygon(&k, &PLContraction::identity(), [0.0, 1.0]).is_err());
    }
}
