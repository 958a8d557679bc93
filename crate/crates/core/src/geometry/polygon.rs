//! Exact planar convex bodies in vertex form and their chord structure.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};

pub type Point2 = [f64; 2];

/// Minimum cross product of consecutive edges.
pub const CONVEXITY_TOL: f64 = 1e-12;

/// Relative gap below which two vertex abscissae count as one.
pub const ABSCISSA_SNAP: f64 = 1e-12;

/// Orthonormal frame `(w, u)` for a direction `u`: `w = (u_y, -u_x)` spans
/// `H = u^⊥`. A point `p` has frame coordinates `(p·w, p·u)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub w: Point2,
    pub u: Point2,
}

impl Frame {
    pub fn new(u: Point2) -> Result<Self> {
        let n = (u[0] * u[0] + u[1] * u[1]).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(SymmError::InvalidHyperplane("direction must be a non-zero vector".into()));
        }
        let u = [u[0] / n, u[1] / n];
        Ok(Self { w: [u[1], -u[0]], u })
    }

    pub fn to_frame(&self, p: Point2) -> Point2 {
        [p[0] * self.w[0] + p[1] * self.w[1], p[0] * self.u[0] + p[1] * self.u[1]]
    }

    pub fn from_frame(&self, q: Point2) -> Point2 {
        [q[0] * self.w[0] + q[1] * self.u[0], q[0] * self.w[1] + q[1] * self.u[1]]
    }
}

/// Strictly convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonFile", into = "PolygonFile")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<Point2>,
}

impl TryFrom<PolygonFile> for ConvexPolygon {
    type Error = SymmError;
    fn try_from(f: PolygonFile) -> Result<Self> {
        Self::new(f.vertices)
    }
}

impl From<ConvexPolygon> for PolygonFile {
    fn from(p: ConvexPolygon) -> Self {
        Self { vertices: p.vertices }
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(SymmError::InvalidPolygon(format!("{} vertices", vertices.len())));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(SymmError::InvalidPolygon("non-finite vertex".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            let c = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if c <= CONVEXITY_TOL {
                return Err(SymmError::InvalidPolygon(format!(
                    "turn at vertex {} has cross product {c:e}; vertices must be counter-clockwise and strictly convex",
                    (i + 1) % n
                )));
            }
        }
        // Local left turns everywhere still allow a winding number > 1.
        let turning: f64 = (0..n)
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = vertices[(i + 2) % n];
                let e1 = [b[0] - a[0], b[1] - a[1]];
                let e2 = [c[0] - b[0], c[1] - b[1]];
                (e1[0] * e2[1] - e1[1] * e2[0]).atan2(e1[0] * e2[0] + e1[1] * e2[1])
            })
            .sum();
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(SymmError::InvalidPolygon("polygon winds more than once".into()));
        }
        Ok(Self { vertices })
    }

    /// Convex hull of `points`, dropping collinear and duplicate points.
    pub fn hull(points: &[Point2]) -> Result<Self> {
        let mut pts: Vec<Point2> = points.to_vec();
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        pts.dedup();
        if pts.len() < 3 {
            return Err(SymmError::InvalidPolygon("hull needs three distinct points".into()));
        }
        let mut lower: Vec<Point2> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= CONVEXITY_TOL {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point2> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= CONVEXITY_TOL {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                a[0] * b[1] - a[1] * b[0]
            })
            .sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                (b[0] - a[0]).hypot(b[1] - a[1])
            })
            .sum()
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        let mut c = [0.0, 0.0];
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let w = a[0] * b[1] - a[1] * b[0];
            c[0] += (a[0] + b[0]) * w;
            c[1] += (a[1] + b[1]) * w;
        }
        let k = 1.0 / (6.0 * self.area());
        [c[0] * k, c[1] * k]
    }

    pub fn translate(&self, d: Point2) -> Self {
        Self { vertices: self.vertices.iter().map(|p| [p[0] + d[0], p[1] + d[1]]).collect() }
    }

    /// Reflection in the line `u^⊥` through the origin.
    pub fn reflect(&self, u: Point2) -> Result<Self> {
        let frame = Frame::new(u)?;
        let mut vertices: Vec<Point2> = self
            .vertices
            .iter()
            .map(|&p| {
                let q = frame.to_frame(p);
                frame.from_frame([q[0], -q[1]])
            })
            .collect();
        vertices.reverse();
        Ok(Self { vertices })
    }

    /// Image under `p -> c + s (p - c)`, `s > 0`.
    pub fn scale_about(&self, c: Point2, s: f64) -> Self {
        Self { vertices: self.vertices.iter().map(|p| [c[0] + s * (p[0] - c[0]), c[1] + s * (p[1] - c[1])]).collect() }
    }

    pub fn contains(&self, p: Point2) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0.0)
    }

    /// Vertices in frame coordinates, with abscissae that agree to within
    /// [`ABSCISSA_SNAP`] of the width snapped together, so sides parallel to
    /// `u` come out exactly vertical.
    fn frame_coords(&self, frame: &Frame) -> Vec<Point2> {
        let mut q: Vec<Point2> = self.vertices.iter().map(|&p| frame.to_frame(p)).collect();
        let mut xs: Vec<f64> = q.iter().map(|p| p[0]).collect();
        xs.sort_by(f64::total_cmp);
        let eps = ABSCISSA_SNAP * (xs[xs.len() - 1] - xs[0]);
        let mut reps: Vec<f64> = Vec::with_capacity(xs.len());
        for x in xs {
            match reps.last() {
                Some(&r) if x - r <= eps => {}
                _ => reps.push(x),
            }
        }
        for p in &mut q {
            let k = reps.partition_point(|&r| r <= p[0]);
            p[0] = reps[k - 1];
        }
        q
    }

    /// Intersection with the line `{p : p·w = x}` in the frame of `u`, as
    /// extents `(lo, hi)` along `u`, or `None` when the line misses.
    pub fn chord(&self, u: Point2, x: f64) -> Result<Option<(f64, f64)>> {
        let frame = Frame::new(u)?;
        let q = self.frame_coords(&frame);
        let n = q.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let (a, b) = (q[i], q[(i + 1) % n]);
            let (xmin, xmax) = if a[0] <= b[0] { (a[0], b[0]) } else { (b[0], a[0]) };
            if x < xmin || x > xmax {
                continue;
            }
            if a[0] == b[0] {
                lo = lo.min(a[1].min(b[1]));
                hi = hi.max(a[1].max(b[1]));
            } else {
                let s = a[1] + (x - a[0]) / (b[0] - a[0]) * (b[1] - a[1]);
                lo = lo.min(s);
                hi = hi.max(s);
            }
        }
        Ok((lo <= hi).then_some((lo, hi)))
    }

    /// Upper and lower boundary graphs over `K|H` in the frame of `u`.
    pub fn chord_profile(&self, u: Point2) -> Result<ChordProfile> {
        let frame = Frame::new(u)?;
        let q = self.frame_coords(&frame);
        let n = q.len();
        let by_xs = |a: &Point2, b: &Point2| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]));
        let left_low = (0..n).min_by(|&i, &j| by_xs(&q[i], &q[j])).unwrap();
        let right_high = (0..n).max_by(|&i, &j| by_xs(&q[i], &q[j])).unwrap();

        // Counter-clockwise in a right-handed frame: bottom chain runs left to
        // right, top chain right to left.
        let mut lower = vec![q[left_low]];
        let mut i = left_low;
        loop {
            let next = (i + 1) % n;
            if q[next][0] <= q[i][0] {
                break;
            }
            lower.push(q[next]);
            i = next;
        }
        let mut upper = vec![q[right_high]];
        let mut i = right_high;
        loop {
            let next = (i + 1) % n;
            if q[next][0] >= q[i][0] {
                break;
            }
            upper.push(q[next]);
            i = next;
        }
        upper.reverse();
        Ok(ChordProfile { frame, upper: PlGraph::new(upper)?, lower: PlGraph::new(lower)? })
    }
}

/// Continuous piecewise-linear graph over a closed interval, with strictly
/// increasing abscissae.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlGraph {
    points: Vec<Point2>,
}

impl PlGraph {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.len() < 2 {
            return Err(SymmError::InvalidBreakpoints("a graph needs two points".into()));
        }
        if points.windows(2).any(|w| !(w[0][0] < w[1][0])) {
            return Err(SymmError::InvalidBreakpoints("abscissae must increase strictly".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.points[0][0], self.points[self.points.len() - 1][0])
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p[0])
    }

    /// Linear interpolation; clamps to the end values outside the domain.
    pub fn eval(&self, x: f64) -> f64 {
        let p = &self.points;
        let k = p.partition_point(|q| q[0] <= x);
        if k == 0 {
            return p[0][1];
        }
        if k == p.len() {
            return p[p.len() - 1][1];
        }
        let (a, b) = (p[k - 1], p[k]);
        a[1] + (x - a[0]) / (b[0] - a[0]) * (b[1] - a[1])
    }

    /// Euclidean length of the graph.
    pub fn arc_length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum()
    }
}

/// Top and bottom boundary graphs `f^+`, `f^-` of a convex body over its
/// projection `K|H`, in frame coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ChordProfile {
    pub frame: Frame,
    pub upper: PlGraph,
    pub lower: PlGraph,
}

impl ChordProfile {
    pub fn domain(&self) -> (f64, f64) {
        (self.lower.points()[0][0], self.lower.points()[self.lower.points().len() - 1][0])
    }

    /// Sorted union of both chains' breakpoints.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self.upper.xs().chain(self.lower.xs()).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }

    /// `(f^-(x), f^+(x))`.
    pub fn chord(&self, x: f64) -> (f64, f64) {
        (self.lower.eval(x), self.upper.eval(x))
    }

    /// Chord midpoint `t_x = (f^+(x) + f^-(x)) / 2`.
    pub fn midpoint(&self, x: f64) -> f64 {
        let (lo, hi) = self.chord(x);
        (hi + lo) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn rejects_clockwise_and_collinear() {
        assert!(ConvexPolygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).is_err());
        assert!(ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 1.0]]).is_err());
        assert!(ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0]]).is_err());
    }

    #[test]
    fn area_and_perimeter() {
        let s = square();
        assert_eq!(s.area(), 1.0);
        assert_eq!(s.perimeter(), 4.0);
        assert_eq!(s.centroid(), [0.5, 0.5]);
    }

    #[test]
    fn chord_examples() {
        let s = square();
        assert_eq!(s.chord([0.0, 1.0], 0.5).unwrap(), Some((0.0, 1.0)));
        assert_eq!(s.chord([0.0, 1.0], 1.5).unwrap(), None);
        let tri = ConvexPolygon::new(vec![[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]).unwrap();
        let (lo, hi) = tri.chord([0.0, 1.0], 1.0).unwrap().unwrap();
        assert_eq!((lo, hi), (0.0, 1.0));
        assert_eq!((lo + hi) / 2.0, 0.5);
        // vertical edge at the left end
        assert_eq!(tri.chord([0.0, 1.0], 0.0).unwrap(), Some((0.0, 2.0)));
        // degenerate chord at the right vertex
        assert_eq!(tri.chord([0.0, 1.0], 2.0).unwrap(), Some((0.0, 0.0)));
    }

    #[test]
    fn profile_matches_chords() {
        let p = ConvexPolygon::hull(&[[0.3, -1.0], [2.0, 0.1], [1.1, 1.7], [-0.9, 0.8], [-1.2, -0.4]]).unwrap();
        for u in [[0.0, 1.0], [0.6, 0.8], [-1.0, 0.2]] {
            let prof = p.chord_profile(u).unwrap();
            let (a, b) = prof.domain();
            for k in 0..=20 {
                let x = a + (b - a) * k as f64 / 20.0;
                let (lo, hi) = p.chord(u, x).unwrap().unwrap();
                let (plo, phi) = prof.chord(x);
                assert!((lo - plo).abs() < 1e-12 && (hi - phi).abs() < 1e-12, "u={u:?} x={x}");
            }
        }
    }

    #[test]
    fn sides_parallel_to_u_stay_vertical() {
        // a rotated rectangle: in the frame of its long side the short sides
        // project to single abscissae only up to rounding
        for k in 1..40 {
            let a = 0.157 * k as f64;
            let (c, s) = (a.cos(), a.sin());
            let corners = [[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]];
            let p = ConvexPolygon::new(corners.iter().map(|q| [q[0] * c - q[1] * s, q[0] * s + q[1] * c]).collect())
                .unwrap();
            let prof = p.chord_profile([-s, c]).unwrap();
            let (lo, hi) = prof.domain();
            assert!((hi - lo - 2.0).abs() < 1e-12);
            for x in [lo, hi] {
                let (a, b) = prof.chord(x);
                assert!((b - a - 1.0).abs() < 1e-12, "angle {a}");
                let (a, b) = p.chord([-s, c], x).unwrap().unwrap();
                assert!((b - a - 1.0).abs() < 1e-12, "angle {a}");
            }
        }
    }

    #[test]
    fn reflection_keeps_orientation_valid() {
        let p = ConvexPolygon::new(vec![[0.0, 0.5], [1.0, 0.2], [0.4, 2.0]]).unwrap();
        let r = p.reflect([0.0, 1.0]).unwrap();
        assert_eq!(r.vertices()[0], [0.4, -2.0]);
        assert!((r.area() - p.area()).abs() < 1e-15);
    }

    #[test]
    fn frame_round_trip() {
        let f = Frame::new([3.0, -4.0]).unwrap();
        let p = [1.25, -7.5];
        let q = f.from_frame(f.to_frame(p));
        assert!((q[0] - p[0]).abs() < 1e-14 && (q[1] - p[1]).abs() < 1e-14);
        // right-handed: u = (0,1) gives w = (1,0)
        assert_eq!(Frame::new([0.0, 1.0]).unwrap().w, [1.0, 0.0]);
    }
}
