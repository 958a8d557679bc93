//! Oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use symmkit::{ConvexPolygon, PLContraction, Point2};

pub const TOL: f64 = 1e-9;

/// Random contraction with knots every half unit on `[-3, 3]`.
pub fn random_contraction(rng: &mut ChaCha8Rng, eikonal: bool) -> PLContraction {
    let mut pts = vec![(-3.0, rng.gen_range(-1.0..1.0))];
    for k in 1..=12 {
        let slope: f64 = if eikonal {
            if rng.gen() {
                1.0
            } else {
                -1.0
            }
        } else {
            rng.gen_range(-1.0..=1.0)
        };
        let (t, p) = pts[k - 1];
        pts.push((t + 0.5, p + 0.5 * slope));
    }
    PLContraction::new(pts).unwrap()
}

/// Chord of a polygon at `x` along `u`, or `None` off its projection.
pub fn chord(k: &ConvexPolygon, u: Point2, x: f64) -> Option<(f64, f64)> {
    k.chord(u, x).unwrap()
}

pub fn sample_xs(omega: [f64; 2], n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |i| omega[0] + (omega[1] - omega[0]) * i as f64 / n as f64)
}

pub fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() <= TOL && (a.1 - b.1).abs() <= TOL
}

/// `P_H` on one chord `I` with mirror image `J`: `(I ∪ J) ∩ {t >= 0}`
/// together with `I ∩ J ∩ {t < 0}`. For convex bodies this is one interval.
pub fn polarized_chord((lo, hi): (f64, f64)) -> (f64, f64) {
    let (mlo, mhi) = (-hi, -lo);
    let mut pieces = Vec::new();
    for (a, b) in [(lo, hi), (mlo, mhi)] {
        if b >= 0.0 {
            pieces.push((a.max(0.0), b));
        }
    }
    let (ilo, ihi) = (lo.max(mlo), hi.min(mhi));
    if ilo <= ihi && ilo < 0.0 {
        pieces.push((ilo, ihi.min(0.0)));
    }
    let a = pieces.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let b = pieces.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    (a, b)
}

/// Vertex sets agree up to `tol` in both directions.
pub fn same_vertices(a: &ConvexPolygon, b: &ConvexPolygon, tol: f64) -> bool {
    let near = |p: &Point2, q: &ConvexPolygon| q.vertices().iter().any(|w| (p[0] - w[0]).hypot(p[1] - w[1]) <= tol);
    a.vertices().iter().all(|p| near(p, b)) && b.vertices().iter().all(|p| near(p, a))
}
