//! Fixtures shared by the benchmarks.

use symmkit::{ConvexPolygon, Grid, GridFunction};

/// A smooth bump with a few ripples on an `n × n` grid over `[-2, 2]^2`,
/// quantized to `levels` values.
pub fn rippled_bump(n: usize, levels: u32) -> GridFunction {
    let grid = Grid::centered(&[n, n], 4.0 / n as f64).expect("valid grid");
    GridFunction::from_fn(grid, |x| {
        let r = (x[0] - 0.4).hypot(x[1] + 0.3);
        let v = (-(r * r)).exp() * (1.0 + 0.3 * (5.0 * x[0]).sin());
        (v * levels as f64).floor()
    })
    .expect("finite values")
}

/// Regular `k`-gon of circumradius `r` centered at `c`.
pub fn regular_polygon(k: usize, r: f64, c: [f64; 2]) -> ConvexPolygon {
    let pts: Vec<[f64; 2]> = (0..k)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / k as f64 + 0.1;
            [c[0] + r * a.cos(), c[1] + r * a.sin()]
        })
        .collect();
    ConvexPolygon::new(pts).expect("convex")
}
