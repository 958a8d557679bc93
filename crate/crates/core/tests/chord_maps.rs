use proptest::prelude::*;
use rand::Rng;
use symmkit::chord::*;
use symmkit::harness::{random_convex_polygon, random_symmetric_polygon, trial_rng};
use symmkit::*;

mod common;

use common::{chord, close, polarized_chord, random_contraction, sample_xs, TOL};

fn unit(angle: f64) -> Point2 {
    [angle.cos(), angle.sin()]
}

#[test]
fn canonical_contractions_match_their_maps() {
    for trial in 0..50 {
        let mut rng = trial_rng(11, trial);
        let u = unit(rng.gen_range(0.0..std::f64::consts::TAU));
        let center = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let k = random_convex_polygon(&mut rng, center, 0.3, 1.2);
        for name in CANONICAL_NAMES {
            let phi = canonical_contraction(name, 4.0).unwrap();
            let r = chord_move_polygon(&k, &phi, u).unwrap();
            for x in sample_xs(r.omega, 200) {
                let Some(c) = chord(&k, u, x) else { continue };
                let expected = match name {
                    "id" => c,
                    "neg" => (-c.1, -c.0),
                    "abs" => polarized_chord(c),
                    _ => {
                        let p = polarized_chord(c);
                        (-p.1, -p.0)
                    }
                };
                let got = r.chord(x).unwrap();
                assert!(close(got, expected), "trial {trial} {name} x={x}: {got:?} vs {expected:?}");
            }
        }
    }
}

#[test]
fn sawtooth_separates_from_canonicals_on_balls() {
    let u = [0.0, 1.0];
    let ball = regular(24, 0.2).translate([0.0, 0.75]);
    let saw = sawtooth_contraction(1.0, -3.0, 3.0).unwrap();
    let moved = chord_move_polygon(&ball, &saw, u).unwrap().to_polygon().unwrap();
    assert!((moved.centroid()[1] - 0.25).abs() < TOL);
    for name in CANONICAL_NAMES {
        let r = chord_move_polygon(&ball, &canonical_contraction(name, 4.0).unwrap(), u).unwrap();
        let c = r.to_polygon().unwrap().centroid()[1];
        assert!((c.abs() - 0.75).abs() < TOL, "{name}: {c}");
    }
}

fn regular(k: usize, r: f64) -> ConvexPolygon {
    let pts = (0..k).map(|i| {
        let a = std::f64::consts::TAU * i as f64 / k as f64;
        [r * a.cos(), r * a.sin()]
    });
    ConvexPolygon::new(pts.collect()).unwrap()
}

#[test]
fn wedge_graph_lengths() {
    let (t, r) = (1.0, 0.5);
    // x_1 in [t - r, t + r], 0 <= x_2 <= 2 x_1
    let wedge =
        ConvexPolygon::new(vec![[t - r, 0.0], [t + r, 0.0], [t + r, 2.0 * (t + r)], [t - r, 2.0 * (t - r)]]).unwrap();
    let u = [0.0, 1.0];
    let plain = region_of_polygon(&wedge, u).unwrap();
    let s5 = 5f64.sqrt();
    assert!((plain.graph_length() - (s5 + 1.0) * 2.0 * r).abs() < TOL);
    let full = s5 * 2.0 * r + 2.0 * r + 2.0 * (t - r) + 2.0 * (t + r);
    assert!((perimeter_region(&plain) - full).abs() < TOL);
    assert!((wedge.perimeter() - full).abs() < TOL);

    let half = PLContraction::affine(0.5, 0.0).unwrap();
    let moved = chord_move_polygon(&wedge, &half, u).unwrap();
    let expected = (3.25f64.sqrt() + 1.25f64.sqrt()) * 2.0 * r;
    assert!((moved.graph_length() - expected).abs() < TOL);
    assert!(moved.graph_length() < plain.graph_length());

    // every chord midpoint is positive, so |t| changes nothing
    let abs = chord_move_polygon(&wedge, &canonical_contraction("abs", 4.0).unwrap(), u).unwrap();
    for x in sample_xs(abs.omega, 50) {
        assert!(close(abs.chord(x).unwrap(), plain.chord(x).unwrap()));
    }
}

#[test]
fn symmetric_translates_move_rigidly() {
    for trial in 0..50 {
        let mut rng = trial_rng(12, trial);
        let u = unit(rng.gen_range(0.0..std::f64::consts::TAU));
        let x0 = rng.gen_range(-1.0..1.0);
        let k = random_symmetric_polygon(&mut rng, u, x0, 0.3, 1.0);
        let phi = random_contraction(&mut rng, false);
        for _ in 0..20 {
            let t = rng.gen_range(-2.0..=2.0);
            let shifted = k.translate([t * u[0], t * u[1]]);
            let s = phi.eval(t);
            let expected = k.translate([s * u[0], s * u[1]]);
            let got = chord_move_polygon(&shifted, &phi, u).unwrap().to_polygon().unwrap();
            assert_eq!(
                got.vertices().len(),
                expected.vertices().len(),
                "trial {trial}: {:?} vs {:?}",
                got.vertices(),
                expected.vertices()
            );
            for v in got.vertices() {
                let d =
                    expected.vertices().iter().map(|w| (v[0] - w[0]).hypot(v[1] - w[1])).fold(f64::INFINITY, f64::min);
                assert!(d < TOL, "trial {trial}, t = {t}: vertex {v:?} off by {d}");
            }
        }
    }
}

#[test]
fn eikonal_contractions_keep_perimeter() {
    let saw = sawtooth_contraction(1.0, -3.0, 3.0).unwrap();
    for trial in 0..50 {
        let mut rng = trial_rng(13, trial);
        let u = unit(rng.gen_range(0.0..std::f64::consts::TAU));
        let center = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let k = random_convex_polygon(&mut rng, center, 0.2, 1.0);
        for phi in [saw.clone(), random_contraction(&mut rng, true)] {
            assert!(phi.is_eikonal(1e-12));
            let r = chord_move_polygon(&k, &phi, u).unwrap();
            assert!((perimeter_region(&r) - k.perimeter()).abs() < TOL, "trial {trial}");
        }
    }
}

#[test]
fn kinked_contraction_breaks_convexity() {
    // chord midpoints run over [-1, 0]; the sawtooth kinks at -1/2
    let k = ConvexPolygon::new(vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0]]).unwrap();
    let saw = sawtooth_contraction(1.0, -3.0, 3.0).unwrap();
    let r = chord_move_polygon(&k, &saw, [0.0, 1.0]).unwrap();
    assert!(!r.is_convex());
    assert!(r.to_polygon().is_err());
    assert!(close(r.chord(-0.5).unwrap(), (0.0, 0.5)));
    assert!(close(r.chord(0.5).unwrap(), (-0.5, 1.0)));
}

#[test]
fn sampled_union_agrees_with_exact_chords() {
    let samples = 10_000;
    for trial in 0..10 {
        let mut rng = trial_rng(14, trial);
        let center = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
        let k = random_convex_polygon(&mut rng, center, 0.2, 1.0);
        let phi = canonical_contraction("abs", 4.0).unwrap();
        let u = [0.0, 1.0];
        let union = union_of_translates(&k, &phi, u, samples).unwrap();
        let region = chord_move_polygon(&k, &phi, u).unwrap();
        let bound = 2.0 * (union.t_range.1 - union.t_range.0) / samples as f64;
        let d = hausdorff_to_region(&union, &region, 400, 20);
        assert!(d <= bound, "trial {trial}: {d} > {bound}");
    }
}

#[test]
fn grid_runs_move_by_midpoint() {
    // one column of unit cells over [-12, 12]; cell j covers [j - 12, j - 11]
    let g = Grid::centered(&[1, 24], 1.0).unwrap();
    let run =
        |lo: usize, hi: usize| GridSet::from_fn(g.clone(), |x| x[1] > lo as f64 - 12.0 && x[1] < hi as f64 - 11.0);
    let abs = canonical_contraction("abs", 12.0).unwrap();
    assert_eq!(chord_move_gridset(&run(16, 21), &abs, Axis(1)).unwrap(), run(16, 21));
    assert_eq!(chord_move_gridset(&run(2, 7), &abs, Axis(1)).unwrap(), run(16, 21));
    let neg = canonical_contraction("neg", 12.0).unwrap();
    assert_eq!(chord_move_gridset(&run(3, 9), &neg, Axis(1)).unwrap(), run(14, 20));

    // H^- cells at depths 5 and 2 slide up to depths 2 and 1
    let h = OrientedHyperplane::new(vec![0.0, 1.0], 0.0, true).unwrap();
    let mut a = GridSet::empty(g.clone());
    a.set(7, true);
    a.set(10, true);
    a.set(15, true);
    let shaken = shake_set(&a, &h).unwrap();
    assert_eq!(shaken.cells().collect::<Vec<_>>(), vec![10, 11, 15]);
}

#[test]
fn shaking_after_polarization_splits_from_polarization_on_two_balls() {
    let g = Grid::centered(&[32, 32], 0.125).unwrap();
    let h = OrientedHyperplane::new(vec![0.0, 1.0], 0.0, true).unwrap();
    let balls = GridSet::from_fn(g.clone(), |x| x[0].hypot(x[1] - 1.0) < 0.5 || x[0].hypot(x[1] + 1.0) < 0.5);
    let polarized = polarize_set(&balls, &h).unwrap();
    assert_eq!(polarized, balls);
    let shaken = blaschke_composite(&balls, &h).unwrap();
    assert_ne!(shaken, polarized);
    assert_eq!(shaken.count(), balls.count());
    let convex = GridSet::from_fn(g, |x| (x[0] - 0.2).hypot(x[1] + 0.3) < 0.9);
    assert_eq!(blaschke_composite(&convex, &h).unwrap(), polarize_set(&convex, &h).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chord_moves_keep_area_and_projection(seed in any::<u64>(), angle in 0.0..std::f64::consts::TAU) {
        let mut rng = trial_rng(seed, 0);
        let u = unit(angle);
        let k = random_convex_polygon(&mut rng, [0.3, -0.2], 0.2, 1.5);
        let phi = random_contraction(&mut rng, false);
        let r = chord_move_polygon(&k, &phi, u).unwrap();
        r.validate().unwrap();
        prop_assert!((r.area() - k.area()).abs() < 1e-12 * k.area().max(1.0));
        let plain = region_of_polygon(&k, u).unwrap();
        prop_assert_eq!(r.omega, plain.omega);
        for x in r.breakpoints() {
            let (lo, hi) = r.chord(x).unwrap();
            let (a, b) = plain.chord(x).unwrap();
            prop_assert!(((hi - lo) - (b - a)).abs() < 1e-12);
        }
    }

    #[test]
    fn affine_contractions_keep_convexity(seed in any::<u64>(), slope in -1.0f64..=1.0, shift in -1.0f64..1.0) {
        let mut rng = trial_rng(seed, 1);
        let k = random_convex_polygon(&mut rng, [0.0, 0.0], 0.2, 1.5);
        let phi = PLContraction::affine(slope, shift).unwrap();
        prop_assert!(chord_move_polygon(&k, &phi, [0.0, 1.0]).unwrap().is_convex());
    }
}
