use proptest::prelude::*;
use symmkit::harness::{trial_rng, FunctionGenerator};
use symmkit::*;

fn grid() -> Grid {
    Grid::centered(&[16, 12], 0.25).unwrap()
}

fn blob(seed: u64) -> GridFunction {
    FunctionGenerator::Blobs.sample(&mut trial_rng(seed, 0), &grid())
}

/// Cell by cell from the reflected cell center, with out-of-grid partners
/// reading the minimum.
fn polarize_oracle(f: &GridFunction, h: &OrientedHyperplane) -> GridFunction {
    let g = f.grid();
    let lo = f.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let values = (0..g.len())
        .map(|i| {
            let x = &g.center(i)[..g.ndim()];
            let partner = g.locate(&h.reflect_point(x)).map_or(lo, |j| f.get(j));
            let d = h.oriented_distance(x);
            if d > 1e-12 {
                f.get(i).max(partner)
            } else if d < -1e-12 {
                f.get(i).min(partner)
            } else {
                f.get(i)
            }
        })
        .collect();
    GridFunction::new(g.clone(), values).unwrap()
}

fn hyperplanes() -> Vec<OrientedHyperplane> {
    vec![
        OrientedHyperplane::new(vec![1.0, 0.0], 0.0, true).unwrap(),
        OrientedHyperplane::new(vec![0.0, 1.0], 0.25, false).unwrap(),
        OrientedHyperplane::new(vec![-1.0, 0.0], 0.375, true).unwrap(),
        OrientedHyperplane::new(vec![0.0, -1.0], -0.5, true).unwrap(),
    ]
}

#[test]
fn polarization_matches_cellwise_oracle() {
    for seed in 0..10 {
        let f = blob(seed);
        for h in hyperplanes() {
            assert_eq!(polarize(&f, &h).unwrap(), polarize_oracle(&f, &h), "seed {seed}, {h:?}");
        }
    }
}

#[test]
fn polarization_on_a_line() {
    // [-1, 1] in four cells, f = 1 on [-1, -1/2], H^+ = {x >= 0}
    let g = Grid::centered(&[4], 0.5).unwrap();
    let f = GridFunction::new(g.clone(), vec![1.0, 0.0, 0.0, 0.0]).unwrap();
    let h = OrientedHyperplane::new(vec![1.0], 0.0, true).unwrap();
    assert_eq!(polarize(&f, &h).unwrap().values(), &[0.0, 0.0, 0.0, 1.0]);
}

#[test]
fn polarized_disk_in_minus_side_is_reflected() {
    let g = grid();
    let h = OrientedHyperplane::new(vec![0.0, 1.0], 0.0, true).unwrap();
    let disk = GridSet::from_fn(g.clone(), |x| x[0].hypot(x[1] + 0.8) < 0.6);
    let mirrored = GridSet::from_fn(g, |x| x[0].hypot(x[1] - 0.8) < 0.6);
    assert_eq!(polarize_set(&disk, &h).unwrap(), mirrored);
    assert_eq!(polarize_set(&mirrored, &h).unwrap(), mirrored);
}

#[test]
fn steiner_symmetral_of_a_square() {
    // [0,1]^2 inside [-1,1]^2 becomes [0,1] x [-1/2,1/2]
    let g = Grid::centered(&[8, 8], 0.25).unwrap();
    let a = GridSet::from_fn(g.clone(), |x| (0.0..1.0).contains(&x[0]) && (0.0..1.0).contains(&x[1]));
    let expected = GridSet::from_fn(g, |x| (0.0..1.0).contains(&x[0]) && x[1].abs() < 0.5);
    assert_eq!(steiner_symmetrize_set(&a, Axis(1)).unwrap(), expected);
    assert_eq!(
        steiner_symmetrize_function(&a.indicator(), Axis(1)).unwrap(),
        steiner_symmetrize_set(&a, Axis(1)).unwrap().indicator()
    );
}

#[test]
fn steiner_column_placement() {
    let g = Grid::centered(&[4], 1.0).unwrap();
    let f = GridFunction::new(g, vec![0.0, 3.0, 1.0, 2.0]).unwrap();
    assert_eq!(steiner_symmetrize_function(&f, Axis(0)).unwrap().values(), &[0.0, 2.0, 3.0, 1.0]);
}

#[test]
fn schwarz_keeps_fiber_counts() {
    let g = Grid::centered(&[9, 9, 3], 0.5).unwrap();
    let scattered = [(0, 0), (8, 8), (1, 7), (3, 3), (4, 4), (2, 6), (7, 1), (5, 0), (0, 5), (6, 6), (8, 2)];
    let mut mask = vec![false; g.len()];
    let mut placed = 0;
    'outer: for k in [0usize, 1] {
        for &(i, j) in &scattered {
            mask[g.flat_index(&[i, j, k])] = true;
            placed += 1;
            if placed == 21 {
                break 'outer;
            }
        }
    }
    let a = GridSet::new(g.clone(), mask).unwrap();
    let s = schwarz_symmetrize_set(&a, Axis(2)).unwrap();
    for k in 0..3 {
        let count = |b: &GridSet| {
            (0..9)
                .flat_map(|i| (0..9).map(move |j| (i, j)))
                .filter(|&(i, j)| b.contains(g.flat_index(&[i, j, k])))
                .count()
        };
        assert_eq!(count(&s), count(&a), "fiber {k}");
    }
    assert!(s.contains(g.flat_index(&[4, 4, 0])));
}

#[test]
fn pointwise_pairs_match_named_maps() {
    let g = grid();
    let h = hyperplanes()[1].clone();
    let f = blob(3);
    let build = |name| build_pointwise_map(AssociatedFunctionPair::by_name(name).unwrap(), h.clone(), &g).unwrap();
    assert_eq!(build("max-min").apply(&f).unwrap(), polarize(&f, &h).unwrap());
    assert_eq!(build("first").apply(&f).unwrap(), f);
    assert_eq!(build("second").apply(&f).unwrap(), reflect_grid_function(&f, &h).unwrap());
    let mean = check_fvalues(&AssociatedFunctionPair::by_name("mean").unwrap(), &[0.0, 2.0]);
    assert!(!mean.holds);
    assert_eq!(mean.violation, Some((0.0, 2.0)));
}

#[test]
fn fvalues_agree_with_equimeasurability() {
    let g = grid();
    let h = hyperplanes()[0].clone();
    let fs: Vec<GridFunction> =
        (0..50).map(|i| FunctionGenerator::SignedBlobs.sample(&mut trial_rng(77, i), &g)).collect();
    let mut values: Vec<f64> = fs.iter().flat_map(|f| f.levels()).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    for pair in AssociatedFunctionPair::catalog() {
        let t = build_pointwise_map(pair, h.clone(), &g).unwrap();
        let equi = fs.iter().all(|f| t.apply(f).unwrap().distribution() == f.distribution());
        assert_eq!(check_fvalues(&pair, &values).holds, equi, "{}", pair.name);
    }
}

#[test]
fn layer_cake_recovers_canonical_maps() {
    let h = hyperplanes()[2].clone();
    for seed in 0..10 {
        let f = blob(seed);
        let cases = [
            (SetMap::Identity, f.clone()),
            (SetMap::Reflection(h.clone()), reflect_grid_function(&f, &h).unwrap()),
            (SetMap::Polarization(h.clone()), polarize(&f, &h).unwrap()),
        ];
        for (map, expected) in cases {
            assert_eq!(layer_cake_rearrangement(&map, &f).unwrap(), expected, "{map:?}");
            assert_eq!(layer_cake_strict(&map, &f).unwrap(), expected, "{map:?}");
        }
    }
}

#[test]
fn monotone_composition_examples() {
    let g = Grid::centered(&[3], 1.0).unwrap();
    let f = GridFunction::new(g, vec![0.0, 1.0, 2.0]).unwrap();
    let step = MonotoneMap::step(0.5, 0.0, 1.0).unwrap();
    assert_eq!(compose_monotone(&f, &step).unwrap().values(), &[0.0, 1.0, 1.0]);
    let affine = MonotoneMap::new(vec![(0.0, 1.0), (1.0, 4.0)]).unwrap();
    assert_eq!(compose_monotone(&f, &affine).unwrap().values(), &[1.0, 4.0, 7.0]);
    assert!(matches!(MonotoneMap::new(vec![(0.0, 1.0), (1.0, 0.0)]), Err(SymmError::NonMonotoneMap(0))));
}

fn monotone_map() -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec((0u8..4, 0u8..4, any::<bool>()), 2..6).prop_map(|steps| {
        let mut knots = vec![(-1.0, 0.0)];
        let (mut t, mut v) = (-1.0, 0.0);
        for (dt, dv, jump) in steps {
            t += 1.0 + dt as f64;
            v += dv as f64 * 0.5;
            knots.push((t, v));
            if jump {
                v += 1.0;
                knots.push((t, v));
            }
        }
        knots.push((t + 1.0, v));
        MonotoneMap::new(knots).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polarization_invariants(seed in any::<u64>(), k in 0usize..4) {
        let h = &hyperplanes()[k];
        let (f, g) = FunctionGenerator::Blobs.sample_ordered(&mut trial_rng(seed, 0), &grid());
        let pf = polarize(&f, h).unwrap();
        let pg = polarize(&g, h).unwrap();
        // offset planes push part of the grid's mirror image outside it
        if h.offset() == 0.0 {
            prop_assert_eq!(pf.distribution(), f.distribution());
        }
        prop_assert_eq!(polarize(&pf, h).unwrap(), pf.clone());
        prop_assert!(pf.le(&pg));
        for p in [1.0, 2.0, f64::INFINITY] {
            prop_assert!(pf.lp_distance(&pg, p) <= f.lp_distance(&g, p) + 1e-12);
        }
    }

    #[test]
    fn polarization_commutes_with_monotone_maps(seed in any::<u64>(), psi in monotone_map(), k in 0usize..4) {
        let h = &hyperplanes()[k];
        let f = blob(seed);
        prop_assert_eq!(
            compose_monotone(&polarize(&f, h).unwrap(), &psi).unwrap(),
            polarize(&compose_monotone(&f, &psi).unwrap(), h).unwrap()
        );
    }

    #[test]
    fn steiner_columns_are_symmetric_decreasing(seed in any::<u64>(), axis in 0usize..2) {
        let f = blob(seed);
        let s = steiner_symmetrize_function(&f, Axis(axis)).unwrap();
        let g = f.grid();
        for start in g.column_starts(Axis(axis)) {
            let before: Vec<f64> = g.column(Axis(axis), start).map(|i| f.get(i)).collect();
            let after: Vec<f64> = g.column(Axis(axis), start).map(|i| s.get(i)).collect();
            let (mut a, mut b) = (before.clone(), after.clone());
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            prop_assert_eq!(a, b);
            // values never increase moving away from the top cell
            let c = after.len() / 2;
            for i in 0..after.len() - 1 {
                if i < c {
                    prop_assert!(after[i] <= after[i + 1]);
                } else {
                    prop_assert!(after[i + 1] <= after[i]);
                }
            }
        }
        prop_assert_eq!(steiner_symmetrize_function(&s, Axis(axis)).unwrap(), s);
    }
}
