//! Checks for function transformers.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Result, SymmError};
use crate::geometry::{Axis, GridFunction};
use crate::rearrange::FunctionMap;

use super::report::{Counterexample, Property, PropertyReport, Violation};
use super::{not_applicable, run_trials, CheckConfig, Outcome};

/// Slack for the `L^p` and modulus comparisons.
pub const MODULUS_TOL: f64 = 1e-12;

fn image(t: &dyn FunctionMap, f: &GridFunction) -> Result<GridFunction> {
    let out = t.apply(f)?;
    f.grid().ensure_same(out.grid())?;
    Ok(out)
}

/// `None` when `T f` and `f` have the same distribution profile.
pub fn equimeasurable_violation(t: &dyn FunctionMap, f: &GridFunction) -> Result<Option<Violation>> {
    let tf = image(t, f)?;
    let (a, b) = (f.distribution(), tf.distribution());
    if a == b {
        return Ok(None);
    }
    let (ea, eb) = (a.levels(), b.levels());
    let k = ea.iter().zip(eb).position(|(x, y)| x != y).unwrap_or(ea.len().min(eb.len()));
    let show = |l: Option<&crate::geometry::Level>| match l {
        Some(l) => format!("{} cells above {}", l.count_above, l.value),
        None => "no level".into(),
    };
    Ok(Some(Violation::new(format!(
        "distribution differs at level {k}: f has {}, Tf has {}",
        show(ea.get(k)),
        show(eb.get(k))
    ))))
}

/// For `f <= g`: cells where `T f > T g`.
pub fn monotonic_violation(t: &dyn FunctionMap, f: &GridFunction, g: &GridFunction) -> Result<Option<Violation>> {
    let (tf, tg) = (image(t, f)?, image(t, g)?);
    let cells: Vec<usize> = (0..tf.values().len()).filter(|&i| tf.get(i) > tg.get(i)).collect();
    Ok((!cells.is_empty()).then(|| {
        let i = cells[0];
        Violation::at(cells.clone(), format!("Tf = {} > Tg = {} at cell {i}", tf.get(i), tg.get(i)))
    }))
}

/// `None` when `‖Tf − Tg‖_p <= ‖f − g‖_p + MODULUS_TOL`.
pub fn lp_violation(t: &dyn FunctionMap, f: &GridFunction, g: &GridFunction, p: f64) -> Result<Option<Violation>> {
    let (tf, tg) = (image(t, f)?, image(t, g)?);
    let before = f.lp_distance(g, p);
    let after = tf.lp_distance(&tg, p);
    Ok((after > before + MODULUS_TOL)
        .then(|| Violation::new(format!("||Tf - Tg||_{p} = {after} exceeds ||f - g||_{p} = {before}"))))
}

/// Grid modulus of continuity: for every squared lattice distance `d²`
/// (in cells), the largest `|f(x) − f(y)|` over cell pairs with
/// `|x − y|² <= d²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulusProfile {
    pub spacing: f64,
    /// `(squared distance in cells, ω, a pair attaining the new maximum)`,
    /// increasing in distance.
    pub entries: Vec<(u64, f64, (usize, usize))>,
}

impl ModulusProfile {
    pub fn distance(&self, k: usize) -> f64 {
        self.spacing * (self.entries[k].0 as f64).sqrt()
    }

    /// `ω(d)` for a distance in grid units.
    pub fn at(&self, d: f64) -> f64 {
        let key = (d / self.spacing).powi(2);
        let k = self.entries.partition_point(|e| (e.0 as f64) <= key + 1e-9);
        if k == 0 {
            0.0
        } else {
            self.entries[k - 1].1
        }
    }
}

pub fn modulus_profile(f: &GridFunction) -> ModulusProfile {
    let g = f.grid();
    let n = g.ndim();
    let mut dims = [1i64; 3];
    let mut strides = [0i64; 3];
    for k in 0..n {
        dims[k] = g.dims()[k] as i64;
        strides[k] = g.stride(Axis(k)) as i64;
    }
    // lexicographically positive displacements cover every unordered pair once
    let mut displacements = Vec::new();
    for a in 0..dims[0] {
        for b in -(dims[1] - 1)..dims[1] {
            for c in -(dims[2] - 1)..dims[2] {
                if a > 0 || b > 0 || (b == 0 && c > 0) {
                    displacements.push([a, b, c]);
                }
            }
        }
    }
    let v = f.values();
    let per_displacement: Vec<(u64, f64, (usize, usize))> = displacements
        .par_iter()
        .map(|d| {
            let mut best = (0.0, (0, 0));
            let range = |k: usize| (0.max(-d[k]), dims[k].min(dims[k] - d[k]));
            let ((a0, a1), (b0, b1), (c0, c1)) = (range(0), range(1), range(2));
            let shift = d[0] * strides[0] + d[1] * strides[1] + d[2] * strides[2];
            for a in a0..a1 {
                for b in b0..b1 {
                    for c in c0..c1 {
                        let i = (a * strides[0] + b * strides[1] + c * strides[2]) as usize;
                        let j = (i as i64 + shift) as usize;
                        let diff = (v[i] - v[j]).abs();
                        if diff > best.0 {
                            best = (diff, (i, j));
                        }
                    }
                }
            }
            ((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) as u64, best.0, best.1)
        })
        .collect();
    let mut by_key: BTreeMap<u64, (f64, (usize, usize))> = BTreeMap::new();
    for (key, w, pair) in per_displacement {
        let e = by_key.entry(key).or_insert((0.0, pair));
        if w > e.0 {
            *e = (w, pair);
        }
    }
    let mut entries = Vec::with_capacity(by_key.len());
    let mut running = (0.0, (0, 0));
    for (key, (w, pair)) in by_key {
        if w > running.0 {
            running = (w, pair);
        }
        entries.push((key, running.0, running.1));
    }
    ModulusProfile { spacing: g.spacing(), entries }
}

/// `None` when `ω_d(Tf) <= ω_d(f) + MODULUS_TOL` at every lattice distance.
pub fn modulus_violation(t: &dyn FunctionMap, f: &GridFunction) -> Result<Option<Violation>> {
    let tf = image(t, f)?;
    let (a, b) = (modulus_profile(f), modulus_profile(&tf));
    for (k, (ea, eb)) in a.entries.iter().zip(&b.entries).enumerate() {
        if eb.1 > ea.1 + MODULUS_TOL {
            let (i, j) = eb.2;
            return Ok(Some(Violation::at(
                vec![i, j],
                format!("at distance {}: omega(Tf) = {} > omega(f) = {}", a.distance(k), eb.1, ea.1),
            )));
        }
    }
    Ok(None)
}

pub fn check_equimeasurable(t: &dyn FunctionMap, cfg: &CheckConfig) -> PropertyReport {
    run_trials(Property::Equimeasurable, t.name(), cfg.trials, cfg.seed, |rng| {
        let f = cfg.generator.sample(rng, &cfg.grid);
        Outcome::from_check(equimeasurable_violation(t, &f), || Counterexample::Function { f: f.clone() })
    })
}

/// Random pairs `f <= g`, compared pointwise.
pub fn check_monotonic(t: &dyn FunctionMap, cfg: &CheckConfig) -> PropertyReport {
    run_trials(Property::Monotonic, t.name(), cfg.trials, cfg.seed, |rng| {
        let (f, g) = cfg.generator.sample_ordered(rng, &cfg.grid);
        Outcome::from_check(monotonic_violation(t, &f, &g), || Counterexample::FunctionPair {
            f: f.clone(),
            g: g.clone(),
        })
    })
}

/// `p` must be 1, 2 or infinity.
pub fn check_lp_contracting(t: &dyn FunctionMap, p: f64, cfg: &CheckConfig) -> PropertyReport {
    let Some(property) = Property::lp(p) else {
        return not_applicable(Property::L1Contracting, t.name(), cfg.seed, format!("unsupported exponent {p}"));
    };
    run_trials(property, t.name(), cfg.trials, cfg.seed, |rng| {
        let (f, g) = cfg.generator.sample_pair(rng, &cfg.grid);
        Outcome::from_check(lp_violation(t, &f, &g, p), || Counterexample::FunctionPair { f: f.clone(), g: g.clone() })
    })
}

pub fn check_modulus_reducing(t: &dyn FunctionMap, cfg: &CheckConfig) -> PropertyReport {
    run_trials(Property::ModulusReducing, t.name(), cfg.trials, cfg.seed, |rng| {
        let f = cfg.generator.sample(rng, &cfg.grid);
        Outcome::from_check(modulus_violation(t, &f), || Counterexample::Function { f: f.clone() })
    })
}

/// Re-runs a function-property counterexample.
pub fn replay_function(property: Property, t: &dyn FunctionMap, ce: &Counterexample) -> Result<Option<Violation>> {
    match (property, ce) {
        (Property::Equimeasurable, Counterexample::Function { f }) => equimeasurable_violation(t, f),
        (Property::ModulusReducing, Counterexample::Function { f }) => modulus_violation(t, f),
        (Property::Monotonic, Counterexample::FunctionPair { f, g }) => monotonic_violation(t, f, g),
        (p, Counterexample::FunctionPair { f, g }) if p.lp_exponent().is_some() => {
            lp_violation(t, f, g, p.lp_exponent().unwrap())
        }
        (p, _) => Err(SymmError::Config(format!("no function replay for {} with this payload", p.name()))),
    }
}
