//! Iterated polarization toward a Steiner symmetral.

use std::io::Write;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};
use crate::geometry::io::load_function;
use crate::geometry::{Axis, Grid, GridFunction, OrientedHyperplane};
use crate::rearrange::{polarize, steiner_symmetrize_function};

/// Where the hyperplane of each step comes from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Strategy {
    /// Hyperplanes orthogonal to the symmetrization axis through a random
    /// cell center or cell boundary, oriented so `H^+` contains the
    /// symmetry plane.
    #[default]
    RandomParallel,
    /// The listed hyperplanes in turn, cycling.
    FixedList { hyperplanes: Vec<OrientedHyperplane> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    /// GRD1 input function.
    pub input: PathBuf,
    /// Symmetrization axis.
    pub axis: usize,
    #[serde(default)]
    pub strategy: Strategy,
    pub iterations: usize,
    #[serde(default)]
    pub seed: u64,
    /// CSV trace output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<PathBuf>,
}

fn default_name() -> String {
    "convergence".into()
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(SymmError::Config("iteration count must be at least 1".into()));
        }
        if !self.input.is_file() {
            return Err(SymmError::Config(format!("input {} does not exist", self.input.display())));
        }
        if let Some(dir) = self.trace.as_deref().and_then(Path::parent) {
            if !dir.as_os_str().is_empty() && !dir.is_dir() {
                return Err(SymmError::Config(format!("trace directory {} does not exist", dir.display())));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub k: usize,
    pub l1: f64,
    pub linf: f64,
    /// Unit normal pointing into `H^+`.
    pub normal: Vec<f64>,
    /// `H^+ = {x : x·normal >= offset}`.
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub initial_l1: f64,
    pub initial_linf: f64,
    pub records: Vec<TraceRecord>,
    /// Steps after which the `L^1` distance went up.
    pub l1_increases: Vec<usize>,
    /// Hyperplanes dropped because their reflection leaves the lattice.
    pub skipped: usize,
}

impl ConvergenceTrace {
    pub fn final_l1(&self) -> f64 {
        self.records.last().map_or(self.initial_l1, |r| r.l1)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let err = |e: csv::Error| SymmError::Format(e.to_string());
        out.write_record(["k", "l1", "linf", "normal", "offset"]).map_err(err)?;
        for r in &self.records {
            let normal = r.normal.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";");
            out.write_record([r.k.to_string(), r.l1.to_string(), r.linf.to_string(), normal, r.offset.to_string()])
                .map_err(err)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::io::BufWriter::new(std::fs::File::create(path)?))
    }
}

/// The hyperplane `{x_axis = origin + m h / 2}` (`1 <= m <= 2n - 1`, so it
/// passes through a cell center or an interior cell boundary), with a
/// normal of the given sign and `H^+` on the side of the grid's center
/// plane; at the center plane itself `H^+` is the upper side.
pub fn parallel_hyperplane(grid: &Grid, axis: Axis, m: usize, upward: bool) -> Result<OrientedHyperplane> {
    grid.check_axis(axis)?;
    let n = grid.dims()[axis.0];
    if m == 0 || m >= 2 * n {
        return Err(SymmError::Config(format!("half-cell index {m} outside 1..{}", 2 * n - 1)));
    }
    let o = grid.origin()[axis.0];
    let h = grid.spacing();
    let c = o + m as f64 * h / 2.0;
    let s = if upward { 1.0 } else { -1.0 };
    // H^+ = {x >= c} when the center lies above or on the plane
    let plus_is_upper = m <= n;
    let mut normal = vec![0.0; grid.ndim()];
    normal[axis.0] = s;
    OrientedHyperplane::new(normal, s * c, plus_is_upper == upward)
}

fn record(k: usize, f: &GridFunction, target: &GridFunction, h: &OrientedHyperplane) -> TraceRecord {
    let sign = if h.positive() { 1.0 } else { -1.0 };
    TraceRecord {
        k,
        l1: f.lp_distance(target, 1.0),
        linf: f.lp_distance(target, f64::INFINITY),
        normal: h.positive_normal(),
        offset: sign * h.offset(),
    }
}

/// Polarizes `f` `iterations` times, recording distances to its Steiner
/// symmetral along `axis` after every step.
///
/// Fails if any iterate changes the distribution of `f`.
pub fn converge(
    f: &GridFunction,
    axis: Axis,
    strategy: &Strategy,
    iterations: usize,
    seed: u64,
) -> Result<ConvergenceTrace> {
    if iterations == 0 {
        return Err(SymmError::Config("iteration count must be at least 1".into()));
    }
    let grid = f.grid();
    let target = steiner_symmetrize_function(f, axis)?;
    let profile = f.distribution();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = ConvergenceTrace {
        initial_l1: f.lp_distance(&target, 1.0),
        initial_linf: f.lp_distance(&target, f64::INFINITY),
        records: Vec::with_capacity(iterations),
        l1_increases: Vec::new(),
        skipped: 0,
    };
    let mut current = f.clone();
    let mut prev = trace.initial_l1;
    let mut cursor = 0usize;
    let n = grid.dims()[axis.0];
    for k in 1..=iterations {
        let (h, next) = match strategy {
            Strategy::RandomParallel => {
                let h = parallel_hyperplane(grid, axis, rng.gen_range(1..2 * n), rng.gen())?;
                let next = polarize(&current, &h)?;
                (h, next)
            }
            Strategy::FixedList { hyperplanes } => {
                let mut found = None;
                for _ in 0..hyperplanes.len() {
                    let h = &hyperplanes[cursor % hyperplanes.len()];
                    cursor += 1;
                    match polarize(&current, h) {
                        Ok(next) => {
                            found = Some((h.clone(), next));
                            break;
                        }
                        Err(SymmError::MisalignedHyperplane) => {
                            log::warn!("skipping hyperplane {h:?}: its reflection leaves the lattice");
                            trace.skipped += 1;
                        }
                        Err(e) => return Err(e),
                    }
                }
                found
                    .ok_or_else(|| SymmError::Config("no listed hyperplane reflects the lattice onto itself".into()))?
            }
        };
        if next.distribution() != profile {
            return Err(SymmError::InvariantViolated(format!("step {k} changed the distribution")));
        }
        current = next;
        let r = record(k, &current, &target, &h);
        if r.l1 > prev + 1e-12 {
            log::warn!("step {k}: L1 distance rose from {prev} to {}", r.l1);
            trace.l1_increases.push(k);
        }
        prev = r.l1;
        trace.records.push(r);
    }
    Ok(trace)
}

/// Loads the input, runs [`converge`], and writes the trace when asked.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ConvergenceTrace> {
    cfg.validate()?;
    let f = load_function(&cfg.input)?;
    let trace = converge(&f, Axis(cfg.axis), &cfg.strategy, cfg.iterations, cfg.seed)?;
    if let Some(path) = &cfg.trace {
        trace.save_csv(path)?;
    }
    Ok(trace)
}
