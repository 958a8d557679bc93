//! Regular axis-aligned grids and the functions and sets sampled on them.
//!
//! Cells are indexed row-major (last axis fastest). The grid origin is the
//! lower corner of the grid box, so the center of cell `i` along axis `k` is
//! `origin[k] + (i + 0.5) * spacing`. All measures are exact integer cell
//! counts scaled by the cell volume `spacing^n`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SymmError};

/// Maximum supported dimension.
pub const MAX_DIM: usize = 3;

/// A coordinate axis, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Axis(pub usize);

/// Uniform grid over a box in R^n, n in {1, 2, 3}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    dims: Vec<usize>,
    origin: Vec<f64>,
    spacing: f64,
}

impl Grid {
    pub fn new(dims: Vec<usize>, origin: Vec<f64>, spacing: f64) -> Result<Self> {
        if dims.is_empty() || dims.len() > MAX_DIM {
            return Err(SymmError::InvalidGrid(format!("dimension must be 1..={MAX_DIM}, got {}", dims.len())));
        }
        if origin.len() != dims.len() {
            return Err(SymmError::InvalidGrid(format!(
                "origin has {} coordinates for {} axes",
                origin.len(),
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(SymmError::InvalidGrid("every axis needs at least one cell".into()));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(SymmError::InvalidGrid(format!("spacing must be positive, got {spacing}")));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(SymmError::InvalidGrid("origin must be finite".into()));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| SymmError::InvalidGrid("cell count overflows".into()))?;
        Ok(Self { dims, origin, spacing })
    }

    /// Grid whose box is centered at the origin of R^n.
    pub fn centered(dims: &[usize], spacing: f64) -> Result<Self> {
        let origin = dims.iter().map(|&d| -(d as f64) * spacing / 2.0).collect();
        Self::new(dims.to_vec(), origin, spacing)
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.ndim() as i32)
    }

    /// Row-major stride of `axis`.
    pub fn stride(&self, axis: Axis) -> usize {
        self.dims[axis.0 + 1..].iter().product()
    }

    pub fn check_axis(&self, axis: Axis) -> Result<()> {
        if axis.0 < self.ndim() {
            Ok(())
        } else {
            Err(SymmError::InvalidGrid(format!("axis {} out of range for a {}-dimensional grid", axis.0, self.ndim())))
        }
    }

    /// Multi-index of a flat cell index. Unused trailing entries are zero.
    pub fn coords(&self, mut flat: usize) -> [usize; MAX_DIM] {
        let mut out = [0; MAX_DIM];
        for k in (0..self.ndim()).rev() {
            out[k] = flat % self.dims[k];
            flat /= self.dims[k];
        }
        out
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    /// Flat index of a signed multi-index, or `None` when it falls outside.
    pub fn checked_flat_index(&self, idx: &[i64]) -> Option<usize> {
        let mut acc = 0usize;
        for (&i, &d) in idx.iter().zip(&self.dims) {
            if i < 0 || i as usize >= d {
                return None;
            }
            acc = acc * d + i as usize;
        }
        Some(acc)
    }

    pub fn center_coord(&self, axis: Axis, i: usize) -> f64 {
        self.origin[axis.0] + (i as f64 + 0.5) * self.spacing
    }

    /// Center of a cell; unused trailing entries are zero.
    pub fn center(&self, flat: usize) -> [f64; MAX_DIM] {
        let idx = self.coords(flat);
        let mut out = [0.0; MAX_DIM];
        for k in 0..self.ndim() {
            out[k] = self.center_coord(Axis(k), idx[k]);
        }
        out
    }

    /// Flat index of the cell containing `x`, or `None` outside the box.
    pub fn locate(&self, x: &[f64]) -> Option<usize> {
        let mut idx = [0i64; MAX_DIM];
        for k in 0..self.ndim() {
            idx[k] = ((x[k] - self.origin[k]) / self.spacing).floor() as i64;
        }
        self.checked_flat_index(&idx[..self.ndim()])
    }

    /// First cell of every column along `axis`; the column continues with
    /// stride [`Grid::stride`] for `dims[axis]` cells.
    pub fn column_starts(&self, axis: Axis) -> Vec<usize> {
        let stride = self.stride(axis);
        let block = stride * self.dims[axis.0];
        (0..self.len()).filter(|&flat| flat % block < stride).collect()
    }

    /// Flat indices of the column through `start` along `axis`.
    pub fn column(&self, axis: Axis, start: usize) -> impl Iterator<Item = usize> {
        let stride = self.stride(axis);
        (0..self.dims[axis.0]).map(move |i| start + i * stride)
    }

    pub fn ensure_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(SymmError::GridMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

/// Real-valued function sampled at cell centers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(SymmError::InvalidGrid(format!("expected {} values, got {}", grid.len(), values.len())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(SymmError::NonFinite(i));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: Grid, c: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(grid, vec![c; n])
    }

    /// Samples `f` at every cell center.
    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let n = grid.ndim();
        let values = (0..grid.len()).map(|i| f(&grid.center(i)[..n])).collect();
        Self::new(grid, values)
    }

    pub(crate) fn from_parts_unchecked(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(grid.len(), values.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Essential infimum; on a grid this is the minimum sample.
    pub fn essinf(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Sorted distinct values.
    pub fn levels(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| a == b);
        v
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.grid.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    /// `{f >= t}`, or `{f > t}` when `strict`.
    pub fn super_level_set(&self, t: f64, strict: bool) -> GridSet {
        let mask = self.values.iter().map(|&v| if strict { v > t } else { v >= t }).collect();
        GridSet::from_parts_unchecked(self.grid.clone(), mask)
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &GridFunction) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// `L^p` distance in grid measure; `p = f64::INFINITY` gives the sup norm.
    pub fn lp_distance(&self, other: &GridFunction, p: f64) -> f64 {
        let diffs = self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs());
        if p.is_infinite() {
            diffs.fold(0.0, f64::max)
        } else if p == 1.0 {
            diffs.sum::<f64>() * self.grid.cell_volume()
        } else {
            (diffs.map(|d| d.powf(p)).sum::<f64>() * self.grid.cell_volume()).powf(1.0 / p)
        }
    }

    pub fn distribution(&self) -> DistributionProfile {
        DistributionProfile::of(self)
    }
}

/// Boolean mask on a grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSet {
    grid: Grid,
    mask: Vec<bool>,
}

// Grid holds f64 fields but is never NaN by construction.
impl Eq for Grid {}

impl GridSet {
    pub fn new(grid: Grid, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != grid.len() {
            return Err(SymmError::InvalidGrid(format!("expected {} mask entries, got {}", grid.len(), mask.len())));
        }
        Ok(Self { grid, mask })
    }

    pub fn empty(grid: Grid) -> Self {
        let n = grid.len();
        Self { grid, mask: vec![false; n] }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> bool) -> Self {
        let n = grid.ndim();
        let mask = (0..grid.len()).map(|i| f(&grid.center(i)[..n])).collect();
        Self { grid, mask }
    }

    pub(crate) fn from_parts_unchecked(grid: Grid, mask: Vec<bool>) -> Self {
        debug_assert_eq!(grid.len(), mask.len());
        Self { grid, mask }
    }

    /// Reads a set from a function with values in {0, 1}.
    pub fn from_indicator(f: &GridFunction) -> Result<Self> {
        let mut mask = Vec::with_capacity(f.values.len());
        for (i, &v) in f.values.iter().enumerate() {
            match v {
                0.0 => mask.push(false),
                1.0 => mask.push(true),
                _ => return Err(SymmError::Format(format!("cell {i} has value {v}; set files hold only 0 and 1"))),
            }
        }
        Ok(Self { grid: f.grid.clone(), mask })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.mask[i] = value;
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn measure(&self) -> f64 {
        self.count() as f64 * self.grid.cell_volume()
    }

    pub fn indicator(&self) -> GridFunction {
        let values = self.mask.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        GridFunction::from_parts_unchecked(self.grid.clone(), values)
    }

    pub fn is_subset(&self, other: &GridSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &GridSet) -> GridSet {
        let mask = self.mask.iter().zip(&other.mask).map(|(&a, &b)| a || b).collect();
        Self::from_parts_unchecked(self.grid.clone(), mask)
    }

    pub fn intersection(&self, other: &GridSet) -> GridSet {
        let mask = self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect();
        Self::from_parts_unchecked(self.grid.clone(), mask)
    }

    /// Cells in exactly one of the two sets.
    pub fn symmetric_difference(&self, other: &GridSet) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i] != other.mask[i]).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// Center of gravity of the cells, or `None` for the empty set.
    pub fn centroid(&self) -> Option<[f64; MAX_DIM]> {
        let mut sum = [0.0; MAX_DIM];
        let mut n = 0usize;
        for i in self.cells() {
            let c = self.grid.center(i);
            for k in 0..MAX_DIM {
                sum[k] += c[k];
            }
            n += 1;
        }
        (n > 0).then(|| sum.map(|s| s / n as f64))
    }

    /// Perimeter as the number of cell faces separating the set from its
    /// complement (grid border included), times `spacing^(n-1)`.
    pub fn grid_perimeter(&self) -> f64 {
        let g = &self.grid;
        let n = g.ndim();
        let mut faces = 0usize;
        for i in self.cells() {
            let idx = g.coords(i);
            for k in 0..n {
                let stride = g.stride(Axis(k));
                if idx[k] == 0 || !self.mask[i - stride] {
                    faces += 1;
                }
                if idx[k] + 1 == g.dims()[k] || !self.mask[i + stride] {
                    faces += 1;
                }
            }
        }
        faces as f64 * g.spacing().powi(n as i32 - 1)
    }
}

/// One level of a distribution profile: `count_above` cells exceed `value`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub value: f64,
    pub count_above: usize,
}

/// Measure of the strict super-level sets `{f > t}` at every distinct value
/// `t` of a grid function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionProfile {
    cell_volume: f64,
    total_cells: usize,
    levels: Vec<Level>,
}

impl DistributionProfile {
    pub fn of(f: &GridFunction) -> Self {
        let mut v = f.values.clone();
        v.sort_by(f64::total_cmp);
        let total = v.len();
        let mut levels: Vec<Level> = Vec::new();
        // Walk from the top; cells strictly above a value are those after its
        // last occurrence in sorted order.
        let mut i = total;
        while i > 0 {
            let value = v[i - 1];
            let count_above = total - i;
            let mut j = i - 1;
            while j > 0 && v[j - 1] == value {
                j -= 1;
            }
            levels.push(Level { value, count_above });
            i = j;
        }
        levels.reverse();
        Self { cell_volume: f.grid.cell_volume(), total_cells: total, levels }
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// `(value, measure of {f > value})` pairs in increasing value order.
    pub fn entries(&self) -> Vec<(f64, f64)> {
        self.levels.iter().map(|l| (l.value, l.count_above as f64 * self.cell_volume)).collect()
    }

    /// Number of cells with value strictly above `t`.
    pub fn count_above(&self, t: f64) -> usize {
        let k = self.levels.partition_point(|l| l.value <= t);
        if k == 0 {
            self.total_cells
        } else {
            self.levels[k - 1].count_above
        }
    }

    pub fn measure_above(&self, t: f64) -> f64 {
        self.count_above(t) as f64 * self.cell_volume
    }

    pub fn total_measure(&self) -> f64 {
        self.total_cells as f64 * self.cell_volume
    }
}
