//! Oriented hyperplanes, reflection, and the lattice form of a reflection on
//! a grid.

use serde::{Deserialize, Serialize};

use super::grid::{Axis, Grid, GridFunction, GridSet, MAX_DIM};
use crate::error::{Result, SymmError};

/// Which closed half-space a point lies in. `On` means both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
    On,
}

/// The hyperplane `{x : x·normal = offset}` with a choice of positive side.
///
/// With `positive = true`, `H^+ = {x·normal >= offset}`; otherwise the
/// inequality is reversed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientedHyperplane {
    normal: Vec<f64>,
    offset: f64,
    positive: bool,
}

impl OrientedHyperplane {
    /// Normalizes `normal`; fails on zero or non-finite input.
    pub fn new(normal: Vec<f64>, offset: f64, positive: bool) -> Result<Self> {
        if normal.is_empty() || normal.len() > MAX_DIM {
            return Err(SymmError::InvalidHyperplane(format!("normal must have 1..={MAX_DIM} components")));
        }
        if !offset.is_finite() || normal.iter().any(|c| !c.is_finite()) {
            return Err(SymmError::InvalidHyperplane("non-finite data".into()));
        }
        let norm = normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(SymmError::InvalidHyperplane("zero normal".into()));
        }
        let normal = normal.into_iter().map(|c| c / norm).collect();
        Ok(Self { normal, offset, positive })
    }

    /// `{x_axis = offset}` in R^n with positive side `x_axis >= offset`
    /// when `positive`.
    pub fn axis_aligned(n: usize, axis: Axis, offset: f64, positive: bool) -> Result<Self> {
        if axis.0 >= n {
            return Err(SymmError::InvalidHyperplane(format!("axis {} >= dimension {n}", axis.0)));
        }
        let mut normal = vec![0.0; n];
        normal[axis.0] = 1.0;
        Self::new(normal, offset, positive)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn positive(&self) -> bool {
        self.positive
    }

    /// Unit vector pointing into `H^+`.
    pub fn positive_normal(&self) -> Vec<f64> {
        let s = self.sign();
        self.normal.iter().map(|c| s * c).collect()
    }

    /// Same hyperplane, opposite orientation.
    pub fn flipped(&self) -> Self {
        Self { positive: !self.positive, ..self.clone() }
    }

    /// The axis when the normal is `±e_k`.
    pub fn aligned_axis(&self) -> Option<Axis> {
        let mut found = None;
        for (k, &c) in self.normal.iter().enumerate() {
            if (c.abs() - 1.0).abs() < 1e-12 {
                found = Some(Axis(k));
            } else if c.abs() > 1e-12 {
                return None;
            }
        }
        found
    }

    fn sign(&self) -> f64 {
        if self.positive {
            1.0
        } else {
            -1.0
        }
    }

    /// `x·normal - offset`.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    /// Signed distance, positive inside `H^+`.
    pub fn oriented_distance(&self, x: &[f64]) -> f64 {
        self.sign() * self.signed_distance(x)
    }

    pub fn in_plus(&self, x: &[f64]) -> bool {
        self.oriented_distance(x) >= 0.0
    }

    pub fn in_minus(&self, x: &[f64]) -> bool {
        self.oriented_distance(x) <= 0.0
    }

    pub fn side(&self, x: &[f64]) -> Side {
        let d = self.oriented_distance(x);
        if d > 0.0 {
            Side::Plus
        } else if d < 0.0 {
            Side::Minus
        } else {
            Side::On
        }
    }

    /// `x + 2(offset - x·normal) normal`.
    pub fn reflect_point(&self, x: &[f64]) -> Vec<f64> {
        let c = 2.0 * (self.offset - dot(&self.normal, x));
        x.iter().zip(&self.normal).map(|(xi, ni)| xi + c * ni).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A reflection that maps the cell-center lattice of a grid onto itself,
/// written as `j_k = sign_k * i_{perm_k} + shift_k` on multi-indices.
#[derive(Clone, Debug)]
pub struct LatticeReflection {
    grid: Grid,
    hyperplane: OrientedHyperplane,
    perm: [usize; MAX_DIM],
    sign: [i64; MAX_DIM],
    shift: [i64; MAX_DIM],
}

const LATTICE_TOL: f64 = 1e-7;

impl LatticeReflection {
    pub fn new(grid: &Grid, h: &OrientedHyperplane) -> Result<Self> {
        let n = grid.ndim();
        if h.dim() != n {
            return Err(SymmError::InvalidHyperplane(format!(
                "hyperplane in R^{} used on a {n}-dimensional grid",
                h.dim()
            )));
        }
        let nv = h.normal();
        let mut perm = [0; MAX_DIM];
        let mut sign = [0; MAX_DIM];
        let mut shift = [0; MAX_DIM];
        // R = I - 2 n n^T must be a signed permutation.
        for row in 0..n {
            let mut hit = None;
            for col in 0..n {
                let r = if row == col { 1.0 } else { 0.0 } - 2.0 * nv[row] * nv[col];
                if r.abs() < 1e-9 {
                    continue;
                }
                if (r.abs() - 1.0).abs() > 1e-9 || hit.is_some() {
                    return Err(SymmError::MisalignedHyperplane);
                }
                hit = Some((col, if r > 0.0 { 1 } else { -1 }));
            }
            let (col, s) = hit.ok_or(SymmError::MisalignedHyperplane)?;
            perm[row] = col;
            sign[row] = s;
        }
        // Translation part, in index units.
        let hs = grid.spacing();
        let o = grid.origin();
        for row in 0..n {
            let col = perm[row];
            let base_col = o[col] + 0.5 * hs;
            let image = sign[row] as f64 * base_col + 2.0 * h.offset() * nv[row];
            let s = (image - o[row] - 0.5 * hs) / hs;
            let r = s.round();
            if (s - r).abs() > LATTICE_TOL {
                return Err(SymmError::MisalignedHyperplane);
            }
            shift[row] = r as i64;
        }
        Ok(Self { grid: grid.clone(), hyperplane: h.clone(), perm, sign, shift })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn hyperplane(&self) -> &OrientedHyperplane {
        &self.hyperplane
    }

    /// Flat index of the reflected cell, `None` when it leaves the grid.
    pub fn image(&self, flat: usize) -> Option<usize> {
        let n = self.grid.ndim();
        let idx = self.grid.coords(flat);
        let mut out = [0i64; MAX_DIM];
        for k in 0..n {
            out[k] = self.sign[k] * idx[self.perm[k]] as i64 + self.shift[k];
        }
        self.grid.checked_flat_index(&out[..n])
    }

    /// Image of every cell.
    pub fn table(&self) -> Vec<Option<usize>> {
        (0..self.grid.len()).map(|i| self.image(i)).collect()
    }

    /// Side of a cell center. Centers fixed by the reflection lie on `H`.
    pub fn side(&self, flat: usize) -> Side {
        if self.image(flat) == Some(flat) {
            return Side::On;
        }
        let n = self.grid.ndim();
        let c = self.grid.center(flat);
        if self.hyperplane.oriented_distance(&c[..n]) > 0.0 {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    pub fn sides(&self) -> Vec<Side> {
        (0..self.grid.len()).map(|i| self.side(i)).collect()
    }
}

/// `f†(c) = f(c†)`; cells reflected outside the grid read `essinf f`.
pub fn reflect_grid_function(f: &GridFunction, h: &OrientedHyperplane) -> Result<GridFunction> {
    let refl = LatticeReflection::new(f.grid(), h)?;
    let floor = f.essinf();
    let values = (0..f.grid().len()).map(|i| refl.image(i).map_or(floor, |j| f.get(j))).collect();
    Ok(GridFunction::from_parts_unchecked(f.grid().clone(), values))
}

/// `A†`; cells reflected outside the grid are dropped.
pub fn reflect_grid_set(a: &GridSet, h: &OrientedHyperplane) -> Result<GridSet> {
    let refl = LatticeReflection::new(a.grid(), h)?;
    let mask = (0..a.grid().len()).map(|i| refl.image(i).is_some_and(|j| a.contains(j))).collect();
    Ok(GridSet::from_parts_unchecked(a.grid().clone(), mask))
}
