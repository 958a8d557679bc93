//! Discrete Steiner and Schwarz symmetrization.
//!
//! The symmetry hyperplane (resp. axis) always passes through the grid
//! center, so the grid is symmetric about it by construction.

use crate::error::{Result, SymmError};
use crate::geometry::{Axis, Grid, GridFunction, GridSet};

/// Column positions `0..n` in fill order: closest to the center first, and
/// for equal distance the cell on the positive side first.
pub fn column_fill_order(n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| ((2 * i + 1).abs_diff(n), std::cmp::Reverse(i)));
    order
}

/// Start index of a centered run of `k` cells in a column of `n`. When the
/// run cannot be exactly centered it leans toward the positive side.
pub fn centered_run_start(n: usize, k: usize) -> usize {
    (n - k).div_ceil(2)
}

/// Steiner symmetral along `axis`: every column becomes a contiguous run of
/// the same number of cells, centered on the middle of the column.
pub fn steiner_symmetrize_set(a: &GridSet, axis: Axis) -> Result<GridSet> {
    let g = a.grid();
    g.check_axis(axis)?;
    let n = g.dims()[axis.0];
    let mut out = GridSet::empty(g.clone());
    for start in g.column_starts(axis) {
        let col: Vec<usize> = g.column(axis, start).collect();
        let k = col.iter().filter(|&&i| a.contains(i)).count();
        let s = centered_run_start(n, k);
        for &i in &col[s..s + k] {
            out.set(i, true);
        }
    }
    Ok(out)
}

/// Symmetric decreasing rearrangement of every column along `axis`: values
/// sorted descending, placed in [`column_fill_order`].
pub fn steiner_symmetrize_function(f: &GridFunction, axis: Axis) -> Result<GridFunction> {
    let g = f.grid();
    g.check_axis(axis)?;
    let order = column_fill_order(g.dims()[axis.0]);
    let mut values = vec![0.0; g.len()];
    for start in g.column_starts(axis) {
        let col: Vec<usize> = g.column(axis, start).collect();
        let mut vals: Vec<f64> = col.iter().map(|&i| f.get(i)).collect();
        vals.sort_by(|x, y| y.total_cmp(x));
        for (&pos, v) in order.iter().zip(vals) {
            values[col[pos]] = v;
        }
    }
    GridFunction::new(g.clone(), values)
}

/// Cells of each plane orthogonal to `axis` (as flat indices), sorted by
/// distance to the axis, ties by flat index.
fn schwarz_slices(g: &Grid, axis: Axis) -> Result<Vec<Vec<usize>>> {
    if g.ndim() != 3 {
        return Err(SymmError::InvalidGrid(format!(
            "Schwarz symmetrization needs a 3-dimensional grid, got {}",
            g.ndim()
        )));
    }
    g.check_axis(axis)?;
    let others: Vec<usize> = (0..3).filter(|&k| k != axis.0).collect();
    let dims = g.dims();
    // squared distance in half-cell units, exact in integers
    let dist = |idx: [usize; 3]| -> usize { others.iter().map(|&k| (2 * idx[k] + 1).abs_diff(dims[k]).pow(2)).sum() };
    let mut slices = vec![Vec::new(); dims[axis.0]];
    for flat in 0..g.len() {
        slices[g.coords(flat)[axis.0]].push(flat);
    }
    for s in &mut slices {
        s.sort_by_key(|&flat| (dist(g.coords(flat)), flat));
    }
    Ok(slices)
}

/// Schwarz symmetral about the line through the grid center along `axis`:
/// every orthogonal slice becomes the `k` cells closest to the axis.
pub fn schwarz_symmetrize_set(a: &GridSet, axis: Axis) -> Result<GridSet> {
    let g = a.grid();
    let mut out = GridSet::empty(g.clone());
    for slice in schwarz_slices(g, axis)? {
        let k = slice.iter().filter(|&&i| a.contains(i)).count();
        for &i in &slice[..k] {
            out.set(i, true);
        }
    }
    Ok(out)
}

/// Slice-wise decreasing rearrangement about the axis.
pub fn schwarz_symmetrize_function(f: &GridFunction, axis: Axis) -> Result<GridFunction> {
    let g = f.grid();
    let mut values = vec![0.0; g.len()];
    for slice in schwarz_slices(g, axis)? {
        let mut vals: Vec<f64> = slice.iter().map(|&i| f.get(i)).collect();
        vals.sort_by(|x, y| y.total_cmp(x));
        for (&i, v) in slice.iter().zip(vals) {
            values[i] = v;
        }
    }
    GridFunction::new(g.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_order_alternates_from_center() {
        assert_eq!(column_fill_order(4), vec![2, 1, 3, 0]);
        assert_eq!(column_fill_order(5), vec![2, 3, 1, 4, 0]);
    }

    #[test]
    fn four_cell_column() {
        let g = Grid::new(vec![4], vec![0.0], 1.0).unwrap();
        let f = GridFunction::new(g, vec![0.0, 3.0, 1.0, 2.0]).unwrap();
        let s = steiner_symmetrize_function(&f, Axis(0)).unwrap();
        assert_eq!(s.values(), &[0.0, 2.0, 3.0, 1.0]);
    }

    #[test]
    fn set_runs_are_centered() {
        let g = Grid::new(vec![1, 6], vec![0.0, 0.0], 1.0).unwrap();
        let a = GridSet::new(g, vec![true, false, false, false, false, true]).unwrap();
        let s = steiner_symmetrize_set(&a, Axis(1)).unwrap();
        assert_eq!(s.mask(), &[false, false, true, true, false, false]);
        let a3 = GridSet::new(a.grid().clone(), vec![true, true, false, false, false, true]).unwrap();
        let s3 = steiner_symmetrize_set(&a3, Axis(1)).unwrap();
        assert_eq!(s3.mask(), &[false, false, true, true, true, false]);
    }

    #[test]
    fn set_and_indicator_agree() {
        let g = Grid::centered(&[7, 9], 0.5).unwrap();
        let a = GridSet::from_fn(g, |x| (x[0] * 2.1 + x[1] * 1.3).sin() > 0.2);
        for axis in [Axis(0), Axis(1)] {
            let s = steiner_symmetrize_set(&a, axis).unwrap();
            let f = steiner_symmetrize_function(&a.indicator(), axis).unwrap();
            assert_eq!(s.indicator(), f);
        }
    }

    #[test]
    fn schwarz_slice_is_disk_like() {
        let g = Grid::centered(&[4, 4, 2], 1.0).unwrap();
        let a = GridSet::from_fn(g.clone(), |x| x[0] > 0.0);
        let s = schwarz_symmetrize_set(&a, Axis(2)).unwrap();
        assert_eq!(s.count(), a.count());
        for i in s.cells() {
            let c = g.center(i);
            assert!(c[0].abs() < 1.0 && c[1].abs() < 1.0 || c[0].hypot(c[1]) < 1.6);
        }
        assert!(matches!(
            schwarz_symmetrize_set(&GridSet::empty(Grid::centered(&[2, 2], 1.0).unwrap()), Axis(0)),
            Err(SymmError::InvalidGrid(_))
        ));
    }
}
