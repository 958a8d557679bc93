//! Set maps on rasters: chord movement, Blaschke shaking, center-of-gravity
//! reflection and the near-hyperplane swap.

use crate::error::{Result, SymmError};
use crate::geometry::{Axis, GridSet, LatticeReflection, OrientedHyperplane, PLContraction, Side};
use crate::rearrange::polarize::polarize_set;

/// The run `[start, start + len)` of set cells in a column, `None` when
/// empty. Fails if the cells are not contiguous.
fn column_run(a: &GridSet, col: &[usize]) -> Result<Option<(usize, usize)>> {
    let mut first = None;
    let mut len = 0;
    for (pos, &i) in col.iter().enumerate() {
        if a.contains(i) {
            match first {
                None => first = Some(pos),
                Some(f) if f + len != pos => return Err(SymmError::NonConvexColumn { column: col[0] }),
                Some(_) => {}
            }
            len += 1;
        }
    }
    Ok(first.map(|f| (f, len)))
}

/// Moves every column run along `axis` so its midpoint `t` goes to
/// `phi(t)`, keeping its length. The new position is rounded to the nearest
/// cell, ties toward the positive side.
pub fn chord_move_gridset(a: &GridSet, phi: &PLContraction, axis: Axis) -> Result<GridSet> {
    let g = a.grid();
    g.check_axis(axis)?;
    let n = g.dims()[axis.0];
    let (o, h) = (g.origin()[axis.0], g.spacing());
    let mut out = GridSet::empty(g.clone());
    for start in g.column_starts(axis) {
        let col: Vec<usize> = g.column(axis, start).collect();
        let Some((s, len)) = column_run(a, &col)? else { continue };
        let mid = o + h * (s as f64 + len as f64 / 2.0);
        // lower edge of the moved run, in cell units
        let edge = (phi.eval(mid) - o) / h - len as f64 / 2.0;
        let s_new = (edge + 0.5).floor();
        if s_new < 0.0 || s_new as usize + len > n {
            return Err(SymmError::OutOfGrid(format!("column {start} moves to start {s_new}")));
        }
        for &i in &col[s_new as usize..s_new as usize + len] {
            out.set(i, true);
        }
    }
    Ok(out)
}

fn axis_of(h: &OrientedHyperplane) -> Result<Axis> {
    h.aligned_axis().ok_or_else(|| SymmError::InvalidHyperplane("the map needs an axis-aligned hyperplane".into()))
}

/// Blaschke shaking toward `H` of the part of `a` in `H^-`: in every column
/// the `H^-` cells become the run of the same count abutting `H`. Cells in
/// `H^+` and on `H` stay.
pub fn shake_set(a: &GridSet, h: &OrientedHyperplane) -> Result<GridSet> {
    let g = a.grid();
    let axis = axis_of(h)?;
    g.check_axis(axis)?;
    LatticeReflection::new(g, h)?;
    let mut out = a.clone();
    for start in g.column_starts(axis) {
        let mut minus: Vec<(f64, usize)> = g
            .column(axis, start)
            .filter(|&i| h.side(&g.center(i)[..g.ndim()]) == Side::Minus)
            .map(|i| (h.signed_distance(&g.center(i)[..g.ndim()]).abs(), i))
            .collect();
        minus.sort_by(|x, y| x.0.total_cmp(&y.0));
        let count = minus.iter().filter(|(_, i)| a.contains(*i)).count();
        for (k, &(_, i)) in minus.iter().enumerate() {
            out.set(i, k < count);
        }
    }
    Ok(out)
}

/// `shake ∘ ∂_{P_H}`.
pub fn blaschke_composite(a: &GridSet, h: &OrientedHyperplane) -> Result<GridSet> {
    shake_set(&polarize_set(a, h)?, h)
}

/// Reflects `a` in the hyperplane orthogonal to `axis` through its center
/// of gravity. Cell indices are reflected about the nearest half-index to
/// the centroid (ties upward), so the map is a bijection of whole cells.
pub fn cog_reflect(a: &GridSet, axis: Axis) -> Result<GridSet> {
    let g = a.grid();
    g.check_axis(axis)?;
    let c = a.centroid().ok_or(SymmError::EmptySet)?[axis.0];
    // x_i + x_j = 2c  <=>  i + j = 2(c - o)/h - 1
    let m = (2.0 * (c - g.origin()[axis.0]) / g.spacing() - 1.0 + 0.5).floor() as i64;
    let n = g.dims()[axis.0] as i64;
    let stride = g.stride(axis);
    let mut out = GridSet::empty(g.clone());
    for i in a.cells() {
        let k = g.coords(i)[axis.0] as i64;
        let j = m - k;
        if !(0..n).contains(&j) {
            return Err(SymmError::OutOfGrid(format!("cell {i} reflects to index {j} along axis {}", axis.0)));
        }
        out.set((i as i64 + (j - k) * stride as i64) as usize, true);
    }
    Ok(out)
}

/// Cells whose center lies within `width` of `H` trade places with their
/// reflections; the rest stay.
pub fn near_swap(a: &GridSet, h: &OrientedHyperplane, width: f64) -> Result<GridSet> {
    if !(width > 0.0) {
        return Err(SymmError::Config(format!("width must be positive, got {width}")));
    }
    let g = a.grid();
    let refl = LatticeReflection::new(g, h)?;
    let mut out = GridSet::empty(g.clone());
    for i in a.cells() {
        let near = h.signed_distance(&g.center(i)[..g.ndim()]).abs() <= width + 1e-12;
        let target = if near {
            refl.image(i).ok_or_else(|| SymmError::OutOfGrid(format!("cell {i} reflects outside the grid")))?
        } else {
            i
        };
        out.set(target, true);
    }
    Ok(out)
}
