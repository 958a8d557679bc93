//! Named contractions.

use crate::error::{Result, SymmError};
use crate::geometry::PLContraction;

/// `id`, `neg`, `abs`, `negabs`: `t`, `-t`, `|t|`, `-|t|`.
///
/// The breakpoints sit at `-extent, 0, extent`; terminal slopes extend the
/// map to all of `R`, so `extent` only affects the stored representation.
pub fn canonical_contraction(name: &str, extent: f64) -> Result<PLContraction> {
    let e = extent.abs().max(f64::MIN_POSITIVE);
    let pts = match name {
        "id" => [(-e, -e), (0.0, 0.0), (e, e)],
        "neg" => [(-e, e), (0.0, 0.0), (e, -e)],
        "abs" => [(-e, e), (0.0, 0.0), (e, e)],
        "negabs" => [(-e, -e), (0.0, 0.0), (e, -e)],
        other => return Err(SymmError::UnknownName(other.to_string())),
    };
    PLContraction::new(pts.to_vec())
}

pub const CANONICAL_NAMES: [&str; 4] = ["id", "neg", "abs", "negabs"];

/// Distance to the nearest multiple of `period`, stored on `[lo, hi]`
/// (widened to whole half periods).
pub fn sawtooth_contraction(period: f64, lo: f64, hi: f64) -> Result<PLContraction> {
    if !(period > 0.0 && period.is_finite()) {
        return Err(SymmError::InvalidBreakpoints(format!("period must be positive, got {period}")));
    }
    if !(lo < hi) {
        return Err(SymmError::InvalidBreakpoints("empty domain".into()));
    }
    let half = period / 2.0;
    let k0 = (lo / half).floor() as i64;
    let k1 = ((hi / half).ceil() as i64).max(k0 + 1);
    let pts = (k0..=k1)
        .map(|k| {
            let t = k as f64 * half;
            (t, if k.rem_euclid(2) == 0 { 0.0 } else { half })
        })
        .collect();
    PLContraction::new(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_values() {
        assert_eq!(canonical_contraction("id", 1.0).unwrap().eval(3.0), 3.0);
        assert_eq!(canonical_contraction("abs", 1.0).unwrap().eval(-0.75), 0.75);
        assert_eq!(canonical_contraction("negabs", 1.0).unwrap().eval(2.0), -2.0);
        assert_eq!(canonical_contraction("neg", 4.0).unwrap().eval(-7.0), 7.0);
        assert!(matches!(canonical_contraction("sqrt", 1.0), Err(SymmError::UnknownName(_))));
    }

    #[test]
    fn sawtooth_values() {
        let s = sawtooth_contraction(1.0, -3.0, 3.0).unwrap();
        // distance to the nearest integer
        for t in [-2.9, -1.5, -0.2, 0.0, 0.3, 0.5, 0.75, 1.0, 2.25, 2.8] {
            let expected = (t - f64::round(t)).abs();
            assert!((s.eval(t) - expected).abs() < 1e-15, "{t}");
        }
        assert!(s.is_eikonal(0.0));
        assert!(sawtooth_contraction(0.0, 0.0, 1.0).is_err());
    }
}
