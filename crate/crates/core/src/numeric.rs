//! Bracketed bisection on a sign change.
//!
//! Shared by the regime-boundary solvers (roots of derivative conditions in
//! the radius) and the oracle's critical-length search (sign change of the
//! smallest eigenvalue in the length).

use crate::error::{Error, Result};

/// Find a root of `f` inside `[lo, hi]` by bisection.
///
/// `f(lo)` and `f(hi)` must have opposite signs (a zero at either end is
/// returned directly). Terminates once the bracket width drops below
/// `rel_tol * max(|lo|, |hi|)` or below `abs_tol`, whichever is looser;
/// pass 0 for the tolerance you do not want.
pub fn bisect_root(
    f: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let f_lo = checked(&f, lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = checked(&f, hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }

    let sign_lo = f_lo.signum();
    for _ in 0..max_iter {
        let width = hi - lo;
        let tol = f64::max(rel_tol * f64::max(lo.abs(), hi.abs()), abs_tol);
        if width <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval no longer splittable in f64
            return Ok(mid);
        }
        let f_mid = checked(&f, mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence { max_iter })
}

fn checked(f: &impl Fn(f64) -> Result<f64>, x: f64) -> Result<f64> {
    let y = f(x)?;
    if y.is_nan() {
        return Err(Error::Domain(format!("function value is NaN at x = {x}")));
    }
    Ok(y)
}
