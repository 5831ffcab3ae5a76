//! Bisection on monotone functions. Root finding in this crate is always
//! bisection: the slices it runs on (lens area in α, covariogram along a
//! ray) are monotone, and bisection stays robust where derivative-based
//! methods degrade (α → π/2, covariogram tails).

use crate::error::{Error, Result};

/// Find the root of a decreasing (or increasing) continuous function on
/// [lo, hi] by bisection, to interval width <= tol.
///
/// Requires f(lo) and f(hi) to straddle zero; a bad bracket is reported as
/// an error instead of being clamped.
pub fn bisect<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, tol: f64, f: F) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::BracketFailure { lo, hi, flo, fhi });
    }
    // 200 iterations caps the loop well below tol even for wide brackets.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
