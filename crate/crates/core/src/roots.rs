//! Bracketing and bisection on boolean predicates.
//!
//! All threshold searches here look for the first place a property stops (or
//! starts) holding, so they work on predicates rather than signed functions.

use crate::error::{Error, Result};

pub const MAX_BISECTION_STEPS: usize = 200;

/// First adjacent pair `(a, b)` of the grid `lo, lo + step, ..., hi` with
/// `pred(a) != pred(b)`. The last grid point is `hi` itself.
pub fn first_change<F>(mut pred: F, lo: f64, hi: f64, step: f64) -> Result<Option<(f64, f64)>>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !(hi > lo) || !(step > 0.0) {
        return Err(Error::domain(format!("bad scan range [{lo}, {hi}] step {step}")));
    }
    let n = ((hi - lo) / step - 1e-9).ceil().max(1.0) as usize;
    let mut prev_x = lo;
    let mut prev = pred(lo)?;
    for i in 1..=n {
        let x = if i == n { hi } else { lo + step * i as f64 };
        let cur = pred(x)?;
        if cur != prev {
            return Ok(Some((prev_x, x)));
        }
        prev_x = x;
        prev = cur;
    }
    Ok(None)
}

/// Bisects `[lo, hi]` where `pred(lo) != pred(hi)` until the bracket is no
/// wider than `tol`; returns the midpoint of the final bracket.
pub fn bisect<F>(mut pred: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance {tol} must be positive")));
    }
    let at_lo = pred(lo)?;
    if pred(hi)? == at_lo {
        return Err(Error::BracketError { lo, hi });
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::ConvergenceFailure { what: "bisection", iterations: MAX_BISECTION_STEPS })
}
