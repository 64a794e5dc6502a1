//! Scalar root finding on monotone functions.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `xtol` or after `max_iter` halvings.
pub fn bisect<S, F>(mut f: F, mut lo: S, mut hi: S, xtol: S, max_iter: usize) -> Result<S>
where
    S: Real,
    F: FnMut(S) -> S,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == S::zero() {
        return Ok(lo);
    }
    if fhi == S::zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Invalid(format!("bisection bracket [{lo}, {hi}] has no sign change")));
    }
    let two = S::lit(2.0);
    for _ in 0..max_iter {
        let mid = (lo + hi) / two;
        if (hi - lo) <= xtol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == S::zero() {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// Newton iteration for `f(x) = 0` with `f` nondecreasing on `[lo, hi]`,
/// falling back to bisection whenever a step leaves the bracket or the
/// derivative vanishes. `f_df` returns `(f(x), f'(x))`.
///
/// The returned root is the leftmost point of the bracket that reaches the
/// tolerance, so flat stretches resolve deterministically to the left.
pub fn safeguarded_newton<S, F>(mut f_df: F, mut lo: S, mut hi: S, xtol: S, max_iter: usize) -> Result<S>
where
    S: Real,
    F: FnMut(S) -> (S, S),
{
    let two = S::lit(2.0);
    let mut x = (lo + hi) / two;
    for _ in 0..max_iter {
        let (fx, dfx) = f_df(x);
        if fx == S::zero() {
            return Ok(x);
        }
        if fx > S::zero() {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx > S::zero() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / two
        };
        if (next - x).abs() <= xtol || (hi - lo) <= xtol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NonConvergence {
        method: "safeguarded Newton",
        iterations: max_iter,
        last: x.to_f64().unwrap_or(f64::NAN),
    })
}
