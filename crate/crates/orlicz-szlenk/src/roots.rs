//! Bracketing bisection for strictly monotone scalar equations.
//!
//! All inverses in this crate reduce to solving `f(t) = target` for a
//! strictly monotone `f` on `(0, ∞)`. The bracket is grown from 1 by
//! doubling/halving, then bisected to a relative width of `REL_TOL`.

use crate::error::{Error, Result};

/// Relative bracket width at which bisection stops.
pub const REL_TOL: f64 = 1e-12;

/// Iteration cap for both bracketing and bisection.
pub const MAX_ITER: usize = 200;

/// Solves `f(t) = target` for strictly increasing `f` with `f(0) = 0`,
/// `f(t) → ∞`. Returns 0 exactly when `target == 0`.
pub fn solve_increasing<F: Fn(f64) -> f64>(f: F, target: f64) -> Result<f64> {
    if !target.is_finite() || target < 0.0 {
        return Err(Error::domain(format!(
            "target must be finite and nonnegative, got {target}"
        )));
    }
    if target == 0.0 {
        return Ok(0.0);
    }
    // Grow a bracket [lo, hi] with f(lo) <= target <= f(hi).
    let mut lo = 1.0_f64;
    let mut hi = 1.0_f64;
    let mut iter = 0;
    while f(hi) < target {
        hi *= 2.0;
        iter += 1;
        if iter > MAX_ITER {
            return Err(Error::RootFinding(format!(
                "could not bracket target {target} from above"
            )));
        }
    }
    iter = 0;
    while f(lo) > target {
        lo *= 0.5;
        iter += 1;
        if iter > MAX_ITER {
            return Err(Error::RootFinding(format!(
                "could not bracket target {target} from below"
            )));
        }
    }
    bisect(|t| f(t) - target, lo, hi)
}

/// Solves `g(t) = 0` on a bracket where `g(lo) <= 0 <= g(hi)`.
fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= REL_TOL * mid.max(f64::MIN_POSITIVE) {
            return Ok(mid);
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Solves `f(lambda) = 1` for strictly decreasing `f` on `(0, ∞)` with
/// `f → ∞` at `0⁺` and `f → 0` at `∞` (the Luxemburg norm equation).
pub fn solve_decreasing_unit<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    let mut lo = 1.0_f64;
    let mut hi = 1.0_f64;
    let mut iter = 0;
    while f(hi) > 1.0 {
        hi *= 2.0;
        iter += 1;
        if iter > MAX_ITER {
            return Err(Error::RootFinding("sum does not drop below 1".into()));
        }
    }
    iter = 0;
    while f(lo) < 1.0 {
        lo *= 0.5;
        iter += 1;
        if iter > MAX_ITER {
            return Err(Error::RootFinding("sum does not rise above 1".into()));
        }
    }
    // f decreasing: g(t) = 1 - f(t) is increasing with g(lo) <= 0 <= g(hi).
    bisect(|t| 1.0 - f(t), lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_square() {
        let t = solve_increasing(|t| t * t, 4.0).unwrap();
        assert!((t - 2.0).abs() < 1e-11);
    }

    #[test]
    fn zero_target_is_exact() {
        assert_eq!(solve_increasing(|t| t * t, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_negative_target() {
        assert!(solve_increasing(|t| t, -1.0).is_err());
    }

    #[test]
    fn solves_decreasing_unit_sum() {
        // sum M(1/lambda) with M = t^4 + t^2: lambda^2 = (1+sqrt(5))/2
        let lam = solve_decreasing_unit(|l| (1.0 / l).powi(4) + (1.0 / l).powi(2)).unwrap();
        let expect = ((1.0 + 5.0_f64.sqrt()) / 2.0).sqrt();
        assert!((lam - expect).abs() < 1e-11);
    }
}
