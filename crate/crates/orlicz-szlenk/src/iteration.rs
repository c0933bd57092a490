//! Iterates of the derivation-radius recursion and ε-Szlenk indices.
//!
//! When the derivation ball has exact radius `r(ε)` at scale 1, the n-th
//! iterate has radius `r_{n+1} = r_n · r(ε/r_n)` while `r_n > ε/2`, and
//! the ε-Szlenk index is one plus the first n with `r_n <= ε/2`. For
//! ℓ_p-sums the iterates and the index have closed forms used here as
//! oracles.

use crate::bounds::{conjugate_exponent, lp_radius};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use crate::textfmt::sig12;

/// Absolute tolerance for the termination tie `r_n = ε/2`: floating
/// point ties resolve toward termination.
pub const TIE_TOL: f64 = 1e-12;

/// Default iteration budget.
pub const DEFAULT_MAX_N: usize = 1_000_000;

/// The radii `r_1, r_2, …` of iterated derivation balls at one ε.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationTrace {
    pub eps: f64,
    pub radii: Vec<f64>,
    /// False when the budget ran out before `r_n <= ε/2`.
    pub terminated: bool,
}

impl IterationTrace {
    /// `min{n : r_n <= ε/2}` (1-based); `None` on a partial trace.
    pub fn terminal_index(&self) -> Option<usize> {
        self.terminated.then_some(self.radii.len())
    }

    /// `Sz(X, ε) = 1 + terminal_index`.
    pub fn szlenk_index(&self) -> Option<usize> {
        self.terminal_index().map(|m| m + 1)
    }

    /// CSV rows `n,r_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r_n\n");
        for (i, r) in self.radii.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, sig12(*r)));
        }
        out
    }

    /// JSON summary `{eps, terminal_index, szlenk_index, terminated}`.
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "eps": self.eps,
            "terminal_index": self.terminal_index(),
            "szlenk_index": self.szlenk_index(),
            "terminated": self.terminated,
        })
    }
}

/// Runs the recursion `r_1 = r(ε)`, `r_{n+1} = r_n · r(ε/r_n)` while
/// `r_n > ε/2`, for a black-box radius function with values in `[0, 1]`.
/// Values outside `[0, 1]` abort with an invariant error rather than
/// being clamped.
pub fn iterate_radii<F>(r: F, eps: f64, max_n: usize) -> Result<IterationTrace>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(eps > 0.0 && eps < 2.0) {
        return Err(Error::domain(format!("eps must lie in (0, 2), got {eps}")));
    }
    let eval = |e: f64| -> Result<f64> {
        let v = r(e)?;
        if !(0.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(Error::Invariant(format!(
                "radius function returned {v} at eps = {e}, outside [0, 1]"
            )));
        }
        Ok(v)
    };
    let half = eps / 2.0;
    let mut radii = Vec::new();
    let mut current = eval(eps)?;
    radii.push(current);
    while current > half + TIE_TOL {
        if radii.len() >= max_n {
            return Ok(IterationTrace { eps, radii, terminated: false });
        }
        // current > eps/2 guarantees eps/current stays in (0, 2)
        current *= eval(eps / current)?;
        radii.push(current);
    }
    Ok(IterationTrace { eps, radii, terminated: true })
}

/// `Sz(X, ε) = 1 + min{n : r_n <= ε/2}` via the recursion; errors when
/// the budget is exhausted first.
pub fn szlenk_index<F>(r: F, eps: f64, max_n: usize) -> Result<usize>
where
    F: Fn(f64) -> Result<f64>,
{
    let trace = iterate_radii(r, eps, max_n)?;
    trace
        .szlenk_index()
        .ok_or(Error::BudgetExceeded { max_n })
}

/// Closed-form n-th iterated radius for ℓ_p-sums:
/// `(1 − n(ε/2)^q)^{1/q}`, or 0 with `depleted = true` once the bracket
/// is non-positive.
pub fn lp_iterated_radius(p: f64, eps: f64, n: usize) -> Result<(f64, bool)> {
    if n == 0 {
        return Err(Error::domain("iterate index n starts at 1"));
    }
    let q = conjugate_exponent(p)?;
    if !(eps > 0.0 && eps < 2.0) {
        return Err(Error::domain(format!("eps must lie in (0, 2), got {eps}")));
    }
    let bracket = 1.0 - n as f64 * (eps / 2.0).powf(q);
    if bracket <= 0.0 {
        Ok((0.0, true))
    } else {
        Ok((bracket.powf(1.0 / q), false))
    }
}

/// Closed-form ε-Szlenk index of an ℓ_p-sum: `⌈(ε/2)^{−q}⌉`. Values
/// within `1e-9` (relative) of an integer round to it first, matching
/// the recursion's tie rule.
pub fn lp_szlenk_index(p: f64, eps: f64) -> Result<usize> {
    let q = conjugate_exponent(p)?;
    if !(eps > 0.0 && eps < 2.0) {
        return Err(Error::domain(format!("eps must lie in (0, 2), got {eps}")));
    }
    let v = (eps / 2.0).powf(-q);
    let nearest = v.round();
    let ceiled = if (v - nearest).abs() <= 1e-9 * v.max(1.0) {
        nearest
    } else {
        v.ceil()
    };
    Ok(ceiled as usize)
}

/// The ℓ_p radius as a radius function for [`iterate_radii`].
pub fn lp_radius_fn(p: f64) -> impl Fn(f64) -> Result<f64> {
    move |eps| lp_radius(p, eps)
}
