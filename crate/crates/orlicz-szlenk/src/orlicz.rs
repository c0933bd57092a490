//! Non-degenerate Orlicz functions and Luxemburg norms.
//!
//! Orlicz functions are represented as posynomials `Σ aᵢ t^{pᵢ}` with
//! `aᵢ > 0` and `pᵢ >= 1`. Every member of this family is continuous,
//! convex, strictly increasing and unbounded, so non-degeneracy is
//! structural; `validate_orlicz` re-checks the properties numerically on
//! a grid anyway.

use crate::error::{Error, Result};
use crate::roots;
use crate::sparse::{lp_norm, SparseVector};
use serde::{Deserialize, Serialize};

/// A posynomial Orlicz function `M(t) = Σ aᵢ t^{pᵢ}`.
///
/// Serializes as `{"terms":[[a,p],...]}`; also deserializes from the
/// shortcuts `{"power": q}` and `{"quartic":{"A":..,"B":..}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionSpec", into = "FunctionSpec")]
pub struct OrliczFunction {
    terms: Vec<(f64, f64)>,
}

/// JSON-facing representation of an Orlicz function.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Terms { terms: Vec<(f64, f64)> },
    Power { power: f64 },
    Quartic { quartic: QuarticSpec },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuarticSpec {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

impl TryFrom<FunctionSpec> for OrliczFunction {
    type Error = Error;
    fn try_from(spec: FunctionSpec) -> Result<Self> {
        match spec {
            FunctionSpec::Terms { terms } => OrliczFunction::new(terms),
            FunctionSpec::Power { power } => OrliczFunction::power(power),
            FunctionSpec::Quartic { quartic } => OrliczFunction::quartic(quartic.a, quartic.b),
        }
    }
}

impl From<OrliczFunction> for FunctionSpec {
    fn from(m: OrliczFunction) -> Self {
        FunctionSpec::Terms { terms: m.terms }
    }
}

impl OrliczFunction {
    /// Builds a posynomial from `(coefficient, exponent)` terms.
    /// Coefficients must be positive and exponents at least 1.
    pub fn new(terms: Vec<(f64, f64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("an Orlicz function needs at least one term"));
        }
        for &(a, p) in &terms {
            if !(a > 0.0) || !a.is_finite() {
                return Err(Error::domain(format!("coefficient must be positive, got {a}")));
            }
            if !(p >= 1.0) || !p.is_finite() {
                return Err(Error::domain(format!("exponent must be >= 1, got {p}")));
            }
        }
        Ok(OrliczFunction { terms })
    }

    /// The power function `t^q`.
    pub fn power(q: f64) -> Result<Self> {
        OrliczFunction::new(vec![(1.0, q)])
    }

    /// The quartic family `M_{A,B}(t) = A t^4 + B t^2`. `A = 0`
    /// degenerates to the scaled square exactly.
    pub fn quartic(a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::domain(format!("quartic family requires B > 0, got {b}")));
        }
        if a < 0.0 {
            return Err(Error::domain(format!("quartic family requires A >= 0, got {a}")));
        }
        let mut terms = Vec::new();
        if a > 0.0 {
            terms.push((a, 4.0));
        }
        terms.push((b, 2.0));
        OrliczFunction::new(terms)
    }

    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    /// Evaluates `M(t) = Σ aᵢ t^{pᵢ}` for `t >= 0`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::domain(format!("Orlicz functions are defined on [0, ∞), got {t}")));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(self.terms.iter().map(|&(a, p)| a * t.powf(p)).sum())
    }

    /// The inverse bijection: the unique `t >= 0` with `M(t) = y`.
    /// Single-term posynomials invert in closed form; otherwise a
    /// bracketing bisection to relative tolerance 1e-12.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !y.is_finite() || y < 0.0 {
            return Err(Error::domain(format!("inverse requires finite y >= 0, got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if let [(a, p)] = self.terms[..] {
            return Ok((y / a).powf(1.0 / p));
        }
        roots::solve_increasing(|t| self.terms.iter().map(|&(a, p)| a * t.powf(p)).sum(), y)
    }
}

/// The Luxemburg norm `inf{λ > 0 : Σ M(|x_n|/λ) <= 1}`. For finite
/// support this is the unique `λ` with the sum equal to 1, or 0 for the
/// zero vector.
pub fn luxemburg_norm(m: &OrliczFunction, x: &SparseVector) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    let sum = |lambda: f64| -> f64 {
        x.values()
            .map(|v| m.evaluate(v.abs() / lambda).expect("nonnegative argument"))
            .sum()
    };
    roots::solve_decreasing_unit(sum)
}

/// Closed-form Luxemburg norm for `M_{A,B}(t) = A t^4 + B t^2`:
/// `sqrt((B‖x‖₂² + sqrt(B²‖x‖₂⁴ + 4A‖x‖₄⁴)) / 2)`.
pub fn quartic_norm_closed_form(a: f64, b: f64, x: &SparseVector) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("closed form requires B > 0, got {b}")));
    }
    if a < 0.0 {
        return Err(Error::domain(format!("closed form requires A >= 0, got {a}")));
    }
    let n2 = lp_norm(2.0, x)?;
    let n4 = lp_norm(4.0, x)?;
    let n2sq = n2 * n2;
    let disc = (b * b * n2sq * n2sq + 4.0 * a * n4.powi(4)).sqrt();
    Ok(((b * n2sq + disc) / 2.0).sqrt())
}

/// The sandwich constants of the quartic example:
/// `C₁ = sqrt(B)`, `C₂ = sqrt((B + sqrt(B² + 4A)) / 2)`.
pub fn mab_constants(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("constants require B > 0, got {b}")));
    }
    if a < 0.0 {
        return Err(Error::domain(format!("constants require A >= 0, got {a}")));
    }
    let c1 = b.sqrt();
    let c2 = ((b + (b * b + 4.0 * a).sqrt()) / 2.0).sqrt();
    Ok((c1, c2))
}

/// One property check inside a [`ValidationReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Grid report for the defining properties of a non-degenerate Orlicz
/// function. Failures are entries, never errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<PropertyCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks `M(0) = 0`, positivity, strict monotonicity, midpoint
/// convexity and growth past `growth_threshold` on a sorted grid.
pub fn validate_orlicz(
    m: &OrliczFunction,
    grid: &[f64],
    growth_threshold: f64,
) -> Result<ValidationReport> {
    if grid.is_empty() {
        return Err(Error::domain("validation grid must be non-empty"));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) || grid.iter().any(|&t| !(t >= 0.0)) {
        return Err(Error::domain("validation grid must be sorted and nonnegative"));
    }
    let vals: Vec<f64> = grid.iter().map(|&t| m.evaluate(t)).collect::<Result<_>>()?;
    let mut checks = Vec::new();

    let zero = m.evaluate(0.0)?;
    checks.push(PropertyCheck {
        name: "zero_at_zero".into(),
        pass: zero == 0.0,
        detail: format!("M(0) = {zero}"),
    });

    let pos = grid
        .iter()
        .zip(&vals)
        .filter(|(&t, _)| t > 0.0)
        .all(|(_, &v)| v > 0.0);
    checks.push(PropertyCheck {
        name: "positivity".into(),
        pass: pos,
        detail: "M(t) > 0 for grid points t > 0".into(),
    });

    let mono = grid
        .windows(2)
        .zip(vals.windows(2))
        .filter(|(g, _)| g[0] < g[1])
        .all(|(_, v)| v[0] < v[1]);
    checks.push(PropertyCheck {
        name: "strict_monotonicity".into(),
        pass: mono,
        detail: "M strictly increasing along the grid".into(),
    });

    let mut convex = true;
    for w in grid.windows(3) {
        let mid = m.evaluate((w[0] + w[2]) / 2.0)?;
        let chord = (m.evaluate(w[0])? + m.evaluate(w[2])?) / 2.0;
        if mid > chord + 1e-12 * chord.max(1.0) {
            convex = false;
            break;
        }
    }
    checks.push(PropertyCheck {
        name: "midpoint_convexity".into(),
        pass: convex,
        detail: "M((a+c)/2) <= (M(a)+M(c))/2 on grid triples".into(),
    });

    let top = *vals.last().unwrap();
    checks.push(PropertyCheck {
        name: "growth".into(),
        pass: top > growth_threshold,
        detail: format!("M({}) = {top} vs threshold {growth_threshold}", grid.last().unwrap()),
    });

    Ok(ValidationReport { checks })
}
