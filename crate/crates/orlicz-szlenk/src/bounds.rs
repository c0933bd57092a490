//! Enveloping-ball radius bounds for the Szlenk derivation of the dual
//! unit ball.
//!
//! Given a modulus triple (φ, ψ, χ) relating head/tail norms and the
//! equivalence constants between the dual norm and the reference norm,
//! the upper bound on the enveloping radius is
//! `C₂ φ⁻¹{χ(1/C₁) − ψ(ε/(2C₂))}` and the lower bound, valid for
//! `ε < 2C₁ψ⁻¹(χ(1/C₂))`, is `C₁ φ⁻¹{χ(1/C₂) − ψ(ε/(2C₁))}`. When the
//! triple satisfies the head/tail identity exactly and C₁ = C₂ = 1 the
//! two coincide and give the derivation ball radius exactly.

use crate::error::{Error, Result};
use crate::orlicz::OrliczFunction;
use crate::textfmt::sig12;
use serde::{Deserialize, Serialize};

/// Three continuous bijections of `[0, ∞)`, each a posynomial.
///
/// Serializes as a 3-element array `[phi, psi, chi]` of function specs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<OrliczFunction>", into = "Vec<OrliczFunction>")]
pub struct ModulusTriple {
    pub phi: OrliczFunction,
    pub psi: OrliczFunction,
    pub chi: OrliczFunction,
}

impl TryFrom<Vec<OrliczFunction>> for ModulusTriple {
    type Error = Error;
    fn try_from(mut v: Vec<OrliczFunction>) -> Result<Self> {
        if v.len() != 3 {
            return Err(Error::domain(format!(
                "a modulus triple needs exactly 3 functions, got {}",
                v.len()
            )));
        }
        let chi = v.pop().unwrap();
        let psi = v.pop().unwrap();
        let phi = v.pop().unwrap();
        Ok(ModulusTriple { phi, psi, chi })
    }
}

impl From<ModulusTriple> for Vec<OrliczFunction> {
    fn from(t: ModulusTriple) -> Self {
        vec![t.phi, t.psi, t.chi]
    }
}

impl ModulusTriple {
    pub fn new(phi: OrliczFunction, psi: OrliczFunction, chi: OrliczFunction) -> Self {
        ModulusTriple { phi, psi, chi }
    }

    /// φ = ψ = χ = t^q, the triple of an ℓ_q head/tail identity.
    pub fn power(q: f64) -> Result<Self> {
        let m = OrliczFunction::power(q)?;
        Ok(ModulusTriple::new(m.clone(), m.clone(), m))
    }
}

/// Two-sided comparison constants between the dual norm and the
/// reference norm, `0 < C₁ <= C₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceConstants {
    pub c1: f64,
    pub c2: f64,
}

impl EquivalenceConstants {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1 > 0.0) || !c1.is_finite() {
            return Err(Error::domain(format!("C1 must be positive, got {c1}")));
        }
        if !(c2 >= c1) || !c2.is_finite() {
            return Err(Error::domain(format!("need C1 <= C2, got C1 = {c1}, C2 = {c2}")));
        }
        Ok(EquivalenceConstants { c1, c2 })
    }

    pub fn unit() -> Self {
        EquivalenceConstants { c1: 1.0, c2: 1.0 }
    }
}

fn check_eps_open_0_2(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 2.0) {
        return Err(Error::domain(format!("eps must lie in (0, 2), got {eps}")));
    }
    Ok(())
}

/// Upper bound on the enveloping radius: `C₂ φ⁻¹{χ(1/C₁) − ψ(ε/(2C₂))}`,
/// clamped at 0 when the bracket goes negative.
pub fn upper_radius(
    triple: &ModulusTriple,
    consts: &EquivalenceConstants,
    eps: f64,
) -> Result<f64> {
    check_eps_open_0_2(eps)?;
    let bracket =
        triple.chi.evaluate(1.0 / consts.c1)? - triple.psi.evaluate(eps / (2.0 * consts.c2))?;
    Ok(consts.c2 * triple.phi.inverse(bracket.max(0.0))?)
}

/// The open upper end `2C₁ψ⁻¹(χ(1/C₂))` of the lower bound's validity
/// domain.
pub fn lower_cutoff(triple: &ModulusTriple, consts: &EquivalenceConstants) -> Result<f64> {
    Ok(2.0 * consts.c1 * triple.psi.inverse(triple.chi.evaluate(1.0 / consts.c2)?)?)
}

/// Lower bound on the contained-ball radius:
/// `C₁ φ⁻¹{χ(1/C₂) − ψ(ε/(2C₁))}` for `0 < ε < 2C₁ψ⁻¹(χ(1/C₂))`.
/// Outside that open interval the theorem claims nothing, so this is a
/// hard error carrying the cutoff, not a silent 0.
pub fn lower_radius(
    triple: &ModulusTriple,
    consts: &EquivalenceConstants,
    eps: f64,
) -> Result<f64> {
    let cutoff = lower_cutoff(triple, consts)?;
    if !(eps > 0.0 && eps < cutoff) {
        return Err(Error::OutsideValidity { eps, cutoff });
    }
    let bracket =
        triple.chi.evaluate(1.0 / consts.c2)? - triple.psi.evaluate(eps / (2.0 * consts.c1))?;
    // strictly positive inside the domain; clamp only fp underflow
    Ok(consts.c1 * triple.phi.inverse(bracket.max(0.0))?)
}

/// Exact derivation ball radius `φ⁻¹(χ(1) − ψ(ε/2))` when the head/tail
/// identity holds with C₁ = C₂ = 1.
pub fn exact_radius(triple: &ModulusTriple, eps: f64) -> Result<f64> {
    check_eps_open_0_2(eps)?;
    let bracket = triple.chi.evaluate(1.0)? - triple.psi.evaluate(eps / 2.0)?;
    triple.phi.inverse(bracket.max(0.0))
}

/// The conjugate exponent `q = p/(p−1)` for `p` in `(1, ∞)`.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::domain(format!("conjugate exponent requires p in (1, ∞), got {p}")));
    }
    Ok(p / (p - 1.0))
}

/// Derivation ball radius `(1 − (ε/2)^q)^{1/q}` of an ℓ_p-sum of
/// finite-dimensional spaces, `1/p + 1/q = 1`.
pub fn lp_radius(p: f64, eps: f64) -> Result<f64> {
    let q = conjugate_exponent(p)?;
    check_eps_open_0_2(eps)?;
    Ok((1.0 - (eps / 2.0).powf(q)).max(0.0).powf(1.0 / q))
}

/// Both bounds tabulated over an ε-grid. `lower` is `None` where ε lies
/// outside the lower bound's validity domain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusProfile {
    pub epsilons: Vec<f64>,
    pub lower: Vec<Option<f64>>,
    pub upper: Vec<f64>,
    pub validity_cutoff: f64,
}

impl RadiusProfile {
    /// CSV with header `eps,lower,upper,valid_lower`; lower is left
    /// empty where out of domain.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,lower,upper,valid_lower\n");
        for i in 0..self.epsilons.len() {
            let lower = self.lower[i].map(sig12).unwrap_or_default();
            let valid = self.lower[i].is_some();
            out.push_str(&format!(
                "{},{},{},{}\n",
                sig12(self.epsilons[i]),
                lower,
                sig12(self.upper[i]),
                valid
            ));
        }
        out
    }
}

/// Tabulates [`upper_radius`] and [`lower_radius`] over a sorted grid of
/// interior points of `(0, 2)`.
pub fn radius_profile(
    triple: &ModulusTriple,
    consts: &EquivalenceConstants,
    eps_grid: &[f64],
) -> Result<RadiusProfile> {
    if eps_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain("eps grid must be sorted"));
    }
    for &e in eps_grid {
        check_eps_open_0_2(e)?;
    }
    let cutoff = lower_cutoff(triple, consts)?;
    let mut lower = Vec::with_capacity(eps_grid.len());
    let mut upper = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        upper.push(upper_radius(triple, consts, eps)?);
        lower.push(match lower_radius(triple, consts, eps) {
            Ok(v) => Some(v),
            Err(Error::OutsideValidity { .. }) => None,
            Err(e) => return Err(e),
        });
    }
    Ok(RadiusProfile {
        epsilons: eps_grid.to_vec(),
        lower,
        upper,
        validity_cutoff: cutoff,
    })
}
