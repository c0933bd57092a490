//! Finite-truncation space models and numerical verification of the
//! witness constructions behind the radius bounds.
//!
//! A model pairs a dual-norm evaluator with a reference-norm evaluator,
//! equivalence constants, a modulus triple and a truncation horizon.
//! On such a model the two proof constructions can be executed
//! concretely: the perturbed-projection witness pair that certifies the
//! lower bound, and the head/tail estimate that certifies the upper
//! bound.

use crate::bounds::{EquivalenceConstants, ModulusTriple};
use crate::error::{Error, Result};
use crate::orlicz::{luxemburg_norm, OrliczFunction};
use crate::rng::Probe;
use crate::sparse::{lp_norm, SparseVector};
use serde::{Deserialize, Serialize};

/// Guard band for strict inequalities so exact-arithmetic boundary
/// constructions classify deterministically.
pub const GUARD: f64 = 1e-12;

/// A norm given by a named family, so models stay serializable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormSpec {
    Power { power: f64 },
    Quartic { quartic: QuarticNorm },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuarticNorm {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

impl NormSpec {
    pub fn power(q: f64) -> Self {
        NormSpec::Power { power: q }
    }

    pub fn quartic(a: f64, b: f64) -> Self {
        NormSpec::Quartic { quartic: QuarticNorm { a, b } }
    }

    pub fn evaluate(&self, x: &SparseVector) -> Result<f64> {
        match self {
            NormSpec::Power { power } => lp_norm(*power, x),
            NormSpec::Quartic { quartic } => {
                let m = OrliczFunction::quartic(quartic.a, quartic.b)?;
                luxemburg_norm(&m, x)
            }
        }
    }
}

/// JSON-facing model specification:
/// `{"dual": .., "z": .., "c1": .., "c2": .., "triple": [..], "mu": .., "dim": ..}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub dual: NormSpec,
    pub z: NormSpec,
    pub c1: f64,
    pub c2: f64,
    pub triple: ModulusTriple,
    pub mu: f64,
    pub dim: u64,
}

/// A truncation model of a dual space.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "ModelSpec", into = "ModelSpec")]
pub struct SpaceModel {
    dual: NormSpec,
    z: NormSpec,
    pub consts: EquivalenceConstants,
    pub triple: ModulusTriple,
    pub mu: f64,
    pub basis_dim: u64,
}

impl TryFrom<ModelSpec> for SpaceModel {
    type Error = Error;
    fn try_from(s: ModelSpec) -> Result<Self> {
        SpaceModel::new(
            s.dual,
            s.z,
            EquivalenceConstants::new(s.c1, s.c2)?,
            s.triple,
            s.mu,
            s.dim,
        )
    }
}

impl From<SpaceModel> for ModelSpec {
    fn from(m: SpaceModel) -> Self {
        ModelSpec {
            dual: m.dual,
            z: m.z,
            c1: m.consts.c1,
            c2: m.consts.c2,
            triple: m.triple,
            mu: m.mu,
            dim: m.basis_dim,
        }
    }
}

impl SpaceModel {
    pub fn new(
        dual: NormSpec,
        z: NormSpec,
        consts: EquivalenceConstants,
        triple: ModulusTriple,
        mu: f64,
        basis_dim: u64,
    ) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::domain(format!("mu must be positive, got {mu}")));
        }
        if basis_dim < 2 {
            return Err(Error::domain("basis_dim must be at least 2"));
        }
        let model = SpaceModel { dual, z, consts, triple, mu, basis_dim };
        // sanity gate: mu should match z_norm(e_n) along the upper half
        // of the truncation (a finite surrogate for the limsup)
        for n in (basis_dim / 2).max(1)..=basis_dim {
            let zn = model.z_norm(&SparseVector::unit(n))?;
            if (zn - mu).abs() > 1e-6 * mu {
                return Err(Error::domain(format!(
                    "mu = {mu} inconsistent with z_norm(e_{n}) = {zn}"
                )));
            }
        }
        Ok(model)
    }

    /// The ℓ_q model: dual and reference norms both ℓ_q, triple t^q,
    /// C₁ = C₂ = μ = 1.
    pub fn lq_model(q: f64, basis_dim: u64) -> Result<Self> {
        SpaceModel::new(
            NormSpec::power(q),
            NormSpec::power(q),
            EquivalenceConstants::unit(),
            ModulusTriple::power(q)?,
            1.0,
            basis_dim,
        )
    }

    pub fn dual_norm(&self, x: &SparseVector) -> Result<f64> {
        self.dual.evaluate(x)
    }

    pub fn z_norm(&self, x: &SparseVector) -> Result<f64> {
        self.z.evaluate(x)
    }

    /// Lower-bound radius expression `ρ(t) = C₁φ⁻¹{χ(1/C₂) − ψ(t/(2C₁))}`.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let bracket = self.triple.chi.evaluate(1.0 / self.consts.c2)?
            - self.triple.psi.evaluate(t / (2.0 * self.consts.c1))?;
        Ok(self.consts.c1 * self.triple.phi.inverse(bracket.max(0.0))?)
    }

    /// Upper-bound radius expression `ϱ(t) = C₂φ⁻¹{χ(1/C₁) − ψ(t/(2C₂))}`.
    pub fn varrho(&self, t: f64) -> Result<f64> {
        let bracket = self.triple.chi.evaluate(1.0 / self.consts.c1)?
            - self.triple.psi.evaluate(t / (2.0 * self.consts.c2))?;
        Ok(self.consts.c2 * self.triple.phi.inverse(bracket.max(0.0))?)
    }

    /// The open upper end of the lower bound's eps domain,
    /// `2C₁ψ⁻¹(χ(1/C₂))`.
    pub fn lower_cutoff(&self) -> Result<f64> {
        crate::bounds::lower_cutoff(&self.triple, &self.consts)
    }
}

/// The witness pair `y_{n,±} = P_n(x₀) ± (ε′/(2C₁μ)) e_{n+1}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessPair {
    pub y_plus: SparseVector,
    pub y_minus: SparseVector,
    pub n: u64,
    /// Dual norm of `y₊ − y₋`.
    pub separation: f64,
    /// Larger of the two dual norms.
    pub max_norm: f64,
}

/// Outcome of one lower-bound witness check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessVerdict {
    pub pair: WitnessPair,
    /// separation > eps
    pub separated: bool,
    /// both norms <= 1
    pub inside_ball: bool,
}

impl WitnessVerdict {
    pub fn both(&self) -> bool {
        self.separated && self.inside_ball
    }
}

/// Builds and checks the witness pair of the lower-bound proof at a
/// fixed coordinate `n`: the pair must be ε-separated yet stay in the
/// unit ball. Requires `eps < eps1 < eps2` inside the validity domain,
/// `‖x₀‖ <= ρ(eps2)` and `n + 1` within the truncation.
pub fn thm2_witness_check(
    model: &SpaceModel,
    x0: &SparseVector,
    eps: f64,
    eps1: f64,
    eps2: f64,
    n: u64,
) -> Result<WitnessVerdict> {
    let cutoff = model.lower_cutoff()?;
    if !(0.0 < eps && eps < eps1 && eps1 < eps2 && eps2 < cutoff) {
        return Err(Error::domain(format!(
            "need 0 < eps < eps1 < eps2 < cutoff = {cutoff}; got {eps}, {eps1}, {eps2}"
        )));
    }
    if n + 1 > model.basis_dim {
        return Err(Error::domain(format!(
            "witness coordinate {} exceeds basis_dim {}",
            n + 1,
            model.basis_dim
        )));
    }
    let rho2 = model.rho(eps2)?;
    let x0_norm = model.dual_norm(x0)?;
    if x0_norm > rho2 + GUARD {
        return Err(Error::domain(format!(
            "center norm {x0_norm} exceeds rho(eps2) = {rho2}"
        )));
    }
    let head = x0.project(n);
    let spike = SparseVector::unit(n + 1).scale(eps1 / (2.0 * model.consts.c1 * model.mu));
    let y_plus = head.add(&spike);
    let y_minus = head.sub(&spike);
    let separation = model.dual_norm(&y_plus.sub(&y_minus))?;
    let max_norm = model.dual_norm(&y_plus)?.max(model.dual_norm(&y_minus)?);
    Ok(WitnessVerdict {
        separated: separation > eps - GUARD,
        inside_ball: max_norm <= 1.0 + GUARD,
        pair: WitnessPair { y_plus, y_minus, n, separation, max_norm },
    })
}

/// Checks the head/tail estimate of the upper-bound proof: for `x` in
/// the unit ball with `‖P_N(x − x₀)‖ < δ` and `‖P_N(x₀)‖ > ϱ(ε′)`, the
/// tail obeys `‖(I−P_N)x‖ < C₂·A(δ)` with
/// `A(δ) = ψ⁻¹{χ(1/C₁) − φ((ϱ(ε′)−δ)/C₂)}`.
pub fn thm1_tail_bound_check(
    model: &SpaceModel,
    x: &SparseVector,
    x0: &SparseVector,
    n_proj: u64,
    delta: f64,
    eps1: f64,
) -> Result<bool> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!("delta must be positive, got {delta}")));
    }
    if !(eps1 > 0.0 && eps1 < 2.0) {
        return Err(Error::domain(format!("eps1 must lie in (0, 2), got {eps1}")));
    }
    let x_norm = model.dual_norm(x)?;
    if x_norm > 1.0 + GUARD {
        return Err(Error::domain(format!("x lies outside the unit ball: norm {x_norm}")));
    }
    let membership = model.dual_norm(&x.sub(x0).project(n_proj))?;
    if membership >= delta {
        return Err(Error::domain(format!(
            "x is not in V_delta: ||P_N(x - x0)|| = {membership} >= {delta}"
        )));
    }
    let varrho = model.varrho(eps1)?;
    let head0 = model.dual_norm(&x0.project(n_proj))?;
    if head0 <= varrho {
        return Err(Error::domain(format!(
            "||P_N(x0)|| = {head0} does not exceed varrho(eps1) = {varrho}"
        )));
    }
    let arg = ((varrho - delta) / model.consts.c2).max(0.0);
    let bracket = model.triple.chi.evaluate(1.0 / model.consts.c1)? - model.triple.phi.evaluate(arg)?;
    let a_delta = model.triple.psi.inverse(bracket.max(0.0))?;
    let tail = model.dual_norm(&x.tail(n_proj))?;
    Ok(tail < model.consts.c2 * a_delta + GUARD)
}

/// Which of the two head/tail inequalities a probe run checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `φ(head) + ψ(tail) <= χ(whole)`: slack >= 0 required.
    Forward,
    /// `χ(whole) <= φ(head) + ψ(tail)`: slack <= 0 required.
    Reverse,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "reverse" => Ok(Direction::Reverse),
            other => Err(Error::Parse(format!("unknown direction '{other}'"))),
        }
    }
}

/// Slack tolerance for the head/tail inequality probes.
pub const SLACK_TOL: f64 = 1e-9;

/// Outcome of a randomized head/tail inequality scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub direction: Direction,
    /// Most adverse signed slack `χ(‖x‖_Z) − φ(‖P_n x‖_Z) − ψ(‖tail‖_Z)`
    /// seen (minimum for forward, maximum for reverse).
    pub worst_slack: f64,
    /// Smallest n in the probed range from which the inequality held
    /// for every sample at every later n; `None` if no such horizon.
    pub first_good_n: Option<u64>,
    pub samples: usize,
    pub violations: usize,
    pub pass: bool,
}

/// Samples random vectors supported in `[1, basis_dim]` and evaluates
/// the signed head/tail slack for every `n` in `n_range`.
pub fn inequality_probe(
    model: &SpaceModel,
    direction: Direction,
    samples: usize,
    n_range: (u64, u64),
    seed: u64,
) -> Result<ProbeReport> {
    let (n_lo, n_hi) = n_range;
    if n_lo > n_hi || n_hi > model.basis_dim {
        return Err(Error::domain(format!(
            "n range ({n_lo}, {n_hi}) must be increasing and within basis_dim {}",
            model.basis_dim
        )));
    }
    let mut rng = Probe::new(seed);
    let mut worst = match direction {
        Direction::Forward => f64::INFINITY,
        Direction::Reverse => f64::NEG_INFINITY,
    };
    let n_count = (n_hi - n_lo + 1) as usize;
    let mut ok_at_n = vec![true; n_count];
    let mut violations = 0usize;
    for _ in 0..samples {
        let x = rng.sparse_vector(12, model.basis_dim, 5.0);
        let whole = model.triple.chi.evaluate(model.z_norm(&x)?)?;
        for n in n_lo..=n_hi {
            let head = model.triple.phi.evaluate(model.z_norm(&x.project(n))?)?;
            let tail = model.triple.psi.evaluate(model.z_norm(&x.tail(n))?)?;
            let slack = whole - head - tail;
            let ok = match direction {
                Direction::Forward => {
                    worst = worst.min(slack);
                    slack >= -SLACK_TOL
                }
                Direction::Reverse => {
                    worst = worst.max(slack);
                    slack <= SLACK_TOL
                }
            };
            if !ok {
                ok_at_n[(n - n_lo) as usize] = false;
                violations += 1;
            }
        }
    }
    // smallest n from which everything later is clean
    let mut first_good_n = None;
    for (i, ok) in ok_at_n.iter().enumerate().rev() {
        if *ok {
            first_good_n = Some(n_lo + i as u64);
        } else {
            break;
        }
    }
    Ok(ProbeReport {
        direction,
        worst_slack: worst,
        first_good_n,
        samples,
        violations,
        pass: first_good_n == Some(n_lo),
    })
}
