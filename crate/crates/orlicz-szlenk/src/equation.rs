//! Numerical checks for the functional-equation characterization of
//! power Orlicz functions.
//!
//! The head/tail norm identity for an Orlicz sequence space is
//! equivalent to a partition-invariance condition on φ, which in turn
//! forces `F_φ(s,t) = φ⁻¹(φ(s) + φ(t))` to be homogeneous and to satisfy
//! a normalization identity. Power functions satisfy all of these
//! exactly; any posynomial mixing two exponents fails them by a
//! residual far above solver noise. This module measures the residuals.

use crate::error::{Error, Result};
use crate::orlicz::OrliczFunction;
use crate::roots;
use serde::{Deserialize, Serialize};

/// Pass tolerance separating root-finder noise from genuine violation.
pub const PASS_TOL: f64 = 1e-9;

/// Residual scan outcome over a probe set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_residual: f64,
    /// Probe point attaining the maximum.
    pub argmax_point: (f64, f64),
    pub samples: usize,
    pub tolerance: f64,
    pub verdict: bool,
}

impl ResidualReport {
    fn from_scan(residuals: impl IntoIterator<Item = ((f64, f64), f64)>, tolerance: f64) -> Self {
        let mut max_residual = 0.0;
        let mut argmax_point = (0.0, 0.0);
        let mut samples = 0;
        for (point, r) in residuals {
            samples += 1;
            if r > max_residual {
                max_residual = r;
                argmax_point = point;
            }
        }
        ResidualReport {
            max_residual,
            argmax_point,
            samples,
            tolerance,
            verdict: max_residual <= tolerance,
        }
    }
}

/// `F_φ(s, t) = φ⁻¹(φ(s) + φ(t))`.
pub fn f_phi(m: &OrliczFunction, s: f64, t: f64) -> Result<f64> {
    m.inverse(m.evaluate(s)? + m.evaluate(t)?)
}

/// Homogeneity residual `|F(ks, kt) − k·F(s, t)| / max(1, k·F(s, t))`
/// over a probe set. Zero exactly when φ is a power function.
pub fn homogeneity_residual(
    m: &OrliczFunction,
    points: &[(f64, f64)],
    k: f64,
    tolerance: f64,
) -> Result<ResidualReport> {
    if !(k > 0.0) {
        return Err(Error::domain(format!("scaling factor must be positive, got {k}")));
    }
    let mut scan = Vec::with_capacity(points.len());
    for &(s, t) in points {
        let scaled = f_phi(m, k * s, k * t)?;
        let base = k * f_phi(m, s, t)?;
        scan.push(((s, t), (scaled - base).abs() / base.max(1.0)));
    }
    Ok(ResidualReport::from_scan(scan, tolerance))
}

/// Residual of `F(αs/F(s,t), αt/F(s,t)) = α` with `α = φ⁻¹(1)`, over
/// probes with `s, t > 0`.
pub fn normalization_residual(
    m: &OrliczFunction,
    points: &[(f64, f64)],
    tolerance: f64,
) -> Result<ResidualReport> {
    let alpha = m.inverse(1.0)?;
    let mut scan = Vec::with_capacity(points.len());
    for &(s, t) in points {
        let f = f_phi(m, s, t)?;
        if f == 0.0 {
            // only at s = t = 0; no normalized point exists there
            continue;
        }
        let inner = f_phi(m, alpha * s / f, alpha * t / f)?;
        scan.push(((s, t), (inner - alpha).abs() / alpha));
    }
    Ok(ResidualReport::from_scan(scan, tolerance))
}

/// Residual `|LHS − 1|` of the partition-invariance identity
/// `Σφ(λsᵢ/ν) + Σφ(μtⱼ/ν) = 1` with `ν = φ⁻¹(φ(λ) + φ(μ))`, for
/// partitions already normalized to `Σφ(sᵢ) = Σφ(tⱼ) = 1`.
pub fn star_condition_residual(
    m: &OrliczFunction,
    s_part: &[f64],
    t_part: &[f64],
    lambda: f64,
    mu: f64,
) -> Result<f64> {
    if !(lambda > 0.0 && mu > 0.0) {
        return Err(Error::domain(format!(
            "lambda and mu must be positive, got {lambda}, {mu}"
        )));
    }
    let unit_sum = |part: &[f64]| -> Result<f64> {
        part.iter().map(|&s| m.evaluate(s)).sum()
    };
    let s_sum = unit_sum(s_part)?;
    let t_sum = unit_sum(t_part)?;
    if (s_sum - 1.0).abs() > 1e-10 || (t_sum - 1.0).abs() > 1e-10 {
        return Err(Error::domain(format!(
            "partitions must satisfy sum phi = 1; got {s_sum} and {t_sum}"
        )));
    }
    let nu = m.inverse(m.evaluate(lambda)? + m.evaluate(mu)?)?;
    let lhs = s_part
        .iter()
        .map(|&s| m.evaluate(lambda * s / nu))
        .chain(t_part.iter().map(|&t| m.evaluate(mu * t / nu)))
        .sum::<Result<f64>>()?;
    Ok((lhs - 1.0).abs())
}

/// Rescales a raw positive partition so that `Σφ(sᵢ) = 1`, by solving
/// for the scalar with a bracketing root-find.
pub fn normalize_partition(m: &OrliczFunction, raw: &[f64]) -> Result<Vec<f64>> {
    if raw.is_empty() || raw.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::domain("partition entries must be positive"));
    }
    let lambda = roots::solve_decreasing_unit(|l| {
        raw.iter()
            .map(|&s| m.evaluate(s / l).expect("nonnegative argument"))
            .sum()
    })?;
    Ok(raw.iter().map(|&s| s / lambda).collect())
}

/// Log-log least-squares fit of φ on a positive grid. Returns the
/// fitted exponent and the maximum of
/// `|log φ(t) − log φ(1) − q_est·log t|` over the grid; the deviation
/// vanishes exactly for `φ(t) = φ(1)·t^q`.
pub fn power_law_fit(m: &OrliczFunction, grid: &[f64]) -> Result<(f64, f64)> {
    if grid.len() < 3 {
        return Err(Error::domain("power-law fit needs at least 3 grid points"));
    }
    if grid.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::domain("power-law grid must be strictly positive"));
    }
    let (lo, hi) = grid
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &t| (lo.min(t), hi.max(t)));
    if hi / lo < 100.0 {
        return Err(Error::domain(format!(
            "power-law grid must span at least 2 decades, got ratio {}",
            hi / lo
        )));
    }
    let logs: Vec<(f64, f64)> = grid
        .iter()
        .map(|&t| Ok((t.ln(), m.evaluate(t)?.ln())))
        .collect::<Result<_>>()?;
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|&(x, _)| x).sum();
    let sy: f64 = logs.iter().map(|&(_, y)| y).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| x * x).sum();
    let sxy: f64 = logs.iter().map(|&(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-30 {
        return Err(Error::domain("degenerate power-law grid"));
    }
    let q_est = (n * sxy - sx * sy) / denom;
    let intercept = m.evaluate(1.0)?.ln();
    let deviation = logs
        .iter()
        .map(|&(x, y)| (y - intercept - q_est * x).abs())
        .fold(0.0, f64::max);
    Ok((q_est, deviation))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic11() -> OrliczFunction {
        OrliczFunction::quartic(1.0, 1.0).unwrap()
    }

    fn probe_points() -> Vec<(f64, f64)> {
        let mut pts = Vec::new();
        for i in 1..=6 {
            for j in 1..=6 {
                pts.push((0.5 * i as f64, 0.5 * j as f64));
            }
        }
        pts
    }

    #[test]
    fn f_phi_examples() {
        let sq = OrliczFunction::power(2.0).unwrap();
        assert!((f_phi(&sq, 3.0, 4.0).unwrap() - 5.0).abs() < 1e-12);
        let q = quartic11();
        assert!((f_phi(&q, 1.0, 1.0).unwrap() - 1.249621067687653).abs() < 1e-10);
        assert!((f_phi(&q, 0.0, 7.0).unwrap() - 7.0).abs() < 1e-10);
        // symmetric
        assert!((f_phi(&q, 2.0, 0.7).unwrap() - f_phi(&q, 0.7, 2.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn power_functions_are_homogeneous() {
        for q in [1.0, 2.0, 3.5] {
            let m = OrliczFunction::power(q).unwrap();
            let report = homogeneity_residual(&m, &probe_points(), 1.7, PASS_TOL).unwrap();
            assert!(report.verdict, "q = {q}: {report:?}");
        }
    }

    #[test]
    fn quartic_fails_homogeneity_at_reference_probe() {
        let report = homogeneity_residual(&quartic11(), &[(1.0, 1.0)], 2.0, 1e-6).unwrap();
        assert!(!report.verdict);
        // |phi^{-1}(40) - 2 phi^{-1}(4)| / (2 phi^{-1}(4))
        assert!((report.max_residual - 0.03270821561445671).abs() < 1e-9);
    }

    #[test]
    fn origin_probe_has_zero_residual() {
        let report = homogeneity_residual(&quartic11(), &[(0.0, 0.0)], 2.0, PASS_TOL).unwrap();
        assert_eq!(report.max_residual, 0.0);
        assert!(homogeneity_residual(&quartic11(), &[(1.0, 1.0)], 0.0, 1e-6).is_err());
    }

    #[test]
    fn normalization_passes_for_powers() {
        for q in [1.5, 2.0] {
            let m = OrliczFunction::power(q).unwrap();
            let report = normalization_residual(&m, &probe_points(), PASS_TOL).unwrap();
            assert!(report.verdict, "q = {q}: {report:?}");
        }
    }

    #[test]
    fn normalization_fails_for_quartic() {
        let report = normalization_residual(&quartic11(), &[(1.0, 1.0)], 1e-3).unwrap();
        assert!(!report.verdict);
        // alpha = phi^{-1}(1), residual computed by independent closed form
        assert!((report.max_residual - 0.036504863996073054).abs() < 1e-9);
    }

    #[test]
    fn star_condition_hand_example() {
        // phi = t^2, s = [1], t = [1/sqrt(2), 1/sqrt(2)], lambda = mu = 1:
        // nu = sqrt(2), LHS = 1/2 + 2 * (1/4) = 1
        let sq = OrliczFunction::power(2.0).unwrap();
        let inv = 0.5_f64.sqrt();
        let res = star_condition_residual(&sq, &[1.0], &[inv, inv], 1.0, 1.0).unwrap();
        assert!(res < 1e-12);
    }

    #[test]
    fn star_condition_rejects_bad_partition() {
        let sq = OrliczFunction::power(2.0).unwrap();
        assert!(star_condition_residual(&sq, &[0.9], &[1.0], 1.0, 1.0).is_err());
    }

    #[test]
    fn star_condition_fails_for_quartic_singletons() {
        let q = quartic11();
        let alpha = q.inverse(1.0).unwrap();
        let res = star_condition_residual(&q, &[alpha], &[alpha], 1.0, 2.0).unwrap();
        assert!(res > 1e-4, "residual {res}");
    }

    #[test]
    fn normalize_partition_hits_unit_sum() {
        let q = quartic11();
        let part = normalize_partition(&q, &[0.3, 1.2, 2.0]).unwrap();
        let sum: f64 = part.iter().map(|&s| q.evaluate(s).unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-10);
    }

    #[test]
    fn power_law_fit_detects_powers_and_mixtures() {
        let grid: Vec<f64> = (0..40).map(|i| 0.01 * 10f64.powf(i as f64 / 9.75)).collect();
        let (q, dev) = power_law_fit(&OrliczFunction::power(3.0).unwrap(), &grid).unwrap();
        assert!((q - 3.0).abs() < 1e-12 && dev < 1e-12);
        let scaled = OrliczFunction::new(vec![(5.0, 2.0)]).unwrap();
        let (q5, dev5) = power_law_fit(&scaled, &grid).unwrap();
        assert!((q5 - 2.0).abs() < 1e-12 && dev5 < 1e-12);
        let (_, devq) = power_law_fit(&quartic11(), &grid).unwrap();
        assert!(devq > 0.1);
    }

    #[test]
    fn power_law_fit_rejects_degenerate_grids() {
        let m = OrliczFunction::power(2.0).unwrap();
        assert!(power_law_fit(&m, &[1.0, 2.0]).is_err());
        assert!(power_law_fit(&m, &[1.0, 2.0, 3.0]).is_err()); // < 2 decades
    }

    #[test]
    fn f_phi_is_associative() {
        // F conjugates addition by phi, so associativity holds for any
        // bijection phi, not only powers.
        for m in [OrliczFunction::power(1.5).unwrap(), quartic11()] {
            let a = f_phi(&m, f_phi(&m, 1.0, 2.0).unwrap(), 0.5).unwrap();
            let b = f_phi(&m, 1.0, f_phi(&m, 2.0, 0.5).unwrap()).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }
}
