//! Riesz means, the half-plane Poisson kernel and approximation sweeps.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{require, Error, Result};
use crate::halfplane::{
    certified_sup_norm, step_for_slack, GDPolynomial, SupNormEnclosure, DEFAULT_SLACK,
    DEFAULT_WINDOW,
};
use crate::quad::Composite;

/// First-order Riesz mean `R_ωP = Σ_{λₙ<ω} aₙ(1 − λₙ/ω)e^(−λₙs)`.
///
/// The cut is strict, and the constant term (`λ = 0`) always survives.
pub fn riesz_mean(p: &GDPolynomial, omega: f64) -> Result<GDPolynomial> {
    require(omega > 0.0 && omega.is_finite(), || {
        format!("omega must be positive (got {omega})")
    })?;
    GDPolynomial::new(
        p.terms()
            .iter()
            .filter(|t| t.lambda < omega)
            .map(|t| (t.lambda, t.coeff * (1.0 - t.lambda / omega))),
    )
}

/// `Σ_{λₙ<ω}|aₙ|(λₙ/ω)e^(−λₙκ) + Σ_{λₙ≥ω}|aₙ|e^(−λₙκ)`, which bounds
/// `sup_{ℂ_κ}|R_ωP − P|`.
pub fn riesz_error_bound(p: &GDPolynomial, kappa: f64, omega: f64) -> f64 {
    p.terms()
        .iter()
        .map(|t| {
            let w = if t.lambda < omega {
                t.lambda / omega
            } else {
                1.0
            };
            w * t.coeff.norm() * (-t.lambda * kappa).exp()
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RieszSweep {
    pub kappa: f64,
    pub omegas: Vec<f64>,
    /// Certified enclosures of `sup |R_ωP − P|` on `Re s = κ`.
    pub errors: Vec<SupNormEnclosure>,
    pub bounds: Vec<f64>,
}

/// Window and accuracy used for the enclosures of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepControls {
    pub half_width: f64,
    pub slack: f64,
}

impl Default for SweepControls {
    fn default() -> Self {
        Self {
            half_width: DEFAULT_WINDOW,
            slack: DEFAULT_SLACK,
        }
    }
}

pub fn riesz_error_sweep(
    p: &GDPolynomial,
    kappa: f64,
    omegas: &[f64],
    controls: SweepControls,
) -> Result<RieszSweep> {
    require(kappa > 0.0 && kappa.is_finite(), || {
        format!("kappa must be positive (got {kappa})")
    })?;
    require(omegas.windows(2).all(|w| w[0] < w[1]), || {
        "omegas must be strictly increasing".into()
    })?;
    let mut errors = Vec::with_capacity(omegas.len());
    let mut bounds = Vec::with_capacity(omegas.len());
    for &omega in omegas {
        let diff = &riesz_mean(p, omega)? - p;
        let step = step_for_slack(&diff, kappa, controls.slack);
        errors.push(certified_sup_norm(&diff, kappa, controls.half_width, step)?);
        bounds.push(riesz_error_bound(p, kappa, omega));
    }
    Ok(RieszSweep {
        kappa,
        omegas: omegas.to_vec(),
        errors,
        bounds,
    })
}

/// `P_κ(t) = κ / (π(κ² + t²))`.
pub fn poisson_kernel(kappa: f64, t: f64) -> Result<f64> {
    require(kappa > 0.0 && kappa.is_finite(), || {
        format!("kappa must be positive (got {kappa})")
    })?;
    Ok(kappa / (PI * (kappa * kappa + t * t)))
}

/// Mass of `P_κ` outside `[−u, u]`.
pub fn poisson_tail_mass(kappa: f64, u: f64) -> f64 {
    1.0 - 2.0 / PI * (u / kappa).atan()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonCheck {
    /// `(P_σ * P_κ)(t)` by quadrature.
    pub convolution: Complex64,
    /// `P(κ + σ + it)`.
    pub direct: Complex64,
    pub discrepancy: f64,
    /// Truncation point of the quadrature.
    pub cutoff: f64,
}

/// Discrepancy budget of [`poisson_smooth_check`].
pub const POISSON_BUDGET: f64 = 1e-6;

const GL_POINTS: usize = 20;
const PANEL_PHASE: f64 = 3.0;

/// Breakpoints on `[0, u]`: each panel spans at most `PANEL_PHASE` radians of
/// the fastest oscillation and half the kernel's local length scale.
fn graded_breaks(kappa: f64, lambda_max: f64, u: f64) -> Vec<f64> {
    let phase_width = if lambda_max > 0.0 {
        PANEL_PHASE / lambda_max
    } else {
        f64::INFINITY
    };
    let mut breaks = vec![0.0];
    let mut x = 0.0;
    while x < u {
        let w = phase_width.min(0.5 * (kappa + x));
        x = (x + w).min(u);
        breaks.push(x);
    }
    breaks
}

/// Compares the Poisson integral `∫ P(σ + i(t − u)) P_κ(u) du` with the
/// direct value `P(κ + σ + it)`.
///
/// The integral is computed on `[−U, U]`; outside, the constant term is
/// integrated exactly against the kernel tail and each oscillating term
/// contributes at most `4κ|aₙ|e^(−λₙσ)/(πλₙU²)` (integration by parts). `U`
/// is chosen so that this remainder stays below a tenth of `budget`.
pub fn poisson_smooth_check(
    p: &GDPolynomial,
    kappa: f64,
    sigma: f64,
    t: f64,
    budget: f64,
) -> Result<PoissonCheck> {
    require(kappa > 0.0 && kappa.is_finite(), || {
        format!("kappa must be positive (got {kappa})")
    })?;
    require(sigma > 0.0 && sigma.is_finite(), || {
        format!("sigma must be positive (got {sigma})")
    })?;
    require(t.is_finite(), || "t must be finite".into())?;
    require(budget > 0.0, || "budget must be positive".into())?;

    let oscillating: Vec<_> = p.terms().iter().filter(|x| x.lambda > 0.0).collect();
    let remainder_coeff: f64 = oscillating
        .iter()
        .map(|x| 4.0 * kappa * x.coeff.norm() * (-x.lambda * sigma).exp() / (PI * x.lambda))
        .sum();
    let cutoff = (remainder_coeff / (0.1 * budget))
        .sqrt()
        .max(100.0 * kappa)
        .max(100.0);

    let line = p.on_line(sigma);
    let rule = Composite::new(GL_POINTS);
    let breaks = graded_breaks(kappa, p.max_frequency(), cutoff);
    let integrand = |u: f64| {
        let k = kappa / (PI * (kappa * kappa + u * u));
        line.value(t - u) * k + line.value(t + u) * k
    };
    let mut convolution = Complex64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        convolution += rule.panel(w[0], w[1], &integrand);
    }
    convolution += p.coeff_at(0.0) * poisson_tail_mass(kappa, cutoff);

    let direct = p.eval(Complex64::new(kappa + sigma, t));
    let discrepancy = (convolution - direct).norm();
    if discrepancy > budget {
        return Err(Error::QuadratureBudgetExceeded {
            achieved: discrepancy,
            budget,
        });
    }
    Ok(PoissonCheck {
        convolution,
        direct,
        discrepancy,
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(f64, f64)]) -> GDPolynomial {
        GDPolynomial::new(terms.iter().map(|&(l, a)| (l, Complex64::new(a, 0.0)))).unwrap()
    }

    fn assert_poly(p: &GDPolynomial, expect: &[(f64, f64)]) {
        assert_eq!(p.len(), expect.len(), "{p:?}");
        for (t, &(l, a)) in p.terms().iter().zip(expect) {
            assert_eq!(t.lambda, l);
            assert!((t.coeff - Complex64::new(a, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn riesz_examples() {
        let p = poly(&[(1.0, 1.0), (2.0, 1.0)]);
        assert_poly(&riesz_mean(&p, 1.5).unwrap(), &[(1.0, 1.0 / 3.0)]);
        assert_poly(&riesz_mean(&p, 4.0).unwrap(), &[(1.0, 0.75), (2.0, 0.5)]);
        assert!(riesz_mean(&poly(&[(1.0, 1.0)]), 0.5).unwrap().is_empty());
        assert!(riesz_mean(&p, 0.0).is_err());
    }

    #[test]
    fn constant_term_always_kept() {
        let p = poly(&[(0.0, 2.0), (1.0, 1.0)]);
        assert_poly(&riesz_mean(&p, 0.25).unwrap(), &[(0.0, 2.0)]);
    }

    #[test]
    fn single_term_sweep() {
        let p = poly(&[(1.0, 1.0)]);
        let s = riesz_error_sweep(&p, 1.0, &[0.5, 10.0], SweepControls::default()).unwrap();
        let e1 = (-1.0f64).exp();
        assert!((s.bounds[1] - 0.1 * e1).abs() < 1e-15);
        assert!((s.bounds[1] - 0.036788).abs() < 1e-6);
        assert!(s.errors[1].contains(0.1 * e1));
        // R_ω = 0 for ω ≤ λ₁: the error is the norm of P.
        assert!(s.errors[0].contains(e1));
    }

    #[test]
    fn poisson_kernel_values() {
        assert!((poisson_kernel(1.0, 0.0).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert!((poisson_kernel(1.0, 1.0).unwrap() - 0.5 / PI).abs() < 1e-16);
        assert!(poisson_kernel(0.0, 1.0).is_err());
    }

    #[test]
    fn poisson_check_examples() {
        let c = Complex64::new(1.5, -0.5);
        let k = GDPolynomial::constant(c);
        let r = poisson_smooth_check(&k, 1.0, 0.3, 2.0, POISSON_BUDGET).unwrap();
        assert!((r.direct - c).norm() < 1e-15);
        assert!(r.discrepancy < 1e-9);

        let p = poly(&[(1.0, 1.0)]);
        let r = poisson_smooth_check(&p, 1.0, 1.0, 0.0, POISSON_BUDGET).unwrap();
        let e2 = (-2.0f64).exp();
        assert!((r.direct.re - e2).abs() < 1e-15);
        assert!((r.convolution.re - e2).abs() < 1e-6);
    }
}
