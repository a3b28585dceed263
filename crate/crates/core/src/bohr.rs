//! Bohr coefficients and spectra by mean values, coefficient bounds, the
//! abscissa `L(λ)` of a frequency and tail bounds of `λ`-Dirichlet series.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{require, Error, Result};
use crate::halfplane::{certified_sup_norm, GDPolynomial};
use crate::quad::Composite;

/// Mean values are taken on `Re s = 1` unless stated otherwise.
pub const DEFAULT_SIGMA: f64 = 1.0;

/// Quadrature accuracy targeted by [`bohr_coefficient`].
pub const QUADRATURE_TOL: f64 = 1e-9;

const GL_POINTS: usize = 20;
// Phase turned by the fastest oscillation over one 20-point panel.
const PANEL_PHASE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BohrCoefficient {
    /// `(1/2T)∫₋ᵀᵀ P(σ+it)e^(λ(σ+it)) dt` by quadrature.
    pub estimate: Complex64,
    /// Bound on `|estimate − exact|` from the finite averaging window.
    pub error_bound: f64,
    /// The coefficient of `P` at `λ`, or zero.
    pub exact: Complex64,
}

/// Finite-window mean value estimating the Bohr coefficient `a_λ(P)`.
///
/// For a polynomial the mean equals `Σ aₙ e^((λ−λₙ)σ) sinc((λ−λₙ)T)`, so the
/// distance to the true coefficient is at most
/// `Σ_{λₙ≠λ} |aₙ| e^((λ−λₙ)σ) / (|λ−λₙ| T)`.
pub fn bohr_coefficient(
    p: &GDPolynomial,
    lambda: f64,
    sigma: f64,
    t: f64,
) -> Result<BohrCoefficient> {
    require(sigma > 0.0 && sigma.is_finite(), || {
        format!("sigma must be positive (got {sigma})")
    })?;
    require(t > 0.0 && t.is_finite(), || {
        format!("T must be positive (got {t})")
    })?;
    require(lambda >= 0.0 && lambda.is_finite(), || {
        format!("lambda must be nonnegative (got {lambda})")
    })?;
    let exact = p.coeff_at(lambda);
    let error_bound = p
        .terms()
        .iter()
        .filter(|term| term.lambda != lambda)
        .map(|term| {
            let gap = lambda - term.lambda;
            term.coeff.norm() * (gap * sigma).exp() / (gap.abs() * t)
        })
        .sum();
    if p.is_empty() {
        return Ok(BohrCoefficient {
            estimate: Complex64::new(0.0, 0.0),
            error_bound,
            exact,
        });
    }
    let omega = p
        .frequencies()
        .map(|l| (lambda - l).abs())
        .fold(0.0f64, f64::max);
    let panels = ((2.0 * t * omega / PANEL_PHASE).ceil() as usize).max(1);
    let rule = Composite::new(GL_POINTS);
    let integral = rule.integrate(-t, t, panels, |tt| {
        let s = Complex64::new(sigma, tt);
        p.eval(s) * (lambda * s).exp()
    });
    Ok(BohrCoefficient {
        estimate: integral / (2.0 * t),
        error_bound,
        exact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub estimate: Complex64,
    pub error_bound: f64,
}

/// Candidate frequencies with estimated coefficients; `detected` keeps those
/// whose estimate exceeds `threshold` in modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub threshold: f64,
    pub candidates: Vec<SpectrumEntry>,
    pub detected: Vec<SpectrumEntry>,
}

impl SpectrumReport {
    pub fn detected_frequencies(&self) -> Vec<f64> {
        self.detected.iter().map(|e| e.lambda).collect()
    }
}

/// Estimates the coefficient at every candidate. Without an explicit
/// threshold, detection uses ten times the largest error bound (plus the
/// quadrature tolerance).
pub fn bohr_spectrum(
    p: &GDPolynomial,
    candidates: &[f64],
    sigma: f64,
    t: f64,
    threshold: Option<f64>,
) -> Result<SpectrumReport> {
    require(candidates.windows(2).all(|w| w[0] < w[1]), || {
        "candidate frequencies must be strictly increasing".into()
    })?;
    let entries: Vec<SpectrumEntry> = candidates
        .par_iter()
        .map(|&lambda| {
            bohr_coefficient(p, lambda, sigma, t).map(|c| SpectrumEntry {
                lambda,
                estimate: c.estimate,
                error_bound: c.error_bound,
            })
        })
        .collect::<Result<_>>()?;
    let threshold = threshold.unwrap_or_else(|| {
        let worst = entries.iter().map(|e| e.error_bound).fold(0.0f64, f64::max);
        10.0 * (worst + QUADRATURE_TOL)
    });
    require(threshold >= 0.0, || "threshold must be nonnegative".into())?;
    let detected = entries
        .iter()
        .filter(|e| e.estimate.norm() > threshold)
        .copied()
        .collect();
    Ok(SpectrumReport {
        threshold,
        candidates: entries,
        detected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CoefficientBound {
    pub holds: bool,
    /// `norm_upper − max_coeff`.
    pub margin: f64,
    pub max_coeff: f64,
    pub norm_upper: f64,
}

/// Checks `|aₙ|e^(−λₙκ) ≤ ‖P‖_{ℂ_κ}` (relative slack 10⁻⁶) for every
/// frequency, using the certified sup-norm upper bound on `Re s = κ`.
/// At `κ = 0` this is the plain estimate `|aₙ| ≤ ‖P‖_∞`.
pub fn coefficient_bound_check(
    p: &GDPolynomial,
    kappa: f64,
    half_width: f64,
    step: f64,
) -> Result<CoefficientBound> {
    let norm = certified_sup_norm(p, kappa, half_width, step)?;
    let max_coeff = p
        .terms()
        .iter()
        .map(|t| t.coeff.norm() * (-t.lambda * kappa).exp())
        .fold(0.0f64, f64::max);
    Ok(CoefficientBound {
        holds: max_coeff <= norm.upper * (1.0 + 1e-6),
        margin: norm.upper - max_coeff,
        max_coeff,
        norm_upper: norm.upper,
    })
}

/// Controls for [`abscissa_l`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbscissaOptions {
    /// Estimates above this value that are still growing at the end of the
    /// prefix are reported as `+∞`.
    pub cap: f64,
}

impl Default for AbscissaOptions {
    fn default() -> Self {
        Self { cap: 3.0 }
    }
}

fn check_frequency(lambdas: &[f64]) -> Result<()> {
    if lambdas.len() < 16 {
        return Err(Error::FrequencyTooShort(lambdas.len()));
    }
    for (i, &l) in lambdas.iter().enumerate() {
        if !(l.is_finite() && l >= 0.0) {
            return Err(Error::NegativeFrequency(l));
        }
        if i > 0 && l <= lambdas[i - 1] {
            return Err(Error::FrequencyOrder {
                prev: lambdas[i - 1],
                next: l,
            });
        }
    }
    Ok(())
}

/// Estimate of `L(λ) = limsupₙ log n / λₙ` from a prefix `λ₁ < … < λ_N`:
/// the maximum of `log n / λₙ` over the trailing half `n ≥ N/2`.
pub fn abscissa_l(lambdas: &[f64], opts: AbscissaOptions) -> Result<f64> {
    check_frequency(lambdas)?;
    let n = lambdas.len();
    let ratio = |k: usize| ((k + 1) as f64).ln() / lambdas[k];
    let start = n / 2;
    let estimate = (start..n).map(ratio).fold(f64::NEG_INFINITY, f64::max);
    let growing = ratio(n - 1) > ratio(start);
    if estimate > opts.cap && growing {
        Ok(f64::INFINITY)
    } else {
        Ok(estimate)
    }
}

/// Upper bound for `Σ_{n>N_cut} e^(−λₙκ)`: the observed part of the prefix
/// plus the geometric majorant `e^(−λ_Nκ) q/(1 − q)`, `q = e^(−gκ)`, where
/// `g` is the last observed gap. The majorant assumes gaps do not shrink
/// beyond the prefix.
pub fn tail_bound(lambdas: &[f64], kappa: f64, n_cut: usize) -> Result<f64> {
    let abscissa = abscissa_l(lambdas, AbscissaOptions::default())?;
    if !(kappa > abscissa) {
        return Err(Error::DivergentTail { kappa, abscissa });
    }
    let n = lambdas.len();
    require(n_cut <= n, || {
        format!("N_cut = {n_cut} exceeds prefix length {n}")
    })?;
    let observed: f64 = lambdas[n_cut..].iter().map(|l| (-l * kappa).exp()).sum();
    let gap = lambdas[n - 1] - lambdas[n - 2];
    let q = (-gap * kappa).exp();
    let majorant = (-lambdas[n - 1] * kappa).exp() * q / (1.0 - q);
    Ok(observed + majorant)
}
