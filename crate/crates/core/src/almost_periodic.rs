//! Translation numbers, relative density, vertical limits and Schottky's bound.
//!
//! For a polynomial `P = Σ aₙe^(−λₙs)` the translation defect
//! `sup_{ℂ_κ} |V_τP − P|` is bounded by
//! `D(τ) = Σ 2|aₙ| e^(−λₙκ) |sin(λₙτ/2)|`. The bound is exact for a single
//! term and, by Kronecker's theorem, whenever the frequencies are linearly
//! independent over ℚ. `D` is even, subadditive in `τ`, non-increasing in `κ`,
//! and `|D'(τ)| ≤ L_τ = Σ|aₙ|λₙe^(−λₙκ)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cluster::{diameter, greedy_cluster};
use crate::error::{require, Error, Result};
use crate::halfplane::{
    certified_sup_norm_centered, line_scan, GDPolynomial, LineSample, LineWindow, SupNormEnclosure,
};

/// A family is declared jointly almost periodic on a scan window when the
/// largest gap between common translation numbers is below this fraction of
/// the window.
pub const JOINT_AP_GAP_FRACTION: f64 = 0.25;

/// ε-translation numbers of one function found on `[0, window]`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TranslationReport {
    pub epsilon: f64,
    pub kappa: f64,
    pub window: f64,
    pub step: f64,
    pub members: Vec<f64>,
    pub max_gap: f64,
}

impl TranslationReport {
    /// Relative-density proxy: `max_gap < window / 4`.
    pub fn is_relatively_dense(&self) -> bool {
        !self.members.is_empty() && self.max_gap < JOINT_AP_GAP_FRACTION * self.window
    }
}

/// Common translation numbers of a family, optionally with per-member scales.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct JointTranslationReport {
    pub report: TranslationReport,
    pub family_size: usize,
    pub scales: Option<Vec<f64>>,
}

/// Certified upper bound of `sup_{ℂ_κ} |V_τP − P|`.
pub fn translation_defect(p: &GDPolynomial, tau: f64, kappa: f64) -> f64 {
    p.terms()
        .iter()
        .map(|t| {
            2.0 * t.coeff.norm() * (-t.lambda * kappa).exp() * (0.5 * t.lambda * tau).sin().abs()
        })
        .sum()
}

/// Lipschitz constant of `τ ↦ translation_defect(P, τ, κ)`.
pub fn defect_lipschitz(p: &GDPolynomial, kappa: f64) -> f64 {
    p.lipschitz_bound(kappa)
}

/// Line-scan enclosure of `sup |V_τP − P|` over `|t| ≤ half_width` on
/// `Re s = κ`. Its lower end never exceeds [`translation_defect`].
pub fn translation_defect_enclosure(
    p: &GDPolynomial,
    tau: f64,
    kappa: f64,
    half_width: f64,
    step: f64,
) -> Result<SupNormEnclosure> {
    let diff = &p.vertical_translate(tau) - p;
    certified_sup_norm_centered(&diff, kappa, 0.0, half_width, step)
}

fn scan_grid(window: f64, step: f64) -> Vec<f64> {
    let n = (window / step + 1e-9).floor() as usize;
    (0..=n).map(|j| j as f64 * step).collect()
}

/// Largest gap between consecutive members, with `0` and `window` as
/// sentinels.
fn max_gap(members: &[f64], window: f64) -> f64 {
    let Some(&first) = members.first() else {
        return window;
    };
    let last = *members.last().unwrap();
    let inner = members
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max);
    inner.max(first).max(window - last)
}

fn check_scan(epsilon: f64, kappa: f64, window: f64, step: f64) -> Result<()> {
    if !(window > 0.0) {
        return Err(Error::EmptyWindow(window));
    }
    require(epsilon > 0.0 && epsilon.is_finite(), || {
        format!("epsilon must be positive (got {epsilon})")
    })?;
    require(step > 0.0 && step.is_finite(), || {
        format!("step must be positive (got {step})")
    })?;
    require(kappa >= 0.0 && kappa.is_finite(), || {
        format!("kappa must be nonnegative (got {kappa})")
    })
}

/// Scans `τ ∈ [0, window]` on the grid `τ = j·step` and keeps every `τ`
/// whose defect is at most `epsilon`.
///
/// Each member is a genuine ε-translation number on `ℂ_κ`. Any `τ*` with
/// defect `≤ ε − L_τ·step` has a member within `step`.
pub fn translation_set(
    p: &GDPolynomial,
    epsilon: f64,
    kappa: f64,
    window: f64,
    step: f64,
) -> Result<TranslationReport> {
    check_scan(epsilon, kappa, window, step)?;
    let members: Vec<f64> = scan_grid(window, step)
        .into_par_iter()
        .filter(|&tau| translation_defect(p, tau, kappa) <= epsilon)
        .collect();
    Ok(TranslationReport {
        epsilon,
        kappa,
        window,
        step,
        max_gap: max_gap(&members, window),
        members,
    })
}

/// Common ε-translation numbers: grid `τ` with
/// `translation_defect(fⱼ, τ/scaleⱼ, κ) ≤ ε` for every member.
pub fn joint_translation_set(
    family: &[GDPolynomial],
    epsilon: f64,
    kappa: f64,
    window: f64,
    step: f64,
    scales: Option<&[f64]>,
) -> Result<JointTranslationReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    check_scan(epsilon, kappa, window, step)?;
    if let Some(sc) = scales {
        require(sc.len() == family.len(), || {
            format!("{} scales given for {} functions", sc.len(), family.len())
        })?;
        require(sc.iter().all(|&a| a > 0.0 && a.is_finite()), || {
            "scales must be positive".to_string()
        })?;
    }
    let scale = |j: usize| scales.map_or(1.0, |sc| sc[j]);
    let members: Vec<f64> = scan_grid(window, step)
        .into_par_iter()
        .filter(|&tau| {
            family
                .iter()
                .enumerate()
                .all(|(j, f)| translation_defect(f, tau / scale(j), kappa) <= epsilon)
        })
        .collect();
    Ok(JointTranslationReport {
        report: TranslationReport {
            epsilon,
            kappa,
            window,
            step,
            max_gap: max_gap(&members, window),
            members,
        },
        family_size: family.len(),
        scales: scales.map(<[f64]>::to_vec),
    })
}

/// `P(+∞)`: the coefficient at frequency zero.
pub fn limit_at_infinity(p: &GDPolynomial) -> Complex64 {
    p.coeff_at(0.0)
}

/// `Σ_{λₙ>0} |aₙ|e^(−λₙκ′)`, which bounds `sup_{ℂ_κ′} |P − P(+∞)|`.
pub fn decay_certificate(p: &GDPolynomial, kappa: f64) -> f64 {
    p.terms()
        .iter()
        .filter(|t| t.lambda > 0.0)
        .map(|t| t.coeff.norm() * (-t.lambda * kappa).exp())
        .sum()
}

/// A subsequence of vertical translates that agree to within a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalLimit {
    pub indices: Vec<usize>,
    /// Certified largest pairwise distance on `Re s = κ` within the subsequence.
    pub diameter: f64,
    /// Samples of the last selected translate, the limit proxy.
    pub limit: Vec<LineSample>,
}

/// Picks a subsequence of `{V_τP}` with pairwise certified line distances at
/// most `tolerance`. Distances are exact sup norms over the whole line:
/// `‖V_aP − V_bP‖ = translation_defect(P, b − a, κ)` for independent
/// frequencies and an upper bound otherwise.
pub fn extract_vertical_limit(
    p: &GDPolynomial,
    taus: &[f64],
    kappa: f64,
    window: LineWindow,
    grid_step: f64,
    tolerance: f64,
) -> Result<VerticalLimit> {
    require(!taus.is_empty(), || {
        "no translation parameters given".into()
    })?;
    require(tolerance >= 0.0, || "tolerance must be nonnegative".into())?;
    let n = taus.len();
    let dist: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| translation_defect(p, taus[j] - taus[i], kappa))
                .collect()
        })
        .collect();
    let indices = greedy_cluster(&dist, tolerance);
    if n >= 2 && indices.len() < 2 {
        let closest = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| dist[i][j])
            .fold(f64::INFINITY, f64::min);
        return Err(Error::ToleranceUnreachable { tolerance, closest });
    }
    let last = *indices.last().expect("cluster is nonempty");
    let limit = line_scan(&p.vertical_translate(taus[last]), kappa, window, grid_step)?;
    Ok(VerticalLimit {
        diameter: diameter(&dist, &indices),
        indices,
        limit,
    })
}

/// `((r + d)/(r − d))·(7 + log⁺|f(c)|)`, the Schottky–Ahlfors bound on
/// `log|f(s)|` at distance `d = |s − c|` from the centre of the ball `B_r(c)`.
pub fn schottky_bound(abs_fc: f64, r: f64, dist: f64) -> Result<f64> {
    require(abs_fc >= 0.0 && r > 0.0 && dist >= 0.0, || {
        format!("invalid Schottky arguments |f(c)| = {abs_fc}, r = {r}, d = {dist}")
    })?;
    if dist >= r {
        return Err(Error::DistanceOutOfRange { dist, r });
    }
    let log_plus = if abs_fc > 1.0 { abs_fc.ln() } else { 0.0 };
    Ok((r + dist) / (r - dist) * (7.0 + log_plus))
}

/// Outcome of checking the Schottky inequality on samples.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SchottkyCheck {
    pub holds: bool,
    /// Largest `bound − log|f(s)|` over the samples.
    pub max_slack: f64,
    /// Smallest `bound − log|f(s)|` over the samples.
    pub min_slack: f64,
    pub violations: usize,
    /// `7 + log⁺|f(c)| − log|f(c)|`.
    pub center_slack: f64,
}

/// Checks `log|f(s)| ≤ schottky_bound(|f(c)|, r, |s − c|)` on sampled
/// `(s, f(s))` pairs from a function that omits 0 and 1 on `B_r(c)`.
pub fn verify_schottky(
    samples: &[(Complex64, Complex64)],
    center: Complex64,
    f_center: Complex64,
    r: f64,
) -> Result<SchottkyCheck> {
    const OMIT: f64 = 1e-12;
    let omits = |f: Complex64| f.norm() > OMIT && (f - 1.0).norm() > OMIT;
    if !omits(f_center) {
        return Err(Error::OmissionViolated { index: usize::MAX });
    }
    if let Some(index) = samples.iter().position(|&(_, f)| !omits(f)) {
        return Err(Error::OmissionViolated { index });
    }
    let abs_fc = f_center.norm();
    let center_slack = schottky_bound(abs_fc, r, 0.0)? - abs_fc.ln();
    let mut max_slack = f64::NEG_INFINITY;
    let mut min_slack = f64::INFINITY;
    let mut violations = 0;
    for &(s, f) in samples {
        let slack = schottky_bound(abs_fc, r, (s - center).norm())? - f.norm().ln();
        max_slack = max_slack.max(slack);
        min_slack = min_slack.min(slack);
        if slack < 0.0 {
            violations += 1;
        }
    }
    Ok(SchottkyCheck {
        holds: violations == 0,
        max_slack,
        min_slack,
        violations,
        center_slack,
    })
}

/// Polar sample grid of the open ball `B_r(c)`: the centre plus
/// `n_radial × n_angular` points on radii `r·k/(n_radial + 1)`.
pub fn ball_grid(center: Complex64, r: f64, n_radial: usize, n_angular: usize) -> Vec<Complex64> {
    let mut pts = vec![center];
    for k in 1..=n_radial {
        let rho = r * k as f64 / (n_radial + 1) as f64;
        for j in 0..n_angular {
            let theta = std::f64::consts::TAU * j as f64 / n_angular as f64;
            pts.push(center + Complex64::from_polar(rho, theta));
        }
    }
    pts
}
