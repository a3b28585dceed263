//! Composition symbols `φ(s) = a·s + ψ(s)` and their boundedness and
//! compactness verdicts.
//!
//! `Re ψ` and `Re φ` are harmonic and bounded below on `ℂ₀`, so their infima
//! over the closed half-plane are attained on the boundary line `Re s = 0`.
//! Polynomials extend continuously to the closure, so the boundary line is
//! scanned directly.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{require, Error, Result};
use crate::halfplane::{
    max_abs_imag, max_real_part, min_real_part, Bracket, GDPolynomial, HalfPlaneGrid, LineWindow,
    DEFAULT_WINDOW,
};

/// `φ(s) = a·s + ψ(s)` with `a ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    a: f64,
    psi: GDPolynomial,
}

impl Symbol {
    pub fn new(a: f64, psi: GDPolynomial) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::NegativeLinearCoefficient(a));
        }
        Ok(Self { a, psi })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn psi(&self) -> &GDPolynomial {
        &self.psi
    }

    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.psi.evaluate(s)? + self.a * s)
    }

    /// `(σ, φ(σ))` for each real `σ`.
    pub fn sample_real_axis(&self, sigmas: &[f64]) -> Result<Vec<(f64, Complex64)>> {
        sigmas
            .iter()
            .map(|&x| Ok((x, self.evaluate(Complex64::new(x, 0.0))?)))
            .collect()
    }

    /// `a + Σ|aₙ|λₙ`: a Lipschitz constant of `φ` on `ℂ₀`.
    pub fn lipschitz_bound(&self) -> f64 {
        self.a + self.psi.lipschitz_bound(0.0)
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
pub enum VerdictKind {
    SelfMap,
    BoundedHinftyAp,
    BoundedAap,
    CompactHinftyAp,
    CompactSubspace,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::SelfMap => "SelfMap",
            VerdictKind::BoundedHinftyAp => "BoundedHinftyAp",
            VerdictKind::BoundedAap => "BoundedAap",
            VerdictKind::CompactHinftyAp => "CompactHinftyAp",
            VerdictKind::CompactSubspace => "CompactSubspace",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            VerdictKind::SelfMap,
            VerdictKind::BoundedHinftyAp,
            VerdictKind::BoundedAap,
            VerdictKind::CompactHinftyAp,
            VerdictKind::CompactSubspace,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

/// A yes/no classification together with the numbers that justify it.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub answer: bool,
    pub evidence: BTreeMap<String, f64>,
    pub reasons: Vec<String>,
}

impl Verdict {
    fn new(kind: VerdictKind) -> Self {
        Self {
            kind,
            answer: false,
            evidence: BTreeMap::new(),
            reasons: Vec::new(),
        }
    }

    fn note(&mut self, key: impl Into<String>, value: f64) {
        self.evidence.insert(key.into(), value);
    }

    fn reason(&mut self, code: &str) {
        self.reasons.push(code.to_string());
    }
}

/// Window and accuracy of the boundary-line searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanControls {
    pub half_width: f64,
    /// Certified slack of each extremum (`L·step/2`).
    pub slack: f64,
}

impl Default for ScanControls {
    fn default() -> Self {
        Self {
            half_width: DEFAULT_WINDOW,
            slack: 1e-9,
        }
    }
}

impl ScanControls {
    fn window(&self) -> Result<LineWindow> {
        LineWindow::symmetric(self.half_width)
    }

    fn step(&self, p: &GDPolynomial, sigma: f64) -> f64 {
        crate::halfplane::step_for_slack(p, sigma, self.slack)
    }
}

/// Default real lines on which `Re φ > 0` is additionally checked.
pub const DEFAULT_PROBES: [f64; 3] = [1e-6, 0.1, 1.0];

fn min_re(p: &GDPolynomial, sigma: f64, c: &ScanControls) -> Result<Bracket> {
    Ok(min_real_part(p, sigma, c.window()?, c.step(p, sigma)))
}

/// Checks that `φ` maps `ℂ₀` into itself.
///
/// Nonconstant `φ` is a self-map iff `inf Re φ ≥ 0` on the boundary line,
/// where `Re φ = Re ψ`. A constant `φ = c` needs `Re c > 0`. A nonconstant
/// symbol is rejected only when a boundary sample is certifiably negative.
pub fn validate_symbol(phi: &Symbol, probes: &[f64], controls: ScanControls) -> Result<Verdict> {
    let mut v = Verdict::new(VerdictKind::SelfMap);
    let psi = phi.psi();
    let boundary = min_re(psi, 0.0, &controls)?;
    v.note("a", phi.a());
    v.note("inf_re_psi_lower", boundary.lower);
    v.note("inf_re_psi_sampled", boundary.upper);
    let psi_constant = psi.frequencies().all(|l| l == 0.0);

    let mut ok = if phi.a() == 0.0 && psi_constant {
        boundary.lower > 0.0
    } else {
        boundary.upper >= 0.0
    };
    for &sigma in probes {
        require(sigma >= 0.0 && sigma.is_finite(), || {
            format!("probe line {sigma} is not in the closed half-plane")
        })?;
        let m = min_re(psi, sigma, &controls)?;
        v.note(format!("min_re_phi@{sigma}"), phi.a() * sigma + m.lower);
        if phi.a() * sigma + m.upper <= 0.0 {
            ok = false;
        }
    }
    v.answer = ok;
    v.reason(if ok { "SelfMap" } else { "NotSelfMap" });
    Ok(v)
}

/// Boundedness on `H∞_ap(ℂ₀)`: every valid symbol of the form `a·s + ψ`
/// with almost periodic `ψ` induces a bounded operator.
pub fn classify_bounded(phi: &Symbol, controls: ScanControls) -> Result<Verdict> {
    let valid = validate_symbol(phi, &DEFAULT_PROBES, controls)?;
    let mut v = Verdict::new(VerdictKind::BoundedHinftyAp);
    v.note("a", phi.a());
    v.note("psi_terms", phi.psi().len() as f64);
    if !valid.answer {
        v.evidence.extend(valid.evidence);
        v.reason("NotSelfMap");
        return Ok(v);
    }
    for kappa in [0.5, 1.0, 2.0] {
        match image_lower_bound(phi, kappa, controls) {
            Ok(nu) | Err(Error::NonpositiveLowerBound(nu)) => v.note(format!("nu@{kappa}"), nu),
            Err(e) => return Err(e),
        }
    }
    v.answer = true;
    v.reason("FormLinearPlusAlmostPeriodic");
    Ok(v)
}

/// Certified `ν` with `Re ψ(ℂ_κ) ⊆ [ν, ∞)`, or `Re φ(ℂ_κ) ⊆ [ν, ∞)` when
/// `a > 0`.
pub fn image_lower_bound(phi: &Symbol, kappa: f64, controls: ScanControls) -> Result<f64> {
    require(kappa > 0.0 && kappa.is_finite(), || {
        format!("kappa must be positive (got {kappa})")
    })?;
    let m = min_re(phi.psi(), kappa, &controls)?;
    let bound = phi.a() * kappa + m.lower;
    if bound > 0.0 {
        Ok(bound)
    } else {
        Err(Error::NonpositiveLowerBound(bound))
    }
}

/// Compactness on `H∞_ap(ℂ₀)`: `φ(ℂ₀)` must be bounded (so `a = 0`) and
/// bounded away from the imaginary axis (`inf Re ψ > 0`).
pub fn check_compact(phi: &Symbol, controls: ScanControls) -> Result<Verdict> {
    let mut v = Verdict::new(VerdictKind::CompactHinftyAp);
    let psi = phi.psi();
    let window = controls.window()?;
    let step = controls.step(psi, 0.0);
    let inf_re = min_real_part(psi, 0.0, window, step);
    v.note("a", phi.a());
    v.note("inf_re", inf_re.lower);
    // ‖g_n∘φ‖ ≥ e^{−n Re φ(s)} at the minimiser, g_n = e^{−ns}
    v.note("witness_g10_lower", (-10.0 * inf_re.upper).exp());

    let mut ok = true;
    if phi.a() > 0.0 {
        ok = false;
        v.reason("ImaginaryPartUnbounded");
        v.reason("RealPartUnboundedAbove");
        // ‖f_n∘φ‖ ≥ 1 − e^{−Re φ(σ)/n}, f_n = e^{−s/n} − 1, at σ far right
        let far = 1e4;
        let re_far = phi.evaluate(Complex64::new(far, 0.0))?.re;
        v.note("witness_f10_lower", 1.0 - (-re_far / 10.0).exp());
    } else {
        let sup_re = max_real_part(psi, 0.0, window, step);
        let sup_im = max_abs_imag(psi, 0.0, window, step);
        v.note("sup_re", sup_re.upper);
        v.note("sup_abs_im", sup_im.upper);
    }
    if !(inf_re.lower > 0.0) {
        ok = false;
        v.reason("RealPartNotBoundedAwayFromZero");
    }
    v.answer = ok;
    if ok {
        v.reason("ImageCompactlyContained");
    }
    Ok(v)
}

/// Compactness on subspaces where uniformly bounded families are jointly
/// almost periodic: `φ(ℂ₀) ⊆ ℂ_κ` for some `κ > 0`, i.e. `inf Re φ > 0`.
pub fn check_compact_subspace(phi: &Symbol, controls: ScanControls) -> Result<Verdict> {
    let mut v = Verdict::new(VerdictKind::CompactSubspace);
    let inf_re = min_re(phi.psi(), 0.0, &controls)?;
    v.note("a", phi.a());
    v.note("inf_re_phi", inf_re.lower);
    v.answer = inf_re.lower > 0.0;
    if v.answer {
        v.note("kappa", inf_re.lower);
        v.reason("ImageInHalfPlane");
    } else {
        v.reason("RealPartNotBoundedAwayFromZero");
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LinearEstimate {
    /// `Re φ(σ_m)/σ_m`.
    pub a: f64,
    /// `‖ψ‖/σ_m`.
    pub error: f64,
    /// `Re(φ(σ_m) − φ(σ₁))/(σ_m − σ₁)`.
    pub slope: f64,
    pub slope_error: f64,
}

/// Recovers the linear coefficient `a` of `φ = a·s + ψ` from values on the
/// real axis, given `psi_norm_bound ≥ sup|ψ|`.
pub fn estimate_linear_coefficient(
    samples: &[(f64, Complex64)],
    psi_norm_bound: f64,
) -> Result<LinearEstimate> {
    require(samples.len() >= 2, || "need at least two samples".into())?;
    require(samples.windows(2).all(|w| w[0].0 < w[1].0), || {
        "sample abscissae must be strictly increasing".into()
    })?;
    require(psi_norm_bound >= 0.0, || {
        "norm bound must be nonnegative".into()
    })?;
    let (s1, f1) = samples[0];
    let (sm, fm) = samples[samples.len() - 1];
    require(sm >= 10.0, || format!("largest abscissa {sm} is below 10"))?;
    let a = fm.re / sm;
    let error = psi_norm_bound / sm;
    let slope = (fm.re - f1.re) / (sm - s1);
    let slope_error = 2.0 * psi_norm_bound / (sm - s1);
    let allowed = error + slope_error;
    if (a - slope).abs() > allowed * (1.0 + 1e-12) + 1e-15 {
        return Err(Error::InconsistentSamples {
            point: a,
            slope,
            allowed,
        });
    }
    Ok(LinearEstimate {
        a,
        error,
        slope,
        slope_error,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiRecovery {
    pub psi: Vec<Complex64>,
    pub pairs_checked: usize,
    /// Pairs breaking `|ψ(s₁) − ψ(s₂)| ≤ |g(s₁) − g(s₂)|/(λr)`.
    pub violations: usize,
    /// Largest `λr|Δψ|/|Δg|` seen.
    pub max_ratio: f64,
}

/// Recovers `ψ` from samples of `g = e^(−λψ)` lying in the ball
/// `B_r(center)` that avoids zero: `ψ(s) = ψ_ref − (log g(s) − log g_ref)/λ`
/// with the logarithm continued through the ball, and checks the Lipschitz
/// certificate on every pair of samples.
pub fn recover_psi_from_exponential(
    g_samples: &[Complex64],
    lambda: f64,
    r: f64,
    center: Complex64,
    reference: usize,
    psi_ref: Complex64,
) -> Result<PsiRecovery> {
    require(lambda > 0.0 && r > 0.0, || {
        "lambda and r must be positive".into()
    })?;
    require(reference < g_samples.len(), || {
        "reference index out of range".into()
    })?;
    for (index, &g) in g_samples.iter().enumerate() {
        if !((g - center).norm() < r && g.norm() >= r) {
            return Err(Error::BallEscape { index });
        }
    }
    // g/center stays in a disc around 1 that avoids the branch cut.
    let log_rel = |g: Complex64| (g / center).ln();
    let log_ref = log_rel(g_samples[reference]);
    let psi: Vec<Complex64> = g_samples
        .iter()
        .map(|&g| psi_ref - (log_rel(g) - log_ref) / lambda)
        .collect();

    let mut violations = 0;
    let mut max_ratio = 0.0f64;
    let mut pairs = 0;
    for i in 0..psi.len() {
        for j in i + 1..psi.len() {
            pairs += 1;
            let dpsi = (psi[i] - psi[j]).norm();
            let dg = (g_samples[i] - g_samples[j]).norm();
            let bound = dg / (lambda * r);
            if dpsi > bound * (1.0 + 1e-12) + 1e-15 {
                violations += 1;
            }
            if dg > 0.0 {
                max_ratio = max_ratio.max(dpsi / bound);
            }
        }
    }
    Ok(PsiRecovery {
        psi,
        pairs_checked: pairs,
        violations,
        max_ratio,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformContinuity {
    pub r: f64,
    pub deltas: Vec<f64>,
    /// Empirical modulus `ω(δ)` on the sampled sublevel set.
    pub modulus: Vec<f64>,
    /// Slope `a + Σ|aₙ|λₙ` of the certified modulus `ω(δ) ≤ slope·δ`.
    pub certified_slope: f64,
    pub samples: usize,
    pub verdict: Verdict,
}

/// Uniform continuity of `φ` on `Ω_r = {s ∈ ℂ₀ : Re φ(s) < r}`, sampled on
/// `grid`, as required for boundedness on `A_ap(ℂ₀)`.
pub fn sublevel_uniform_continuity(
    phi: &Symbol,
    r: f64,
    deltas: &[f64],
    epsilons: &[f64],
    grid: &HalfPlaneGrid,
) -> Result<UniformContinuity> {
    require(r > 0.0, || format!("r must be positive (got {r})"))?;
    require(
        !deltas.is_empty() && deltas.iter().all(|&d| d > 0.0),
        || "deltas must be positive".into(),
    )?;
    require(epsilons.iter().all(|&e| e > 0.0), || {
        "epsilon probes must be positive".into()
    })?;
    let mut deltas = deltas.to_vec();
    deltas.sort_by(|a, b| b.total_cmp(a));

    let (ns, nt) = (grid.n_sigma, grid.n_t);
    let values: Vec<Complex64> = grid
        .points()
        .map(|s| phi.psi().eval(s) + phi.a() * s)
        .collect();
    let inside: Vec<bool> = values.iter().map(|v| v.re < r).collect();
    let samples = inside.iter().filter(|&&b| b).count();
    let slope = phi.lipschitz_bound();

    let mut verdict = Verdict::new(VerdictKind::BoundedAap);
    verdict.note("certified_slope", slope);
    verdict.note("samples", samples as f64);
    if samples == 0 {
        verdict.answer = true;
        verdict.reason("EmptySublevel");
        return Ok(UniformContinuity {
            r,
            modulus: vec![0.0; deltas.len()],
            deltas,
            certified_slope: slope,
            samples,
            verdict,
        });
    }

    let (ds, dt) = (grid.sigma_step(), grid.t_step());
    let modulus: Vec<f64> = deltas
        .iter()
        .map(|&delta| {
            let mi = (delta / ds).floor() as isize;
            let mj = (delta / dt).floor() as isize;
            let mut offsets = Vec::new();
            for di in 0..=mi {
                for dj in -mj..=mj {
                    if (di == 0 && dj <= 0) || ((di as f64 * ds).hypot(dj as f64 * dt) > delta) {
                        continue;
                    }
                    offsets.push((di, dj));
                }
            }
            let mut w = 0.0f64;
            for i in 0..ns as isize {
                for j in 0..nt as isize {
                    let a = (i * nt as isize + j) as usize;
                    if !inside[a] {
                        continue;
                    }
                    for &(di, dj) in &offsets {
                        let (i2, j2) = (i + di, j + dj);
                        if i2 >= ns as isize || j2 < 0 || j2 >= nt as isize {
                            continue;
                        }
                        let b = (i2 * nt as isize + j2) as usize;
                        if inside[b] {
                            w = w.max((values[a] - values[b]).norm());
                        }
                    }
                }
            }
            w
        })
        .collect();

    let decreasing = modulus
        .windows(2)
        .all(|w| w[1] < w[0] || (w[0] == 0.0 && w[1] == 0.0));
    let last = *modulus.last().unwrap();
    let below = epsilons.iter().all(|&e| last < e);
    let within_certificate = deltas
        .iter()
        .zip(&modulus)
        .all(|(&d, &w)| w <= slope * d * (1.0 + 1e-12) + 1e-12);
    for (d, w) in deltas.iter().zip(&modulus) {
        verdict.note(format!("omega@{d}"), *w);
    }
    verdict.answer = decreasing && below && within_certificate;
    verdict.reason(if verdict.answer {
        "UniformlyContinuousOnSublevel"
    } else if !within_certificate {
        "ModulusExceedsCertificate"
    } else {
        "ModulusNotVanishing"
    });
    Ok(UniformContinuity {
        r,
        deltas,
        modulus,
        certified_slope: slope,
        samples,
        verdict,
    })
}
