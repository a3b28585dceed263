//! Certified extrema on vertical lines.
//!
//! A bounded analytic function on `ℂ_κ` attains its supremum modulus on the
//! boundary line `Re s = κ` (maximum modulus principle for half-planes), and
//! the same holds for the infimum/supremum of its real or imaginary part since
//! those are bounded harmonic functions. Every half-plane quantity in this
//! crate is therefore reduced to a one-dimensional search over `t`.
//!
//! The search is a branch-and-bound over cells of the `t`-window. A cell with
//! centre `m` and half-width `h` is bounded above by
//! `g(m) + min(L₁h, |g'(m)|h + L₂h²/2)`, where `L₁`, `L₂` bound `|g'|` and
//! `|g''|` on the line; cells whose bound cannot beat the incumbent by more
//! than the tolerance are discarded, the rest are split in two. Cells narrower
//! than `step` are retired, so the result is certified to `L₁·step/2`.

use num_complex::Complex64;

use super::grid::LineWindow;
use super::poly::GDPolynomial;
use crate::error::{require, Result};

/// Default half-width of the `t`-window.
pub const DEFAULT_WINDOW: f64 = 200.0;

/// Default Lipschitz slack `L·step/2` of a sup-norm enclosure.
pub const DEFAULT_SLACK: f64 = 1e-6;

/// Enclosure of `sup |P|` over the window `[−window, window]` on `Re s = sigma`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SupNormEnclosure {
    /// Largest sampled modulus.
    pub lower: f64,
    /// `lower + L·step/2`, widened by a floating-point allowance.
    pub upper: f64,
    pub sigma: f64,
    pub window: f64,
    pub step: f64,
}

impl SupNormEnclosure {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Bracket `[lower, upper]` for an extremum over a window; `at` is the `t`
/// where the best sample was found.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
    pub at: f64,
}

/// Step for which `L·step/2 ≤ slack`, with `L = Σ|aₙ|λₙe^(−λₙκ)`.
pub fn step_for_slack(p: &GDPolynomial, kappa: f64, slack: f64) -> f64 {
    let lip = p.lipschitz_bound(kappa);
    if lip > 0.0 {
        2.0 * slack / lip
    } else {
        1.0
    }
}

pub fn default_step(p: &GDPolynomial, kappa: f64) -> f64 {
    step_for_slack(p, kappa, DEFAULT_SLACK)
}

/// Certified enclosure of `sup_{|t| ≤ T} |P(κ + it)|`.
///
/// By the maximum modulus principle the same number bounds `|P|` on the part
/// of `ℂ_κ` above the window; [`GDPolynomial::analytic_bound`] gives the
/// global bound over all of `ℂ_κ`.
pub fn certified_sup_norm(
    p: &GDPolynomial,
    kappa: f64,
    half_width: f64,
    step: f64,
) -> Result<SupNormEnclosure> {
    certified_sup_norm_centered(p, kappa, 0.0, half_width, step)
}

/// As [`certified_sup_norm`] over `[center − T, center + T]`.
pub fn certified_sup_norm_centered(
    p: &GDPolynomial,
    kappa: f64,
    center: f64,
    half_width: f64,
    step: f64,
) -> Result<SupNormEnclosure> {
    require(step > 0.0 && step.is_finite(), || {
        format!("step must be positive (got {step})")
    })?;
    require(kappa.is_finite() && kappa >= 0.0, || {
        format!("kappa must be finite and nonnegative (got {kappa})")
    })?;
    let window = LineWindow::centered(center, half_width)?;
    let b = if p.is_empty() {
        Bracket {
            lower: 0.0,
            upper: 0.0,
            at: center,
        }
    } else {
        max_modulus(p, kappa, window, step)
    };
    Ok(SupNormEnclosure {
        lower: b.lower,
        upper: b.upper,
        sigma: kappa,
        window: half_width,
        step,
    })
}

/// `sup |P(σ + it)|` over the window.
pub fn max_modulus(p: &GDPolynomial, sigma: f64, window: LineWindow, step: f64) -> Bracket {
    let line = p.on_line(sigma);
    let m0 = p.analytic_bound(sigma);
    let l1 = p.lipschitz_bound(sigma);
    let l2 = p.curvature_bound(sigma);
    let tol = l1 * step / 2.0;
    // Work with |P|², which is smooth: (|P|²)' = 2 Re(P̄ P'),
    // |(|P|²)''| ≤ 2(L₁² + M₀L₂).
    let (best_sq, at) = branch_and_bound(
        |t| {
            let (v, d) = line.value_and_slope(t);
            (v.norm_sqr(), 2.0 * (v.conj() * d).re)
        },
        2.0 * m0 * l1,
        2.0 * (l1 * l1 + m0 * l2),
        window,
        step,
        |best| {
            let r = best.max(0.0).sqrt();
            (r + tol) * (r + tol) - best
        },
    );
    let best = best_sq.max(0.0).sqrt();
    let round = rounding(p, m0);
    Bracket {
        lower: (best - round).max(0.0),
        upper: best + round + tol,
        at,
    }
}

/// `sup Re P(σ + it)` over the window.
pub fn max_real_part(p: &GDPolynomial, sigma: f64, window: LineWindow, step: f64) -> Bracket {
    max_component(p, sigma, window, step, |z| z.re)
}

/// `inf Re P(σ + it)` over the window.
pub fn min_real_part(p: &GDPolynomial, sigma: f64, window: LineWindow, step: f64) -> Bracket {
    let b = max_component(p, sigma, window, step, |z| -z.re);
    Bracket {
        lower: -b.upper,
        upper: -b.lower,
        at: b.at,
    }
}

/// `sup |Im P(σ + it)|` over the window.
pub fn max_abs_imag(p: &GDPolynomial, sigma: f64, window: LineWindow, step: f64) -> Bracket {
    let up = max_component(p, sigma, window, step, |z| z.im);
    let down = max_component(p, sigma, window, step, |z| -z.im);
    if up.lower >= down.lower {
        Bracket {
            upper: up.upper.max(down.upper),
            ..up
        }
    } else {
        Bracket {
            upper: up.upper.max(down.upper),
            ..down
        }
    }
}

fn max_component(
    p: &GDPolynomial,
    sigma: f64,
    window: LineWindow,
    step: f64,
    part: impl Fn(Complex64) -> f64,
) -> Bracket {
    let line = p.on_line(sigma);
    let l1 = p.lipschitz_bound(sigma);
    let l2 = p.curvature_bound(sigma);
    let tol = l1 * step / 2.0;
    let (best, at) = branch_and_bound(
        |t| {
            let (v, d) = line.value_and_slope(t);
            (part(v), part(d))
        },
        l1,
        l2,
        window,
        step,
        |_| tol,
    );
    let round = rounding(p, p.analytic_bound(sigma));
    Bracket {
        lower: best - round,
        upper: best + round + tol,
        at,
    }
}

/// Floating-point error allowance for one evaluation of `P` on the line.
/// A constant term is evaluated exactly.
fn rounding(p: &GDPolynomial, m0: f64) -> f64 {
    let oscillating = p.frequencies().filter(|&l| l > 0.0).count();
    if oscillating == 0 {
        0.0
    } else {
        4.0 * (oscillating + 1) as f64 * f64::EPSILON * m0
    }
}

/// Maximises a smooth `g` over the window. `eval` returns `(g(t), g'(t))`;
/// `lip` and `curv` bound `|g'|` and `|g''|`. Returns the best sample and its
/// location; every discarded cell satisfies `g ≤ best + slack(best)` or has
/// width at most `step`.
fn branch_and_bound(
    eval: impl Fn(f64) -> (f64, f64),
    lip: f64,
    curv: f64,
    window: LineWindow,
    step: f64,
    slack: impl Fn(f64) -> f64,
) -> (f64, f64) {
    let (a, b) = (window.t_min, window.t_max);
    let mut best = f64::NEG_INFINITY;
    let mut at = a;
    let mut seeds = vec![a, b];
    if window.contains(0.0) {
        seeds.push(0.0);
    }
    for t in seeds {
        let v = eval(t).0;
        if v > best {
            best = v;
            at = t;
        }
    }
    if lip <= 0.0 {
        return (best, at);
    }

    // Start from cells over which the phase of the fastest term turns by
    // about one radian: lip/curv ≈ the largest frequency.
    let scale = if curv > 0.0 { lip / curv } else { 1.0 };
    let n0 = ((b - a) / scale).ceil().clamp(1.0, 1e7) as usize;
    let h0 = (b - a) / (2.0 * n0 as f64);
    let mut cells: Vec<f64> = (0..n0).map(|k| a + (2 * k + 1) as f64 * h0).collect();
    let mut half = h0;

    while !cells.is_empty() {
        let values: Vec<(f64, f64)> = cells.iter().map(|&m| eval(m)).collect();
        for (&m, &(v, _)) in cells.iter().zip(&values) {
            if v > best {
                best = v;
                at = m;
            }
        }
        if 2.0 * half <= step {
            break;
        }
        let threshold = best + slack(best);
        let h = half;
        let mut next = Vec::new();
        for (&m, &(v, d)) in cells.iter().zip(&values) {
            let bound = v + (lip * h).min(d.abs() * h + 0.5 * curv * h * h);
            if bound > threshold {
                next.push(m - h / 2.0);
                next.push(m + h / 2.0);
            }
        }
        cells = next;
        half = h / 2.0;
    }
    (best, at)
}

/// One sample of a line scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSample {
    pub t: f64,
    pub value: Complex64,
}

/// Samples `P(σ + it)` for `t = t_min, t_min + step, …, t_max`.
pub fn line_scan(
    p: &GDPolynomial,
    sigma: f64,
    window: LineWindow,
    step: f64,
) -> Result<Vec<LineSample>> {
    require(step > 0.0 && step.is_finite(), || {
        format!("step must be positive (got {step})")
    })?;
    let line = p.on_line(sigma);
    let n = (window.len() / step).floor() as usize;
    let mut out: Vec<LineSample> = (0..=n)
        .map(|k| {
            let t = window.t_min + k as f64 * step;
            LineSample {
                t,
                value: line.value(t),
            }
        })
        .collect();
    if out.last().is_some_and(|s| s.t < window.t_max) {
        out.push(LineSample {
            t: window.t_max,
            value: line.value(window.t_max),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(f64, f64)]) -> GDPolynomial {
        GDPolynomial::new(terms.iter().map(|&(l, a)| (l, Complex64::new(a, 0.0)))).unwrap()
    }

    #[test]
    fn single_exponential_norm() {
        let p = poly(&[(1.0, 1.0)]);
        let e = certified_sup_norm(&p, 1.0, 20.0, default_step(&p, 1.0)).unwrap();
        let exact = (-1.0f64).exp();
        assert!(e.contains(exact), "{e:?}");
        assert!(e.width() <= 1e-6 + 1e-14);
    }

    #[test]
    fn positive_coefficients_attain_bound_at_zero() {
        let p = poly(&[(1.0, 1.0), (2.0, 1.0)]);
        let e = certified_sup_norm(&p, 1.0, DEFAULT_WINDOW, default_step(&p, 1.0)).unwrap();
        let exact = (-1.0f64).exp() + (-2.0f64).exp();
        assert!((e.lower - exact).abs() < 1e-12);
        assert!((exact - 0.503215).abs() < 1e-6);
    }

    #[test]
    fn rejects_nonpositive_step() {
        let p = poly(&[(1.0, 1.0)]);
        assert!(certified_sup_norm(&p, 0.0, 10.0, 0.0).is_err());
        assert!(certified_sup_norm(&p, 0.0, 10.0, -1.0).is_err());
    }

    #[test]
    fn zero_and_constant() {
        let z = GDPolynomial::zero();
        let e = certified_sup_norm(&z, 0.0, 10.0, 0.1).unwrap();
        assert_eq!((e.lower, e.upper), (0.0, 0.0));
        let k = poly(&[(0.0, -3.0)]);
        let e = certified_sup_norm(&k, 0.0, 10.0, 0.1).unwrap();
        assert_eq!((e.lower, e.upper), (3.0, 3.0));
    }

    #[test]
    fn real_part_extrema() {
        // Re(2 + e^{-s}) on σ = 0 is 2 + cos t ∈ [1, 3].
        let p = poly(&[(0.0, 2.0), (1.0, 1.0)]);
        let w = LineWindow::symmetric(10.0).unwrap();
        let lo = min_real_part(&p, 0.0, w, 1e-6);
        let hi = max_real_part(&p, 0.0, w, 1e-6);
        assert!(lo.lower <= 1.0 && 1.0 <= lo.upper && lo.upper - lo.lower < 1e-6);
        assert!(hi.lower <= 3.0 && 3.0 <= hi.upper);
        let im = max_abs_imag(&p, 0.0, w, 1e-6);
        assert!(im.lower <= 1.0 && 1.0 <= im.upper + 1e-15);
    }

    #[test]
    fn line_scan_covers_endpoints() {
        let p = poly(&[(1.0, 1.0)]);
        let w = LineWindow::new(-1.0, 1.05).unwrap();
        let s = line_scan(&p, 0.0, w, 0.1).unwrap();
        assert_eq!(s.first().unwrap().t, -1.0);
        assert_eq!(s.last().unwrap().t, 1.05);
    }
}
