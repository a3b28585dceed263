use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One term `coeff · e^(−lambda·s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub lambda: f64,
    pub coeff: Complex64,
}

/// A finite general Dirichlet polynomial `Σ aₙ e^(−λₙ s)`.
///
/// Stored in canonical form: frequencies strictly increasing and nonnegative,
/// no zero coefficients. The empty polynomial is the zero function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GDPolynomial {
    terms: Vec<Term>,
}

impl GDPolynomial {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0.0, c).expect("zero frequency is valid")
    }

    pub fn monomial(lambda: f64, coeff: Complex64) -> Result<Self> {
        Self::new([(lambda, coeff)])
    }

    /// Builds the canonical polynomial from arbitrary terms: sorts by
    /// frequency, sums coefficients of repeated frequencies and drops zeros.
    pub fn new(terms: impl IntoIterator<Item = (f64, Complex64)>) -> Result<Self> {
        let mut raw: Vec<Term> = Vec::new();
        for (lambda, coeff) in terms {
            check_term(lambda, coeff)?;
            raw.push(Term { lambda, coeff });
        }
        raw.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        let mut merged: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match merged.last_mut() {
                Some(last) if last.lambda == t.lambda => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
        Ok(Self { terms: merged })
    }

    /// Strict constructor used by the parsers: frequencies must already be
    /// strictly increasing. Zero coefficients are still dropped.
    pub fn from_strict(terms: impl IntoIterator<Item = (f64, Complex64)>) -> Result<Self> {
        let mut out: Vec<Term> = Vec::new();
        for (lambda, coeff) in terms {
            check_term(lambda, coeff)?;
            if let Some(prev) = out.last() {
                if lambda <= prev.lambda {
                    return Err(Error::FrequencyOrder {
                        prev: prev.lambda,
                        next: lambda,
                    });
                }
            }
            out.push(Term { lambda, coeff });
        }
        out.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
        Ok(Self { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.terms.iter().map(|t| t.lambda)
    }

    pub fn max_frequency(&self) -> f64 {
        self.terms.last().map_or(0.0, |t| t.lambda)
    }

    /// Coefficient at frequency `lambda`, zero if `lambda` is not a frequency.
    pub fn coeff_at(&self, lambda: f64) -> Complex64 {
        self.terms
            .binary_search_by(|t| t.lambda.total_cmp(&lambda))
            .map_or(Complex64::new(0.0, 0.0), |i| self.terms[i].coeff)
    }

    /// `Σ coeffₙ e^(−λₙ s)`. Requires finite `s` with `Re s ≥ 0`.
    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::NonFinite("evaluation point"));
        }
        if s.re < 0.0 {
            return Err(Error::Precondition(format!(
                "evaluation point {s} lies left of the imaginary axis"
            )));
        }
        Ok(self.eval(s))
    }

    /// Unchecked evaluation, valid for any finite `s`.
    pub(crate) fn eval(&self, s: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coeff * (-t.lambda * s).exp())
            .sum()
    }

    /// `V_τ P (s) = P(s + iτ)`: coefficients pick up the phase `e^(−iλτ)`.
    pub fn vertical_translate(&self, tau: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                lambda: t.lambda,
                coeff: t.coeff * Complex64::from_polar(1.0, -t.lambda * tau),
            })
            .collect();
        Self { terms }
    }

    /// Formal derivative `d/ds`.
    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.lambda > 0.0)
            .map(|t| Term {
                lambda: t.lambda,
                coeff: -t.lambda * t.coeff,
            })
            .collect();
        Self { terms }
    }

    /// Applies `f` to every coefficient and re-canonicalises.
    pub fn map_coeffs(&self, mut f: impl FnMut(f64, Complex64) -> Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                lambda: t.lambda,
                coeff: f(t.lambda, t.coeff),
            })
            .filter(|t| t.coeff != Complex64::new(0.0, 0.0))
            .collect();
        Self { terms }
    }

    pub fn abs_sum(&self) -> f64 {
        self.weighted_abs_sum(0.0, 0)
    }

    /// `Σ |coeffₙ| e^(−λₙκ)`: bounds `|P|` on the closed half-plane `Re s ≥ κ`.
    pub fn analytic_bound(&self, kappa: f64) -> f64 {
        self.weighted_abs_sum(kappa, 0)
    }

    /// `Σ |coeffₙ| λₙ e^(−λₙκ)`: bounds `|∂ₜP|` on `Re s ≥ κ`.
    pub fn lipschitz_bound(&self, kappa: f64) -> f64 {
        self.weighted_abs_sum(kappa, 1)
    }

    /// `Σ |coeffₙ| λₙ² e^(−λₙκ)`: bounds `|∂ₜ²P|` on `Re s ≥ κ`.
    pub fn curvature_bound(&self, kappa: f64) -> f64 {
        self.weighted_abs_sum(kappa, 2)
    }

    fn weighted_abs_sum(&self, kappa: f64, power: i32) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.norm() * t.lambda.powi(power) * (-t.lambda * kappa).exp())
            .sum()
    }

    pub(crate) fn on_line(&self, sigma: f64) -> LineEvaluator {
        LineEvaluator {
            lambdas: self.terms.iter().map(|t| t.lambda).collect(),
            damped: self
                .terms
                .iter()
                .map(|t| t.coeff * (-t.lambda * sigma).exp())
                .collect(),
        }
    }
}

fn check_term(lambda: f64, coeff: Complex64) -> Result<()> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::NegativeFrequency(lambda));
    }
    if !(coeff.re.is_finite() && coeff.im.is_finite()) {
        return Err(Error::NonFinite("coefficient"));
    }
    Ok(())
}

/// Evaluates a polynomial and its `t`-derivatives on a fixed vertical line.
pub(crate) struct LineEvaluator {
    lambdas: Vec<f64>,
    damped: Vec<Complex64>,
}

impl LineEvaluator {
    pub(crate) fn value(&self, t: f64) -> Complex64 {
        self.lambdas
            .iter()
            .zip(&self.damped)
            .map(|(&l, &c)| c * Complex64::from_polar(1.0, -l * t))
            .sum()
    }

    /// `(P, ∂ₜP)` at `σ + it`.
    pub(crate) fn value_and_slope(&self, t: f64) -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for (&l, &c) in self.lambdas.iter().zip(&self.damped) {
            let (sin, cos) = (-l * t).sin_cos();
            let e = c * Complex64::new(cos, sin);
            v += e;
            // ∂ₜ e^(−iλt) = −iλ e^(−iλt)
            d += Complex64::new(e.im * l, -e.re * l);
        }
        (v, d)
    }
}

impl Neg for &GDPolynomial {
    type Output = GDPolynomial;
    fn neg(self) -> GDPolynomial {
        self.map_coeffs(|_, c| -c)
    }
}

impl Add for &GDPolynomial {
    type Output = GDPolynomial;
    fn add(self, rhs: &GDPolynomial) -> GDPolynomial {
        let mut out = Vec::with_capacity(self.len() + rhs.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x.lambda == y.lambda => {
                    i += 1;
                    j += 1;
                    Term {
                        lambda: x.lambda,
                        coeff: x.coeff + y.coeff,
                    }
                }
                (Some(x), Some(y)) if x.lambda < y.lambda => {
                    i += 1;
                    *x
                }
                (Some(x), None) => {
                    i += 1;
                    *x
                }
                (_, Some(y)) => {
                    j += 1;
                    *y
                }
                (None, None) => unreachable!(),
            };
            if next.coeff != Complex64::new(0.0, 0.0) {
                out.push(next);
            }
        }
        GDPolynomial { terms: out }
    }
}

impl Sub for &GDPolynomial {
    type Output = GDPolynomial;
    fn sub(self, rhs: &GDPolynomial) -> GDPolynomial {
        self + &(-rhs)
    }
}

impl Mul<Complex64> for &GDPolynomial {
    type Output = GDPolynomial;
    fn mul(self, k: Complex64) -> GDPolynomial {
        self.map_coeffs(|_, c| c * k)
    }
}
