//! Workloads shared by the benches.

use apline_core::{Complex64, GDPolynomial};

/// `Σ_{n≤terms} n^{-s}` as a polynomial with frequencies `log n`.
pub fn zeta_truncation(terms: usize) -> GDPolynomial {
    GDPolynomial::new((1..=terms).map(|n| ((n as f64).ln(), Complex64::new(1.0, 0.0))))
        .expect("log n is increasing and finite")
}

/// Frequencies `0, 1, …, terms−1` with coefficients on a slow spiral.
pub fn integer_spectrum(terms: usize) -> GDPolynomial {
    GDPolynomial::new((0..terms).map(|k| {
        let k = k as f64;
        (k, Complex64::from_polar(1.0 / (1.0 + k), 0.7 * k))
    }))
    .expect("integer frequencies are valid")
}
