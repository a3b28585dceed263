//! Function model, evaluation, vertical translation and certified sup norms.

mod grid;
mod norm;
mod poly;

pub use grid::{HalfPlaneGrid, LineWindow};
pub use norm::{
    certified_sup_norm, certified_sup_norm_centered, default_step, line_scan, max_abs_imag,
    max_modulus, max_real_part, min_real_part, step_for_slack, Bracket, LineSample,
    SupNormEnclosure, DEFAULT_SLACK, DEFAULT_WINDOW,
};
pub use poly::{GDPolynomial, Term};

/// `P(s)`; see [`GDPolynomial::evaluate`].
pub fn evaluate(
    p: &GDPolynomial,
    s: num_complex::Complex64,
) -> crate::Result<num_complex::Complex64> {
    p.evaluate(s)
}

/// `V_τ P`; see [`GDPolynomial::vertical_translate`].
pub fn vertical_translate(p: &GDPolynomial, tau: f64) -> GDPolynomial {
    p.vertical_translate(tau)
}
