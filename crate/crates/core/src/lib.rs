//! Numerics for general Dirichlet polynomials `Σ aₙ e^(−λₙs)` viewed as
//! bounded analytic almost periodic functions on right half-planes
//! `ℂ_κ = {Re s > κ}`.
//!
//! - [`halfplane`]: the function model, vertical translation and certified
//!   sup norms.
//! - [`almost_periodic`]: ε-translation numbers, joint scans, vertical limits
//!   and the Schottky bound.
//! - [`bohr`]: Bohr coefficients, spectra, the abscissa `L(λ)` and tail bounds.
//! - [`riesz`]: Riesz means and the Poisson kernel.
//! - [`composition`]: symbols `φ(s) = a·s + ψ(s)` and operator verdicts.
//! - [`montel`]: uniform subsequence extraction and separation estimates.
//! - [`io`]: JSON documents and CSV tables.

// NaN-rejecting checks are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod almost_periodic;
pub mod bohr;
mod cluster;
pub mod composition;
mod error;
pub mod halfplane;
pub mod io;
pub mod montel;
mod quad;
pub mod riesz;

pub use error::{Error, Result};
pub use halfplane::{
    certified_sup_norm, evaluate, vertical_translate, GDPolynomial, HalfPlaneGrid, LineSample,
    LineWindow, SupNormEnclosure, Term,
};
pub use io::Artifact;
pub use num_complex::Complex64;
