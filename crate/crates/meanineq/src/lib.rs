//! Multi-term refinements of Young- and Heinz-type inequalities.
//!
//! The crate has three layers:
//!
//! * scalar evaluators for every refinement, reverse, squared and
//!   Kantorovich-strengthened statement ([`scalar`]);
//! * dense Hermitian linear algebra and the operator / Hilbert-Schmidt /
//!   unitarily-invariant-norm versions built on it ([`matrix`],
//!   [`operator`], [`hs`], [`norms`], [`logconvex`]);
//! * a registry that exposes each statement as a keyed entry with a
//!   randomized verification suite and gap reports ([`registry`]).
//!
//! Inequalities are checked with the relative tolerance model
//! `lhs <= rhs + tol * max(1, |lhs|, |rhs|)`; see [`ineq_margin`].

pub mod error;
pub mod hs;
pub mod logconvex;
pub mod matrix;
pub mod norms;
pub mod operator;
pub mod registry;
pub mod scalar;

pub use error::{Error, Result};

/// Default relative tolerance for inequality checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Scale used by the relative tolerance model.
pub fn tol_scale(lhs: f64, rhs: f64) -> f64 {
    lhs.abs().max(rhs.abs()).max(1.0)
}

/// Normalized signed margin of `lhs <= rhs`; nonnegative margins certify the
/// inequality, margins below `-tol` refute it at that tolerance.
pub fn ineq_margin(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / tol_scale(lhs, rhs)
}
