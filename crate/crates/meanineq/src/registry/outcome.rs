//! Evaluation outcomes with normalized margins.
//!
//! Margins share one convention across every entry kind: an outcome passes
//! at tolerance `tol` iff `margin >= -tol`. Inequalities use
//! `(rhs - lhs) / max(1, |lhs|, |rhs|)`, identities use
//! `-|residual| / scale`, Loewner comparisons use the minimum eigenvalue of
//! the difference over the norm scale.

use serde::{Deserialize, Serialize};

use crate::ineq_margin;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Detail {
    Inequality { lhs: f64, rhs: f64 },
    /// Several sub-statements (branches, chains, paired identities); the
    /// outcome margin is their minimum.
    Conjunction { margins: Vec<f64> },
    Identity { residual: f64, scale: f64 },
    Loewner { min_eig: f64, scale: f64 },
    Diagnostic { hermiticity_defect: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub margin: f64,
    pub detail: Detail,
}

impl EvalOutcome {
    pub fn inequality(lhs: f64, rhs: f64) -> Self {
        EvalOutcome { margin: ineq_margin(lhs, rhs), detail: Detail::Inequality { lhs, rhs } }
    }

    pub fn conjunction(margins: Vec<f64>) -> Self {
        let margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
        EvalOutcome { margin, detail: Detail::Conjunction { margins } }
    }

    pub fn identity(residual: f64, scale: f64) -> Self {
        let scale = scale.max(1.0);
        EvalOutcome {
            margin: -residual.abs() / scale,
            detail: Detail::Identity { residual, scale },
        }
    }

    pub fn loewner(min_eig: f64, scale: f64) -> Self {
        let scale = scale.max(1.0);
        EvalOutcome { margin: min_eig / scale, detail: Detail::Loewner { min_eig, scale } }
    }

    pub fn diagnostic(hermiticity_defect: f64) -> Self {
        EvalOutcome { margin: 0.0, detail: Detail::Diagnostic { hermiticity_defect } }
    }
}

/// Margin of `lhs <= rhs` as used inside conjunctions.
pub fn margin_of(lhs: f64, rhs: f64) -> f64 {
    ineq_margin(lhs, rhs)
}

/// Margin of an identity `|residual| <= tol * scale` as used inside
/// conjunctions.
pub fn identity_margin(residual: f64, scale: f64) -> f64 {
    -residual.abs() / scale.max(1.0)
}
