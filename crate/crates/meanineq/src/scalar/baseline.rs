//! One- and two-term baseline refinements that predate the multi-term
//! family; used by the gap reports for comparison and kept in the registry
//! as sanity rows.

use crate::error::Result;
use crate::scalar::refinement::{weighted_geometric, ScalarPair};
use crate::scalar::weight::Weight;

/// Refining terms of the classical baselines at `(nu, a, b)`.
#[derive(Debug, Clone, Copy)]
pub struct BaselineTerms {
    /// `min(nu, 1-nu)^2 (a-b)^2`, the squared single-term baseline.
    pub squared_single: f64,
    /// `min(nu, 1-nu) (sqrt a - sqrt b)^2`, the single-term baseline.
    pub single: f64,
    /// First of the two-term refinement terms, `r (sqrt a - sqrt b)^2`
    /// with `r = nu` below the seam and `1 - nu` above it.
    pub two_term_first: f64,
    /// Second of the two-term refinement terms,
    /// `r0 (fourth-root(ab) - sqrt b)^2` below the seam (mirrored above),
    /// `r0 = min(2r, 1 - 2r)`.
    pub two_term_second: f64,
    /// Reverse baseline term `r0 (fourth-root(ab) - sqrt a)^2` (mirrored).
    pub reverse_term: f64,
    /// Squared reverse baseline term `r0 (sqrt(ab) - a)^2` (mirrored).
    pub reverse_squared_term: f64,
    /// `max(nu, 1-nu) (sqrt a - sqrt b)^2`, the unrefined reverse slack.
    pub max_reverse_term: f64,
}

/// Evaluates every baseline refining term.
pub fn baseline_terms(nu: &Weight, pair: &ScalarPair) -> Result<BaselineTerms> {
    nu.require_convex("baseline refinements")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let r = v.min(1.0 - v);
    let r0 = (2.0 * r).min(1.0 - 2.0 * r);
    let sqrt_gap = (a.sqrt() - b.sqrt()).powi(2);
    let quarter = (a * b).powf(0.25);
    let lower = v <= 0.5;
    Ok(BaselineTerms {
        squared_single: r * r * (a - b).powi(2),
        single: r * sqrt_gap,
        two_term_first: if lower { v } else { 1.0 - v } * sqrt_gap,
        two_term_second: r0
            * if lower { (quarter - b.sqrt()).powi(2) } else { (quarter - a.sqrt()).powi(2) },
        reverse_term: r0
            * if lower { (quarter - a.sqrt()).powi(2) } else { (quarter - b.sqrt()).powi(2) },
        reverse_squared_term: r0
            * if lower { ((a * b).sqrt() - a).powi(2) } else { ((a * b).sqrt() - b).powi(2) },
        max_reverse_term: v.max(1.0 - v) * sqrt_gap,
    })
}

/// `(lhs, rhs)` of the numbered baseline inequalities, indexed 2..=7 in the
/// order: squared single-term, single-term, two-term, reverse, squared
/// reverse, unrefined max-reverse.
pub fn baseline_inequality(nu: &Weight, pair: &ScalarPair, index: u8) -> Result<(f64, f64)> {
    let terms = baseline_terms(nu, pair)?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let geo = weighted_geometric(pair, v);
    let arith = v * a + (1.0 - v) * b;
    let gap = (a - b).powi(2);
    Ok(match index {
        2 => (geo * geo + terms.squared_single, arith * arith),
        3 => (geo + terms.single, arith),
        4 => (geo + terms.two_term_first + terms.two_term_second, arith),
        5 => {
            let slack = if v <= 0.5 { 1.0 - v } else { v } * (a.sqrt() - b.sqrt()).powi(2);
            (arith + terms.reverse_term, geo + slack)
        }
        6 => {
            let slack = if v <= 0.5 { (1.0 - v) * (1.0 - v) } else { v * v } * gap;
            (arith * arith + terms.reverse_squared_term, geo * geo + slack)
        }
        7 => (arith, geo + terms.max_reverse_term),
        _ => {
            return Err(crate::error::Error::Usage(format!(
                "baseline index must be in 2..=7, got {index}"
            )))
        }
    })
}
