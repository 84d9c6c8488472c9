//! Squared refinements and reverses of the weighted AM-GM inequality.

use crate::error::{Error, Result};
use crate::scalar::refinement::{
    level_coefficient, refinement_sum, refinement_sum_range, weighted_geometric, ScalarPair,
};
use crate::scalar::reverse::BranchSide;
use crate::scalar::weight::{RefinementDepth, Weight};

fn require_depth_at_least(depth: RefinementDepth, min: u32) -> Result<()> {
    if depth.n() < min {
        Err(Error::Depth(format!(
            "this statement needs at least {min} refinement terms, got {}",
            depth.n()
        )))
    } else {
        Ok(())
    }
}

/// Squared refinement: the first level contributes `s_1^2 (a-b)^2` exactly,
/// while levels `j >= 2` are the corresponding levels of `S_N(nu; a^2, b^2)`.
/// Returns `(lhs, (nu a + (1-nu) b)^2)` with `lhs <= rhs`.
pub fn squared_refined(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    nu.require_convex("the squared refinement")?;
    require_depth_at_least(depth, 2)?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let s1 = level_coefficient(nu, 1);
    let squared_pair = ScalarPair::new(a * a, b * b)?;
    let tail = refinement_sum_range(nu, &squared_pair, 2, depth.n())?;
    let geo = weighted_geometric(pair, v);
    let lhs = geo * geo + s1 * s1 * (a - b).powi(2) + tail;
    let arith = v * a + (1.0 - v) * b;
    Ok((lhs, arith * arith))
}

/// Residual of the algebraic cancellation that powers the squared
/// refinement; zero up to roundoff for every `(nu, a, b)`:
/// `(nu a^2 + (1-nu) b^2) + s_1^2 (a-b)^2 - s_1 (a-b)^2 - (nu a + (1-nu) b)^2`.
pub fn squared_cancellation_residual(nu: &Weight, pair: &ScalarPair) -> f64 {
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let s1 = level_coefficient(nu, 1);
    let gap = (a - b).powi(2);
    (v * a * a + (1.0 - v) * b * b) + s1 * s1 * gap
        - s1 * gap
        - (v * a + (1.0 - v) * b).powi(2)
}

/// One branch of the squared reverse:
/// `(nu a + (1-nu) b)^2 + S_N(2nu; ab, a^2) <= (a^nu b^{1-nu})^2 + (1-nu)^2 (a-b)^2`
/// below the seam, mirrored with `S_N(2-2nu; ab, b^2)` and `nu^2` above it.
pub fn squared_reverse_branch(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<(f64, f64)> {
    nu.require_convex("the squared reverse")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let arith = v * a + (1.0 - v) * b;
    let geo = weighted_geometric(pair, v);
    let gap = (a - b).powi(2);
    match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            let inner = nu.affine(1, false, 0)?;
            let s = refinement_sum(&inner, &ScalarPair::new(a * b, a * a)?, depth)?;
            Ok((arith * arith + s, geo * geo + (1.0 - v).powi(2) * gap))
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            let inner = nu.affine(1, true, 2)?;
            let s = refinement_sum(&inner, &ScalarPair::new(a * b, b * b)?, depth)?;
            Ok((arith * arith + s, geo * geo + v * v * gap))
        }
    }
}

/// Canonical-branch squared reverse.
pub fn squared_reverse(nu: &Weight, pair: &ScalarPair, depth: RefinementDepth) -> Result<(f64, f64)> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    squared_reverse_branch(nu, pair, depth, side)
}

/// Every applicable branch of the squared reverse.
pub fn squared_reverse_branches(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    if nu.value() <= 0.5 || nu.at_seam(0.5) {
        out.push(squared_reverse_branch(nu, pair, depth, BranchSide::Lower)?);
    }
    if nu.value() >= 0.5 || nu.at_seam(0.5) {
        out.push(squared_reverse_branch(nu, pair, depth, BranchSide::Upper)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: f64) -> Weight {
        Weight::new(v).unwrap()
    }

    fn pair(a: f64, b: f64) -> ScalarPair {
        ScalarPair::new(a, b).unwrap()
    }

    fn d(n: u32) -> RefinementDepth {
        RefinementDepth::new(n).unwrap()
    }

    #[test]
    fn needs_two_levels() {
        assert!(matches!(
            squared_refined(&w(0.3), &pair(2.0, 5.0), d(1)),
            Err(Error::Depth(_))
        ));
    }

    #[test]
    fn zero_weight_is_exact() {
        let (lhs, rhs) = squared_refined(&w(0.0), &pair(2.0, 5.0), d(2)).unwrap();
        assert_eq!(lhs, 25.0);
        assert_eq!(rhs, 25.0);
    }

    #[test]
    fn cancellation_identity_is_tight() {
        for nu in [0.0, 0.2, 0.5, 0.77, 1.0] {
            for (a, b) in [(2.0, 5.0), (0.03, 40.0), (7.0, 7.0)] {
                let r = squared_cancellation_residual(&w(nu), &pair(a, b));
                let scale = (a * a + b * b).max(1.0);
                assert!(r.abs() <= 1e-12 * scale, "residual {r} at nu={nu} a={a} b={b}");
            }
        }
    }

    #[test]
    fn squared_refined_holds() {
        let (lhs, rhs) = squared_refined(&w(0.3), &pair(2.0, 5.0), d(4)).unwrap();
        assert!((rhs - 4.1f64.powi(2)).abs() < 1e-12);
        assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn squared_reverse_half_weight_is_equality() {
        for (a, b) in [(2.0, 5.0), (10.0, 0.3)] {
            for (lhs, rhs) in
                squared_reverse_branches(&Weight::dyadic(1, 1).unwrap(), &pair(a, b), d(3)).unwrap()
            {
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0), "lhs={lhs} rhs={rhs}");
            }
        }
    }

    #[test]
    fn squared_reverse_refining_term_by_hand() {
        // nu = 1/4, (a, b) = (4, 1): S_1(1/2; 4, 16) = (1/2)(4 - 2)^2 = 2.
        let inner = Weight::dyadic(1, 2).unwrap().affine(1, false, 0).unwrap();
        let s = refinement_sum(&inner, &pair(4.0, 16.0), d(1)).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
        let (lhs, rhs) =
            squared_reverse(&Weight::dyadic(1, 2).unwrap(), &pair(4.0, 1.0), d(1)).unwrap();
        assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn squared_reverse_upper_branch_holds() {
        let (lhs, rhs) = squared_reverse(&w(0.9), &pair(2.0, 3.0), d(2)).unwrap();
        assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
    }
}
