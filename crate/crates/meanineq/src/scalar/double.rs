//! Chained refinements: a second refinement applied to the interpolation
//! remainder left over by the first one.

use crate::error::{Error, Result};
use crate::scalar::refinement::{
    dyadic_anchor, refinement_sum, squared_pair, weighted_geometric, DyadicAnchor, ScalarPair,
};
use crate::scalar::reverse::BranchSide;
use crate::scalar::squared::squared_refined;
use crate::scalar::weight::{RefinementDepth, Weight};

/// Convex coefficient of the depth-`N` anchor as a [`Weight`], keeping the
/// dyadic representation when the outer weight has one.
fn anchor_weight(nu: &Weight, depth: RefinementDepth) -> Result<Weight> {
    let m = nu.floor_scaled(depth.n());
    nu.affine(depth.n() as i32, true, m + 1)
}

/// Second refinement pass over the anchors of `R_N`:
/// `a^nu b^{1-nu} + S_N(nu; a, b) + S_M(alpha; x, y) <= nu a + (1-nu) b`.
/// Also returns the anchors, whose weighted geometric mean recombines to
/// `a^nu b^{1-nu}` exactly.
pub fn double_refinement(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    second_depth: RefinementDepth,
) -> Result<(f64, f64, DyadicAnchor)> {
    nu.require_convex("the chained refinement")?;
    let anchor = dyadic_anchor(nu, pair, depth)?;
    let alpha = anchor_weight(nu, depth)?;
    let second = refinement_sum(&alpha, &ScalarPair::new(anchor.x, anchor.y)?, second_depth)?;
    let v = nu.value();
    let lhs = weighted_geometric(pair, v) + refinement_sum(nu, pair, depth)? + second;
    let rhs = v * pair.a() + (1.0 - v) * pair.b();
    Ok((lhs, rhs, anchor))
}

/// Squared variant: the second pass refines the remainder of the squared
/// statement, whose anchors live on the grid of `(a^2, b^2)`.
pub fn double_squared(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    second_depth: RefinementDepth,
) -> Result<(f64, f64, DyadicAnchor)> {
    let (base_lhs, rhs) = squared_refined(nu, pair, depth)?;
    let sq = squared_pair(pair)?;
    let anchor = dyadic_anchor(nu, &sq, depth)?;
    let alpha = anchor_weight(nu, depth)?;
    let second = refinement_sum(&alpha, &ScalarPair::new(anchor.x, anchor.y)?, second_depth)?;
    Ok((base_lhs + second, rhs, anchor))
}

/// Reverse variant: the second pass refines the remainder of the inner
/// refinement used by the two-branch reverse.
pub fn double_reverse_branch(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    second_depth: RefinementDepth,
    side: BranchSide,
) -> Result<(f64, f64, DyadicAnchor)> {
    nu.require_convex("the chained reverse")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let root_ab = (a * b).sqrt();
    let square_gap = (a.sqrt() - b.sqrt()).powi(2);
    let arith = v * a + (1.0 - v) * b;
    let geo = weighted_geometric(pair, v);
    let (inner_w, inner_pair, rhs) = match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            (nu.affine(1, false, 0)?, ScalarPair::new(root_ab, a)?, geo + (1.0 - v) * square_gap)
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            (nu.affine(1, true, 2)?, ScalarPair::new(root_ab, b)?, geo + v * square_gap)
        }
    };
    let first = refinement_sum(&inner_w, &inner_pair, depth)?;
    let anchor = dyadic_anchor(&inner_w, &inner_pair, depth)?;
    let alpha = anchor_weight(&inner_w, depth)?;
    let second = refinement_sum(&alpha, &ScalarPair::new(anchor.x, anchor.y)?, second_depth)?;
    Ok((arith + first + second, rhs, anchor))
}

/// Canonical-branch chained reverse.
pub fn double_reverse(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    second_depth: RefinementDepth,
) -> Result<(f64, f64, DyadicAnchor)> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    double_reverse_branch(nu, pair, depth, second_depth, side)
}

/// Every applicable branch of the chained reverse.
pub fn double_reverse_branches(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    second_depth: RefinementDepth,
) -> Result<Vec<(f64, f64, DyadicAnchor)>> {
    let mut out = Vec::new();
    if nu.value() <= 0.5 || nu.at_seam(0.5) {
        out.push(double_reverse_branch(nu, pair, depth, second_depth, BranchSide::Lower)?);
    }
    if nu.value() >= 0.5 || nu.at_seam(0.5) {
        out.push(double_reverse_branch(nu, pair, depth, second_depth, BranchSide::Upper)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::refinement::young_refined;

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
    fn anchors_recombine_to_the_geometric_mean() {
        for nu in [0.13, 0.3, 0.71, 0.99] {
            let p = pair(2.0, 5.0);
            let (_, _, anchor) = double_refinement(&w(nu), &p, d(3), d(2)).unwrap();
            let recombined = anchor.x.powf(anchor.alpha) * anchor.y.powf(1.0 - anchor.alpha);
            let geo = weighted_geometric(&p, nu);
            assert!((recombined - geo).abs() <= 1e-12 * geo);
        }
    }

    #[test]
    fn dyadic_weight_reduces_to_single_refinement() {
        let nu = Weight::dyadic(3, 2).unwrap();
        let p = pair(2.0, 5.0);
        let (lhs, rhs, anchor) = double_refinement(&nu, &p, d(2), d(4)).unwrap();
        let (young_lhs, young_rhs) = young_refined(&nu, &p, d(2)).unwrap();
        assert_eq!(anchor.alpha, 1.0);
        assert!((lhs - young_lhs).abs() <= 1e-12 * young_lhs.max(1.0));
        assert_eq!(rhs, young_rhs);
    }

    #[test]
    fn second_term_tightens_but_preserves_the_bound() {
        let nu = w(0.3);
        let p = pair(2.0, 5.0);
        let (lhs, rhs, _) = double_refinement(&nu, &p, d(2), d(2)).unwrap();
        let (young_lhs, _) = young_refined(&nu, &p, d(2)).unwrap();
        assert!(lhs >= young_lhs - 1e-14);
        assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn equal_pair_is_flat() {
        let (lhs, rhs, anchor) = double_refinement(&w(0.42), &pair(6.0, 6.0), d(3), d(3)).unwrap();
        assert!((anchor.x - 6.0).abs() < 1e-12);
        assert!((anchor.y - 6.0).abs() < 1e-12);
        assert!((lhs - 6.0).abs() < 1e-12);
        assert!((rhs - 6.0).abs() < 1e-12);
    }

    #[test]
    fn squared_and_reverse_variants_hold() {
        let p = pair(2.0, 5.0);
        let (lhs, rhs, _) = double_squared(&w(0.3), &p, d(3), d(2)).unwrap();
        assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
        for (lhs, rhs, _) in double_reverse_branches(&w(0.5), &p, d(3), d(2)).unwrap() {
            assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
        }
        let (lhs, rhs, _) = double_reverse(&w(0.82), &p, d(2), d(3)).unwrap();
        assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
    }
}
