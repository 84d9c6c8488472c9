//! Heinz-mean bounds, their multi-term refinement and the four-branch
//! reverse.

use crate::error::{Error, Result};
use crate::scalar::refinement::{refinement_sum, weighted_geometric, ScalarPair};
use crate::scalar::weight::{RefinementDepth, Weight};

/// Twice the Heinz mean: `a^nu b^{1-nu} + a^{1-nu} b^nu`.
pub fn heinz_sum(nu: &Weight, pair: &ScalarPair) -> f64 {
    weighted_geometric(pair, nu.value()) + weighted_geometric(pair, 1.0 - nu.value())
}

/// The classical two-sided bound
/// `2 sqrt(ab) <= a^nu b^{1-nu} + a^{1-nu} b^nu <= a + b`,
/// returned as `(lower, mid, upper)`.
pub fn heinz_scalar_bounds(nu: &Weight, pair: &ScalarPair) -> Result<(f64, f64, f64)> {
    nu.require_convex("the Heinz bound")?;
    let lower = 2.0 * (pair.a() * pair.b()).sqrt();
    let upper = pair.a() + pair.b();
    Ok((lower, heinz_sum(nu, pair), upper))
}

/// Refined upper Heinz bound: the squared Heinz sum plus
/// `2 min(nu, 1-nu) (a-b)^2` plus two refinement sums stays below `(a+b)^2`.
pub fn heinz_refined_scalar(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    nu.require_convex("the refined Heinz bound")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let h = heinz_sum(nu, pair);
    let gap = (a - b).powi(2);
    let (coeff, inner) = if v <= 0.5 {
        (2.0 * v, nu.affine(1, false, 0)?) // 2 nu
    } else {
        (2.0 * (1.0 - v), nu.affine(1, true, 2)?) // 2 - 2 nu
    };
    let s_a = refinement_sum(&inner, &ScalarPair::new(a * b, a * a)?, depth)?;
    let s_b = refinement_sum(&inner, &ScalarPair::new(a * b, b * b)?, depth)?;
    let lhs = h * h + coeff * gap + s_a + s_b;
    Ok((lhs, (a + b).powi(2)))
}

/// The four weight intervals of the reversed Heinz refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeinzBranch {
    /// `nu` in `[0, 1/4]`
    First,
    /// `nu` in `[1/4, 1/2]`
    Second,
    /// `nu` in `[1/2, 3/4]`
    Third,
    /// `nu` in `[3/4, 1]`
    Fourth,
}

impl HeinzBranch {
    fn interval(self) -> (f64, f64) {
        match self {
            HeinzBranch::First => (0.0, 0.25),
            HeinzBranch::Second => (0.25, 0.5),
            HeinzBranch::Third => (0.5, 0.75),
            HeinzBranch::Fourth => (0.75, 1.0),
        }
    }

    /// Branches whose closed interval contains `nu` (two on the seams).
    pub fn applicable(nu: &Weight) -> Vec<HeinzBranch> {
        [HeinzBranch::First, HeinzBranch::Second, HeinzBranch::Third, HeinzBranch::Fourth]
            .into_iter()
            .filter(|b| {
                let (lo, hi) = b.interval();
                (nu.value() >= lo && nu.value() <= hi)
                    || nu.at_seam(lo)
                    || nu.at_seam(hi)
            })
            .collect()
    }

    /// The branch canonically containing `nu`.
    pub fn canonical(nu: &Weight) -> HeinzBranch {
        let v = nu.value();
        if v <= 0.25 {
            HeinzBranch::First
        } else if v <= 0.5 {
            HeinzBranch::Second
        } else if v <= 0.75 {
            HeinzBranch::Third
        } else {
            HeinzBranch::Fourth
        }
    }
}

/// One branch of the reversed Heinz refinement. The left side is `(a+b)^2`
/// plus two refinement sums anchored at the three-quarter grid points; the
/// right side is the squared Heinz sum plus interval-dependent multiples of
/// `(a-b)^2` and `(sqrt(ab)-a)^2 + (sqrt(ab)-b)^2`.
pub fn heinz_reverse_scalar_branch(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    branch: HeinzBranch,
) -> Result<(f64, f64)> {
    nu.require_convex("the reversed Heinz refinement")?;
    let (lo, hi) = branch.interval();
    if !((nu.value() >= lo && nu.value() <= hi) || nu.at_seam(lo) || nu.at_seam(hi)) {
        return Err(Error::Branch(format!(
            "weight {} is outside branch interval [{lo}, {hi}]",
            nu.value()
        )));
    }
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let root_ab = (a * b).sqrt();
    let x_heavy = a * root_ab; // sqrt(a^3 b)
    let y_heavy = b * root_ab; // sqrt(a b^3)
    let h = heinz_sum(nu, pair);
    let gap = (a - b).powi(2);
    let mix_gap = (root_ab - a).powi(2) + (root_ab - b).powi(2);

    let (inner, second_a, second_b, gap_coeff, mix_coeff) = match branch {
        HeinzBranch::First => (nu.affine(2, false, 0)?, a * b, a * b, 2.0 * v, 1.0 - 2.0 * v),
        HeinzBranch::Second => (nu.affine(2, true, 2)?, a * a, b * b, 2.0 * v, 2.0 * v),
        HeinzBranch::Third => {
            (nu.affine(2, false, -2)?, a * a, b * b, 2.0 * (1.0 - v), 2.0 - 2.0 * v)
        }
        HeinzBranch::Fourth => {
            (nu.affine(2, true, 4)?, a * b, a * b, 2.0 * (1.0 - v), 2.0 * v - 1.0)
        }
    };
    let s_a = refinement_sum(&inner, &ScalarPair::new(x_heavy, second_a)?, depth)?;
    let s_b = refinement_sum(&inner, &ScalarPair::new(y_heavy, second_b)?, depth)?;
    let lhs = (a + b).powi(2) + s_a + s_b;
    let rhs = h * h + gap_coeff * gap + mix_coeff.max(0.0) * mix_gap;
    Ok((lhs, rhs))
}

/// Canonical-branch reversed Heinz refinement.
pub fn heinz_reverse_scalar(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    heinz_reverse_scalar_branch(nu, pair, depth, HeinzBranch::canonical(nu))
}

/// Every applicable branch (two on the interval seams 1/4, 1/2, 3/4).
pub fn heinz_reverse_scalar_branches(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<Vec<(f64, f64)>> {
    HeinzBranch::applicable(nu)
        .into_iter()
        .map(|b| heinz_reverse_scalar_branch(nu, pair, depth, b))
        .collect()
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
    fn bounds_examples() {
        let p = pair(2.0, 5.0);
        let (lo, mid, hi) = heinz_scalar_bounds(&Weight::dyadic(1, 1).unwrap(), &p).unwrap();
        assert!((lo - mid).abs() < 1e-12, "mid equals 2 sqrt(ab) at nu = 1/2");
        assert!(mid <= hi);
        let (_, mid, hi) = heinz_scalar_bounds(&w(0.0), &p).unwrap();
        assert_eq!(mid, hi);
        let (lo, mid, hi) = heinz_scalar_bounds(&w(0.3), &p).unwrap();
        assert!(lo <= mid && mid <= hi);
        assert!((lo - 2.0 * 10f64.sqrt()).abs() < 1e-12);
        assert_eq!(hi, 7.0);
    }

    #[test]
    fn refined_bound_equality_cases() {
        let p = pair(2.0, 5.0);
        // nu = 1/2: (2 sqrt(ab))^2 + (a-b)^2 = (a+b)^2 and both sums vanish.
        let (lhs, rhs) = heinz_refined_scalar(&Weight::dyadic(1, 1).unwrap(), &p, d(4)).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        // nu = 0: Heinz sum is already a + b.
        let (lhs, rhs) = heinz_refined_scalar(&w(0.0), &p, d(4)).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn refined_bound_holds_inside() {
        let (lhs, rhs) = heinz_refined_scalar(&w(0.25), &pair(4.0, 1.0), d(2)).unwrap();
        assert_eq!(rhs, 25.0);
        assert!(lhs <= rhs + 1e-10 * rhs);
    }

    #[test]
    fn reverse_equal_pair_is_flat() {
        for nu in [0.1, 0.3, 0.6, 0.9] {
            let (lhs, rhs) = heinz_reverse_scalar(&w(nu), &pair(3.0, 3.0), d(3)).unwrap();
            assert!((lhs - 36.0).abs() < 1e-12);
            assert!((rhs - 36.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reverse_zero_weight_by_hand() {
        let (a, b) = (2.0, 5.0);
        let (lhs, rhs) = heinz_reverse_scalar(&w(0.0), &pair(a, b), d(3)).unwrap();
        assert!((lhs - 49.0).abs() < 1e-12);
        let root = 10f64.sqrt();
        let expected = 49.0 + (root - a).powi(2) + (root - b).powi(2);
        assert!((rhs - expected).abs() < 1e-12);
    }

    #[test]
    fn reverse_holds_on_all_branches_and_seams() {
        let p = pair(4.0, 1.0);
        for nu in [0.1, 0.2, 0.25, 0.33, 0.5, 0.6, 0.75, 0.8, 0.97] {
            for (lhs, rhs) in heinz_reverse_scalar_branches(&w(nu), &p, d(3)).unwrap() {
                assert!(
                    lhs <= rhs + 1e-10 * rhs.max(1.0),
                    "violated at nu = {nu}: lhs={lhs} rhs={rhs}"
                );
            }
        }
        // Seams evaluate two branches.
        assert_eq!(heinz_reverse_scalar_branches(&w(0.25), &p, d(2)).unwrap().len(), 2);
        assert_eq!(heinz_reverse_scalar_branches(&w(0.75), &p, d(2)).unwrap().len(), 2);
    }

    #[test]
    fn wrong_branch_rejected() {
        let err =
            heinz_reverse_scalar_branch(&w(0.9), &pair(2.0, 3.0), d(2), HeinzBranch::First);
        assert!(matches!(err, Err(Error::Branch(_))));
    }
}
