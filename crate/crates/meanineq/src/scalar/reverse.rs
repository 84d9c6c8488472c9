//! Refined reverses: the two-branch reverse of the weighted AM-GM
//! inequality and the three refinements of `(1+nu) a - nu b <= a^{1+nu} b^{-nu}`.

use crate::error::{Error, Result};
use crate::scalar::refinement::{
    dyadic_grid_pow, refinement_sum, weighted_geometric, ScalarPair,
};
use crate::scalar::weight::{RefinementDepth, Weight};

/// Which side of a two-branch statement to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSide {
    /// Branch for weights at or below the seam.
    Lower,
    /// Branch for weights at or above the seam.
    Upper,
}

/// Evaluates one branch of the refined reverse:
/// `nu a + (1-nu) b + S_N(2nu; sqrt(ab), a) <= a^nu b^{1-nu} + (1-nu)(sqrt a - sqrt b)^2`
/// for the lower branch, mirrored for the upper one.
pub fn reverse_refined_branch(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<(f64, f64)> {
    nu.require_convex("the refined reverse")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let root_ab = (a * b).sqrt();
    let square_gap = (a.sqrt() - b.sqrt()).powi(2);
    let arith = v * a + (1.0 - v) * b;
    let geo = weighted_geometric(pair, v);
    match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            let inner = nu.affine(1, false, 0)?; // 2 nu
            let s = refinement_sum(&inner, &ScalarPair::new(root_ab, a)?, depth)?;
            Ok((arith + s, geo + (1.0 - v) * square_gap))
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            let inner = nu.affine(1, true, 2)?; // 2 - 2 nu
            let s = refinement_sum(&inner, &ScalarPair::new(root_ab, b)?, depth)?;
            Ok((arith + s, geo + v * square_gap))
        }
    }
}

/// Canonical-branch refined reverse.
pub fn reverse_refined(nu: &Weight, pair: &ScalarPair, depth: RefinementDepth) -> Result<(f64, f64)> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    reverse_refined_branch(nu, pair, depth, side)
}

/// Every branch applicable at `nu` (both of them on the seam `nu = 1/2`).
pub fn reverse_refined_branches(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    if nu.value() <= 0.5 || nu.at_seam(0.5) {
        out.push(reverse_refined_branch(nu, pair, depth, BranchSide::Lower)?);
    }
    if nu.value() >= 0.5 || nu.at_seam(0.5) {
        out.push(reverse_refined_branch(nu, pair, depth, BranchSide::Upper)?);
    }
    Ok(out)
}

fn power_ratio(pair: &ScalarPair, nu: f64) -> Result<f64> {
    let rhs = pair.a().powf(1.0 + nu) * pair.b().powf(-nu);
    if !rhs.is_finite() || rhs <= 0.0 {
        return Err(Error::Range(format!(
            "a^(1+nu) b^(-nu) overflows for a={}, b={}, nu={nu}",
            pair.a(),
            pair.b()
        )));
    }
    Ok(rhs)
}

/// Telescoping refinement of `(1+nu) a - nu b <= a^{1+nu} b^{-nu}` built from
/// successive square-root splittings; valid for every `nu >= 0`.
pub fn minus_reverse_inductive(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let mut sum = 0.0;
    for j in 1..=depth.n() {
        let root = dyadic_grid_pow(a, (1i64 << (j - 1)) - 1, b, 1, j);
        sum += ((j - 1) as f64).exp2() * (a.sqrt() - root).powi(2);
    }
    let lhs = (1.0 + v) * a - v * b + v * sum;
    let rhs = power_ratio(pair, v)?;
    if !lhs.is_finite() {
        return Err(Error::Range("refinement sum overflowed".into()));
    }
    Ok((lhs, rhs))
}

/// Closed form of the left side of [`minus_reverse_inductive`]:
/// `(1 + 2^N nu) a - 2^N nu (a^{2^N - 1} b)^{1/2^N}`. The two must agree
/// exactly up to roundoff.
pub fn minus_reverse_closed_form(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<f64> {
    let scale = (depth.n() as f64).exp2() * nu.value();
    let root = dyadic_grid_pow(pair.a(), (1i64 << depth.n()) - 1, pair.b(), 1, depth.n());
    let value = (1.0 + scale) * pair.a() - scale * root;
    if !value.is_finite() {
        return Err(Error::Range("closed form overflowed".into()));
    }
    Ok(value)
}

/// Refinement of the same reverse driven by the refinement sum at weight
/// `1 - nu` over the pair `(ab, b^2)`, for `nu` in `[0, 1]`.
pub fn minus_reverse_via_s(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    nu.require_convex("this reverse refinement")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let inner = nu.affine(0, true, 1)?; // 1 - nu
    let s = refinement_sum(&inner, &ScalarPair::new(a * b, b * b)?, depth)?;
    let lhs = (1.0 + v) * a - v * b + s / b;
    Ok((lhs, power_ratio(pair, v)?))
}

/// Refinement with the refinement sum evaluated at weight `1 / (1 + nu)`
/// over `(a^{1+nu} b^{-nu}, b)`; valid for every `nu >= 0`.
pub fn minus_reverse_via_s2(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    let v = nu.value();
    let target = power_ratio(pair, v)?;
    let inner = Weight::new(1.0 / (1.0 + v))?;
    let s = refinement_sum(&inner, &ScalarPair::new(target, pair.b())?, depth)?;
    let lhs = (1.0 + v) * pair.a() - v * pair.b() + (1.0 + v) * s;
    Ok((lhs, target))
}
