//! Kantorovich-constant strengthenings of the refined inequalities.

use crate::error::{Error, Result};
use crate::scalar::refinement::{refinement_sum, weighted_geometric, ScalarPair};
use crate::scalar::reverse::BranchSide;
use crate::scalar::weight::{RefinementDepth, Weight};

/// Kantorovich constant `K(t, 2) = (t + 1)^2 / (4t) >= 1`, symmetric under
/// `t -> 1/t` and increasing for `t > 1`.
pub fn kantorovich(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("Kantorovich constant needs t > 0, got {t}")));
    }
    Ok((t + 1.0) * (t + 1.0) / (4.0 * t))
}

/// Exponent `beta_N(nu) = min([2^N nu] + 1 - 2^N nu, 2^N nu - [2^N nu])`,
/// zero exactly on the depth-`N` dyadic grid.
pub fn beta_exponent(nu: &Weight, depth: RefinementDepth) -> f64 {
    let frac = nu.frac_scaled(depth.n());
    frac.min(1.0 - frac)
}

/// `K(arg, 2)^beta`, evaluated as 1 when `beta == 0` so that degenerate
/// arguments on the dyadic grid never reach the constant itself.
fn kanto_factor(arg: f64, beta: f64) -> Result<f64> {
    if beta == 0.0 {
        return Ok(1.0);
    }
    Ok(kantorovich(arg)?.powf(beta))
}

/// Refinement sum that short-circuits to zero at integer weights, where
/// every coefficient vanishes, without validating the (possibly degenerate)
/// pair.
fn refinement_sum_or_zero(
    w: &Weight,
    a: f64,
    b: f64,
    depth: RefinementDepth,
) -> Result<f64> {
    if w.value().fract() == 0.0 {
        Ok(0.0)
    } else {
        refinement_sum(w, &ScalarPair::new(a, b)?, depth)
    }
}

/// Kantorovich-strengthened refinement:
/// `K((b/a)^{1/2^N}, 2)^{beta_N(nu)} a^nu b^{1-nu} + S_N <= nu a + (1-nu) b`.
/// Depth 0 recovers the classical one-factor bound.
pub fn kanto_young_refined(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    nu.require_convex("the Kantorovich refinement")?;
    let v = nu.value();
    let beta = beta_exponent(nu, depth);
    let root = 1.0 / (depth.n() as f64).exp2();
    let factor = kanto_factor((pair.b() / pair.a()).powf(root), beta)?;
    let lhs = factor * weighted_geometric(pair, v) + refinement_sum(nu, pair, depth)?;
    let rhs = v * pair.a() + (1.0 - v) * pair.b();
    Ok((lhs, rhs))
}

/// One branch of the squared Kantorovich strengthening with prefactor
/// `(1-2nu)^{2nu}` (lower) or `(2nu-1)^{2-2nu}` (upper); right side
/// `(nu a + (1-nu) b)^2`. The prefactor is 0 at the seam by continuity.
pub fn kanto_square_sab_branch(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<(f64, f64)> {
    nu.require_convex("the squared Kantorovich strengthening")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let geo = weighted_geometric(pair, v);
    let arith = v * a + (1.0 - v) * b;
    let root = 1.0 / (depth.n() as f64).exp2();
    let lhs = match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            let c = 1.0 - 2.0 * v;
            let weighted = if c <= 0.0 {
                // Both the prefactor (1-2nu)^{2nu} -> 0^1 and the refining
                // product (1-2nu) b S_N vanish by continuity at nu = 1/2.
                0.0
            } else {
                let beta = beta_exponent(&nu.affine(1, false, 0)?, depth);
                let factor = kanto_factor((b / (c * a)).powf(root), beta)?;
                let s = refinement_sum_or_zero(&nu.affine(1, true, 1)?, b / c, a, depth)?;
                c.powf(2.0 * v) * factor * geo * geo + c * b * s
            };
            weighted + v * v * (a + b).powi(2)
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            let c = 2.0 * v - 1.0;
            let weighted = if c <= 0.0 {
                0.0
            } else {
                let beta = beta_exponent(&nu.affine(1, false, -1)?, depth);
                let factor = kanto_factor((c * b / a).powf(root), beta)?;
                let s = refinement_sum_or_zero(&nu.affine(1, false, -1)?, a / c, b, depth)?;
                c.powf(2.0 - 2.0 * v) * factor * geo * geo + c * a * s
            };
            weighted + (1.0 - v) * (1.0 - v) * (a + b).powi(2)
        }
    };
    if !lhs.is_finite() {
        return Err(Error::Range("squared Kantorovich branch overflowed".into()));
    }
    Ok((lhs, arith * arith))
}

/// Canonical branch of the squared Kantorovich strengthening.
pub fn kanto_square_sab(nu: &Weight, pair: &ScalarPair, depth: RefinementDepth) -> Result<(f64, f64)> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    kanto_square_sab_branch(nu, pair, depth, side)
}

/// Every applicable branch of the squared Kantorovich strengthening.
pub fn kanto_square_sab_branches(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    if nu.value() <= 0.5 || nu.at_seam(0.5) {
        out.push(kanto_square_sab_branch(nu, pair, depth, BranchSide::Lower)?);
    }
    if nu.value() >= 0.5 || nu.at_seam(0.5) {
        out.push(kanto_square_sab_branch(nu, pair, depth, BranchSide::Upper)?);
    }
    Ok(out)
}

/// One branch of the strengthening with prefactor `nu^{2nu}` against the
/// right side `nu^2 a + (1-nu)^2 b`.
pub fn kanto_nu_square_branch(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<(f64, f64)> {
    nu.require_convex("the weighted-square Kantorovich strengthening")?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let geo = weighted_geometric(pair, v);
    let root = 1.0 / (depth.n() as f64).exp2();
    let sqrt_gap = (a.sqrt() - b.sqrt()).powi(2);
    let rhs = v * v * a + (1.0 - v) * (1.0 - v) * b;
    let lhs = match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            let inner = nu.affine(1, true, 1)?; // 1 - 2 nu
            let beta = beta_exponent(&inner, depth);
            let factor = kanto_factor((v * (a / b).sqrt()).powf(root), beta)?;
            let s = refinement_sum_or_zero(&inner, b, v * (a * b).sqrt(), depth)?;
            v.powf(2.0 * v) * factor * geo + v * v * sqrt_gap + s
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            let inner = nu.affine(1, false, -1)?; // 2 nu - 1
            let beta = beta_exponent(&inner, depth);
            let u = 1.0 - v;
            let factor = kanto_factor((u * (b / a).sqrt()).powf(root), beta)?;
            let s = refinement_sum_or_zero(&inner, a, u * (a * b).sqrt(), depth)?;
            u.powf(2.0 - 2.0 * v) * factor * geo + u * u * sqrt_gap + s
        }
    };
    if !lhs.is_finite() {
        return Err(Error::Range("weighted-square Kantorovich branch overflowed".into()));
    }
    Ok((lhs, rhs))
}

/// Canonical branch of the `nu^{2nu}` strengthening.
pub fn kanto_nu_square(nu: &Weight, pair: &ScalarPair, depth: RefinementDepth) -> Result<(f64, f64)> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    kanto_nu_square_branch(nu, pair, depth, side)
}

/// Every applicable branch of the `nu^{2nu}` strengthening.
pub fn kanto_nu_square_branches(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    if nu.value() <= 0.5 || nu.at_seam(0.5) {
        out.push(kanto_nu_square_branch(nu, pair, depth, BranchSide::Lower)?);
    }
    if nu.value() >= 0.5 || nu.at_seam(0.5) {
        out.push(kanto_nu_square_branch(nu, pair, depth, BranchSide::Upper)?);
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
    fn constant_values() {
        assert_eq!(kantorovich(1.0).unwrap(), 1.0);
        assert!((kantorovich(2.0).unwrap() - 1.125).abs() < 1e-15);
        assert!((kantorovich(0.5).unwrap() - 1.125).abs() < 1e-15);
        assert!(kantorovich(0.0).is_err());
        assert!(kantorovich(-3.0).is_err());
    }

    #[test]
    fn constant_is_monotone_above_one() {
        let mut prev = 1.0;
        for i in 1..50 {
            let k = kantorovich(1.0 + i as f64 * 0.25).unwrap();
            assert!(k >= prev);
            prev = k;
        }
    }

    #[test]
    fn equal_pair_is_flat() {
        let (lhs, rhs) = kanto_young_refined(&w(0.37), &pair(5.0, 5.0), d(3)).unwrap();
        assert!((lhs - 5.0).abs() < 1e-12);
        assert!((rhs - 5.0).abs() < 1e-12);
    }

    #[test]
    fn dyadic_weight_drops_the_constant() {
        let nu = Weight::dyadic(3, 2).unwrap();
        let p = pair(2.0, 5.0);
        let (lhs, _) = kanto_young_refined(&nu, &p, d(2)).unwrap();
        let s = refinement_sum(&nu, &p, d(2)).unwrap();
        let geo = weighted_geometric(&p, 0.75);
        assert!((lhs - (geo + s)).abs() <= 1e-13 * lhs.max(1.0));
    }

    #[test]
    fn strengthened_bound_holds_and_beats_plain_geometric() {
        let (lhs, rhs) = kanto_young_refined(&w(0.3), &pair(2.0, 5.0), d(2)).unwrap();
        assert!((rhs - 4.1).abs() < 1e-12);
        assert!(lhs <= rhs + 1e-10 * rhs.max(1.0));
        let plain = weighted_geometric(&pair(2.0, 5.0), 0.3)
            + refinement_sum(&w(0.3), &pair(2.0, 5.0), d(2)).unwrap();
        assert!(lhs >= plain - 1e-14);
    }

    #[test]
    fn square_sab_seam_is_equality() {
        let p = pair(2.0, 5.0);
        let evals = kanto_square_sab_branches(&Weight::dyadic(1, 1).unwrap(), &p, d(3)).unwrap();
        assert_eq!(evals.len(), 2);
        for (lhs, rhs) in evals {
            assert!((lhs - 12.25).abs() < 1e-12, "lhs = {lhs}");
            assert!((rhs - 12.25).abs() < 1e-12);
        }
    }

    #[test]
    fn square_sab_branches_hold() {
        for (nu, n) in [(0.25, 1), (0.75, 2), (0.0, 3), (1.0, 2)] {
            let (lhs, rhs) = kanto_square_sab(&w(nu), &pair(4.0, 1.0), d(n)).unwrap();
            assert!(
                lhs <= rhs + 1e-10 * rhs.max(1.0),
                "violated at nu={nu} n={n}: lhs={lhs} rhs={rhs}"
            );
        }
    }

    #[test]
    fn nu_square_endpoints_and_seam() {
        let p = pair(2.0, 5.0);
        // nu = 0: b on both sides.
        let (lhs, rhs) = kanto_nu_square(&w(0.0), &p, d(2)).unwrap();
        assert_eq!(lhs, 5.0);
        assert_eq!(rhs, 5.0);
        // nu = 1: a on both sides.
        let (lhs, rhs) = kanto_nu_square(&w(1.0), &p, d(2)).unwrap();
        assert_eq!(lhs, 2.0);
        assert_eq!(rhs, 2.0);
        // Seam: both branches agree and are tight.
        for (lhs, rhs) in
            kanto_nu_square_branches(&Weight::dyadic(1, 1).unwrap(), &p, d(3)).unwrap()
        {
            assert!((rhs - lhs).abs() <= 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn nu_square_branches_hold() {
        for (nu, n) in [(0.25, 1), (0.4, 3), (0.75, 2), (0.9, 4)] {
            let (lhs, rhs) = kanto_nu_square(&w(nu), &pair(4.0, 1.0), d(n)).unwrap();
            assert!(
                lhs <= rhs + 1e-10 * rhs.max(1.0),
                "violated at nu={nu} n={n}: lhs={lhs} rhs={rhs}"
            );
        }
    }
}
