//! The multi-term refinement sum `S_N`, its interpolation remainder `R_N`,
//! and the refined weighted AM-GM inequality they certify.
//!
//! For a weight `nu`, level `j` uses `k_j = [2^{j-1} nu]`, `r_j = [2^j nu]`
//! and the coefficient
//! `s_j = (-1)^{r_j} 2^{j-1} nu + (-1)^{r_j+1} [(r_j + 1) / 2]`,
//! which equals the distance from `2^{j-1} nu` to the nearest integer.
//! The j-th summand is `s_j (u_j - v_j)^2` where `u_j, v_j` are the two
//! dyadic grid geometric means adjacent to `nu` at scale `2^j`.
//!
//! `S_N + R_N` telescopes exactly to the arithmetic side, which is the main
//! oracle identity of this module: `nu a + (1 - nu) b - S_N = R_N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::weight::{RefinementDepth, Weight};

/// Pair of strictly positive scalars.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarPair {
    a: f64,
    b: f64,
}

impl ScalarPair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() || !(b > 0.0) || !b.is_finite() {
            return Err(Error::domain(format!(
                "scalar pair must be strictly positive and finite, got ({a}, {b})"
            )));
        }
        Ok(ScalarPair { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Pair with both entries swapped.
    pub fn swapped(&self) -> Self {
        ScalarPair { a: self.b, b: self.a }
    }
}

/// The pair `(a^2, b^2)`.
pub(crate) fn squared_pair(pair: &ScalarPair) -> Result<ScalarPair> {
    ScalarPair::new(pair.a * pair.a, pair.b * pair.b)
}

/// `a^t b^(1-t)` with exact endpoints.
pub fn weighted_geometric(pair: &ScalarPair, t: f64) -> f64 {
    if t == 0.0 {
        pair.b
    } else if t == 1.0 {
        pair.a
    } else {
        pair.a.powf(t) * pair.b.powf(1.0 - t)
    }
}

/// `a^(ka/2^d) * b^(kb/2^d)` for integer exponents over a dyadic grid.
///
/// Exponents are reduced before exponentiation so that large grid powers
/// like `b^(2^{j-1})` never materialize.
pub(crate) fn dyadic_grid_pow(a: f64, ka: i64, b: f64, kb: i64, log2_den: u32) -> f64 {
    let den = (log2_den as f64).exp2();
    let pa = if ka == 0 { 1.0 } else { a.powf(ka as f64 / den) };
    let pb = if kb == 0 { 1.0 } else { b.powf(kb as f64 / den) };
    pa * pb
}

/// One level of the refinement sum.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RefinementLevel {
    pub j: u32,
    /// `[2^{j-1} nu]`
    pub k: i64,
    /// `[2^j nu]`
    pub r: i64,
    /// Coefficient in `[0, 1/2]`.
    pub s: f64,
    /// Squared grid-mean difference multiplied by `s` in the sum.
    pub term: f64,
}

/// All levels of `S_N` plus the total.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefinementBreakdown {
    pub levels: Vec<RefinementLevel>,
    pub total: f64,
}

/// Coefficient `s_j(nu)` alone.
pub(crate) fn level_coefficient(nu: &Weight, j: u32) -> f64 {
    let r = nu.floor_scaled(j);
    let frac = nu.frac_scaled(j - 1);
    if r % 2 == 0 {
        frac
    } else {
        1.0 - frac
    }
}

/// Per-level data of `S_N(nu; a, b)`.
pub fn refinement_breakdown(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<RefinementBreakdown> {
    let mut levels = Vec::with_capacity(depth.n() as usize);
    let mut total = 0.0;
    for j in 1..=depth.n() {
        let k = nu.floor_scaled(j - 1);
        let r = nu.floor_scaled(j);
        let s = level_coefficient(nu, j).max(0.0);
        let half_grid = 1i64 << (j - 1);
        let u = dyadic_grid_pow(pair.a, k, pair.b, half_grid - k, j);
        let v = dyadic_grid_pow(pair.a, k + 1, pair.b, half_grid - k - 1, j);
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::Range(format!(
                "refinement level {j} overflowed for pair ({}, {})",
                pair.a, pair.b
            )));
        }
        let term = (u - v) * (u - v);
        total += s * term;
        levels.push(RefinementLevel { j, k, r, s, term });
    }
    Ok(RefinementBreakdown { levels, total })
}

/// `S_N(nu; a, b)`, the total refining mass at depth `N` (`S_0 = 0`).
pub fn refinement_sum(nu: &Weight, pair: &ScalarPair, depth: RefinementDepth) -> Result<f64> {
    refinement_sum_range(nu, pair, 1, depth.n())
}

/// Partial refinement sum over levels `from..=to`; the squared statements
/// drop the first level and replace it with an exact algebraic term.
pub(crate) fn refinement_sum_range(
    nu: &Weight,
    pair: &ScalarPair,
    from: u32,
    to: u32,
) -> Result<f64> {
    if nu.value().fract() == 0.0 {
        // Every coefficient vanishes at integer weights.
        return Ok(0.0);
    }
    let mut total = 0.0;
    for j in from..=to {
        let s = level_coefficient(nu, j);
        if s <= 0.0 {
            continue;
        }
        let k = nu.floor_scaled(j - 1);
        let half_grid = 1i64 << (j - 1);
        let u = dyadic_grid_pow(pair.a, k, pair.b, half_grid - k, j);
        let v = dyadic_grid_pow(pair.a, k + 1, pair.b, half_grid - k - 1, j);
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::Range(format!(
                "refinement level {j} overflowed for pair ({}, {})",
                pair.a, pair.b
            )));
        }
        total += s * (u - v) * (u - v);
    }
    Ok(total)
}

/// Anchors of the depth-`N` dyadic interpolation around `nu`:
/// the grid geometric means `x`, `y` bracketing `a^nu b^{1-nu}` and the
/// convex coefficient `alpha` with `alpha x + (1 - alpha) y = R_N`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DyadicAnchor {
    /// `[2^N nu] + 1 - 2^N nu` in `[0, 1]`.
    pub alpha: f64,
    /// `min(alpha, 1 - alpha)` in `[0, 1/2]`.
    pub beta: f64,
    pub x: f64,
    pub y: f64,
}

/// Anchor data for `(nu, a, b)` at depth `N`.
pub fn dyadic_anchor(nu: &Weight, pair: &ScalarPair, depth: RefinementDepth) -> Result<DyadicAnchor> {
    nu.require_convex("dyadic interpolation")?;
    let n = depth.n();
    let m = nu.floor_scaled(n);
    let frac = nu.frac_scaled(n);
    let alpha = 1.0 - frac;
    let grid = 1i64 << n;
    let x = dyadic_grid_pow(pair.a, m, pair.b, grid - m, n);
    let y = dyadic_grid_pow(pair.a, m + 1, pair.b, grid - m - 1, n);
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::Range("dyadic anchor overflowed".into()));
    }
    Ok(DyadicAnchor { alpha, beta: alpha.min(1.0 - alpha), x, y })
}

/// `R_N(nu; a, b)`, the two-point interpolation remainder. For dyadic
/// `nu = p / 2^N` it collapses to `a^nu b^{1-nu}` exactly.
pub fn dyadic_remainder(nu: &Weight, pair: &ScalarPair, depth: RefinementDepth) -> Result<f64> {
    let anchor = dyadic_anchor(nu, pair, depth)?;
    let mut r = 0.0;
    if anchor.alpha != 0.0 {
        r += anchor.alpha * anchor.x;
    }
    if anchor.alpha != 1.0 {
        r += (1.0 - anchor.alpha) * anchor.y;
    }
    Ok(r)
}

/// Refined weighted AM-GM: returns
/// `(a^nu b^{1-nu} + S_N, nu a + (1-nu) b)` with `lhs <= rhs`.
pub fn young_refined(
    nu: &Weight,
    pair: &ScalarPair,
    depth: RefinementDepth,
) -> Result<(f64, f64)> {
    nu.require_convex("the refined weighted AM-GM inequality")?;
    let lhs = weighted_geometric(pair, nu.value()) + refinement_sum(nu, pair, depth)?;
    let rhs = nu.value() * pair.a + (1.0 - nu.value()) * pair.b;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::weight::RefinementDepth as Depth;

    fn w(v: f64) -> Weight {
        Weight::new(v).unwrap()
    }

    fn pair(a: f64, b: f64) -> ScalarPair {
        ScalarPair::new(a, b).unwrap()
    }

    #[test]
    fn zero_weight_has_empty_refinement() {
        let b = refinement_breakdown(&w(0.0), &pair(3.0, 7.0), Depth::new(5).unwrap()).unwrap();
        assert!(b.levels.iter().all(|l| l.s == 0.0));
        assert_eq!(b.total, 0.0);
    }

    #[test]
    fn half_weight_depth_one_by_hand() {
        // s_1 = 1/2, term = (sqrt(1) - sqrt(4))^2 = 1, S_1 = 0.5.
        let b = refinement_breakdown(
            &Weight::dyadic(1, 1).unwrap(),
            &pair(4.0, 1.0),
            Depth::new(1).unwrap(),
        )
        .unwrap();
        assert_eq!(b.levels[0].k, 0);
        assert_eq!(b.levels[0].r, 1);
        assert!((b.levels[0].s - 0.5).abs() < 1e-15);
        assert!((b.levels[0].term - 1.0).abs() < 1e-12);
        assert!((b.total - 0.5).abs() < 1e-12);
    }

    #[test]
    fn quarter_weight_depth_two_by_hand() {
        // s_1 = 1/4 with term 9, s_2 = 1/2 with term 1, S_2 = 2.75.
        let b = refinement_breakdown(
            &Weight::dyadic(1, 2).unwrap(),
            &pair(16.0, 1.0),
            Depth::new(2).unwrap(),
        )
        .unwrap();
        assert!((b.levels[0].s - 0.25).abs() < 1e-15);
        assert!((b.levels[0].term - 9.0).abs() < 1e-12);
        assert!((b.levels[1].s - 0.5).abs() < 1e-15);
        assert!((b.levels[1].term - 1.0).abs() < 1e-12);
        assert!((b.total - 2.75).abs() < 1e-12);
    }

    #[test]
    fn equal_pair_kills_every_term() {
        for nu in [0.1, 0.37, 0.5, 0.93] {
            let s = refinement_sum(&w(nu), &pair(2.5, 2.5), Depth::new(8).unwrap()).unwrap();
            assert!(s.abs() < 1e-13, "S = {s} at nu = {nu}");
        }
    }

    #[test]
    fn remainder_of_quarter_weight() {
        // [4 * 1/4] = 1 gives the fourth root of 16, i.e. exactly 2.
        let r = dyadic_remainder(
            &Weight::dyadic(1, 2).unwrap(),
            &pair(16.0, 1.0),
            Depth::new(2).unwrap(),
        )
        .unwrap();
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn telescoping_identity_samples() {
        let cases = [
            (0.3, 2.0, 5.0, 3u32),
            (0.77, 0.004, 812.0, 9),
            (0.5, 4.0, 1.0, 1),
            (0.999, 10.0, 0.01, 12),
        ];
        for (nu, a, b, n) in cases {
            let nu = w(nu);
            let p = pair(a, b);
            let d = Depth::new(n).unwrap();
            let s = refinement_sum(&nu, &p, d).unwrap();
            let r = dyadic_remainder(&nu, &p, d).unwrap();
            let arith = nu.value() * a + (1.0 - nu.value()) * b;
            assert!(
                (arith - s - r).abs() <= 1e-12 * (a + b),
                "telescoping failed at nu={} a={a} b={b} n={n}",
                nu.value()
            );
        }
    }

    #[test]
    fn refined_young_tight_at_dyadic_depth() {
        let (lhs, rhs) = young_refined(
            &Weight::dyadic(1, 1).unwrap(),
            &pair(4.0, 1.0),
            Depth::new(1).unwrap(),
        )
        .unwrap();
        assert!((lhs - 2.5).abs() < 1e-12);
        assert!((rhs - 2.5).abs() < 1e-12);
    }

    #[test]
    fn endpoints_are_exact() {
        let p = pair(3.0, 11.0);
        let (lhs, rhs) = young_refined(&w(0.0), &p, Depth::new(6).unwrap()).unwrap();
        assert_eq!(lhs, 11.0);
        assert_eq!(rhs, 11.0);
        let (lhs, rhs) = young_refined(&w(1.0), &p, Depth::new(6).unwrap()).unwrap();
        assert_eq!(lhs, 3.0);
        assert_eq!(rhs, 3.0);
    }

    #[test]
    fn nonpositive_pair_rejected() {
        assert!(ScalarPair::new(0.0, 1.0).is_err());
        assert!(ScalarPair::new(1.0, -2.0).is_err());
        assert!(ScalarPair::new(f64::NAN, 1.0).is_err());
    }
}
