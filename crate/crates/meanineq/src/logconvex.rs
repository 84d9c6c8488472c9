//! Refinements for log-convex functions on `[0, 1]`, including the four
//! built-in matrix functionals and the dyadic-grid envelope chain.

use crate::error::{Error, Result};
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::hermitian::PsdMatrix;
use crate::norms::{norm, NormKind};
use crate::scalar::kanto::{beta_exponent, kantorovich};
use crate::scalar::refinement::{refinement_sum, ScalarPair};
use crate::scalar::weight::{RefinementDepth, Weight};

/// Which functional an evaluator came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// `t -> ||| A^t X B^t |||`
    F1,
    /// `t -> ||| A^t X B^{1-t} |||`
    F2,
    /// `t -> ||| A^t |||`
    F3,
    /// `t -> tr(A^t X B^{1-t} X*)`
    F4,
    Custom,
}

/// Positive log-convex function on `[0, 1]`, extended by `f(x) = 1` for
/// `x > 1` (the depth-`N` upper grid point of the weight 1 lies at
/// `1 + 2^{-N}`, where that convention makes the envelope exact).
///
/// Evaluators must be pure; the verification suites call them from
/// multiple samples and expect identical values.
pub struct LogConvexFunctional {
    eval: Box<dyn Fn(f64) -> Result<f64> + Send + Sync>,
    provenance: Provenance,
}

impl LogConvexFunctional {
    /// Wraps a user evaluator after spot-checking log-convexity on a
    /// 33-point midpoint grid.
    pub fn custom(eval: Box<dyn Fn(f64) -> Result<f64> + Send + Sync>) -> Result<Self> {
        let f = LogConvexFunctional { eval, provenance: Provenance::Custom };
        f.spot_check_log_convexity()?;
        Ok(f)
    }

    /// `t -> e^{c t}`, the equality case of every log-convexity bound.
    pub fn log_affine(c: f64) -> Self {
        LogConvexFunctional {
            eval: Box::new(move |t| Ok((c * t).exp())),
            provenance: Provenance::Custom,
        }
    }

    fn from_closure(
        eval: Box<dyn Fn(f64) -> Result<f64> + Send + Sync>,
        provenance: Provenance,
    ) -> Self {
        LogConvexFunctional { eval, provenance }
    }

    /// `t -> ||| A^t X B^t |||`.
    pub fn f1(kind: NormKind, a: &PsdMatrix, b: &PsdMatrix, x: &CMatrix) -> Result<Self> {
        let (a, b, x) = (a.clone(), b.clone(), x.clone());
        Ok(Self::from_closure(
            Box::new(move |t| {
                let m = a.power(t)?.matrix().mul(&x)?.mul(b.power(t)?.matrix())?;
                norm(&m, &kind)
            }),
            Provenance::F1,
        ))
    }

    /// `t -> ||| A^t X B^{1-t} |||`.
    pub fn f2(kind: NormKind, a: &PsdMatrix, b: &PsdMatrix, x: &CMatrix) -> Result<Self> {
        let (a, b, x) = (a.clone(), b.clone(), x.clone());
        Ok(Self::from_closure(
            Box::new(move |t| {
                let m = a.power(t)?.matrix().mul(&x)?.mul(b.power(1.0 - t)?.matrix())?;
                norm(&m, &kind)
            }),
            Provenance::F2,
        ))
    }

    /// `t -> ||| A^t |||`.
    pub fn f3(kind: NormKind, a: &PsdMatrix) -> Result<Self> {
        let a = a.clone();
        Ok(Self::from_closure(
            Box::new(move |t| norm(a.power(t)?.matrix(), &kind)),
            Provenance::F3,
        ))
    }

    /// `t -> tr(A^t X B^{1-t} X*)`.
    pub fn f4(a: &PsdMatrix, b: &PsdMatrix, x: &CMatrix) -> Result<Self> {
        let (a, b, x) = (a.clone(), b.clone(), x.clone());
        Ok(Self::from_closure(
            Box::new(move |t| {
                let m = a
                    .power(t)?
                    .matrix()
                    .mul(&x)?
                    .mul(b.power(1.0 - t)?.matrix())?
                    .mul(&x.adjoint())?;
                let tr = m.trace();
                Ok(tr.re)
            }),
            Provenance::F4,
        ))
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Evaluates inside `[0, 1]`, requiring a positive finite value.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = (self.eval)(t)?;
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Degenerate(format!(
                "functional is not strictly positive at t = {t} (value {v})"
            )));
        }
        Ok(v)
    }

    /// Evaluates with the `f(x) = 1` extension beyond 1.
    pub fn eval_extended(&self, t: f64) -> Result<f64> {
        if t > 1.0 {
            Ok(1.0)
        } else {
            self.eval(t)
        }
    }

    /// Midpoint-grid log-convexity test: `f((s+t)/2)^2 <= f(s) f(t)` up to
    /// a `1 + 1e-9` factor, over all pairs from 33 equispaced points.
    pub fn spot_check_log_convexity(&self) -> Result<()> {
        const POINTS: usize = 33;
        let grid: Vec<f64> = (0..POINTS).map(|i| i as f64 / (POINTS - 1) as f64).collect();
        let values: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect::<Result<_>>()?;
        for i in 0..POINTS {
            for j in i..POINTS {
                let mid = self.eval((grid[i] + grid[j]) / 2.0)?;
                if mid * mid > values[i] * values[j] * (1.0 + 1e-9) {
                    return Err(Error::Precondition(format!(
                        "functional is not log-convex near [{}, {}]",
                        grid[i], grid[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Kantorovich-strengthened refinement for a log-convex `f`:
/// returns `(lhs, mid, rhs)` with
/// `lhs = K((f(1)/f(0))^{1/2^N})^{beta_N(t)} f(t) + S_N(t; f(1), f(0))`,
/// `mid` the same with `f(t)` replaced by `f(1)^t f(0)^{1-t}`, and
/// `rhs = t f(1) + (1-t) f(0)`; `lhs <= mid <= rhs`.
pub fn logconvex_refined(
    f: &LogConvexFunctional,
    t: &Weight,
    depth: RefinementDepth,
) -> Result<(f64, f64, f64)> {
    t.require_convex("the log-convex refinement")?;
    let f1 = f.eval(1.0)?;
    let f0 = f.eval(0.0)?;
    let beta = beta_exponent(t, depth);
    let factor = if beta == 0.0 {
        1.0
    } else {
        let root = 1.0 / (depth.n() as f64).exp2();
        kantorovich((f1 / f0).powf(root))?.powf(beta)
    };
    let s = refinement_sum(t, &ScalarPair::new(f1, f0)?, depth)?;
    let tv = t.value();
    let geo = if tv == 0.0 {
        f0
    } else if tv == 1.0 {
        f1
    } else {
        f1.powf(tv) * f0.powf(1.0 - tv)
    };
    let lhs = factor * f.eval(tv)? + s;
    let mid = factor * geo + s;
    let rhs = tv * f1 + (1.0 - tv) * f0;
    Ok((lhs, mid, rhs))
}

/// Builds functional `which` (1..=4) from matrix data.
pub fn build_functional(
    kind: NormKind,
    a: &PsdMatrix,
    b: &PsdMatrix,
    x: &CMatrix,
    which: u8,
) -> Result<LogConvexFunctional> {
    match which {
        1 => LogConvexFunctional::f1(kind, a, b, x),
        2 => LogConvexFunctional::f2(kind, a, b, x),
        3 => LogConvexFunctional::f3(kind, a),
        4 => LogConvexFunctional::f4(a, b, x),
        _ => Err(Error::Usage(format!("functional selector must be 1..=4, got {which}"))),
    }
}

/// The norm-functional refinement for one of the four built-ins; returns
/// `(lhs, rhs)` of the strengthened bound.
pub fn uin_corollary(
    kind: NormKind,
    a: &PsdMatrix,
    b: &PsdMatrix,
    x: &CMatrix,
    t: &Weight,
    depth: RefinementDepth,
    which: u8,
) -> Result<(f64, f64)> {
    let f = build_functional(kind, a, b, x, which)?;
    let (lhs, _, rhs) = logconvex_refined(&f, t, depth)?;
    Ok((lhs, rhs))
}

/// Dyadic grid envelope
/// `g_N(nu) = f([2^N nu]/2^N)^{alpha} f(([2^N nu]+1)/2^N)^{1-alpha}` with
/// `alpha = [2^N nu] + 1 - 2^N nu`; `g_N >= f` and `g_{N+1} <= g_N`.
pub fn grid_envelope(
    f: &LogConvexFunctional,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<f64> {
    nu.require_convex("the grid envelope")?;
    let n = depth.n();
    let m = nu.floor_scaled(n) as f64;
    let den = (n as f64).exp2();
    let alpha = 1.0 - nu.frac_scaled(n);
    let fx = f.eval_extended(m / den)?;
    let fy = f.eval_extended((m + 1.0) / den)?;
    Ok(if alpha == 1.0 {
        fx
    } else if alpha == 0.0 {
        fy
    } else {
        fx.powf(alpha) * fy.powf(1.0 - alpha)
    })
}

/// The four stations of the chained refinement; ordered
/// `v1 <= v2 <= v3 <= v4`.
#[derive(Debug, Clone, Copy)]
pub struct ChainEval {
    /// `K_N f(nu) + S_N(alpha; f(x_N), f(y_N))`
    pub v1: f64,
    /// `K_N g_N(nu) + S_N(alpha; f(x_N), f(y_N))`
    pub v2: f64,
    /// `alpha f(x_N) + (1 - alpha) f(y_N)`
    pub v3: f64,
    /// `nu f(1) + (1 - nu) f(0)`
    pub v4: f64,
}

/// Chained refinement across the depth-`N` grid. The Kantorovich factor
/// `K_N = K((f(x_N)/f(y_N))^{1/2^N}, 2)^{beta_N(alpha_N(nu))}` uses the
/// exponent at the anchor weight `alpha_N(nu)`, which is what the
/// strengthened bound between `v2` and `v3` supports.
pub fn logconvex_chain(
    f: &LogConvexFunctional,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<ChainEval> {
    nu.require_convex("the chained refinement")?;
    let n = depth.n();
    let m = nu.floor_scaled(n);
    let den = (n as f64).exp2();
    let alpha_w = nu.affine(n as i32, true, m + 1)?;
    let alpha = alpha_w.value();
    let fx = f.eval_extended(m as f64 / den)?;
    let fy = f.eval_extended((m as f64 + 1.0) / den)?;

    let beta = beta_exponent(&alpha_w, depth);
    let factor = if beta == 0.0 { 1.0 } else { kantorovich((fx / fy).powf(1.0 / den))?.powf(beta) };
    let s = if alpha_w.value().fract() == 0.0 {
        0.0
    } else {
        refinement_sum(&alpha_w, &ScalarPair::new(fx, fy)?, depth)?
    };
    let envelope = if alpha == 1.0 {
        fx
    } else if alpha == 0.0 {
        fy
    } else {
        fx.powf(alpha) * fy.powf(1.0 - alpha)
    };
    let v1 = factor * f.eval(nu.value())? + s;
    let v2 = factor * envelope + s;
    let v3 = alpha * fx + (1.0 - alpha) * fy;
    let v4 = nu.value() * f.eval(1.0)? + (1.0 - nu.value()) * f.eval(0.0)?;
    Ok(ChainEval { v1, v2, v3, v4 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: f64) -> Weight {
        Weight::new(v).unwrap()
    }

    fn d(n: u32) -> RefinementDepth {
        RefinementDepth::new(n).unwrap()
    }

    #[test]
    fn constant_functional_is_flat() {
        let f = LogConvexFunctional::log_affine(0.0);
        let (lhs, mid, rhs) = logconvex_refined(&f, &w(0.4), d(3)).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        assert!((mid - 1.0).abs() < 1e-12);
        assert!((rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_affine_mid_chain_is_tight() {
        let f = LogConvexFunctional::log_affine(1.0);
        let (lhs, mid, rhs) = logconvex_refined(&f, &w(0.5), d(1)).unwrap();
        assert!((lhs - mid).abs() <= 1e-12 * mid, "geometric step tight for e^t");
        assert!(lhs <= mid + 1e-12 && mid <= rhs + 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn f3_diagonal_example() {
        let a = PsdMatrix::diagonal(&[1.0, 4.0]).unwrap();
        let f = LogConvexFunctional::f3(NormKind::Trace, &a).unwrap();
        let (lhs, mid, rhs) = logconvex_refined(&f, &w(0.3), d(2)).unwrap();
        assert!(lhs <= mid + 1e-10 * mid.max(1.0));
        assert!(mid <= rhs + 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn envelope_decreases_with_depth() {
        let a = PsdMatrix::diagonal(&[1.0, 9.0]).unwrap();
        let f = LogConvexFunctional::f3(NormKind::Trace, &a).unwrap();
        let fv = f.eval(0.3).unwrap();
        let mut prev = f64::INFINITY;
        for n in 1..=8 {
            let g = grid_envelope(&f, &w(0.3), d(n)).unwrap();
            assert!(g <= prev * (1.0 + 1e-11), "depth {n}");
            assert!(g >= fv - 1e-11 * fv, "envelope stays above f at depth {n}");
            prev = g;
        }
    }

    #[test]
    fn envelope_exact_on_grid_and_log_affine() {
        let f = LogConvexFunctional::log_affine(2.0);
        for (nu, n) in [(0.25, 2u32), (0.5, 1), (1.0, 3)] {
            let g = grid_envelope(&f, &w(nu), d(n)).unwrap();
            let fv = f.eval(nu).unwrap();
            assert!((g - fv).abs() <= 1e-12 * fv, "nu={nu} n={n}");
        }
        // Log-affine f makes g_N = f for every nu, not just grid points.
        let g = grid_envelope(&f, &w(0.3), d(4)).unwrap();
        let fv = f.eval(0.3).unwrap();
        assert!((g - fv).abs() <= 1e-12 * fv);
    }

    #[test]
    fn chain_is_ordered() {
        let a = PsdMatrix::diagonal(&[1.0, 4.0, 0.5]).unwrap();
        let f = LogConvexFunctional::f3(NormKind::Spectral, &a).unwrap();
        for nu in [0.0, 0.3, 0.5, 0.75, 0.9, 1.0] {
            for n in [1, 2, 4] {
                let c = logconvex_chain(&f, &w(nu), d(n)).unwrap();
                let tol = 1e-10 * c.v4.abs().max(1.0);
                assert!(c.v1 <= c.v2 + tol, "v1 > v2 at nu={nu} n={n}: {c:?}");
                assert!(c.v2 <= c.v3 + tol, "v2 > v3 at nu={nu} n={n}: {c:?}");
                assert!(c.v3 <= c.v4 + tol, "v3 > v4 at nu={nu} n={n}: {c:?}");
            }
        }
    }

    #[test]
    fn custom_requires_log_convexity() {
        // Strictly concave bump: log-convexity fails.
        let bad = LogConvexFunctional::custom(Box::new(|t| Ok(1.0 + t * (1.0 - t))));
        assert!(matches!(bad, Err(Error::Precondition(_))));
        let good = LogConvexFunctional::custom(Box::new(|t| Ok((t * t).exp())));
        assert!(good.is_ok());
    }

    #[test]
    fn zero_x_is_degenerate() {
        let a = PsdMatrix::diagonal(&[1.0, 2.0]).unwrap();
        let b = PsdMatrix::diagonal(&[3.0, 1.0]).unwrap();
        let x = CMatrix::zeros(2);
        let err = uin_corollary(NormKind::Frobenius, &a, &b, &x, &w(0.4), d(2), 2);
        assert!(matches!(err, Err(Error::Degenerate(_))));
    }
}
