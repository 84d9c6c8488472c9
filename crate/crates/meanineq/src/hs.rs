//! Hilbert-Schmidt norm inequalities, each evaluated by two independent
//! routes: direct matrix arithmetic, and the eigenbasis double sum
//! `sum_{i,l} expr(lambda_i, mu_l) |y_il|^2` with `Y = U* X V`. The routes
//! must agree to roundoff, which is the module's built-in oracle.
//!
//! Inputs are positive semidefinite; fractional powers act on eigenvalues
//! with `0^p = 0` for `p > 0` and `0^0 = 1`.

use crate::error::{Error, Result};
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::hermitian::{psd_pow, PsdMatrix};
use crate::scalar::refinement::level_coefficient;
use crate::scalar::reverse::BranchSide;
use crate::scalar::weight::{RefinementDepth, Weight};

/// Shared decomposition for one `(A, B, X)` triple.
pub struct HsTriple {
    a: PsdMatrix,
    b: PsdMatrix,
    x: CMatrix,
    /// `U* X V` in the joint eigenbasis.
    y_sq: Vec<Vec<f64>>,
}

impl HsTriple {
    pub fn new(a: &PsdMatrix, b: &PsdMatrix, x: &CMatrix) -> Result<Self> {
        a.matrix().check_dim(b.matrix())?;
        a.matrix().check_dim(x)?;
        let y = a.eigenvectors().adjoint().mul(x)?.mul(b.eigenvectors())?;
        let n = x.dim();
        let y_sq = (0..n)
            .map(|i| (0..n).map(|l| y[(i, l)].norm_sqr()).collect())
            .collect();
        Ok(HsTriple { a: a.clone(), b: b.clone(), x: x.clone(), y_sq })
    }

    pub fn eigenvalues_a(&self) -> &[f64] {
        self.a.eigenvalues()
    }

    pub fn eigenvalues_b(&self) -> &[f64] {
        self.b.eigenvalues()
    }

    /// `A^{pa} X B^{pb}`.
    fn weighted(&self, pa: f64, pb: f64) -> Result<CMatrix> {
        self.a.power(pa)?.matrix().mul(&self.x)?.mul(self.b.power(pb)?.matrix())
    }

    /// Squared Hilbert-Schmidt norm of
    /// `A^{pa} X B^{pb} - A^{pa'} X B^{pb'}`.
    fn diff_norm_sq(&self, pa: f64, pb: f64, pa2: f64, pb2: f64) -> Result<f64> {
        let d = self.weighted(pa, pb)?.sub(&self.weighted(pa2, pb2)?)?;
        Ok(d.frobenius_norm().powi(2))
    }

    /// Eigenbasis double sum of a per-pair expression.
    fn double_sum(&self, expr: impl Fn(f64, f64) -> f64) -> f64 {
        let la = self.a.eigenvalues();
        let mu = self.b.eigenvalues();
        let mut acc = 0.0;
        for (i, &l) in la.iter().enumerate() {
            for (j, &m) in mu.iter().enumerate() {
                let w = self.y_sq[i][j];
                if w != 0.0 {
                    acc += expr(l, m) * w;
                }
            }
        }
        acc
    }
}

/// One statement evaluated through both routes.
#[derive(Debug, Clone, Copy)]
pub struct DualEval {
    /// Direct matrix-arithmetic route.
    pub lhs: f64,
    pub rhs: f64,
    /// Eigenbasis double-sum route.
    pub lhs_sum: f64,
    pub rhs_sum: f64,
}

impl DualEval {
    /// Largest relative deviation between the two routes.
    pub fn route_gap(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs()).max(1.0);
        ((self.lhs - self.lhs_sum).abs()).max((self.rhs - self.rhs_sum).abs()) / scale
    }
}

fn per_pair_sq(l: f64, m: f64, pa: f64, pb: f64, pa2: f64, pb2: f64) -> f64 {
    let d = psd_pow(l, pa) * psd_pow(m, pb) - psd_pow(l, pa2) * psd_pow(m, pb2);
    d * d
}

/// Squared refinement:
/// `||A^nu X B^{1-nu}||^2 + s_1^2 ||AX - XB||^2 + sum_{j>=2} s_j ||...||^2
///  <= ||nu AX + (1-nu) XB||^2`, depth at least 2.
pub fn hs_squared_refined(
    triple: &HsTriple,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<DualEval> {
    nu.require_convex("the squared Hilbert-Schmidt refinement")?;
    if depth.n() < 2 {
        return Err(Error::Depth(format!("depth must be >= 2, got {}", depth.n())));
    }
    let v = nu.value();
    let s1 = level_coefficient(nu, 1);
    let mut lhs = triple.weighted(v, 1.0 - v)?.frobenius_norm().powi(2);
    let ax_xb = triple.weighted(1.0, 0.0)?.sub(&triple.weighted(0.0, 1.0)?)?;
    lhs += s1 * s1 * ax_xb.frobenius_norm().powi(2);
    let mut exps = Vec::new();
    for j in 2..=depth.n() {
        let s = level_coefficient(nu, j);
        if s <= 0.0 {
            continue;
        }
        let alpha = nu.floor_scaled(j - 1) as f64 / ((j - 1) as f64).exp2();
        let step = (1.0 - j as f64).exp2();
        lhs += s * triple.diff_norm_sq(alpha, 1.0 - alpha, alpha + step, 1.0 - alpha - step)?;
        exps.push((s, alpha, step));
    }
    let rhs = {
        let m = triple.weighted(1.0, 0.0)?.scale(v).add(&triple.weighted(0.0, 1.0)?.scale(1.0 - v))?;
        m.frobenius_norm().powi(2)
    };

    let lhs_sum = triple.double_sum(|l, m| {
        let mut acc = (psd_pow(l, v) * psd_pow(m, 1.0 - v)).powi(2);
        acc += s1 * s1 * (l - m) * (l - m);
        for &(s, alpha, step) in &exps {
            acc += s * per_pair_sq(l, m, alpha, 1.0 - alpha, alpha + step, 1.0 - alpha - step);
        }
        acc
    });
    let rhs_sum = triple.double_sum(|l, m| (v * l + (1.0 - v) * m).powi(2));
    Ok(DualEval { lhs, rhs, lhs_sum, rhs_sum })
}

/// One branch of the squared reverse.
pub fn hs_squared_reverse_branch(
    triple: &HsTriple,
    nu: &Weight,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<DualEval> {
    nu.require_convex("the squared Hilbert-Schmidt reverse")?;
    let v = nu.value();
    let inner = match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            nu.affine(1, false, 0)?
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            nu.affine(1, true, 2)?
        }
    };
    let slack_coeff = match side {
        BranchSide::Lower => (1.0 - v) * (1.0 - v),
        BranchSide::Upper => v * v,
    };

    let mut exps = Vec::new();
    for j in 1..=depth.n() {
        let s = level_coefficient(&inner, j);
        if s <= 0.0 {
            continue;
        }
        let c = inner.floor_scaled(j - 1) as f64 / (j as f64).exp2();
        let step = (-(j as f64)).exp2();
        // Lower branch is A-heavy and steps the A-exponent down; the upper
        // branch is mirrored and steps it up.
        let (pa, pb, pa2, pb2) = match side {
            BranchSide::Lower => (1.0 - c, c, 1.0 - c - step, c + step),
            BranchSide::Upper => (c, 1.0 - c, c + step, 1.0 - c - step),
        };
        exps.push((s, pa, pb, pa2, pb2));
    }

    let base = triple.weighted(1.0, 0.0)?.scale(v).add(&triple.weighted(0.0, 1.0)?.scale(1.0 - v))?;
    let mut lhs = base.frobenius_norm().powi(2);
    for &(s, pa, pb, pa2, pb2) in &exps {
        lhs += s * triple.diff_norm_sq(pa, pb, pa2, pb2)?;
    }
    let ax_xb = triple.weighted(1.0, 0.0)?.sub(&triple.weighted(0.0, 1.0)?)?;
    let rhs = triple.weighted(v, 1.0 - v)?.frobenius_norm().powi(2)
        + slack_coeff * ax_xb.frobenius_norm().powi(2);

    let lhs_sum = triple.double_sum(|l, m| {
        let mut acc = (v * l + (1.0 - v) * m).powi(2);
        for &(s, pa, pb, pa2, pb2) in &exps {
            acc += s * per_pair_sq(l, m, pa, pb, pa2, pb2);
        }
        acc
    });
    let rhs_sum = triple.double_sum(|l, m| {
        (psd_pow(l, v) * psd_pow(m, 1.0 - v)).powi(2) + slack_coeff * (l - m) * (l - m)
    });
    Ok(DualEval { lhs, rhs, lhs_sum, rhs_sum })
}

/// Canonical branch of the squared reverse.
pub fn hs_squared_reverse(
    triple: &HsTriple,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<DualEval> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    hs_squared_reverse_branch(triple, nu, depth, side)
}

/// One branch of the refined Heinz bound for the Hilbert-Schmidt norm.
pub fn hs_heinz_refined_branch(
    triple: &HsTriple,
    nu: &Weight,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<DualEval> {
    nu.require_convex("the Hilbert-Schmidt Heinz refinement")?;
    let v = nu.value();
    let (inner, coeff) = match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            (nu.affine(1, false, 0)?, 2.0 * v)
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            (nu.affine(1, true, 2)?, 2.0 * (1.0 - v))
        }
    };
    let mut exps = Vec::new();
    for j in 1..=depth.n() {
        let s = level_coefficient(&inner, j);
        if s <= 0.0 {
            continue;
        }
        let c = inner.floor_scaled(j - 1) as f64 / (j as f64).exp2();
        let step = (-(j as f64)).exp2();
        exps.push((s, c, step));
    }

    let heinz = triple.weighted(v, 1.0 - v)?.add(&triple.weighted(1.0 - v, v)?)?;
    let ax_xb = triple.weighted(1.0, 0.0)?.sub(&triple.weighted(0.0, 1.0)?)?;
    let mut lhs = heinz.frobenius_norm().powi(2) + coeff * ax_xb.frobenius_norm().powi(2);
    for &(s, c, step) in &exps {
        // A-heavy and B-heavy refinement families.
        lhs += s * triple.diff_norm_sq(1.0 - c, c, 1.0 - c - step, c + step)?;
        lhs += s * triple.diff_norm_sq(c, 1.0 - c, c + step, 1.0 - c - step)?;
    }
    let rhs = {
        let m = triple.weighted(1.0, 0.0)?.add(&triple.weighted(0.0, 1.0)?)?;
        m.frobenius_norm().powi(2)
    };

    let lhs_sum = triple.double_sum(|l, m| {
        let h = psd_pow(l, v) * psd_pow(m, 1.0 - v) + psd_pow(l, 1.0 - v) * psd_pow(m, v);
        let mut acc = h * h + coeff * (l - m) * (l - m);
        for &(s, c, step) in &exps {
            acc += s * per_pair_sq(l, m, 1.0 - c, c, 1.0 - c - step, c + step);
            acc += s * per_pair_sq(l, m, c, 1.0 - c, c + step, 1.0 - c - step);
        }
        acc
    });
    let rhs_sum = triple.double_sum(|l, m| (l + m) * (l + m));
    Ok(DualEval { lhs, rhs, lhs_sum, rhs_sum })
}

/// Canonical branch of the Hilbert-Schmidt Heinz refinement.
pub fn hs_heinz_refined(
    triple: &HsTriple,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<DualEval> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    hs_heinz_refined_branch(triple, nu, depth, side)
}

/// Reversed Heinz refinement, stated for `nu` in `[0, 1/4]` with the sums
/// starting at the second level.
pub fn hs_heinz_reverse(
    triple: &HsTriple,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<DualEval> {
    let v = nu.value();
    if !(0.0..=0.25).contains(&v) && !nu.at_seam(0.25) {
        return Err(Error::Branch(format!(
            "the reversed Heinz statement covers nu in [0, 1/4], got {v}"
        )));
    }
    if depth.n() < 2 {
        return Err(Error::Depth(format!("depth must be >= 2, got {}", depth.n())));
    }
    let inner = nu.affine(2, false, 0)?; // 4 nu
    let mut exps = Vec::new();
    for j in 2..=depth.n() {
        let s = level_coefficient(&inner, j);
        if s <= 0.0 {
            continue;
        }
        let e = inner.floor_scaled(j - 1) as f64 / ((j + 1) as f64).exp2();
        let step = (-(j as f64 + 1.0)).exp2();
        exps.push((s, e, step));
    }

    let sum_m = triple.weighted(1.0, 0.0)?.add(&triple.weighted(0.0, 1.0)?)?;
    let mut lhs = sum_m.frobenius_norm().powi(2);
    for &(s, e, step) in &exps {
        lhs += s * triple.diff_norm_sq(0.5 + e, 0.5 - e, 0.5 + e + step, 0.5 - e - step)?;
        lhs += s * triple.diff_norm_sq(0.5 - e, 0.5 + e, 0.5 - e - step, 0.5 + e + step)?;
    }

    let heinz = triple.weighted(v, 1.0 - v)?.add(&triple.weighted(1.0 - v, v)?)?;
    let ax_xb = triple.weighted(1.0, 0.0)?.sub(&triple.weighted(0.0, 1.0)?)?;
    let geo = triple.weighted(0.5, 0.5)?;
    let geo_minus_ax = geo.sub(&triple.weighted(1.0, 0.0)?)?;
    let geo_minus_xb = geo.sub(&triple.weighted(0.0, 1.0)?)?;
    let rhs = heinz.frobenius_norm().powi(2)
        + 2.0 * v * ax_xb.frobenius_norm().powi(2)
        + (1.0 - 2.0 * v)
            * (geo_minus_ax.frobenius_norm().powi(2) + geo_minus_xb.frobenius_norm().powi(2));

    let lhs_sum = triple.double_sum(|l, m| {
        let mut acc = (l + m) * (l + m);
        for &(s, e, step) in &exps {
            acc += s * per_pair_sq(l, m, 0.5 + e, 0.5 - e, 0.5 + e + step, 0.5 - e - step);
            acc += s * per_pair_sq(l, m, 0.5 - e, 0.5 + e, 0.5 - e - step, 0.5 + e + step);
        }
        acc
    });
    let rhs_sum = triple.double_sum(|l, m| {
        let h = psd_pow(l, v) * psd_pow(m, 1.0 - v) + psd_pow(l, 1.0 - v) * psd_pow(m, v);
        let root = (l * m).sqrt();
        h * h + 2.0 * v * (l - m) * (l - m)
            + (1.0 - 2.0 * v) * ((root - l) * (root - l) + (root - m) * (root - m))
    });
    Ok(DualEval { lhs, rhs, lhs_sum, rhs_sum })
}
