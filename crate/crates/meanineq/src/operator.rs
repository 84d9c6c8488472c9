//! Operator versions of the refined inequalities, certified in the Loewner
//! order.
//!
//! Every left and right side is assembled as `A^{1/2} f(X) A^{1/2}` with
//! `X = A^{-1/2} B A^{-1/2}`: one eigendecomposition of `X` per pair, exact
//! commutation between all `#`-terms, and each refinement block is a
//! spectral square and therefore positive semidefinite by construction.

use crate::error::{Error, Result};
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::hermitian::{HermitianMatrix, SpdMatrix, SpectralBounds};
use crate::matrix::jacobi::{hermitian_eigen, spectral_map};
use crate::scalar::kanto::{beta_exponent, kantorovich};
use crate::scalar::refinement::level_coefficient;
use crate::scalar::reverse::BranchSide;
use crate::scalar::weight::{RefinementDepth, Weight};

/// Per-level exponents used by the operator statements:
/// `alpha_j = k_j(nu) / 2^{j-1}`, `beta_j = k_j(2 nu) / 2^j`,
/// `gamma_j = k_j(2 - 2 nu) / 2^{j-1}`.
#[derive(Debug, Clone)]
pub struct ExponentSchedule {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

/// Builds the exponent schedule for `nu` at the given depth.
pub fn exponent_schedule(nu: &Weight, depth: RefinementDepth) -> Result<ExponentSchedule> {
    nu.require_convex("the exponent schedule")?;
    let doubled = nu.affine(1, false, 0)?;
    let mirrored = nu.affine(1, true, 2)?;
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut gamma = Vec::new();
    for j in 1..=depth.n() {
        let half = ((j - 1) as f64).exp2();
        alpha.push(nu.floor_scaled(j - 1) as f64 / half);
        beta.push(doubled.floor_scaled(j - 1) as f64 / (2.0 * half));
        gamma.push(mirrored.floor_scaled(j - 1) as f64 / half);
    }
    Ok(ExponentSchedule { alpha, beta, gamma })
}

/// Shared spectral context for one `(A, B)` pair.
pub struct OperatorPair {
    a_half: CMatrix,
    x_q: CMatrix,
    x_lambda: Vec<f64>,
}

impl OperatorPair {
    pub fn new(a: &SpdMatrix, b: &SpdMatrix) -> Result<Self> {
        a.matrix().check_dim(b.matrix())?;
        let a_half = a.power(0.5)?;
        let a_neg_half = a.power(-0.5)?;
        let x = a_neg_half
            .matrix()
            .mul(b.matrix())?
            .mul(a_neg_half.matrix())?
            .hermitize();
        let (x_q, x_lambda) = hermitian_eigen(&x)?;
        if x_lambda[0] <= 0.0 {
            return Err(Error::Definiteness(format!(
                "relative spectrum of the pair is not positive ({})",
                x_lambda[0]
            )));
        }
        Ok(OperatorPair { a_half: a_half.matrix().clone(), x_q, x_lambda })
    }

    /// Eigenvalues of `X = A^{-1/2} B A^{-1/2}`.
    pub fn relative_spectrum(&self) -> &[f64] {
        &self.x_lambda
    }

    /// `A^{1/2} f(X) A^{1/2}`.
    pub fn transfer(&self, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
        let fx = spectral_map(&self.x_q, &self.x_lambda, f);
        let m = self.a_half.mul(&fx)?.mul(&self.a_half)?.hermitize();
        HermitianMatrix::new(m)
    }

    /// `A #_t B` through the shared context.
    pub fn sharp(&self, t: f64) -> Result<HermitianMatrix> {
        self.transfer(|x| x.powf(t))
    }
}

/// Left and right side of an operator statement, ready for Loewner
/// certification.
pub struct OperatorEval {
    pub lhs: HermitianMatrix,
    pub rhs: HermitianMatrix,
}

/// Spectral square `(x^p - x^q)^2` expanded lazily per eigenvalue.
fn block(x: f64, p: f64, q: f64) -> f64 {
    let d = x.powf(p) - x.powf(q);
    d * d
}

/// Refined operator AM-GM:
/// `A #_nu B + sum_j s_j(nu) (A #_{alpha_j} B + A #_{alpha_j + 2^{1-j}} B
///  - 2 A #_{alpha_j + 2^{-j}} B) <= A nabla_nu B`.
pub fn op_young_refined(
    pair: &OperatorPair,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<OperatorEval> {
    nu.require_convex("the refined operator AM-GM")?;
    let sched = exponent_schedule(nu, depth)?;
    let weights: Vec<f64> = (1..=depth.n()).map(|j| level_coefficient(nu, j)).collect();
    let v = nu.value();
    let lhs = pair.transfer(|x| {
        let mut acc = x.powf(v);
        for (j, (&s, &alpha)) in weights.iter().zip(&sched.alpha).enumerate() {
            if s > 0.0 {
                let p = alpha / 2.0;
                acc += s * block(x, p, p + (-(j as f64 + 1.0)).exp2());
            }
        }
        acc
    })?;
    let rhs = pair.transfer(|x| v * x + (1.0 - v))?;
    Ok(OperatorEval { lhs, rhs })
}

/// One branch of the reversed operator inequality
/// `A nabla_nu B + sum_j s_j(...) (spectral square) <= A #_nu B
///  + 2 max(nu, 1-nu)-side (A nabla B - A # B)`.
pub fn op_reverse_branch(
    pair: &OperatorPair,
    nu: &Weight,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<OperatorEval> {
    nu.require_convex("the reversed operator inequality")?;
    let v = nu.value();
    let sched = exponent_schedule(nu, depth)?;
    let (inner, slack) = match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            (nu.affine(1, false, 0)?, 1.0 - v)
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            (nu.affine(1, true, 2)?, v)
        }
    };
    let weights: Vec<f64> = (1..=depth.n()).map(|j| level_coefficient(&inner, j)).collect();
    let lhs = pair.transfer(|x| {
        let mut acc = v * x + (1.0 - v);
        for j in 1..=depth.n() as usize {
            let s = weights[j - 1];
            if s <= 0.0 {
                continue;
            }
            let half_step = (-(j as f64 + 1.0)).exp2(); // 2^{-j-1}
            acc += s * match side {
                // Block (x^{(1 - beta_j)/2} - x^{(1 - beta_j)/2 - 2^{-j-1}})^2
                // with beta_j = k_j(2 nu) / 2^j.
                BranchSide::Lower => {
                    let h = (1.0 - sched.beta[j - 1]) / 2.0;
                    block(x, h, h - half_step)
                }
                // Mirrored block anchored at gamma_j / 4 = k_j(2 - 2 nu) / 2^{j+1}.
                BranchSide::Upper => {
                    let h = sched.gamma[j - 1] / 4.0;
                    block(x, h, h + half_step)
                }
            };
        }
        acc
    })?;
    let rhs = pair.transfer(|x| x.powf(v) + slack * (x.sqrt() - 1.0).powi(2))?;
    Ok(OperatorEval { lhs, rhs })
}

/// Canonical branch of the reversed operator inequality.
pub fn op_reverse(pair: &OperatorPair, nu: &Weight, depth: RefinementDepth) -> Result<OperatorEval> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    op_reverse_branch(pair, nu, depth, side)
}

/// Telescoping reverse for the extended mean `A nabla_{-nu} B`:
/// `A nabla_{-nu} B + nu sum_j 2^{j-1} (A - 2 A #_{2^{-j}} B + A #_{2^{1-j}} B)
///  <= A #_{-nu} B` for `nu >= 0`.
pub fn op_minus_reverse(
    pair: &OperatorPair,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<OperatorEval> {
    let v = nu.value();
    let lhs = pair.transfer(|x| {
        let mut acc = (1.0 + v) - v * x;
        if v > 0.0 {
            for j in 1..=depth.n() {
                let root = x.powf((-(j as f64)).exp2());
                acc += v * ((j - 1) as f64).exp2() * (1.0 - root).powi(2);
            }
        }
        acc
    })?;
    let rhs = pair.transfer(|x| x.powf(-v))?;
    Ok(OperatorEval { lhs, rhs })
}

/// Refinement-sum driven reverse for `A nabla_{-nu} B <= A #_{-nu} B`,
/// `nu` in `[0, 1]`, transferred from its scalar source through the shared
/// context (and therefore Hermitian by construction).
pub fn op_minus_reverse_via_s(
    pair: &OperatorPair,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<OperatorEval> {
    nu.require_convex("this reversed operator inequality")?;
    let v = nu.value();
    let inner = nu.affine(0, true, 1)?; // 1 - nu
    let weights: Vec<f64> = (1..=depth.n()).map(|j| level_coefficient(&inner, j)).collect();
    let alphas: Vec<f64> = (1..=depth.n())
        .map(|j| inner.floor_scaled(j - 1) as f64 / ((j - 1) as f64).exp2())
        .collect();
    let lhs = pair.transfer(|x| {
        let mut acc = (1.0 + v) - v * x;
        for (j, (&s, &alpha)) in weights.iter().zip(&alphas).enumerate() {
            if s > 0.0 {
                let p = (1.0 - alpha) / 2.0;
                acc += s * block(x, p, p - (-(j as f64 + 1.0)).exp2());
            }
        }
        acc
    })?;
    let rhs = pair.transfer(|x| x.powf(-v))?;
    Ok(OperatorEval { lhs, rhs })
}

/// The same statement assembled literally with the `A B^{-1} A` prefactor
/// in front of the unweighted sum, kept as a diagnostic: the product is not
/// Hermitian for non-commuting pairs, so only its Hermiticity defect is
/// reported and no order is certified.
pub struct LiteralMinusReverse {
    pub literal_lhs: CMatrix,
    pub rhs: HermitianMatrix,
    /// Anti-Hermitian mass of the literal left side relative to its norm.
    pub hermiticity_defect: f64,
}

/// Evaluates the literal prefactor form of [`op_minus_reverse_via_s`].
pub fn op_minus_reverse_literal(
    a: &SpdMatrix,
    b: &SpdMatrix,
    pair: &OperatorPair,
    nu: &Weight,
    depth: RefinementDepth,
) -> Result<LiteralMinusReverse> {
    nu.require_convex("the literal reversed operator inequality")?;
    let v = nu.value();
    let nabla = a.hermitian().scale(1.0 + v).sub(&b.hermitian().scale(v))?;
    let prefactor = a
        .matrix()
        .mul(&b.power(-1.0)?.matrix().clone())?
        .mul(a.matrix())?;
    let mut sum = CMatrix::zeros(a.dim());
    for j in 1..=depth.n() {
        let alpha = nu.floor_scaled(j - 1) as f64 / ((j - 1) as f64).exp2();
        let first = pair.sharp(1.0 + alpha)?;
        let second = pair.sharp(1.0 + (1.0 - (j as f64)).exp2() + alpha)?;
        let third = pair.sharp(1.0 + (-(j as f64)).exp2() + alpha)?;
        sum = sum
            .add(first.matrix())?
            .add(second.matrix())?
            .sub(&third.matrix().scale(2.0))?;
    }
    let literal_lhs = nabla.matrix().add(&prefactor.mul(&sum)?)?;
    let defect = literal_lhs.hermitian_defect() / literal_lhs.frobenius_norm().max(1.0);
    let rhs = pair.transfer(|x| x.powf(-v))?;
    Ok(LiteralMinusReverse { literal_lhs, rhs, hermiticity_defect: defect })
}

/// One branch of the squared operator refinement
/// `A #_{2-2nu} B + sum_{j>=2} s_j(nu) (spectral square) <= RHS`, with
/// `RHS = (B A^{-1} B) nabla_{2nu} B` below the seam and `A nabla_{2-2nu} B`
/// above it.
pub fn op_squared_branch(
    pair: &OperatorPair,
    nu: &Weight,
    depth: RefinementDepth,
    side: BranchSide,
) -> Result<OperatorEval> {
    nu.require_convex("the squared operator refinement")?;
    if depth.n() < 2 {
        return Err(Error::Depth(format!(
            "the squared operator refinement needs depth >= 2, got {}",
            depth.n()
        )));
    }
    let v = nu.value();
    let sched = exponent_schedule(nu, depth)?;
    let weights: Vec<f64> = (1..=depth.n()).map(|j| level_coefficient(nu, j)).collect();
    let lhs = pair.transfer(|x| {
        let mut acc = x.powf(2.0 - 2.0 * v);
        for j in 2..=depth.n() as usize {
            let s = weights[j - 1];
            if s > 0.0 {
                let p = 1.0 - sched.alpha[j - 1];
                acc += s * block(x, p, p - (1.0 - j as f64).exp2());
            }
        }
        acc
    })?;
    let rhs = match side {
        BranchSide::Lower => {
            if v > 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("lower branch requires nu <= 1/2, got {v}")));
            }
            pair.transfer(|x| (1.0 - 2.0 * v) * x * x + 2.0 * v * x)?
        }
        BranchSide::Upper => {
            if v < 0.5 && !nu.at_seam(0.5) {
                return Err(Error::Branch(format!("upper branch requires nu >= 1/2, got {v}")));
            }
            pair.transfer(|x| (2.0 * v - 1.0) + (2.0 - 2.0 * v) * x)?
        }
    };
    Ok(OperatorEval { lhs, rhs })
}

/// Canonical branch of the squared operator refinement.
pub fn op_squared(pair: &OperatorPair, nu: &Weight, depth: RefinementDepth) -> Result<OperatorEval> {
    let side = if nu.value() <= 0.5 { BranchSide::Lower } else { BranchSide::Upper };
    op_squared_branch(pair, nu, depth, side)
}

/// Kantorovich-strengthened operator refinement under spectral bounds
/// `m I <= A, B <= M I`, with `h = (M/m)^{1/2^N}`:
/// `K(h, 2)^{beta_N(nu)} A #_nu B + refinement sum <= A nabla_nu B`.
pub fn op_kanto(
    a: &SpdMatrix,
    b: &SpdMatrix,
    pair: &OperatorPair,
    nu: &Weight,
    depth: RefinementDepth,
    bounds: &SpectralBounds,
) -> Result<OperatorEval> {
    nu.require_convex("the Kantorovich operator refinement")?;
    bounds.certify(a)?;
    bounds.certify(b)?;
    let beta = beta_exponent(nu, depth);
    let h = (bounds.upper / bounds.lower).powf(1.0 / (depth.n() as f64).exp2());
    let factor = if beta == 0.0 { 1.0 } else { kantorovich(h)?.powf(beta) };
    let sched = exponent_schedule(nu, depth)?;
    let weights: Vec<f64> = (1..=depth.n()).map(|j| level_coefficient(nu, j)).collect();
    let v = nu.value();
    let lhs = pair.transfer(|x| {
        let mut acc = factor * x.powf(v);
        for (j, (&s, &alpha)) in weights.iter().zip(&sched.alpha).enumerate() {
            if s > 0.0 {
                let p = alpha / 2.0;
                acc += s * block(x, p, p + (-(j as f64 + 1.0)).exp2());
            }
        }
        acc
    })?;
    let rhs = pair.transfer(|x| v * x + (1.0 - v))?;
    Ok(OperatorEval { lhs, rhs })
}
