//! Hermitian and positive (semi)definite matrix types with cached
//! eigendecompositions, plus the Loewner-order certificate.

use crate::error::{Error, Result};
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::jacobi::{hermitian_eigen, spectral_map};

/// Acceptable anti-Hermitian mass relative to the norm on construction.
const SYMMETRIZATION_TOL: f64 = 1e-10;

/// A matrix kept exactly Hermitian by construction.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    m: CMatrix,
}

impl HermitianMatrix {
    /// Wraps a matrix after checking it is Hermitian up to the
    /// symmetrization tolerance, then re-symmetrizes it exactly.
    pub fn new(m: CMatrix) -> Result<Self> {
        let defect = m.hermitian_defect();
        if defect > SYMMETRIZATION_TOL * m.frobenius_norm().max(1.0) {
            return Err(Error::Shape(format!(
                "matrix is not Hermitian (defect {defect:.3e})"
            )));
        }
        Ok(HermitianMatrix { m: m.hermitize() })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        HermitianMatrix::new(CMatrix::from_real_rows(rows)?)
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        HermitianMatrix { m: CMatrix::diagonal(entries) }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianMatrix { m: CMatrix::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix { m: self.m.add(&other.m)?.hermitize() })
    }

    pub fn sub(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix { m: self.m.sub(&other.m)?.hermitize() })
    }

    pub fn scale(&self, factor: f64) -> HermitianMatrix {
        HermitianMatrix { m: self.m.scale(factor) }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.frobenius_norm()
    }

    /// Eigendecomposition `(Q, lambda)` with ascending eigenvalues.
    pub fn eigen(&self) -> Result<(CMatrix, Vec<f64>)> {
        hermitian_eigen(&self.m)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigen()?.1[0])
    }
}

/// Verdict of a Loewner-order comparison `L <= R`.
#[derive(Debug, Clone, Copy)]
pub struct LoewnerVerdict {
    pub holds: bool,
    /// Smallest eigenvalue of `R - L`.
    pub min_eig_of_difference: f64,
    /// Negative threshold the eigenvalue was compared against.
    pub tolerance_used: f64,
}

/// Certifies `L <= R` in the Loewner order with relative tolerance
/// `tol_rel * max(1, ||L||, ||R||)`.
pub fn loewner_leq(
    l: &HermitianMatrix,
    r: &HermitianMatrix,
    tol_rel: f64,
) -> Result<LoewnerVerdict> {
    let diff = r.sub(l)?;
    let min_eig = diff.min_eigenvalue()?;
    let tolerance = tol_rel * l.frobenius_norm().max(r.frobenius_norm()).max(1.0);
    Ok(LoewnerVerdict { holds: min_eig >= -tolerance, min_eig_of_difference: min_eig, tolerance_used: tolerance })
}

/// Normalized margin of a Loewner comparison, aligned with the scalar
/// margin convention: nonnegative iff the order holds exactly.
pub fn loewner_margin(l: &HermitianMatrix, r: &HermitianMatrix) -> Result<f64> {
    let diff = r.sub(l)?;
    let min_eig = diff.min_eigenvalue()?;
    Ok(min_eig / l.frobenius_norm().max(r.frobenius_norm()).max(1.0))
}

/// Strictly positive definite matrix with a cached eigendecomposition.
#[derive(Debug, Clone)]
pub struct SpdMatrix {
    h: HermitianMatrix,
    q: CMatrix,
    lambda: Vec<f64>,
}

impl SpdMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let (q, lambda) = h.eigen()?;
        if lambda[0] <= 0.0 {
            return Err(Error::Definiteness(format!(
                "matrix is not strictly positive definite (min eigenvalue {})",
                lambda[0]
            )));
        }
        Ok(SpdMatrix { h, q, lambda })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        SpdMatrix::new(HermitianMatrix::from_real_rows(rows)?)
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        SpdMatrix::new(HermitianMatrix::diagonal(entries))
    }

    pub fn identity(dim: usize) -> Self {
        SpdMatrix {
            h: HermitianMatrix::identity(dim),
            q: CMatrix::identity(dim),
            lambda: vec![1.0; dim],
        }
    }

    /// Builds directly from spectral data (the factor must be unitary).
    pub(crate) fn from_spectrum(q: CMatrix, lambda: Vec<f64>) -> Result<Self> {
        if lambda.iter().any(|&l| l <= 0.0) {
            return Err(Error::Definiteness("spectrum contains a nonpositive value".into()));
        }
        let m = spectral_map(&q, &lambda, |l| l);
        Ok(SpdMatrix { h: HermitianMatrix { m }, q, lambda })
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn matrix(&self) -> &CMatrix {
        self.h.matrix()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.q
    }

    /// Fractional (or any real) power through the cached spectrum.
    pub fn power(&self, p: f64) -> Result<SpdMatrix> {
        if p == 0.0 {
            return Ok(SpdMatrix::identity(self.dim()));
        }
        let lambda: Vec<f64> = self.lambda.iter().map(|&l| l.powf(p)).collect();
        if lambda.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(Error::Range(format!("power {p} left the double range")));
        }
        let m = spectral_map(&self.q, &self.lambda, |l| l.powf(p));
        Ok(SpdMatrix { h: HermitianMatrix { m }, q: self.q.clone(), lambda })
    }

    /// Spectral bounds `m <= lambda <= M` certified by the cached spectrum.
    pub fn spectrum_range(&self) -> (f64, f64) {
        (self.lambda[0], self.lambda[self.lambda.len() - 1])
    }
}

/// Positive semidefinite matrix; eigenvalues within roundoff of zero are
/// clamped to exactly zero, and fractional powers use `0^p = 0` for `p > 0`
/// with `0^0 = 1` at the spectral level.
#[derive(Debug, Clone)]
pub struct PsdMatrix {
    h: HermitianMatrix,
    q: CMatrix,
    lambda: Vec<f64>,
}

impl PsdMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let (q, lambda) = h.eigen()?;
        let scale = lambda.last().copied().unwrap_or(0.0).abs().max(1.0);
        if lambda[0] < -1e-12 * scale {
            return Err(Error::Definiteness(format!(
                "matrix is not positive semidefinite (min eigenvalue {})",
                lambda[0]
            )));
        }
        let lambda: Vec<f64> = lambda.into_iter().map(|l| l.max(0.0)).collect();
        Ok(PsdMatrix { h, q, lambda })
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        PsdMatrix::new(HermitianMatrix::diagonal(entries))
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn matrix(&self) -> &CMatrix {
        self.h.matrix()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.q
    }

    /// `A^p` with the zero-eigenvalue conventions above.
    pub fn power(&self, p: f64) -> Result<PsdMatrix> {
        let map = |l: f64| psd_pow(l, p);
        let lambda: Vec<f64> = self.lambda.iter().map(|&l| map(l)).collect();
        if lambda.iter().any(|l| !l.is_finite()) {
            return Err(Error::Range(format!("power {p} left the double range")));
        }
        let m = spectral_map(&self.q, &self.lambda, map);
        Ok(PsdMatrix { h: HermitianMatrix { m }, q: self.q.clone(), lambda })
    }
}

impl From<SpdMatrix> for PsdMatrix {
    fn from(spd: SpdMatrix) -> Self {
        PsdMatrix { h: spd.h, q: spd.q, lambda: spd.lambda }
    }
}

/// Scalar power on the PSD spectrum: `0^0 = 1`, `0^p = 0` for `p > 0`.
pub fn psd_pow(l: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else if l == 0.0 {
        0.0
    } else {
        l.powf(p)
    }
}

/// Two-sided spectral bounds `m I <= A <= M I`.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct SpectralBounds {
    pub lower: f64,
    pub upper: f64,
}

impl SpectralBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0) || !(upper >= lower) || !upper.is_finite() {
            return Err(Error::domain(format!(
                "spectral bounds need 0 < m <= M, got ({lower}, {upper})"
            )));
        }
        Ok(SpectralBounds { lower, upper })
    }

    /// Checks that the bounds certify every eigenvalue of `a`.
    pub fn certify(&self, a: &SpdMatrix) -> Result<()> {
        let (lo, hi) = a.spectrum_range();
        let slack = 1e-12 * hi.max(1.0);
        if lo < self.lower - slack || hi > self.upper + slack {
            return Err(Error::Precondition(format!(
                "bounds [{}, {}] do not certify spectrum [{lo}, {hi}]",
                self.lower, self.upper
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn power_of_diagonal() {
        let a = SpdMatrix::diagonal(&[4.0, 9.0]).unwrap();
        let root = a.power(0.5).unwrap();
        assert!((root.matrix()[(0, 0)].re - 2.0).abs() < 1e-12);
        assert!((root.matrix()[(1, 1)].re - 3.0).abs() < 1e-12);
        assert!(root.matrix()[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn power_zero_is_identity() {
        let a = SpdMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let id = a.power(0.0).unwrap();
        let defect = id.matrix().sub(&CMatrix::identity(2)).unwrap().frobenius_norm();
        assert!(defect < 1e-12);
    }

    #[test]
    fn power_composes() {
        let a = SpdMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let via_half = a.power(0.5).unwrap().power(3.0).unwrap();
        let direct = a.power(1.5).unwrap();
        let err = via_half.matrix().sub(direct.matrix()).unwrap().frobenius_norm();
        assert!(err <= 1e-12 * direct.matrix().frobenius_norm());
    }

    #[test]
    fn square_by_hand() {
        let a = SpdMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let sq = a.power(2.0).unwrap();
        assert!((sq.matrix()[(0, 0)].re - 5.0).abs() < 1e-12);
        assert!((sq.matrix()[(0, 1)].re - 4.0).abs() < 1e-12);
    }

    #[test]
    fn indefinite_rejected() {
        let h = HermitianMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -0.5]]).unwrap();
        assert!(matches!(SpdMatrix::new(h), Err(Error::Definiteness(_))));
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::Shape(_))));
    }

    #[test]
    fn loewner_examples() {
        let a = HermitianMatrix::diagonal(&[1.0, 1.0]);
        let b = HermitianMatrix::diagonal(&[2.0, 1.0]);
        let v = loewner_leq(&a, &b, 1e-10).unwrap();
        assert!(v.holds);
        assert!(v.min_eig_of_difference.abs() < 1e-14);
        let v = loewner_leq(&b, &a, 1e-10).unwrap();
        assert!(!v.holds);
        assert!((v.min_eig_of_difference + 1.0).abs() < 1e-13);
        let v = loewner_leq(&a, &a, 1e-10).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn psd_zero_eigenvalue_powers() {
        let a = PsdMatrix::diagonal(&[0.0, 4.0]).unwrap();
        let h = a.power(0.5).unwrap();
        assert_eq!(h.eigenvalues()[0], 0.0);
        assert!((h.eigenvalues()[1] - 2.0).abs() < 1e-12);
        let id = a.power(0.0).unwrap();
        assert!((id.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bounds_certification() {
        let a = SpdMatrix::diagonal(&[1.0, 3.0]).unwrap();
        assert!(SpectralBounds::new(1.0, 3.0).unwrap().certify(&a).is_ok());
        assert!(SpectralBounds::new(0.5, 10.0).unwrap().certify(&a).is_ok());
        assert!(SpectralBounds::new(2.0, 3.0).unwrap().certify(&a).is_err());
        assert!(SpectralBounds::new(0.0, 1.0).is_err());
    }
}
