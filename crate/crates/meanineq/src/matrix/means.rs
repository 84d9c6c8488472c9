//! Weighted arithmetic and geometric matrix means.

use crate::error::Result;
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::hermitian::{HermitianMatrix, SpdMatrix};
use crate::matrix::jacobi::{hermitian_eigen, spectral_map};

/// Weighted arithmetic mean `(1 - t) A + t B`; Hermitian for any real `t`
/// (negative weights appear in the reversed statements).
pub fn nabla(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    a.scale(1.0 - t).add(&b.scale(t))
}

/// Weighted geometric mean `A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`,
/// defined for every real `t` on strictly positive definite inputs.
pub fn sharp(a: &SpdMatrix, b: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    a.matrix().check_dim(b.matrix())?;
    let a_half = a.power(0.5)?;
    let a_neg_half = a.power(-0.5)?;
    let inner = a_neg_half.matrix().mul(b.matrix())?.mul(a_neg_half.matrix())?.hermitize();
    let (q, lambda) = hermitian_eigen(&inner)?;
    let powered = spectral_map(&q, &lambda, |l| l.powf(t));
    let m = a_half.matrix().mul(&powered)?.mul(a_half.matrix())?.hermitize();
    SpdMatrix::new(HermitianMatrix::new(m)?)
}

/// Congruence `T M T*`.
pub fn congruence(t: &CMatrix, m: &CMatrix) -> Result<CMatrix> {
    t.mul(m)?.mul(&t.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nabla_by_hand() {
        let a = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let b = HermitianMatrix::diagonal(&[3.0, 4.0]);
        let m = nabla(&a, &b, 0.5).unwrap();
        assert!((m.matrix()[(0, 0)].re - 2.0).abs() < 1e-14);
        assert!((m.matrix()[(1, 1)].re - 3.0).abs() < 1e-14);
        // Negative weight leaves the cone but stays Hermitian.
        let m = nabla(&a, &b, -1.0).unwrap();
        assert!((m.matrix()[(0, 0)].re - (-1.0)).abs() < 1e-14);
        assert!((m.matrix()[(1, 1)].re - 0.0).abs() < 1e-14);
        assert!(m.min_eigenvalue().unwrap() < 0.0);
    }

    #[test]
    fn sharp_of_equal_matrices() {
        let a = SpdMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        for t in [-0.5, 0.0, 0.3, 1.0, 2.0] {
            let m = sharp(&a, &a, t).unwrap();
            let err = m.matrix().sub(a.matrix()).unwrap().frobenius_norm();
            assert!(err <= 1e-11 * a.matrix().frobenius_norm(), "t = {t}");
        }
    }

    #[test]
    fn sharp_on_commuting_diagonals() {
        let a = SpdMatrix::diagonal(&[4.0, 9.0]).unwrap();
        let b = SpdMatrix::diagonal(&[1.0, 1.0]).unwrap();
        let m = sharp(&a, &b, 0.5).unwrap();
        assert!((m.matrix()[(0, 0)].re - 2.0).abs() < 1e-12);
        assert!((m.matrix()[(1, 1)].re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sharp_endpoints() {
        let a = SpdMatrix::from_real_rows(&[&[3.0, 1.0], &[1.0, 2.0]]).unwrap();
        let b = SpdMatrix::from_real_rows(&[&[2.0, -0.5], &[-0.5, 1.0]]).unwrap();
        let m0 = sharp(&a, &b, 0.0).unwrap();
        assert!(m0.matrix().sub(a.matrix()).unwrap().frobenius_norm() < 1e-11);
        let m1 = sharp(&a, &b, 1.0).unwrap();
        assert!(m1.matrix().sub(b.matrix()).unwrap().frobenius_norm() < 1e-11);
    }

    #[test]
    fn sharp_two_is_the_parallel_square() {
        // A #_2 B = B A^{-1} B.
        let a = SpdMatrix::from_real_rows(&[&[3.0, 1.0], &[1.0, 2.0]]).unwrap();
        let b = SpdMatrix::from_real_rows(&[&[2.0, -0.5], &[-0.5, 1.0]]).unwrap();
        let lhs = sharp(&a, &b, 2.0).unwrap();
        let a_inv = a.power(-1.0).unwrap();
        let rhs = b.matrix().mul(a_inv.matrix()).unwrap().mul(b.matrix()).unwrap();
        let err = lhs.matrix().sub(&rhs).unwrap().frobenius_norm();
        assert!(err <= 1e-11 * rhs.frobenius_norm());
    }
}
