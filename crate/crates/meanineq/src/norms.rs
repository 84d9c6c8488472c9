//! Unitarily invariant norms of the Schatten / Ky Fan family, computed
//! through singular values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::jacobi::hermitian_eigen;

/// Norm selector. All members are unitarily invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NormKind {
    /// `(sum sigma_i^p)^{1/p}` for `p >= 1`.
    Schatten(f64),
    /// Sum of the `k` largest singular values, `1 <= k <= dim`.
    KyFan(usize),
    /// Largest singular value.
    Spectral,
    /// Sum of all singular values.
    Trace,
    /// `sqrt(sum sigma_i^2)`, equal to the entrywise 2-norm.
    Frobenius,
}

impl std::fmt::Display for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormKind::Schatten(p) => write!(f, "schatten({p})"),
            NormKind::KyFan(k) => write!(f, "ky-fan({k})"),
            NormKind::Spectral => write!(f, "spectral"),
            NormKind::Trace => write!(f, "trace"),
            NormKind::Frobenius => write!(f, "frobenius"),
        }
    }
}

/// Singular values in descending order, via the spectrum of `X* X`.
pub fn singular_values(x: &CMatrix) -> Result<Vec<f64>> {
    let gram = x.adjoint().mul(x)?.hermitize();
    let (_, lambda) = hermitian_eigen(&gram)?;
    let mut sigma: Vec<f64> = lambda.into_iter().map(|l| l.max(0.0).sqrt()).collect();
    sigma.reverse();
    Ok(sigma)
}

/// Evaluates the selected unitarily invariant norm.
pub fn norm(x: &CMatrix, kind: &NormKind) -> Result<f64> {
    let sigma = singular_values(x)?;
    match *kind {
        NormKind::Schatten(p) => {
            if !(p >= 1.0) || !p.is_finite() {
                return Err(Error::domain(format!("Schatten norm needs p >= 1, got {p}")));
            }
            Ok(sigma.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p))
        }
        NormKind::KyFan(k) => {
            if k == 0 || k > sigma.len() {
                return Err(Error::domain(format!(
                    "Ky Fan norm needs 1 <= k <= {}, got {k}",
                    sigma.len()
                )));
            }
            Ok(sigma[..k].iter().sum())
        }
        NormKind::Spectral => Ok(sigma[0]),
        NormKind::Trace => Ok(sigma.iter().sum()),
        NormKind::Frobenius => Ok(x.frobenius_norm()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_values() {
        let x = CMatrix::diagonal(&[3.0, 4.0]);
        assert!((norm(&x, &NormKind::Frobenius).unwrap() - 5.0).abs() < 1e-12);
        assert!((norm(&x, &NormKind::Spectral).unwrap() - 4.0).abs() < 1e-12);
        assert!((norm(&x, &NormKind::Trace).unwrap() - 7.0).abs() < 1e-12);
        assert!((norm(&x, &NormKind::KyFan(1)).unwrap() - 4.0).abs() < 1e-12);
        assert!((norm(&x, &NormKind::Schatten(2.0)).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters() {
        let x = CMatrix::identity(2);
        assert!(norm(&x, &NormKind::Schatten(0.5)).is_err());
        assert!(norm(&x, &NormKind::KyFan(0)).is_err());
        assert!(norm(&x, &NormKind::KyFan(3)).is_err());
    }

    #[test]
    fn triangle_inequality_spot_check() {
        use crate::matrix::random::random_matrix;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for kind in [NormKind::Schatten(3.0), NormKind::KyFan(2), NormKind::Spectral] {
            let a = random_matrix(4, &mut rng, true);
            let b = random_matrix(4, &mut rng, true);
            let lhs = norm(&a.add(&b).unwrap(), &kind).unwrap();
            let rhs = norm(&a, &kind).unwrap() + norm(&b, &kind).unwrap();
            assert!(lhs <= rhs + 1e-10 * rhs.max(1.0), "{kind}");
        }
    }
}
