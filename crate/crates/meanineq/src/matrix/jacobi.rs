//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation factors the phase out of the pivot entry and applies the
//! classical real Givens rotation to the remaining 2x2 symmetric block, so
//! the method inherits the unconditional stability of real Jacobi. Matrices
//! here are tiny, making the O(n^3)-per-sweep cost irrelevant.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::cmatrix::CMatrix;

/// Convergence: off-diagonal Frobenius mass below this multiple of the norm.
const OFF_DIAG_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(h: &CMatrix) -> f64 {
    let n = h.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += h[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigendecomposition `H = Q diag(lambda) Q*` of a Hermitian matrix, with
/// eigenvalues sorted ascending.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(CMatrix, Vec<f64>)> {
    let n = h.dim();
    if n == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    let mut work = h.hermitize();
    let mut q = CMatrix::identity(n);
    let scale = work.frobenius_norm();
    if scale == 0.0 {
        return Ok((q, vec![0.0; n]));
    }

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&work) <= OFF_DIAG_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for qq in (p + 1)..n {
                rotate(&mut work, &mut q, p, qq);
            }
        }
    }
    if !converged && off_diagonal_norm(&work) > OFF_DIAG_TOL * scale {
        return Err(Error::Accuracy(format!(
            "Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal {:.3e})",
            off_diagonal_norm(&work)
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let lambda_raw: Vec<f64> = (0..n).map(|i| work[(i, i)].re).collect();
    order.sort_by(|&i, &j| lambda_raw[i].total_cmp(&lambda_raw[j]));
    let lambda: Vec<f64> = order.iter().map(|&i| lambda_raw[i]).collect();
    let q_sorted = CMatrix::from_fn(n, |i, j| q[(i, order[j])]);
    Ok((q_sorted, lambda))
}

/// One Jacobi rotation zeroing the pivot `(p, q)`.
fn rotate(h: &mut CMatrix, acc: &mut CMatrix, p: usize, q: usize) {
    let pivot = h[(p, q)];
    let g = pivot.norm();
    if g == 0.0 {
        return;
    }
    let phase = pivot / g; // e^{i phi}
    let tau = (h[(q, q)].re - h[(p, p)].re) / (2.0 * g);
    // Smaller root of t^2 - 2 tau t - 1 = 0.
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = h.dim();

    // H <- H J with J = [[c, -s], [conj(phase) s, conj(phase) c]] on (p, q).
    let phase_conj = phase.conj();
    for k in 0..n {
        let hp = h[(k, p)];
        let hq = h[(k, q)];
        h[(k, p)] = hp * c + hq * (phase_conj * s);
        h[(k, q)] = hp * (-s) + hq * (phase_conj * c);
    }
    // H <- J* H.
    for k in 0..n {
        let hp = h[(p, k)];
        let hq = h[(q, k)];
        h[(p, k)] = hp * c + hq * (phase * s);
        h[(q, k)] = hp * (-s) + hq * (phase * c);
    }
    // Pivot is now zero analytically; make it exact and keep the diagonal real.
    h[(p, q)] = Complex64::ZERO;
    h[(q, p)] = Complex64::ZERO;
    h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
    h[(q, q)] = Complex64::new(h[(q, q)].re, 0.0);

    for k in 0..n {
        let qp = acc[(k, p)];
        let qq = acc[(k, q)];
        acc[(k, p)] = qp * c + qq * (phase_conj * s);
        acc[(k, q)] = qp * (-s) + qq * (phase_conj * c);
    }
}

/// `Q f(diag) Q*` for a spectral function `f`.
pub fn spectral_map(q: &CMatrix, lambda: &[f64], f: impl Fn(f64) -> f64) -> CMatrix {
    let n = q.dim();
    let mapped: Vec<f64> = lambda.iter().map(|&l| f(l)).collect();
    let mut out = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += q[(i, k)] * mapped[k] * q[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    out.hermitize()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_is_fixed_point() {
        let m = CMatrix::diagonal(&[1.0, 2.0]);
        let (q, lambda) = hermitian_eigen(&m).unwrap();
        assert_eq!(lambda, vec![1.0, 2.0]);
        // Q is the identity up to column phases.
        for i in 0..2 {
            assert!((q[(i, i)].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_by_two_by_hand() {
        let m = CMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let (_, lambda) = hermitian_eigen(&m).unwrap();
        assert!((lambda[0] - 1.0).abs() < 1e-13);
        assert!((lambda[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let (_, lambda) = hermitian_eigen(&CMatrix::identity(5)).unwrap();
        assert!(lambda.iter().all(|&l| (l - 1.0).abs() < 1e-14));
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let mut m = CMatrix::identity(3);
        m[(0, 1)] = Complex64::new(0.3, 0.7);
        m[(1, 0)] = Complex64::new(0.3, -0.7);
        m[(1, 2)] = Complex64::new(-1.1, 0.2);
        m[(2, 1)] = Complex64::new(-1.1, -0.2);
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        let (q, lambda) = hermitian_eigen(&m).unwrap();
        let rebuilt = spectral_map(&q, &lambda, |l| l);
        let err = rebuilt.sub(&m).unwrap().frobenius_norm();
        assert!(err <= 1e-12 * m.frobenius_norm(), "residual {err}");
        // Unitarity of Q.
        let qtq = q.adjoint().mul(&q).unwrap();
        let defect = qtq.sub(&CMatrix::identity(3)).unwrap().frobenius_norm();
        assert!(defect < 1e-12);
    }

    #[test]
    fn ascending_order() {
        let m = CMatrix::diagonal(&[5.0, -2.0, 3.0, 0.5]);
        let (_, lambda) = hermitian_eigen(&m).unwrap();
        assert_eq!(lambda, vec![-2.0, 0.5, 3.0, 5.0]);
    }
}
