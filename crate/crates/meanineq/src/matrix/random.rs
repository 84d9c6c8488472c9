//! Seeded random matrices for the verification suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::hermitian::{PsdMatrix, SpdMatrix};

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller; avoids a dependency on rand_distr.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn gaussian_entry(rng: &mut impl Rng, complex: bool) -> Complex64 {
    if complex {
        Complex64::new(gaussian(rng), gaussian(rng))
    } else {
        Complex64::new(gaussian(rng), 0.0)
    }
}

/// Dense Gaussian matrix, complex or real.
pub fn random_matrix(dim: usize, rng: &mut impl Rng, complex: bool) -> CMatrix {
    CMatrix::from_fn(dim, |_, _| gaussian_entry(rng, complex))
}

/// Haar-like random unitary via Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng, complex: bool) -> CMatrix {
    loop {
        let g = random_matrix(dim, rng, complex);
        if let Some(q) = gram_schmidt_columns(&g) {
            return q;
        }
    }
}

fn gram_schmidt_columns(g: &CMatrix) -> Option<CMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 =
                (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let correction = proj * cols[k][i];
                cols[j][i] -= correction;
            }
        }
        let norm: f64 = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None; // numerically dependent draw; retry
        }
        for i in 0..n {
            cols[j][i] /= norm;
        }
    }
    Some(CMatrix::from_fn(n, |i, j| cols[j][i]))
}

/// Eigenvalues log-uniform in `[lo, hi]`.
fn log_uniform_spectrum(
    dim: usize,
    rng: &mut impl Rng,
    (lo, hi): (f64, f64),
) -> Result<Vec<f64>> {
    if !(lo > 0.0) || !(hi >= lo) || !hi.is_finite() {
        return Err(Error::domain(format!("invalid eigenvalue range ({lo}, {hi})")));
    }
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    Ok((0..dim)
        .map(|_| {
            if ln_hi == ln_lo {
                lo
            } else {
                rng.gen_range(ln_lo..=ln_hi).exp()
            }
        })
        .collect())
}

/// Random strictly positive definite matrix with log-uniform spectrum in
/// `eig_range`, conjugated by a random unitary.
pub fn random_spd(
    dim: usize,
    rng: &mut impl Rng,
    eig_range: (f64, f64),
    complex: bool,
) -> Result<SpdMatrix> {
    let mut lambda = log_uniform_spectrum(dim, rng, eig_range)?;
    lambda.sort_by(f64::total_cmp);
    let q = random_unitary(dim, rng, complex);
    SpdMatrix::from_spectrum(q, lambda)
}

/// Random positive semidefinite matrix; each eigenvalue is zeroed with
/// probability `zero_prob`.
pub fn random_psd(
    dim: usize,
    rng: &mut impl Rng,
    eig_range: (f64, f64),
    complex: bool,
    zero_prob: f64,
) -> Result<PsdMatrix> {
    let mut lambda = log_uniform_spectrum(dim, rng, eig_range)?;
    for l in &mut lambda {
        if rng.gen_bool(zero_prob) {
            *l = 0.0;
        }
    }
    lambda.sort_by(f64::total_cmp);
    let q = random_unitary(dim, rng, complex);
    let m = crate::matrix::jacobi::spectral_map(&q, &lambda, |l| l);
    PsdMatrix::new(crate::matrix::hermitian::HermitianMatrix::new(m)?)
}

/// Deterministic convenience wrapper keyed by a single seed.
pub fn random_spd_seeded(
    dim: usize,
    seed: u64,
    eig_range: (f64, f64),
    complex: bool,
) -> Result<SpdMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_spd(dim, &mut rng, eig_range, complex)
}
