//! Property suites for the dense Hermitian kernel and the matrix means.

use meanineq::matrix::{
    congruence, hermitian_eigen, loewner_leq, nabla, random_matrix, random_spd, random_unitary,
    sharp, CMatrix, HermitianMatrix, SpdMatrix,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng, complex: bool) -> CMatrix {
    random_matrix(dim, rng, complex).hermitize()
}

#[test]
fn eigen_reconstructs_random_hermitian() {
    let mut rng = rng(101);
    for dim in [1usize, 2, 3, 5, 8, 12] {
        for complex in [false, true] {
            let h = random_hermitian(dim, &mut rng, complex);
            let (q, lambda) = hermitian_eigen(&h).unwrap();
            let rebuilt = meanineq::matrix::spectral_map(&q, &lambda, |l| l);
            let err = rebuilt.sub(&h).unwrap().frobenius_norm();
            assert!(
                err <= 1e-12 * h.frobenius_norm().max(1.0),
                "dim {dim} complex {complex}: residual {err}"
            );
            let qs = q.adjoint().mul(&q).unwrap();
            let unit_err = qs.sub(&CMatrix::identity(dim)).unwrap().frobenius_norm();
            assert!(unit_err <= 1e-12, "unitarity defect {unit_err}");
            assert!(lambda.windows(2).all(|w| w[0] <= w[1]), "not sorted");
        }
    }
}

#[test]
fn powers_compose_and_invert() {
    let mut rng = rng(55);
    for _ in 0..16 {
        let a = random_spd(5, &mut rng, (0.05, 20.0), true).unwrap();
        let half = a.power(0.5).unwrap();
        let recombined = half.matrix().mul(half.matrix()).unwrap();
        let err = recombined.sub(a.matrix()).unwrap().frobenius_norm();
        assert!(err <= 1e-11 * a.matrix().frobenius_norm());

        let inv = a.power(-1.0).unwrap();
        let id = inv.matrix().mul(a.matrix()).unwrap();
        let err = id.sub(&CMatrix::identity(5)).unwrap().frobenius_norm();
        assert!(err <= 1e-10, "inverse residual {err}");
    }
}

#[test]
fn results_stay_hermitian() {
    let mut rng = rng(7);
    for _ in 0..12 {
        let a = random_spd(4, &mut rng, (0.1, 10.0), true).unwrap();
        let b = random_spd(4, &mut rng, (0.1, 10.0), true).unwrap();
        for t in [-0.7, 0.3, 1.6] {
            let m = sharp(&a, &b, t).unwrap();
            let defect = m.matrix().hermitian_defect();
            assert!(defect <= 1e-13 * m.matrix().frobenius_norm().max(1.0));
        }
    }
}

#[test]
fn sharp_weight_reversal() {
    let mut rng = rng(23);
    for _ in 0..12 {
        let a = random_spd(4, &mut rng, (0.1, 10.0), true).unwrap();
        let b = random_spd(4, &mut rng, (0.1, 10.0), true).unwrap();
        for t in [0.0, 0.25, 0.61, 1.0] {
            let lhs = sharp(&a, &b, t).unwrap();
            let rhs = sharp(&b, &a, 1.0 - t).unwrap();
            let err = lhs.matrix().sub(rhs.matrix()).unwrap().frobenius_norm();
            assert!(
                err <= 1e-11 * lhs.matrix().frobenius_norm().max(1.0),
                "t = {t}: deviation {err}"
            );
        }
    }
}

#[test]
fn sharp_is_congruence_covariant() {
    let mut rng = rng(31);
    for dim in [2usize, 4, 8] {
        let a = random_spd(dim, &mut rng, (0.1, 10.0), true).unwrap();
        let b = random_spd(dim, &mut rng, (0.1, 10.0), true).unwrap();
        // Random invertible transform: unitary times a positive diagonal.
        let u = random_unitary(dim, &mut rng, true);
        let d = random_spd(dim, &mut rng, (0.5, 2.0), false).unwrap();
        let t = u.mul(d.matrix()).unwrap();

        let inner = sharp(&a, &b, 0.37).unwrap();
        let lhs = congruence(&t, inner.matrix()).unwrap();

        let ta = SpdMatrix::new(HermitianMatrix::new(congruence(&t, a.matrix()).unwrap()).unwrap())
            .unwrap();
        let tb = SpdMatrix::new(HermitianMatrix::new(congruence(&t, b.matrix()).unwrap()).unwrap())
            .unwrap();
        let rhs = sharp(&ta, &tb, 0.37).unwrap();

        let err = lhs.sub(rhs.matrix()).unwrap().frobenius_norm();
        assert!(
            err <= 1e-10 * rhs.matrix().frobenius_norm().max(1.0),
            "dim {dim}: covariance defect {err}"
        );
    }
}

#[test]
fn nabla_midpoint_against_hand_values() {
    let a = HermitianMatrix::diagonal(&[1.0, 2.0]);
    let b = HermitianMatrix::diagonal(&[3.0, 4.0]);
    let mid = nabla(&a, &b, 0.5).unwrap();
    assert_eq!(mid.matrix()[(0, 0)].re, 2.0);
    assert_eq!(mid.matrix()[(1, 1)].re, 3.0);
}

#[test]
fn loewner_tolerance_scales_with_norm() {
    // A tiny relative perturbation of a large matrix must not flip the
    // verdict.
    let big = HermitianMatrix::diagonal(&[1e8, 2e8]);
    let nudged = HermitianMatrix::diagonal(&[1e8 + 1.0, 2e8]);
    let verdict = loewner_leq(&nudged, &big, 1e-7).unwrap();
    assert!(verdict.holds, "relative tolerance should absorb the nudge");
    let strict = loewner_leq(&nudged, &big, 1e-12).unwrap();
    assert!(!strict.holds);
}

#[test]
fn random_spd_is_reproducible_and_in_range() {
    let a = meanineq::matrix::random_spd_seeded(6, 2024, (0.01, 100.0), true).unwrap();
    let b = meanineq::matrix::random_spd_seeded(6, 2024, (0.01, 100.0), true).unwrap();
    assert_eq!(a.matrix(), b.matrix());
    let (lo, hi) = a.spectrum_range();
    assert!(lo >= 0.01 - 1e-10 && hi <= 100.0 + 1e-7);
}
