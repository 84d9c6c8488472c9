//! Norm and log-convex layer properties: unitary invariance, envelope
//! convergence and the chain ordering.

use meanineq::logconvex::{grid_envelope, logconvex_chain, logconvex_refined, LogConvexFunctional};
use meanineq::matrix::{random_matrix, random_psd, random_spd, random_unitary};
use meanineq::norms::{norm, NormKind};
use meanineq::scalar::{RefinementDepth, Weight};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn w(v: f64) -> Weight {
    Weight::new(v).unwrap()
}

fn d(n: u32) -> RefinementDepth {
    RefinementDepth::new(n).unwrap()
}

const KINDS: [NormKind; 6] = [
    NormKind::Frobenius,
    NormKind::Trace,
    NormKind::Spectral,
    NormKind::Schatten(1.5),
    NormKind::Schatten(4.0),
    NormKind::KyFan(2),
];

#[test]
fn norms_are_unitarily_invariant() {
    let mut rng = rng(2000);
    for _ in 0..12 {
        let dim = rng.gen_range(2..=6);
        let x = random_matrix(dim, &mut rng, true);
        let u = random_unitary(dim, &mut rng, true);
        let v = random_unitary(dim, &mut rng, true);
        let rotated = u.mul(&x).unwrap().mul(&v).unwrap();
        for kind in KINDS {
            if matches!(kind, NormKind::KyFan(k) if k > dim) {
                continue;
            }
            let base = norm(&x, &kind).unwrap();
            let rot = norm(&rotated, &kind).unwrap();
            assert!(
                (base - rot).abs() <= 1e-11 * base.max(1.0),
                "{kind} not invariant: {base} vs {rot}"
            );
        }
    }
}

#[test]
fn envelope_converges_to_the_functional() {
    let mut rng = rng(300);
    for which in 1u8..=4 {
        let a = random_spd(4, &mut rng, (0.2, 5.0), true).unwrap().into();
        let b = random_spd(4, &mut rng, (0.2, 5.0), true).unwrap().into();
        let x = random_matrix(4, &mut rng, true);
        let f = meanineq::logconvex::build_functional(NormKind::Trace, &a, &b, &x, which).unwrap();
        let nu = w(rng.gen_range(0.05..0.95));
        let fv = f.eval(nu.value()).unwrap();
        let mut prev = f64::INFINITY;
        for n in 1..=12 {
            let g = grid_envelope(&f, &nu, d(n)).unwrap();
            assert!(g <= prev * (1.0 + 1e-11), "envelope grew at depth {n}");
            assert!(g >= fv * (1.0 - 1e-11), "envelope fell below f at depth {n}");
            prev = g;
        }
        assert!(
            (prev - fv).abs() <= 1e-3 * fv,
            "functional {which}: envelope at depth 12 still {prev} vs {fv}"
        );
    }
}

#[test]
fn chain_holds_across_random_functionals() {
    let mut rng = rng(999);
    for i in 0..200 {
        let f: LogConvexFunctional = if i % 4 == 0 {
            LogConvexFunctional::log_affine(rng.gen_range(-3.0..3.0))
        } else {
            let which = rng.gen_range(1u8..=4);
            let a = random_psd(3, &mut rng, (0.3, 4.0), true, 0.0).unwrap();
            let b = random_psd(3, &mut rng, (0.3, 4.0), true, 0.0).unwrap();
            let x = random_matrix(3, &mut rng, true);
            meanineq::logconvex::build_functional(NormKind::Frobenius, &a, &b, &x, which).unwrap()
        };
        let nu = w(rng.gen_range(0.0..=1.0));
        let n = d(rng.gen_range(1..=5));
        let c = logconvex_chain(&f, &nu, n).unwrap();
        let tol = 1e-10 * c.v4.abs().max(1.0);
        assert!(c.v1 <= c.v2 + tol, "v1 > v2: {c:?}");
        assert!(c.v2 <= c.v3 + tol, "v2 > v3: {c:?}");
        assert!(c.v3 <= c.v4 + tol, "v3 > v4: {c:?}");
    }
}

#[test]
fn refined_bound_holds_across_norm_kinds() {
    let mut rng = rng(31337);
    for kind in KINDS {
        for which in 1u8..=4 {
            let dim = 3;
            let a = random_psd(dim, &mut rng, (0.2, 5.0), true, 0.0).unwrap();
            let b = random_psd(dim, &mut rng, (0.2, 5.0), true, 0.0).unwrap();
            let x = random_matrix(dim, &mut rng, true);
            let f = meanineq::logconvex::build_functional(kind, &a, &b, &x, which).unwrap();
            let t = w(rng.gen_range(0.0..=1.0));
            let (lhs, mid, rhs) = logconvex_refined(&f, &t, d(3)).unwrap();
            assert!(lhs <= mid + 1e-10 * mid.abs().max(1.0), "{kind}/{which}");
            assert!(mid <= rhs + 1e-10 * rhs.abs().max(1.0), "{kind}/{which}");
        }
    }
}

#[test]
fn builtins_pass_the_log_convexity_spot_check() {
    let mut rng = rng(17);
    for which in 1u8..=4 {
        let a = random_psd(4, &mut rng, (0.1, 8.0), true, 0.1).unwrap();
        let b = random_psd(4, &mut rng, (0.1, 8.0), true, 0.1).unwrap();
        let x = random_matrix(4, &mut rng, true);
        let f =
            meanineq::logconvex::build_functional(NormKind::Trace, &a, &b, &x, which).unwrap();
        f.spot_check_log_convexity().unwrap();
    }
}
