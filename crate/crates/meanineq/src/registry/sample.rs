//! Shared instance samplers.
//!
//! All randomness flows through a per-trial `ChaCha8Rng`, derived from the
//! suite seed, the entry id and the trial index, so suites are reproducible
//! across runs and platforms and trials are independent.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::cmatrix::CMatrix;
use crate::matrix::random::{random_matrix, random_psd, random_spd};
use crate::norms::NormKind;
use crate::registry::instance::{FunctionalSpec, TrialInstance};

/// Sampler configuration shared by a suite run.
#[derive(Debug, Clone)]
pub struct SampleCfg {
    pub dims: Vec<usize>,
    pub depth_max: u32,
}

impl Default for SampleCfg {
    fn default() -> Self {
        SampleCfg { dims: vec![2, 3, 4, 8], depth_max: 4 }
    }
}

/// Weight probes forced into the first trials of every entry; they sit on
/// the branch seams and endpoints where the statements switch formulas.
pub const WEIGHT_PROBES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for byte in s.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Independent per-trial generator.
pub fn trial_rng(seed: u64, entry_id: &str, trial: u32) -> ChaCha8Rng {
    let mixed = splitmix(seed ^ splitmix(fnv1a(entry_id)) ^ splitmix(trial as u64));
    ChaCha8Rng::seed_from_u64(mixed)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}

/// Weight in `[0, 1]`: the probe when forced, otherwise uniform with an
/// occasional exact dyadic draw.
pub fn sample_weight(rng: &mut ChaCha8Rng, probe: Option<f64>) -> f64 {
    if let Some(p) = probe {
        return p;
    }
    if rng.gen_bool(0.125) {
        let m = rng.gen_range(1u32..=6);
        let p = rng.gen_range(0u64..=(1u64 << m));
        p as f64 / (m as f64).exp2()
    } else {
        rng.gen_range(0.0..=1.0)
    }
}

fn sample_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (log_uniform(rng, 1e-3, 1e3), log_uniform(rng, 1e-3, 1e3))
}

fn depth_in(rng: &mut ChaCha8Rng, lo: u32, hi: u32) -> u32 {
    rng.gen_range(lo..=hi.max(lo))
}

fn dim_of(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> usize {
    cfg.dims[rng.gen_range(0..cfg.dims.len())]
}

/// Scalar instance with weight in `[0, 1]`.
pub fn scalar_unit(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let (a, b) = sample_pair(rng);
    let nu = sample_weight(rng, probe);
    TrialInstance::Scalar { nu, a, b, depth: depth_in(rng, 1, cfg.depth_max), second_depth: None }
}

/// Scalar instance with depth at least 2 (squared statements).
pub fn scalar_unit_deep(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let (a, b) = sample_pair(rng);
    let nu = sample_weight(rng, probe);
    TrialInstance::Scalar {
        nu,
        a,
        b,
        depth: depth_in(rng, 2, cfg.depth_max.max(2)),
        second_depth: None,
    }
}

/// Scalar instance with two refinement depths (chained statements).
pub fn scalar_unit_double(
    rng: &mut ChaCha8Rng,
    cfg: &SampleCfg,
    probe: Option<f64>,
) -> TrialInstance {
    let (a, b) = sample_pair(rng);
    let nu = sample_weight(rng, probe);
    TrialInstance::Scalar {
        nu,
        a,
        b,
        depth: depth_in(rng, 1, cfg.depth_max),
        second_depth: Some(depth_in(rng, 1, cfg.depth_max)),
    }
}

/// Chained squared statements need the first depth to be at least 2.
pub fn scalar_unit_double_deep(
    rng: &mut ChaCha8Rng,
    cfg: &SampleCfg,
    probe: Option<f64>,
) -> TrialInstance {
    let (a, b) = sample_pair(rng);
    let nu = sample_weight(rng, probe);
    TrialInstance::Scalar {
        nu,
        a,
        b,
        depth: depth_in(rng, 2, cfg.depth_max.max(2)),
        second_depth: Some(depth_in(rng, 1, cfg.depth_max)),
    }
}

/// Scalar instance with weight in `[0, 2]` for the extended reverses; the
/// pair range is narrowed so that `a^{1+nu} b^{-nu}` stays representable.
pub fn scalar_extended(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let a = log_uniform(rng, 1e-2, 1e2);
    let b = log_uniform(rng, 1e-2, 1e2);
    let nu = probe.unwrap_or_else(|| rng.gen_range(0.0..=2.0));
    TrialInstance::Scalar { nu, a, b, depth: depth_in(rng, 1, cfg.depth_max), second_depth: None }
}

fn spd_pair(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> (usize, CMatrix, CMatrix) {
    let dim = dim_of(rng, cfg);
    let complex = rng.gen_bool(0.5);
    let a = random_spd(dim, rng, (0.1, 10.0), complex).expect("valid range");
    let b = random_spd(dim, rng, (0.1, 10.0), complex).expect("valid range");
    (dim, a.matrix().clone(), b.matrix().clone())
}

/// Operator instance with weight in `[0, 1]`.
pub fn operator_unit(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let (_, a, b) = spd_pair(rng, cfg);
    TrialInstance::Operator {
        nu: sample_weight(rng, probe),
        depth: depth_in(rng, 1, cfg.depth_max),
        a,
        b,
        bounds: None,
    }
}

/// Operator instance with depth >= 2.
pub fn operator_unit_deep(
    rng: &mut ChaCha8Rng,
    cfg: &SampleCfg,
    probe: Option<f64>,
) -> TrialInstance {
    let (_, a, b) = spd_pair(rng, cfg);
    TrialInstance::Operator {
        nu: sample_weight(rng, probe),
        depth: depth_in(rng, 2, cfg.depth_max.max(2)),
        a,
        b,
        bounds: None,
    }
}

/// Operator instance with weight in `[0, 2]`.
pub fn operator_extended(
    rng: &mut ChaCha8Rng,
    cfg: &SampleCfg,
    probe: Option<f64>,
) -> TrialInstance {
    let dim = dim_of(rng, cfg);
    let complex = rng.gen_bool(0.5);
    let a = random_spd(dim, rng, (0.25, 4.0), complex).expect("valid range");
    let b = random_spd(dim, rng, (0.25, 4.0), complex).expect("valid range");
    TrialInstance::Operator {
        nu: probe.unwrap_or_else(|| rng.gen_range(0.0..=2.0)),
        depth: depth_in(rng, 1, cfg.depth_max),
        a: a.matrix().clone(),
        b: b.matrix().clone(),
        bounds: None,
    }
}

/// Operator instance carrying tight spectral bounds over both factors.
pub fn operator_bounded(
    rng: &mut ChaCha8Rng,
    cfg: &SampleCfg,
    probe: Option<f64>,
) -> TrialInstance {
    let dim = dim_of(rng, cfg);
    let complex = rng.gen_bool(0.5);
    let a = random_spd(dim, rng, (0.1, 10.0), complex).expect("valid range");
    let b = random_spd(dim, rng, (0.1, 10.0), complex).expect("valid range");
    let (a_lo, a_hi) = a.spectrum_range();
    let (b_lo, b_hi) = b.spectrum_range();
    let bounds = crate::matrix::hermitian::SpectralBounds::new(a_lo.min(b_lo), a_hi.max(b_hi))
        .expect("positive spectra");
    TrialInstance::Operator {
        nu: sample_weight(rng, probe),
        depth: depth_in(rng, 1, cfg.depth_max),
        a: a.matrix().clone(),
        b: b.matrix().clone(),
        bounds: Some(bounds),
    }
}

fn psd_triple(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> (CMatrix, CMatrix, CMatrix) {
    let dim = dim_of(rng, cfg);
    let complex = rng.gen_bool(0.5);
    let a = random_psd(dim, rng, (0.1, 10.0), complex, 0.15).expect("valid range");
    let b = random_psd(dim, rng, (0.1, 10.0), complex, 0.15).expect("valid range");
    let x = random_matrix(dim, rng, complex);
    (a.matrix().clone(), b.matrix().clone(), x)
}

/// Hilbert-Schmidt instance with weight in `[0, 1]`.
pub fn hs_unit(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let (a, b, x) = psd_triple(rng, cfg);
    TrialInstance::Hs { nu: sample_weight(rng, probe), depth: depth_in(rng, 1, cfg.depth_max), a, b, x }
}

/// Hilbert-Schmidt instance with depth >= 2.
pub fn hs_unit_deep(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let (a, b, x) = psd_triple(rng, cfg);
    TrialInstance::Hs {
        nu: sample_weight(rng, probe),
        depth: depth_in(rng, 2, cfg.depth_max.max(2)),
        a,
        b,
        x,
    }
}

/// Hilbert-Schmidt instance with the weight mapped into `[0, 1/4]` and
/// depth >= 2 (the reversed Heinz statement's domain).
pub fn hs_quarter(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let (a, b, x) = psd_triple(rng, cfg);
    let raw = sample_weight(rng, probe);
    TrialInstance::Hs {
        nu: raw / 4.0,
        depth: depth_in(rng, 2, cfg.depth_max.max(2)),
        a,
        b,
        x,
    }
}

const NORM_KINDS: [NormKind; 5] = [
    NormKind::Frobenius,
    NormKind::Trace,
    NormKind::Spectral,
    NormKind::Schatten(3.0),
    NormKind::KyFan(2),
];

fn sample_norm_kind(rng: &mut ChaCha8Rng, dim: usize) -> NormKind {
    loop {
        let kind = NORM_KINDS[rng.gen_range(0..NORM_KINDS.len())];
        if let NormKind::KyFan(k) = kind {
            if k > dim {
                continue;
            }
        }
        return kind;
    }
}

fn functional_matrices(rng: &mut ChaCha8Rng, cfg: &SampleCfg) -> (NormKind, CMatrix, CMatrix, CMatrix) {
    let dim = dim_of(rng, cfg).min(4); // functional evaluations are eig-heavy
    let complex = rng.gen_bool(0.5);
    // Strictly positive spectra keep f(0) and f(1) away from zero.
    let a = random_spd(dim, rng, (0.2, 5.0), complex).expect("valid range");
    let b = random_spd(dim, rng, (0.2, 5.0), complex).expect("valid range");
    let x = random_matrix(dim, rng, complex);
    (sample_norm_kind(rng, dim), a.matrix().clone(), b.matrix().clone(), x)
}

fn logconvex_fixed(
    which: u8,
    rng: &mut ChaCha8Rng,
    cfg: &SampleCfg,
    probe: Option<f64>,
) -> TrialInstance {
    let (norm, a, b, x) = functional_matrices(rng, cfg);
    TrialInstance::LogConvex {
        t: sample_weight(rng, probe),
        depth: depth_in(rng, 1, cfg.depth_max),
        functional: FunctionalSpec::Matrix { norm, which, a, b, x },
    }
}

pub fn logconvex_f1(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    logconvex_fixed(1, rng, cfg, probe)
}

pub fn logconvex_f2(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    logconvex_fixed(2, rng, cfg, probe)
}

pub fn logconvex_f3(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    logconvex_fixed(3, rng, cfg, probe)
}

pub fn logconvex_f4(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    logconvex_fixed(4, rng, cfg, probe)
}

/// Log-convex instance over a mixed family: the four built-ins plus
/// log-affine witnesses (the equality case).
pub fn logconvex_mixed(rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
    let t = sample_weight(rng, probe);
    let depth = depth_in(rng, 1, cfg.depth_max);
    if rng.gen_bool(0.25) {
        let c = rng.gen_range(-3.0..=3.0);
        TrialInstance::LogConvex { t, depth, functional: FunctionalSpec::LogAffine { c } }
    } else {
        let which = rng.gen_range(1u8..=4);
        let (norm, a, b, x) = functional_matrices(rng, cfg);
        TrialInstance::LogConvex {
            t,
            depth,
            functional: FunctionalSpec::Matrix { norm, which, a, b, x },
        }
    }
}
