//! Evaluators for the scalar registry entries.

use crate::error::Result;
use crate::registry::instance::TrialInstance;
use crate::registry::outcome::{identity_margin, margin_of, EvalOutcome};
use crate::scalar::baseline::baseline_inequality;
use crate::scalar::double::{double_refinement, double_reverse_branches, double_squared};
use crate::scalar::heinz::{
    heinz_refined_scalar, heinz_reverse_scalar_branches, heinz_scalar_bounds,
};
use crate::scalar::kanto::{
    kanto_nu_square_branches, kanto_square_sab_branches, kanto_young_refined, kantorovich,
};
use crate::scalar::refinement::{
    dyadic_remainder, refinement_sum, weighted_geometric, ScalarPair, young_refined,
};
use crate::scalar::reverse::{
    minus_reverse_closed_form, minus_reverse_inductive, minus_reverse_via_s, minus_reverse_via_s2,
    reverse_refined_branches,
};
use crate::scalar::squared::{
    squared_cancellation_residual, squared_refined, squared_reverse_branches,
};
use crate::scalar::weight::RefinementDepth;

macro_rules! baseline_eval {
    ($name:ident, $index:expr) => {
        pub fn $name(inst: &TrialInstance) -> Result<EvalOutcome> {
            let (nu, pair, _) = inst.scalar_parts()?;
            let (lhs, rhs) = baseline_inequality(&nu, &pair, $index)?;
            Ok(EvalOutcome::inequality(lhs, rhs))
        }
    };
}

baseline_eval!(eval_baseline_squared, 2);
baseline_eval!(eval_baseline_single, 3);
baseline_eval!(eval_baseline_two_term, 4);
baseline_eval!(eval_baseline_reverse, 5);
baseline_eval!(eval_baseline_reverse_squared, 6);
baseline_eval!(eval_baseline_reverse_max, 7);

pub fn eval_young_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let (lhs, rhs) = young_refined(&nu, &pair, depth)?;
    Ok(EvalOutcome::inequality(lhs, rhs))
}

pub fn eval_telescoping(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let arith = nu.value() * pair.a() + (1.0 - nu.value()) * pair.b();
    let s = refinement_sum(&nu, &pair, depth)?;
    let r = dyadic_remainder(&nu, &pair, depth)?;
    Ok(EvalOutcome::identity(arith - s - r, pair.a() + pair.b()))
}

pub fn eval_symmetry(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let mirrored = nu.affine(0, true, 1)?;
    let swapped = pair.swapped();
    let s = refinement_sum(&nu, &pair, depth)?;
    let s_m = refinement_sum(&mirrored, &swapped, depth)?;
    let r = dyadic_remainder(&nu, &pair, depth)?;
    let r_m = dyadic_remainder(&mirrored, &swapped, depth)?;
    let scale = pair.a() + pair.b();
    Ok(EvalOutcome::conjunction(vec![
        identity_margin(s - s_m, scale),
        identity_margin(r - r_m, scale),
    ]))
}

pub fn eval_heinz_bounds(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, _) = inst.scalar_parts()?;
    let (lower, mid, upper) = heinz_scalar_bounds(&nu, &pair)?;
    Ok(EvalOutcome::conjunction(vec![margin_of(lower, mid), margin_of(mid, upper)]))
}

pub fn eval_reverse_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let margins = reverse_refined_branches(&nu, &pair, depth)?
        .into_iter()
        .map(|(lhs, rhs)| margin_of(lhs, rhs))
        .collect();
    Ok(EvalOutcome::conjunction(margins))
}

/// Depth-one reproduction: the first refining term of the reverse equals
/// the classical single-term reverse refinement.
pub fn eval_reverse_depth_one(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, _) = inst.scalar_parts()?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let one = RefinementDepth::new(1)?;
    let (s, closed) = if v <= 0.5 {
        let inner = nu.affine(1, false, 0)?;
        let s = refinement_sum(&inner, &ScalarPair::new((a * b).sqrt(), a)?, one)?;
        (s, (2.0 * v).min(1.0 - 2.0 * v) * ((a * b).powf(0.25) - a.sqrt()).powi(2))
    } else {
        let inner = nu.affine(1, true, 2)?;
        let s = refinement_sum(&inner, &ScalarPair::new((a * b).sqrt(), b)?, one)?;
        (s, (2.0 - 2.0 * v).min(2.0 * v - 1.0) * ((a * b).powf(0.25) - b.sqrt()).powi(2))
    };
    Ok(EvalOutcome::identity(s - closed, closed.abs().max(1.0)))
}

pub fn eval_minus_inductive(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let (lhs, rhs) = minus_reverse_inductive(&nu, &pair, depth)?;
    let closed = minus_reverse_closed_form(&nu, &pair, depth)?;
    // The telescoped quantities have magnitude (1 + 2^N nu) a before they
    // cancel; residuals are relative to that, not to the cancelled value.
    let scale = (1.0 + (depth.n() as f64).exp2() * nu.value()) * pair.a();
    Ok(EvalOutcome::conjunction(vec![
        margin_of(lhs, rhs),
        identity_margin(lhs - closed, scale),
    ]))
}

pub fn eval_minus_via_s(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let (lhs, rhs) = minus_reverse_via_s(&nu, &pair, depth)?;
    Ok(EvalOutcome::inequality(lhs, rhs))
}

pub fn eval_minus_via_s2(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let (lhs, rhs) = minus_reverse_via_s2(&nu, &pair, depth)?;
    Ok(EvalOutcome::inequality(lhs, rhs))
}

pub fn eval_squared_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let (lhs, rhs) = squared_refined(&nu, &pair, depth)?;
    let residual = squared_cancellation_residual(&nu, &pair);
    let scale = (pair.a() * pair.a() + pair.b() * pair.b()).max(1.0);
    Ok(EvalOutcome::conjunction(vec![
        margin_of(lhs, rhs),
        identity_margin(residual, scale),
    ]))
}

pub fn eval_squared_reverse(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let margins = squared_reverse_branches(&nu, &pair, depth)?
        .into_iter()
        .map(|(lhs, rhs)| margin_of(lhs, rhs))
        .collect();
    Ok(EvalOutcome::conjunction(margins))
}

pub fn eval_double_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let second = inst.scalar_second_depth()?;
    let (lhs, rhs, anchor) = double_refinement(&nu, &pair, depth, second)?;
    let geo = weighted_geometric(&pair, nu.value());
    let recombined = if anchor.alpha == 1.0 {
        anchor.x
    } else {
        anchor.x.powf(anchor.alpha) * anchor.y.powf(1.0 - anchor.alpha)
    };
    Ok(EvalOutcome::conjunction(vec![
        margin_of(lhs, rhs),
        identity_margin(recombined - geo, geo.max(1.0)),
    ]))
}

pub fn eval_double_squared(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let second = inst.scalar_second_depth()?;
    let (lhs, rhs, _) = double_squared(&nu, &pair, depth, second)?;
    Ok(EvalOutcome::inequality(lhs, rhs))
}

pub fn eval_double_reverse(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let second = inst.scalar_second_depth()?;
    let margins = double_reverse_branches(&nu, &pair, depth, second)?
        .into_iter()
        .map(|(lhs, rhs, _)| margin_of(lhs, rhs))
        .collect();
    Ok(EvalOutcome::conjunction(margins))
}

/// Properties of the Kantorovich constant itself: `K >= 1` and the
/// inversion symmetry, probed at `t = a / b`.
pub fn eval_kanto_constant(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (_, pair, _) = inst.scalar_parts()?;
    let t = pair.a() / pair.b();
    let k = kantorovich(t)?;
    let k_inv = kantorovich(1.0 / t)?;
    Ok(EvalOutcome::conjunction(vec![
        margin_of(1.0, k),
        identity_margin(k - k_inv, k.max(1.0)),
    ]))
}

pub fn eval_kanto_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let (lhs, rhs) = kanto_young_refined(&nu, &pair, depth)?;
    Ok(EvalOutcome::inequality(lhs, rhs))
}

/// Depth 1 reproduces the classical strengthened one-term bound and depth 0
/// the unrefined constant-factor bound.
pub fn eval_kanto_reproduction(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, _) = inst.scalar_parts()?;
    let v = nu.value();
    let (a, b) = (pair.a(), pair.b());
    let geo = weighted_geometric(&pair, v);
    let r = v.min(1.0 - v);

    let (lhs1, _) = kanto_young_refined(&nu, &pair, RefinementDepth::new(1)?)?;
    let r_prime = (2.0 * r).min(1.0 - 2.0 * r);
    let classical1 = if r_prime == 0.0 { 1.0 } else { kantorovich((b / a).sqrt())?.powf(r_prime) }
        * geo
        + r * (a.sqrt() - b.sqrt()).powi(2);

    let (lhs0, _) = kanto_young_refined(&nu, &pair, RefinementDepth::new(0)?)?;
    let classical0 =
        if r == 0.0 { 1.0 } else { kantorovich(b / a)?.powf(r) } * geo;

    let scale = (a + b).max(1.0);
    Ok(EvalOutcome::conjunction(vec![
        identity_margin(lhs1 - classical1, scale),
        identity_margin(lhs0 - classical0, scale),
    ]))
}

pub fn eval_kanto_square_sab(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let margins = kanto_square_sab_branches(&nu, &pair, depth)?
        .into_iter()
        .map(|(lhs, rhs)| margin_of(lhs, rhs))
        .collect();
    Ok(EvalOutcome::conjunction(margins))
}

pub fn eval_kanto_nu_square(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let margins = kanto_nu_square_branches(&nu, &pair, depth)?
        .into_iter()
        .map(|(lhs, rhs)| margin_of(lhs, rhs))
        .collect();
    Ok(EvalOutcome::conjunction(margins))
}

pub fn eval_heinz_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let (lhs, rhs) = heinz_refined_scalar(&nu, &pair, depth)?;
    Ok(EvalOutcome::inequality(lhs, rhs))
}

pub fn eval_heinz_reverse(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, pair, depth) = inst.scalar_parts()?;
    let margins = heinz_reverse_scalar_branches(&nu, &pair, depth)?
        .into_iter()
        .map(|(lhs, rhs)| margin_of(lhs, rhs))
        .collect();
    Ok(EvalOutcome::conjunction(margins))
}
