//! Evaluators for the log-convex / unitarily invariant norm entries.

use crate::error::Result;
use crate::logconvex::{grid_envelope, logconvex_chain, logconvex_refined};
use crate::registry::instance::TrialInstance;
use crate::registry::outcome::{margin_of, EvalOutcome};
use crate::scalar::weight::RefinementDepth;

pub fn eval_logconvex_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (t, depth, f) = inst.logconvex_parts()?;
    let (lhs, mid, rhs) = logconvex_refined(&f, &t, depth)?;
    Ok(EvalOutcome::conjunction(vec![margin_of(lhs, mid), margin_of(mid, rhs)]))
}

/// The four built-in functionals share the evaluator; the sampler pins
/// which one an instance carries.
pub fn eval_uin_item(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (t, depth, f) = inst.logconvex_parts()?;
    let (lhs, _, rhs) = logconvex_refined(&f, &t, depth)?;
    Ok(EvalOutcome::inequality(lhs, rhs))
}

/// Envelope monotonicity: `f <= g_{N+1} <= g_N`.
pub fn eval_envelope_monotone(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (t, depth, f) = inst.logconvex_parts()?;
    let deeper = RefinementDepth::new(depth.n() + 1)?;
    let g_n = grid_envelope(&f, &t, depth)?;
    let g_next = grid_envelope(&f, &t, deeper)?;
    let fv = f.eval(t.value())?;
    Ok(EvalOutcome::conjunction(vec![margin_of(g_next, g_n), margin_of(fv, g_next)]))
}

pub fn eval_chain(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (t, depth, f) = inst.logconvex_parts()?;
    let c = logconvex_chain(&f, &t, depth)?;
    Ok(EvalOutcome::conjunction(vec![
        margin_of(c.v1, c.v2),
        margin_of(c.v2, c.v3),
        margin_of(c.v3, c.v4),
    ]))
}
