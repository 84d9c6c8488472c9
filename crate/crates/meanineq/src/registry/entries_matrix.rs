//! Evaluators for the operator and Hilbert-Schmidt registry entries.

use crate::error::Result;
use crate::hs::{
    hs_heinz_refined_branch, hs_heinz_reverse, hs_squared_refined, hs_squared_reverse_branch,
    DualEval, HsTriple,
};
use crate::operator::{
    op_kanto, op_minus_reverse, op_minus_reverse_literal, op_minus_reverse_via_s,
    op_reverse_branch, op_squared_branch, op_young_refined, OperatorEval, OperatorPair,
};
use crate::registry::instance::TrialInstance;
use crate::registry::outcome::{margin_of, EvalOutcome};
use crate::scalar::reverse::BranchSide;
use crate::scalar::weight::Weight;

fn loewner_outcome(eval: &OperatorEval) -> Result<EvalOutcome> {
    let diff = eval.rhs.sub(&eval.lhs)?;
    let min_eig = diff.min_eigenvalue()?;
    let scale = eval.lhs.frobenius_norm().max(eval.rhs.frobenius_norm());
    Ok(EvalOutcome::loewner(min_eig, scale))
}

fn loewner_margin_of(eval: &OperatorEval) -> Result<f64> {
    let diff = eval.rhs.sub(&eval.lhs)?;
    Ok(diff.min_eigenvalue()?
        / eval.lhs.frobenius_norm().max(eval.rhs.frobenius_norm()).max(1.0))
}

fn applicable_sides(nu: &Weight) -> Vec<BranchSide> {
    let mut sides = Vec::new();
    if nu.value() <= 0.5 || nu.at_seam(0.5) {
        sides.push(BranchSide::Lower);
    }
    if nu.value() >= 0.5 || nu.at_seam(0.5) {
        sides.push(BranchSide::Upper);
    }
    sides
}

pub fn eval_op_young(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b) = inst.operator_parts()?;
    let pair = OperatorPair::new(&a, &b)?;
    loewner_outcome(&op_young_refined(&pair, &nu, depth)?)
}

pub fn eval_op_reverse(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b) = inst.operator_parts()?;
    let pair = OperatorPair::new(&a, &b)?;
    let mut margins = Vec::new();
    for side in applicable_sides(&nu) {
        margins.push(loewner_margin_of(&op_reverse_branch(&pair, &nu, depth, side)?)?);
    }
    Ok(EvalOutcome::conjunction(margins))
}

pub fn eval_op_minus(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b) = inst.operator_parts()?;
    let pair = OperatorPair::new(&a, &b)?;
    loewner_outcome(&op_minus_reverse(&pair, &nu, depth)?)
}

pub fn eval_op_minus_via_s(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b) = inst.operator_parts()?;
    let pair = OperatorPair::new(&a, &b)?;
    loewner_outcome(&op_minus_reverse_via_s(&pair, &nu, depth)?)
}

/// Diagnostic entry: reports the Hermiticity defect of the literal
/// prefactor form; never fails a suite.
pub fn eval_op_minus_literal(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b) = inst.operator_parts()?;
    let pair = OperatorPair::new(&a, &b)?;
    let lit = op_minus_reverse_literal(&a, &b, &pair, &nu, depth)?;
    Ok(EvalOutcome::diagnostic(lit.hermiticity_defect))
}

pub fn eval_op_squared(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b) = inst.operator_parts()?;
    let pair = OperatorPair::new(&a, &b)?;
    let mut margins = Vec::new();
    for side in applicable_sides(&nu) {
        margins.push(loewner_margin_of(&op_squared_branch(&pair, &nu, depth, side)?)?);
    }
    Ok(EvalOutcome::conjunction(margins))
}

pub fn eval_op_kanto(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b) = inst.operator_parts()?;
    let bounds = inst.operator_bounds()?;
    let pair = OperatorPair::new(&a, &b)?;
    loewner_outcome(&op_kanto(&a, &b, &pair, &nu, depth, &bounds)?)
}

/// Margins of one dual-route evaluation: the inequality itself plus the
/// agreement of the two routes.
fn dual_margins(eval: &DualEval) -> Vec<f64> {
    vec![margin_of(eval.lhs, eval.rhs), -eval.route_gap()]
}

pub fn eval_hs_squared_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b, x) = inst.hs_parts()?;
    let triple = HsTriple::new(&a, &b, &x)?;
    Ok(EvalOutcome::conjunction(dual_margins(&hs_squared_refined(&triple, &nu, depth)?)))
}

pub fn eval_hs_squared_reverse(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b, x) = inst.hs_parts()?;
    let triple = HsTriple::new(&a, &b, &x)?;
    let mut margins = Vec::new();
    for side in applicable_sides(&nu) {
        margins.extend(dual_margins(&hs_squared_reverse_branch(&triple, &nu, depth, side)?));
    }
    Ok(EvalOutcome::conjunction(margins))
}

pub fn eval_hs_heinz_refined(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b, x) = inst.hs_parts()?;
    let triple = HsTriple::new(&a, &b, &x)?;
    let mut margins = Vec::new();
    for side in applicable_sides(&nu) {
        margins.extend(dual_margins(&hs_heinz_refined_branch(&triple, &nu, depth, side)?));
    }
    Ok(EvalOutcome::conjunction(margins))
}

pub fn eval_hs_heinz_reverse(inst: &TrialInstance) -> Result<EvalOutcome> {
    let (nu, depth, a, b, x) = inst.hs_parts()?;
    let triple = HsTriple::new(&a, &b, &x)?;
    Ok(EvalOutcome::conjunction(dual_margins(&hs_heinz_reverse(&triple, &nu, depth)?)))
}
