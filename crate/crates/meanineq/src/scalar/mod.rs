//! Scalar inequalities: the multi-term refinement machinery, its reverses,
//! squared and chained variants, Kantorovich strengthenings and the Heinz
//! bounds. Everything here is a pure function of its inputs.

pub mod baseline;
pub mod double;
pub mod heinz;
pub mod kanto;
pub mod refinement;
pub mod reverse;
pub mod squared;
pub mod weight;

pub use baseline::{baseline_inequality, baseline_terms, BaselineTerms};
pub use double::{
    double_refinement, double_reverse, double_reverse_branch, double_reverse_branches,
    double_squared,
};
pub use heinz::{
    heinz_refined_scalar, heinz_reverse_scalar, heinz_reverse_scalar_branch,
    heinz_reverse_scalar_branches, heinz_scalar_bounds, heinz_sum, HeinzBranch,
};
pub use kanto::{
    beta_exponent, kanto_nu_square, kanto_nu_square_branch, kanto_nu_square_branches,
    kanto_square_sab, kanto_square_sab_branch, kanto_square_sab_branches, kanto_young_refined,
    kantorovich,
};
pub use refinement::{
    dyadic_anchor, dyadic_remainder, refinement_breakdown, refinement_sum, weighted_geometric,
    young_refined, DyadicAnchor, RefinementBreakdown, RefinementLevel, ScalarPair,
};
pub use reverse::{
    minus_reverse_closed_form, minus_reverse_inductive, minus_reverse_via_s, minus_reverse_via_s2,
    reverse_refined, reverse_refined_branch, reverse_refined_branches, BranchSide,
};
pub use squared::{
    squared_cancellation_residual, squared_refined, squared_reverse, squared_reverse_branch,
    squared_reverse_branches,
};
pub use weight::{RefinementDepth, Weight, MAX_DEPTH};
