//! The inequality registry: every statement of the library exposed as a
//! keyed entry with a sampler, an evaluator, and a mapping onto the fixed
//! manifest of covered results.

pub mod entries_matrix;
pub mod entries_norm;
pub mod entries_scalar;
pub mod gap;
pub mod instance;
pub mod outcome;
pub mod report;
pub mod sample;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use instance::TrialInstance;
use outcome::EvalOutcome;
use sample::SampleCfg;

/// Whether an entry certifies an order relation or only reports
/// diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Certify,
    Diagnostic,
}

type Sampler = fn(&mut ChaCha8Rng, &SampleCfg, Option<f64>) -> TrialInstance;
type Evaluator = fn(&TrialInstance) -> Result<EvalOutcome>;

/// One registry entry.
pub struct Entry {
    pub id: &'static str,
    /// Where the statement lives, as a human-readable locator.
    pub paper_location: &'static str,
    /// Parameter domain the sampler draws from.
    pub domain: &'static str,
    pub kind: EntryKind,
    /// Manifest rows this entry exercises.
    pub covers: &'static [&'static str],
    sampler: Sampler,
    evaluator: Evaluator,
}

impl Entry {
    pub fn sample(&self, rng: &mut ChaCha8Rng, cfg: &SampleCfg, probe: Option<f64>) -> TrialInstance {
        (self.sampler)(rng, cfg, probe)
    }

    pub fn evaluate(&self, inst: &TrialInstance) -> Result<EvalOutcome> {
        (self.evaluator)(inst)
    }
}

/// Fixed manifest of the covered results: every row must be exercised by
/// at least one registry entry (checked by `coverage_gaps`).
pub const MANIFEST: &[(&str, &str)] = &[
    ("baseline.squared-single", "squared one-term refinement of the weighted AM-GM"),
    ("baseline.single", "one-term refinement with the square-root gap"),
    ("baseline.two-term", "two-term refinement with the fourth-root gap"),
    ("baseline.reverse-two-term", "two-term refined reverse"),
    ("baseline.reverse-squared", "squared refined reverse, one extra term"),
    ("baseline.reverse-max", "unrefined reverse with the max-weight slack"),
    ("young.refined-multiterm", "multi-term refinement of the weighted AM-GM"),
    ("young.telescoping", "exact telescoping of the refinement sum and remainder"),
    ("young.symmetry", "weight-reversal symmetry of the sum and remainder"),
    ("heinz.two-sided", "two-sided Heinz mean bound"),
    ("reverse.refined", "multi-term refined reverse, two branches"),
    ("reverse.depth-one", "depth-1 reverse term reproduces the classical one"),
    ("minus.telescoped", "telescoped reverse for weights beyond 1, with closed form"),
    ("minus.via-sum", "reverse refined through the refinement sum"),
    ("minus.via-self", "reverse refined through a self-referencing refinement sum"),
    ("squared.refined", "multi-term squared refinement"),
    ("squared.reverse", "squared refined reverse, two branches"),
    ("double.refined", "chained refinement over the remainder anchors"),
    ("double.squared", "chained squared refinement"),
    ("double.reverse", "chained refined reverse"),
    ("kanto.refined", "Kantorovich-strengthened multi-term refinement"),
    ("kanto.reproduction", "depth 0/1 reproduce the classical constant bounds"),
    ("kanto.squared-prefactor", "squared strengthening with vanishing prefactor"),
    ("kanto.weight-prefactor", "weighted-square strengthening with weight prefactor"),
    ("logconvex.refined", "Kantorovich refinement for log-convex functions"),
    ("logconvex.uin-f1", "norm functional |||A^t X B^t|||"),
    ("logconvex.uin-f2", "norm functional |||A^t X B^{1-t}|||"),
    ("logconvex.uin-f3", "norm functional |||A^t|||"),
    ("logconvex.uin-f4", "trace functional tr(A^t X B^{1-t} X*)"),
    ("logconvex.envelope", "dyadic grid envelope decreases with depth"),
    ("logconvex.chain", "four-station chained refinement"),
    ("operator.young-refined", "operator multi-term refinement in the Loewner order"),
    ("operator.reverse", "operator refined reverse, two branches"),
    ("operator.minus", "operator telescoped reverse for extended weights"),
    ("operator.minus-via-sum", "operator reverse via the refinement sum"),
    ("operator.squared", "operator squared refinement, two branches"),
    ("operator.kanto", "operator Kantorovich strengthening under spectral bounds"),
    ("hs.squared-refined", "Hilbert-Schmidt squared refinement"),
    ("hs.squared-reverse", "Hilbert-Schmidt squared reverse"),
    ("heinz.refined-lemma", "scalar lemma behind the Hilbert-Schmidt Heinz bound"),
    ("heinz.reverse-lemma", "four-branch reversed Heinz lemma"),
    ("hs.heinz-refined", "Hilbert-Schmidt Heinz refinement"),
    ("hs.heinz-reverse", "Hilbert-Schmidt reversed Heinz bound on [0, 1/4]"),
];

/// All registry entries.
pub fn registry() -> Vec<Entry> {
    use entries_matrix as m;
    use entries_norm as n;
    use entries_scalar as s;
    use sample as smp;

    vec![
        Entry {
            id: "scalar.baseline.squared",
            paper_location: "baselines / squared one-term refinement",
            domain: "nu in [0,1], pair log-uniform",
            kind: EntryKind::Certify,
            covers: &["baseline.squared-single"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_baseline_squared,
        },
        Entry {
            id: "scalar.baseline.single",
            paper_location: "baselines / one-term refinement",
            domain: "nu in [0,1], pair log-uniform",
            kind: EntryKind::Certify,
            covers: &["baseline.single"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_baseline_single,
        },
        Entry {
            id: "scalar.baseline.two_term",
            paper_location: "baselines / two-term refinement",
            domain: "nu in [0,1], pair log-uniform",
            kind: EntryKind::Certify,
            covers: &["baseline.two-term"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_baseline_two_term,
        },
        Entry {
            id: "scalar.baseline.reverse",
            paper_location: "baselines / two-term refined reverse",
            domain: "nu in [0,1], pair log-uniform",
            kind: EntryKind::Certify,
            covers: &["baseline.reverse-two-term"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_baseline_reverse,
        },
        Entry {
            id: "scalar.baseline.reverse_squared",
            paper_location: "baselines / squared refined reverse",
            domain: "nu in [0,1], pair log-uniform",
            kind: EntryKind::Certify,
            covers: &["baseline.reverse-squared"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_baseline_reverse_squared,
        },
        Entry {
            id: "scalar.baseline.reverse_max",
            paper_location: "baselines / unrefined max-weight reverse",
            domain: "nu in [0,1], pair log-uniform",
            kind: EntryKind::Certify,
            covers: &["baseline.reverse-max"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_baseline_reverse_max,
        },
        Entry {
            id: "scalar.young.refined",
            paper_location: "scalars / multi-term refined AM-GM",
            domain: "nu in [0,1], depth 1..nmax",
            kind: EntryKind::Certify,
            covers: &["young.refined-multiterm"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_young_refined,
        },
        Entry {
            id: "scalar.telescoping",
            paper_location: "scalars / telescoping identity of sum and remainder",
            domain: "nu in [0,1], depth 1..nmax",
            kind: EntryKind::Certify,
            covers: &["young.telescoping"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_telescoping,
        },
        Entry {
            id: "scalar.symmetry",
            paper_location: "scalars / weight-reversal symmetry",
            domain: "nu in [0,1], depth 1..nmax",
            kind: EntryKind::Certify,
            covers: &["young.symmetry"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_symmetry,
        },
        Entry {
            id: "scalar.heinz.bounds",
            paper_location: "scalars / two-sided Heinz bound",
            domain: "nu in [0,1]",
            kind: EntryKind::Certify,
            covers: &["heinz.two-sided"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_heinz_bounds,
        },
        Entry {
            id: "scalar.reverse.refined",
            paper_location: "scalars / refined reverse (two branches)",
            domain: "nu in [0,1], both branches on the seam",
            kind: EntryKind::Certify,
            covers: &["reverse.refined"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_reverse_refined,
        },
        Entry {
            id: "scalar.reverse.depth_one",
            paper_location: "scalars / depth-one reverse reproduction",
            domain: "nu in [0,1]",
            kind: EntryKind::Certify,
            covers: &["reverse.depth-one"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_reverse_depth_one,
        },
        Entry {
            id: "scalar.minus.inductive",
            paper_location: "scalars / telescoped extended reverse with closed form",
            domain: "nu in [0,2], narrowed pair range",
            kind: EntryKind::Certify,
            covers: &["minus.telescoped"],
            sampler: smp::scalar_extended,
            evaluator: s::eval_minus_inductive,
        },
        Entry {
            id: "scalar.minus.via_s",
            paper_location: "scalars / extended reverse via the refinement sum",
            domain: "nu in [0,1]",
            kind: EntryKind::Certify,
            covers: &["minus.via-sum"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_minus_via_s,
        },
        Entry {
            id: "scalar.minus.via_s2",
            paper_location: "scalars / extended reverse via self-referencing sum",
            domain: "nu in [0,2], narrowed pair range",
            kind: EntryKind::Certify,
            covers: &["minus.via-self"],
            sampler: smp::scalar_extended,
            evaluator: s::eval_minus_via_s2,
        },
        Entry {
            id: "scalar.squared.refined",
            paper_location: "scalars / squared multi-term refinement",
            domain: "nu in [0,1], depth 2..nmax",
            kind: EntryKind::Certify,
            covers: &["squared.refined"],
            sampler: smp::scalar_unit_deep,
            evaluator: s::eval_squared_refined,
        },
        Entry {
            id: "scalar.squared.reverse",
            paper_location: "scalars / squared refined reverse (two branches)",
            domain: "nu in [0,1]",
            kind: EntryKind::Certify,
            covers: &["squared.reverse"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_squared_reverse,
        },
        Entry {
            id: "scalar.double.refined",
            paper_location: "scalars / chained refinement with anchor identity",
            domain: "nu in [0,1], two depths",
            kind: EntryKind::Certify,
            covers: &["double.refined"],
            sampler: smp::scalar_unit_double,
            evaluator: s::eval_double_refined,
        },
        Entry {
            id: "scalar.double.squared",
            paper_location: "scalars / chained squared refinement",
            domain: "nu in [0,1], two depths, first >= 2",
            kind: EntryKind::Certify,
            covers: &["double.squared"],
            sampler: smp::scalar_unit_double_deep,
            evaluator: s::eval_double_squared,
        },
        Entry {
            id: "scalar.double.reverse",
            paper_location: "scalars / chained refined reverse",
            domain: "nu in [0,1], two depths",
            kind: EntryKind::Certify,
            covers: &["double.reverse"],
            sampler: smp::scalar_unit_double,
            evaluator: s::eval_double_reverse,
        },
        Entry {
            id: "scalar.kanto.constant",
            paper_location: "scalars / Kantorovich constant properties",
            domain: "t = a/b over the log-uniform pair",
            kind: EntryKind::Certify,
            covers: &["kanto.refined"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_kanto_constant,
        },
        Entry {
            id: "scalar.kanto.refined",
            paper_location: "scalars / Kantorovich-strengthened refinement",
            domain: "nu in [0,1], depth 1..nmax",
            kind: EntryKind::Certify,
            covers: &["kanto.refined"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_kanto_refined,
        },
        Entry {
            id: "scalar.kanto.reproduction",
            paper_location: "scalars / depth 0 and 1 classical reproduction",
            domain: "nu in [0,1]",
            kind: EntryKind::Certify,
            covers: &["kanto.reproduction"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_kanto_reproduction,
        },
        Entry {
            id: "scalar.kanto.square_sab",
            paper_location: "scalars / squared strengthening with vanishing prefactor",
            domain: "nu in [0,1], both branches on the seam",
            kind: EntryKind::Certify,
            covers: &["kanto.squared-prefactor"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_kanto_square_sab,
        },
        Entry {
            id: "scalar.kanto.nu_square",
            paper_location: "scalars / weighted-square strengthening",
            domain: "nu in [0,1], both branches on the seam",
            kind: EntryKind::Certify,
            covers: &["kanto.weight-prefactor"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_kanto_nu_square,
        },
        Entry {
            id: "scalar.heinz.refined",
            paper_location: "scalars / refined Heinz lemma",
            domain: "nu in [0,1]",
            kind: EntryKind::Certify,
            covers: &["heinz.refined-lemma"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_heinz_refined,
        },
        Entry {
            id: "scalar.heinz.reverse",
            paper_location: "scalars / reversed Heinz lemma (four branches)",
            domain: "nu in [0,1], both branches on interval seams",
            kind: EntryKind::Certify,
            covers: &["heinz.reverse-lemma"],
            sampler: smp::scalar_unit,
            evaluator: s::eval_heinz_reverse,
        },
        Entry {
            id: "norm.logconvex.refined",
            paper_location: "log-convex / strengthened refinement with midpoint chain",
            domain: "mixed functional family, t in [0,1]",
            kind: EntryKind::Certify,
            covers: &["logconvex.refined"],
            sampler: smp::logconvex_mixed,
            evaluator: n::eval_logconvex_refined,
        },
        Entry {
            id: "norm.uin.f1",
            paper_location: "log-convex / norm functional |||A^t X B^t|||",
            domain: "random PSD pair, random X, mixed norms",
            kind: EntryKind::Certify,
            covers: &["logconvex.uin-f1"],
            sampler: smp::logconvex_f1,
            evaluator: n::eval_uin_item,
        },
        Entry {
            id: "norm.uin.f2",
            paper_location: "log-convex / norm functional |||A^t X B^{1-t}|||",
            domain: "random PSD pair, random X, mixed norms",
            kind: EntryKind::Certify,
            covers: &["logconvex.uin-f2"],
            sampler: smp::logconvex_f2,
            evaluator: n::eval_uin_item,
        },
        Entry {
            id: "norm.uin.f3",
            paper_location: "log-convex / norm functional |||A^t|||",
            domain: "random PSD matrix, mixed norms",
            kind: EntryKind::Certify,
            covers: &["logconvex.uin-f3"],
            sampler: smp::logconvex_f3,
            evaluator: n::eval_uin_item,
        },
        Entry {
            id: "norm.uin.f4",
            paper_location: "log-convex / trace functional tr(A^t X B^{1-t} X*)",
            domain: "random PSD pair, random X",
            kind: EntryKind::Certify,
            covers: &["logconvex.uin-f4"],
            sampler: smp::logconvex_f4,
            evaluator: n::eval_uin_item,
        },
        Entry {
            id: "norm.envelope.monotone",
            paper_location: "log-convex / grid envelope monotone in depth",
            domain: "mixed functional family",
            kind: EntryKind::Certify,
            covers: &["logconvex.envelope"],
            sampler: smp::logconvex_mixed,
            evaluator: n::eval_envelope_monotone,
        },
        Entry {
            id: "norm.chain",
            paper_location: "log-convex / four-station chain",
            domain: "mixed functional family",
            kind: EntryKind::Certify,
            covers: &["logconvex.chain"],
            sampler: smp::logconvex_mixed,
            evaluator: n::eval_chain,
        },
        Entry {
            id: "op.young.refined",
            paper_location: "operators / multi-term refinement in the Loewner order",
            domain: "random SPD pairs, dims from the suite",
            kind: EntryKind::Certify,
            covers: &["operator.young-refined"],
            sampler: smp::operator_unit,
            evaluator: m::eval_op_young,
        },
        Entry {
            id: "op.reverse",
            paper_location: "operators / refined reverse (two branches)",
            domain: "random SPD pairs",
            kind: EntryKind::Certify,
            covers: &["operator.reverse"],
            sampler: smp::operator_unit,
            evaluator: m::eval_op_reverse,
        },
        Entry {
            id: "op.minus.inductive",
            paper_location: "operators / telescoped extended reverse",
            domain: "random SPD pairs, nu in [0,2]",
            kind: EntryKind::Certify,
            covers: &["operator.minus"],
            sampler: smp::operator_extended,
            evaluator: m::eval_op_minus,
        },
        Entry {
            id: "op.minus.via_s",
            paper_location: "operators / reverse via the refinement sum",
            domain: "random SPD pairs, nu in [0,1]",
            kind: EntryKind::Certify,
            covers: &["operator.minus-via-sum"],
            sampler: smp::operator_unit,
            evaluator: m::eval_op_minus_via_s,
        },
        Entry {
            id: "op.minus.literal",
            paper_location: "operators / literal prefactor form (diagnostic)",
            domain: "random SPD pairs, nu in [0,1]",
            kind: EntryKind::Diagnostic,
            covers: &["operator.minus-via-sum"],
            sampler: smp::operator_unit,
            evaluator: m::eval_op_minus_literal,
        },
        Entry {
            id: "op.squared",
            paper_location: "operators / squared refinement (two branches)",
            domain: "random SPD pairs, depth >= 2",
            kind: EntryKind::Certify,
            covers: &["operator.squared"],
            sampler: smp::operator_unit_deep,
            evaluator: m::eval_op_squared,
        },
        Entry {
            id: "op.kanto",
            paper_location: "operators / Kantorovich strengthening under bounds",
            domain: "random SPD pairs with tight joint spectral bounds",
            kind: EntryKind::Certify,
            covers: &["operator.kanto"],
            sampler: smp::operator_bounded,
            evaluator: m::eval_op_kanto,
        },
        Entry {
            id: "hs.squared.refined",
            paper_location: "Hilbert-Schmidt / squared refinement",
            domain: "random PSD pair + random X, depth >= 2",
            kind: EntryKind::Certify,
            covers: &["hs.squared-refined"],
            sampler: smp::hs_unit_deep,
            evaluator: m::eval_hs_squared_refined,
        },
        Entry {
            id: "hs.squared.reverse",
            paper_location: "Hilbert-Schmidt / squared reverse (two branches)",
            domain: "random PSD pair + random X",
            kind: EntryKind::Certify,
            covers: &["hs.squared-reverse"],
            sampler: smp::hs_unit,
            evaluator: m::eval_hs_squared_reverse,
        },
        Entry {
            id: "hs.heinz.refined",
            paper_location: "Hilbert-Schmidt / Heinz refinement (two branches)",
            domain: "random PSD pair + random X",
            kind: EntryKind::Certify,
            covers: &["hs.heinz-refined"],
            sampler: smp::hs_unit,
            evaluator: m::eval_hs_heinz_refined,
        },
        Entry {
            id: "hs.heinz.reverse",
            paper_location: "Hilbert-Schmidt / reversed Heinz bound on [0, 1/4]",
            domain: "random PSD pair + random X, nu in [0, 1/4], depth >= 2",
            kind: EntryKind::Certify,
            covers: &["hs.heinz-reverse"],
            sampler: smp::hs_quarter,
            evaluator: m::eval_hs_heinz_reverse,
        },
    ]
}

/// Looks up one entry by id.
pub fn find_entry(id: &str) -> Result<Entry> {
    registry()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

/// Simple `*` wildcard matching for suite filters ("all" matches
/// everything).
pub fn filter_matches(pattern: &str, id: &str) -> bool {
    if pattern == "all" || pattern == "*" {
        return true;
    }
    let parts: Vec<&str> = pattern.split('*').collect();
    if parts.len() == 1 {
        return pattern == id;
    }
    let mut rest = id;
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        match rest.find(part) {
            Some(pos) => {
                if i == 0 && pos != 0 {
                    return false;
                }
                rest = &rest[pos + part.len()..];
            }
            None => return false,
        }
    }
    parts.last().map_or(true, |last| last.is_empty() || id.ends_with(last))
}

/// Manifest rows not exercised by any entry (must be empty).
pub fn coverage_gaps() -> Vec<&'static str> {
    let entries = registry();
    MANIFEST
        .iter()
        .map(|&(row, _)| row)
        .filter(|row| !entries.iter().any(|e| e.covers.contains(row)))
        .collect()
}

/// `covers` targets that do not exist in the manifest (must be empty).
pub fn dangling_covers() -> Vec<&'static str> {
    registry()
        .into_iter()
        .flat_map(|e| e.covers.iter().copied().collect::<Vec<_>>())
        .filter(|row| !MANIFEST.iter().any(|&(id, _)| id == *row))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let entries = registry();
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                assert_ne!(a.id, b.id);
            }
        }
    }

    #[test]
    fn manifest_fully_covered() {
        assert!(coverage_gaps().is_empty(), "uncovered rows: {:?}", coverage_gaps());
        assert!(dangling_covers().is_empty(), "dangling covers: {:?}", dangling_covers());
    }

    #[test]
    fn filters() {
        assert!(filter_matches("all", "scalar.young.refined"));
        assert!(filter_matches("scalar.*", "scalar.young.refined"));
        assert!(!filter_matches("scalar.*", "op.kanto"));
        assert!(filter_matches("*.reverse", "op.reverse"));
        assert!(filter_matches("op.kanto", "op.kanto"));
        assert!(!filter_matches("op.kanto", "op.kanto2"));
        assert!(filter_matches("*heinz*", "hs.heinz.refined"));
    }

    #[test]
    fn unknown_entry_is_an_error() {
        assert!(matches!(find_entry("nope"), Err(Error::UnknownEntry(_))));
    }
}
