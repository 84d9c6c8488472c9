//! Gap tables: how much room each refinement leaves at a grid of weights
//! and depths, next to the classical one- and two-term baselines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::instance::TrialInstance;
use crate::registry::outcome::Detail;
use crate::registry::find_entry;
use crate::scalar::baseline::baseline_inequality;
use crate::scalar::refinement::ScalarPair;
use crate::scalar::weight::Weight;

/// One row of a gap table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapRow {
    pub nu: f64,
    pub depth: u32,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; nonnegative when the statement holds.
    pub gap: f64,
    /// Gaps of the classical baselines (indices 2..=7) at the same point.
    pub baseline_gaps: Vec<f64>,
}

/// Inclusive weight grid `lo, lo + step, ...` up to `hi`.
pub fn weight_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi >= lo) || lo < 0.0 {
        return Err(Error::Usage(format!("invalid weight grid {lo}:{hi}:{step}")));
    }
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let nu = lo + step * i as f64;
        if nu > hi + 1e-12 {
            break;
        }
        grid.push(nu.min(hi));
        i += 1;
    }
    Ok(grid)
}

/// Evaluates `entry_id` over the grid for depths `1..=depth_max`. Only
/// entries that report a plain `(lhs, rhs)` inequality over scalar
/// instances can be tabulated.
pub fn gap_report(
    entry_id: &str,
    a: f64,
    b: f64,
    grid: &[f64],
    depth_max: u32,
) -> Result<Vec<GapRow>> {
    let entry = find_entry(entry_id)?;
    let pair = ScalarPair::new(a, b)?;
    let mut rows = Vec::with_capacity(grid.len() * depth_max as usize);
    for &nu in grid {
        let weight = Weight::new(nu)?;
        if !weight.is_convex() {
            return Err(Error::Usage(format!("grid weight {nu} is outside [0, 1]")));
        }
        let baseline_gaps: Vec<f64> = (2..=7u8)
            .map(|idx| baseline_inequality(&weight, &pair, idx).map(|(l, r)| r - l))
            .collect::<Result<_>>()?;
        for depth in 1..=depth_max {
            let inst = TrialInstance::Scalar { nu, a, b, depth, second_depth: None };
            let outcome = entry.evaluate(&inst)?;
            let (lhs, rhs) = match outcome.detail {
                Detail::Inequality { lhs, rhs } => (lhs, rhs),
                _ => {
                    return Err(Error::Usage(format!(
                        "entry `{entry_id}` does not produce a scalar (lhs, rhs) table"
                    )))
                }
            };
            rows.push(GapRow {
                nu,
                depth,
                lhs,
                rhs,
                gap: rhs - lhs,
                baseline_gaps: baseline_gaps.clone(),
            });
        }
    }
    Ok(rows)
}

/// CSV rendering with a fixed header.
pub fn to_csv(rows: &[GapRow]) -> String {
    let mut out = String::from(
        "nu,depth,lhs,rhs,gap,baseline_squared,baseline_single,baseline_two_term,\
         baseline_reverse,baseline_reverse_squared,baseline_reverse_max\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
            r.nu,
            r.depth,
            r.lhs,
            r.rhs,
            r.gap,
            r.baseline_gaps[0],
            r.baseline_gaps[1],
            r.baseline_gaps[2],
            r.baseline_gaps[3],
            r.baseline_gaps[4],
            r.baseline_gaps[5],
        ));
    }
    out
}

/// JSON rendering.
pub fn to_json(rows: &[GapRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("gap serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive() {
        let g = weight_grid(0.0, 1.0, 0.25).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(weight_grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn gap_shrinks_with_depth_and_vanishes_at_dyadics() {
        let grid = weight_grid(0.0, 1.0, 0.0625).unwrap();
        let rows = gap_report("scalar.young.refined", 2.0, 5.0, &grid, 6).unwrap();
        // Group rows by weight and check monotonicity in depth.
        for chunk in rows.chunks(6) {
            for pair in chunk.windows(2) {
                assert!(
                    pair[1].gap <= pair[0].gap + 1e-12 * (pair[0].rhs.abs() + 1.0),
                    "gap grew with depth at nu = {}",
                    pair[0].nu
                );
            }
        }
        // nu = 1/16 needs exactly 4 levels to close the gap.
        let row = rows
            .iter()
            .find(|r| (r.nu - 0.0625).abs() < 1e-15 && r.depth == 4)
            .unwrap();
        assert!(row.gap.abs() <= 1e-12 * (2.0 + 5.0));
    }

    #[test]
    fn depth_one_gap_equals_single_term_baseline_gap() {
        let grid = weight_grid(0.0, 1.0, 0.03125).unwrap();
        let rows = gap_report("scalar.young.refined", 2.0, 5.0, &grid, 1).unwrap();
        for r in &rows {
            assert!(
                (r.gap - r.baseline_gaps[1]).abs() <= 1e-11 * r.rhs.abs().max(1.0),
                "depth-1 gap differs from the single-term baseline at nu = {}",
                r.nu
            );
        }
    }

    #[test]
    fn non_tabular_entries_are_rejected() {
        let grid = weight_grid(0.0, 1.0, 0.5).unwrap();
        assert!(gap_report("scalar.symmetry", 2.0, 5.0, &grid, 2).is_err());
        assert!(gap_report("op.kanto", 2.0, 5.0, &grid, 2).is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let grid = weight_grid(0.25, 0.75, 0.25).unwrap();
        let rows = gap_report("scalar.young.refined", 2.0, 5.0, &grid, 2).unwrap();
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), 1 + rows.len());
        assert!(csv.starts_with("nu,depth,lhs,rhs,gap"));
    }
}
