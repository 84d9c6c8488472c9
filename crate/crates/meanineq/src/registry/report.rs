//! Randomized verification suites and their JSON reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::instance::TrialInstance;
use crate::registry::outcome::EvalOutcome;
use crate::registry::sample::{trial_rng, SampleCfg, WEIGHT_PROBES};
use crate::registry::{filter_matches, registry, EntryKind};

/// Suite parameters.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub filter: String,
    pub trials: u32,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub depth_max: u32,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            filter: "all".into(),
            trials: 100,
            seed: 42,
            dims: vec![2, 3, 4, 8],
            depth_max: 4,
            tol: crate::DEFAULT_TOL,
        }
    }
}

/// A failing (or worst observed) instance, ready for `--replay`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplayInstance {
    pub entry: String,
    pub instance: TrialInstance,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub paper_location: String,
    pub pass: bool,
    pub trials: u32,
    /// Minimum normalized margin over all trials (negative means the
    /// inequality side lost by that relative amount).
    pub worst_margin: f64,
    pub worst_instance: Option<ReplayInstance>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub suite: String,
    pub seed: u64,
    pub trials: u32,
    pub tol_rel: f64,
    pub entries: Vec<EntryReport>,
    pub wall_ms: u64,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Usage(format!("cannot parse report JSON: {e}")))
    }
}

/// Runs every entry matching the filter for `trials` independent samples.
/// The first samples of each entry probe the weight seams
/// `{0, 1/4, 1/2, 3/4, 1}`; the rest are random. Deterministic for a fixed
/// seed: per-trial generators derive from `(seed, entry id, trial index)`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let entries: Vec<_> =
        registry().into_iter().filter(|e| filter_matches(&cfg.filter, e.id)).collect();
    if entries.is_empty() {
        return Err(Error::UnknownEntry(format!("no entry matches filter `{}`", cfg.filter)));
    }
    let sample_cfg = SampleCfg { dims: cfg.dims.clone(), depth_max: cfg.depth_max };

    let mut reports = Vec::with_capacity(entries.len());
    for entry in &entries {
        let mut worst: Option<(f64, TrialInstance)> = None;
        for trial in 0..cfg.trials {
            let probe = WEIGHT_PROBES.get(trial as usize).copied();
            let mut rng = trial_rng(cfg.seed, entry.id, trial);
            let instance = entry.sample(&mut rng, &sample_cfg, probe);
            let outcome: EvalOutcome = entry.evaluate(&instance)?;
            if worst.as_ref().map_or(true, |(m, _)| outcome.margin < *m) {
                worst = Some((outcome.margin, instance));
            }
        }
        let (worst_margin, worst_instance) = worst.expect("at least one trial");
        let pass = entry.kind == EntryKind::Diagnostic || worst_margin >= -cfg.tol;
        reports.push(EntryReport {
            id: entry.id.to_string(),
            paper_location: entry.paper_location.to_string(),
            pass,
            trials: cfg.trials,
            worst_margin,
            worst_instance: Some(ReplayInstance {
                entry: entry.id.to_string(),
                instance: worst_instance,
            }),
        });
    }

    Ok(VerificationReport {
        version: 1,
        suite: cfg.filter.clone(),
        seed: cfg.seed,
        trials: cfg.trials,
        tol_rel: cfg.tol,
        entries: reports,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

/// Re-evaluates one serialized instance; returns the outcome.
pub fn replay(replay: &ReplayInstance) -> Result<EvalOutcome> {
    let entry = crate::registry::find_entry(&replay.entry)?;
    entry.evaluate(&replay.instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg(filter: &str) -> SuiteConfig {
        SuiteConfig {
            filter: filter.into(),
            trials: 8,
            seed: 42,
            dims: vec![2, 3],
            depth_max: 3,
            tol: 1e-10,
        }
    }

    #[test]
    fn scalar_suite_is_deterministic_and_green() {
        let cfg = small_cfg("scalar.*");
        let a = run_suite(&cfg).unwrap();
        let mut b = run_suite(&cfg).unwrap();
        assert!(a.all_pass(), "{}", a.to_json());
        b.wall_ms = a.wall_ms;
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn unknown_filter_is_an_error() {
        assert!(run_suite(&small_cfg("bogus.*")).is_err());
    }

    #[test]
    fn report_round_trips() {
        let report = run_suite(&small_cfg("scalar.young.*")).unwrap();
        let text = report.to_json();
        let parsed = VerificationReport::from_json(&text).unwrap();
        assert_eq!(text, parsed.to_json());
    }

    #[test]
    fn replay_reproduces_margin() {
        let report = run_suite(&small_cfg("scalar.young.refined")).unwrap();
        let worst = report.entries[0].worst_instance.clone().unwrap();
        let outcome = replay(&worst).unwrap();
        assert_eq!(outcome.margin, report.entries[0].worst_margin);
    }
}
