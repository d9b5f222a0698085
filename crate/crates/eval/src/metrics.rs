//! Run-level metrics: acceptance, polarity accuracy, budget replay, rescue
//! rate, failure buckets and stratified accuracy.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::episode::{Condition, Trace};
use crate::verify::{Bucket, Verdict};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("the run has no graded instances")]
    EmptyRun,
    #[error("sim@k needs a tools-condition run with traces")]
    MissingTraces,
    #[error("unknown stratification axis {0:?} (expected polarity, backend or family)")]
    UnknownAxis(String),
}

/// Graded traces of one agent on one dataset under one condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalRun {
    pub dataset: String,
    pub condition: Condition,
    pub traces: Vec<Trace>,
}

impl EvalRun {
    fn nonempty(&self) -> Result<usize, MetricError> {
        match self.traces.len() {
            0 => Err(MetricError::EmptyRun),
            n => Ok(n),
        }
    }
}

fn mean(run: &EvalRun, f: impl Fn(&Verdict) -> bool) -> Result<f64, MetricError> {
    let n = run.nonempty()?;
    Ok(run.traces.iter().filter(|t| f(&t.verdict)).count() as f64 / n as f64)
}

/// Fraction of instances the verifier accepted.
pub fn accuracy(run: &EvalRun) -> Result<f64, MetricError> {
    mean(run, |v| v.correct)
}

/// Fraction of instances with the correct SAT/UNSAT claim.
pub fn sat_acc(run: &EvalRun) -> Result<f64, MetricError> {
    mean(run, |v| v.satisfiability_correct)
}

/// Polarity accuracy minus acceptance, in percentage points.
pub fn witness_gap(run: &EvalRun) -> Result<f64, MetricError> {
    Ok((sat_acc(run)? - accuracy(run)?) * 100.0)
}

/// Where a force-submitted trace is placed on the round axis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForcedRounds {
    /// All rounds the episode used; at budget exhaustion this is the budget.
    #[default]
    Total,
    /// The last execute round.
    LastExecute,
}

/// Rounds used before the final submission of a trace.
pub fn rounds_used(t: &Trace, conv: ForcedRounds) -> usize {
    if t.forced_submit && conv == ForcedRounds::LastExecute {
        return t
            .rounds
            .iter()
            .rposition(|r| r.tool == crate::agent::EXECUTE_TOOL)
            .map_or(0, |i| i + 1);
    }
    t.rounds.len()
}

/// Acceptance counting only traces whose submission came within `k` rounds.
pub fn sim_at_k(run: &EvalRun, k: usize, conv: ForcedRounds) -> Result<f64, MetricError> {
    if run.condition != Condition::Tools {
        return Err(MetricError::MissingTraces);
    }
    let n = run.nonempty()?;
    let hits = run
        .traces
        .iter()
        .filter(|t| t.verdict.correct && rounds_used(t, conv) <= k)
        .count();
    Ok(hits as f64 / n as f64)
}

/// The verdict a trace would have received under a cap of `k` rounds.
pub fn replay_verdict(t: &Trace, k: usize, conv: ForcedRounds) -> Verdict {
    if rounds_used(t, conv) <= k {
        t.verdict.clone()
    } else {
        Verdict::unparsed(
            t.verdict.ground_truth_satisfiable,
            Bucket::MaxRounds,
            format!("No submission within {k} rounds"),
        )
    }
}

/// Correct force-submitted episodes over all force-submitted episodes; 0
/// when nothing was force-submitted.
pub fn rescue_rate(run: &EvalRun) -> f64 {
    let forced: Vec<&Trace> = run.traces.iter().filter(|t| t.forced_submit).collect();
    if forced.is_empty() {
        return 0.0;
    }
    forced.iter().filter(|t| t.verdict.correct).count() as f64 / forced.len() as f64
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForceSubmitSummary {
    pub total: usize,
    pub explicit: usize,
    pub forced: usize,
    pub forced_correct: usize,
}

pub fn force_submit_summary(run: &EvalRun) -> ForceSubmitSummary {
    ForceSubmitSummary {
        total: run.traces.len(),
        explicit: run.traces.iter().filter(|t| t.explicit_submission).count(),
        forced: run.traces.iter().filter(|t| t.forced_submit).count(),
        forced_correct: run
            .traces
            .iter()
            .filter(|t| t.forced_submit && t.verdict.correct)
            .count(),
    }
}

/// Count per failure bucket, every bucket present; `None` holds the accepted count.
pub fn bucket_counts(run: &EvalRun) -> BTreeMap<Bucket, usize> {
    let mut out: BTreeMap<Bucket, usize> = Bucket::ALL.iter().map(|&b| (b, 0)).collect();
    for t in &run.traces {
        let b = if t.verdict.correct { Bucket::None } else { t.verdict.failure_bucket };
        *out.entry(b).or_default() += 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Polarity,
    Backend,
    Family,
}

impl std::str::FromStr for Axis {
    type Err = MetricError;

    fn from_str(s: &str) -> Result<Self, MetricError> {
        match s {
            "polarity" => Ok(Axis::Polarity),
            "backend" | "backend-class" | "backend_class" => Ok(Axis::Backend),
            "family" => Ok(Axis::Family),
            _ => Err(MetricError::UnknownAxis(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stratum {
    pub label: String,
    pub n: usize,
    pub accuracy: f64,
    pub sat_acc: f64,
}

fn stratum_label(t: &Trace, axis: Axis) -> String {
    match axis {
        Axis::Polarity => t.polarity.label().to_string(),
        Axis::Backend => t.backend.label().to_string(),
        Axis::Family => t.family.clone(),
    }
}

/// Accuracy recomputed within each stratum, strata sorted by label.
pub fn stratify(run: &EvalRun, axis: Axis) -> Result<Vec<Stratum>, MetricError> {
    run.nonempty()?;
    let mut groups: BTreeMap<String, Vec<&Trace>> = BTreeMap::new();
    for t in &run.traces {
        groups.entry(stratum_label(t, axis)).or_default().push(t);
    }
    Ok(groups
        .into_iter()
        .map(|(label, ts)| {
            let n = ts.len();
            Stratum {
                label,
                n,
                accuracy: ts.iter().filter(|t| t.verdict.correct).count() as f64 / n as f64,
                sat_acc: ts.iter().filter(|t| t.verdict.satisfiability_correct).count() as f64 / n as f64,
            }
        })
        .collect())
}

/// Size-weighted mean of stratum accuracies.
pub fn recombine(strata: &[Stratum]) -> f64 {
    let n: usize = strata.iter().map(|s| s.n).sum();
    if n == 0 {
        return 0.0;
    }
    strata.iter().map(|s| s.accuracy * s.n as f64).sum::<f64>() / n as f64
}

pub const SIM_KS: [usize; 4] = [1, 2, 4, 8];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub condition: Condition,
    pub n: usize,
    pub accuracy: f64,
    pub sat_acc: f64,
    pub witness_gap: f64,
    /// Present for tools runs.
    pub sim: Vec<(usize, f64)>,
    pub rescue_rate: f64,
    pub force_submit: ForceSubmitSummary,
    pub buckets: BTreeMap<Bucket, usize>,
    pub by_polarity: Vec<Stratum>,
    pub by_backend: Vec<Stratum>,
    pub by_family: Vec<Stratum>,
}

impl MetricReport {
    pub fn compute(run: &EvalRun, ks: &[usize], conv: ForcedRounds) -> Result<Self, MetricError> {
        let sim = match run.condition {
            Condition::Tools => ks
                .iter()
                .map(|&k| Ok((k, sim_at_k(run, k, conv)?)))
                .collect::<Result<Vec<_>, MetricError>>()?,
            Condition::NoTools => Vec::new(),
        };
        Ok(MetricReport {
            condition: run.condition,
            n: run.nonempty()?,
            accuracy: accuracy(run)?,
            sat_acc: sat_acc(run)?,
            witness_gap: witness_gap(run)?,
            sim,
            rescue_rate: rescue_rate(run),
            force_submit: force_submit_summary(run),
            buckets: bucket_counts(run),
            by_polarity: stratify(run, Axis::Polarity)?,
            by_backend: stratify(run, Axis::Backend)?,
            by_family: stratify(run, Axis::Family)?,
        })
    }
}
