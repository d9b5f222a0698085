//! Profile-driven instance generation with per-worker checkpoints.
//!
//! The profile expands to a fixed job list (family spec, index). Worker `w`
//! owns the jobs whose position is `w` modulo the worker count, processes them
//! in order and checkpoints after each one. Accepted records are merged in job
//! order, so the dataset does not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use cbench_core::certify::{certify, Outcome};
use cbench_core::error::FamilyError;
use cbench_core::families::{
    render_prompt, sample_variable_data, DataKind, Family, Params, VarData,
};
use cbench_core::rng;
use cbench_core::solver::SolverHandle;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hints::attach_hints;
use crate::profile::{candidate_params, Profile};
use crate::record::{
    read_jsonl_lines, record_id, variant_tag, DataError, Difficulty, InstanceRecord, Polarity,
    Timing, CONTRACT_VERSION,
};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("checkpoint {0} belongs to a different profile or worker layout")]
    CheckpointMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum DropReason {
    Timeout { elapsed_seconds: f64 },
    InvalidParams { detail: String },
    Error { detail: String },
}

/// A candidate that did not become a record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dropped {
    pub family: String,
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    #[serde(flatten)]
    pub reason: DropReason,
}

pub enum Candidate {
    Accepted(InstanceRecord, Timing),
    TimedOut(Duration),
}

fn difficulty(f: &dyn Family, params: &Params, data: &VarData, effort: (u64, u64)) -> Difficulty {
    let num_edges = data.edges.as_ref().map(Vec::len);
    let (num_vars, num_constraints, log10_search_space) = match f.build(params, data) {
        Some(b) => (
            b.model.num_vars(),
            b.model.constraints().len(),
            b.model.log10_search_space(&b.witness.vars()),
        ),
        // Only the ±1 sequence family lacks a model.
        None => {
            let n = f.witness_len(params).unwrap_or(0);
            (n, 0, n as f64 * 2f64.log10())
        }
    };
    Difficulty {
        num_vars,
        num_constraints,
        num_edges,
        log10_search_space: (log10_search_space * 1e4).round() / 1e4,
        conflicts: effort.0,
        decisions: effort.1,
    }
}

/// Samples data for one parameter point, certifies it and assembles the record.
pub fn make_record(
    f: &dyn Family,
    params: &Params,
    seed: u64,
    solver: &SolverHandle,
    budget: Duration,
) -> Result<Candidate, FamilyError> {
    let data = match f.data_kind() {
        DataKind::None => VarData::default(),
        _ => sample_variable_data(f, params, seed)?,
    };
    let cert = certify(f, params, &data, solver, budget)?;
    let (polarity, witness) = match cert.outcome {
        Outcome::Sat(w) => (Polarity::Sat, Some(w)),
        Outcome::Unsat => (Polarity::Unsat, None),
        Outcome::Timeout => return Ok(Candidate::TimedOut(cert.elapsed)),
    };
    let id = record_id(f, params, seed, variant_tag(false));
    let record = InstanceRecord {
        id: id.clone(),
        family: f.name().to_string(),
        params: params.clone(),
        seed,
        prompt: render_prompt(f, params, &data, &[]),
        difficulty: difficulty(f, params, &data, (cert.effort.conflicts, cert.effort.decisions)),
        data,
        polarity,
        witness,
        hints: Vec::new(),
        contract_version: CONTRACT_VERSION.to_string(),
    };
    Ok(Candidate::Accepted(
        record,
        Timing {
            id,
            certify_seconds: cert.elapsed.as_secs_f64(),
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Job {
    order: usize,
    spec: usize,
    index: usize,
}

fn jobs(profile: &Profile) -> Vec<Job> {
    let mut out = Vec::new();
    for (spec, fs) in profile.families.iter().enumerate() {
        for index in 0..fs.count {
            out.push(Job {
                order: out.len(),
                spec,
                index,
            });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
enum JobResult {
    Accepted { record: InstanceRecord, timing: Timing },
    Dropped(Dropped),
}

fn run_job(profile: &Profile, job: Job, solver: &SolverHandle) -> JobResult {
    let spec = &profile.families[job.spec];
    let drop = |params: Option<Params>, reason| {
        JobResult::Dropped(Dropped {
            family: spec.name.clone(),
            index: job.index,
            params,
            reason,
        })
    };
    let f = match cbench_core::families::lookup(&spec.name) {
        Ok(f) => f,
        Err(e) => return drop(None, DropReason::Error { detail: e.to_string() }),
    };
    let Some(params) = candidate_params(f, spec, profile.seed, job.index) else {
        return drop(
            None,
            DropReason::InvalidParams {
                detail: "no valid parameter point drawn".into(),
            },
        );
    };
    let seed = rng::derive_seed(profile.seed, &spec.name, job.index as u64);
    let budget = Duration::from_secs_f64(profile.budget_seconds);
    match make_record(f, &params, seed, solver, budget) {
        Err(e) => drop(Some(params), DropReason::Error { detail: e.to_string() }),
        Ok(Candidate::TimedOut(elapsed)) => {
            log::warn!(
                "{} candidate {} timed out after {:.2}s; dropped",
                spec.name,
                job.index,
                elapsed.as_secs_f64()
            );
            drop(
                Some(params),
                DropReason::Timeout {
                    elapsed_seconds: elapsed.as_secs_f64(),
                },
            )
        }
        Ok(Candidate::Accepted(mut record, mut timing)) => {
            let hinted = record.is_sat()
                && profile.hints.probability > 0.0
                && rng::stream(seed, "hint-policy", 0).gen_bool(profile.hints.probability);
            if hinted {
                match attach_hints(&record, seed, profile.hints.fraction) {
                    Ok(r) => record = r,
                    Err(e) => return drop(Some(params), DropReason::Error { detail: e.to_string() }),
                }
                timing.id = record.id.clone();
            }
            JobResult::Accepted { record, timing }
        }
    }
}

/// Per-worker resume state.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub worker: usize,
    pub workers: usize,
    pub profile_digest: String,
    /// Number of this worker's jobs already processed.
    pub cursor: usize,
    pub accepted: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Entry {
    order: usize,
    result: JobResult,
}

fn profile_digest(p: &Profile) -> String {
    use sha2::{Digest, Sha256};
    let s = serde_json::to_string(p).expect("profile serializes");
    hex::encode(Sha256::digest(s.as_bytes()))[..16].to_string()
}

struct WorkerFiles {
    checkpoint: PathBuf,
    entries: PathBuf,
}

fn worker_files(dir: &Path, w: usize) -> WorkerFiles {
    WorkerFiles {
        checkpoint: dir.join(format!("worker-{w}.ckpt.json")),
        entries: dir.join(format!("worker-{w}.entries.jsonl")),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), DataError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| DataError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| DataError::io(path, e))
}

#[derive(Clone, Debug)]
pub struct GenerateOptions {
    pub workers: usize,
    /// Directory for checkpoints; generation resumes from it when present.
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop each worker after this many jobs in this call.
    pub job_limit: Option<usize>,
    pub solver: SolverHandle,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            workers: 1,
            checkpoint_dir: None,
            job_limit: None,
            solver: SolverHandle::from_env(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Generation {
    pub records: Vec<InstanceRecord>,
    pub timings: Vec<Timing>,
    pub dropped: Vec<Dropped>,
    /// Every job has been processed.
    pub complete: bool,
}

struct WorkerOutput {
    entries: Vec<Entry>,
    accepted: BTreeSet<String>,
    done: bool,
}

fn run_worker(
    profile: &Profile,
    digest: &str,
    my_jobs: &[Job],
    w: usize,
    opts: &GenerateOptions,
) -> Result<WorkerOutput, GenerateError> {
    let files = opts.checkpoint_dir.as_deref().map(|d| worker_files(d, w));
    let mut ckpt = Checkpoint {
        worker: w,
        workers: opts.workers,
        profile_digest: digest.to_string(),
        ..Default::default()
    };
    let mut entries = Vec::new();
    if let Some(files) = &files {
        if files.checkpoint.exists() {
            let text = fs::read_to_string(&files.checkpoint).map_err(|e| DataError::io(&files.checkpoint, e))?;
            ckpt = serde_json::from_str(&text).map_err(|e| DataError::io(&files.checkpoint, e))?;
            if ckpt.profile_digest != digest || ckpt.workers != opts.workers || ckpt.worker != w {
                return Err(GenerateError::CheckpointMismatch(files.checkpoint.display().to_string()));
            }
        }
        if files.entries.exists() {
            let processed: BTreeSet<usize> = my_jobs[..ckpt.cursor.min(my_jobs.len())]
                .iter()
                .map(|j| j.order)
                .collect();
            let mut seen = BTreeSet::new();
            // Lines written after the last checkpoint belong to jobs that will rerun.
            for line in read_jsonl_lines::<Entry>(&files.entries)? {
                let Ok(e) = line else { continue };
                if processed.contains(&e.order) && seen.insert(e.order) {
                    entries.push(e);
                }
            }
        }
    }
    let mut accepted: BTreeSet<String> = ckpt.accepted.iter().cloned().collect();
    let mut ran = 0;
    while ckpt.cursor < my_jobs.len() {
        if opts.job_limit.is_some_and(|l| ran >= l) {
            break;
        }
        let job = my_jobs[ckpt.cursor];
        let result = run_job(profile, job, &opts.solver);
        let entry = Entry { order: job.order, result };
        if let JobResult::Accepted { record, .. } = &entry.result {
            if !accepted.insert(record.id.clone()) {
                log::warn!("duplicate record id {}; skipped", record.id);
            } else {
                ckpt.accepted.push(record.id.clone());
            }
        }
        ckpt.cursor += 1;
        ran += 1;
        if let Some(files) = &files {
            let line = serde_json::to_string(&entry).map_err(|e| DataError::io(&files.entries, e))?;
            let mut out = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&files.entries)
                .map_err(|e| DataError::io(&files.entries, e))?;
            writeln!(out, "{line}").map_err(|e| DataError::io(&files.entries, e))?;
            out.sync_data().map_err(|e| DataError::io(&files.entries, e))?;
            let bytes = serde_json::to_vec_pretty(&ckpt).map_err(|e| DataError::io(&files.checkpoint, e))?;
            write_atomic(&files.checkpoint, &bytes)?;
        }
        entries.push(entry);
    }
    Ok(WorkerOutput {
        entries,
        accepted,
        done: ckpt.cursor >= my_jobs.len(),
    })
}

/// Runs (or resumes) a profile. The returned records are in job order.
pub fn generate(profile: &Profile, opts: &GenerateOptions) -> Result<Generation, GenerateError> {
    let workers = opts.workers.max(1);
    let opts = GenerateOptions {
        workers,
        ..opts.clone()
    };
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir).map_err(|e| DataError::io(dir, e))?;
    }
    let digest = profile_digest(profile);
    let all = jobs(profile);
    let per_worker: Vec<Vec<Job>> = (0..workers)
        .map(|w| all.iter().copied().filter(|j| j.order % workers == w).collect())
        .collect();
    let outputs: Vec<Result<WorkerOutput, GenerateError>> = std::thread::scope(|s| {
        let handles: Vec<_> = per_worker
            .iter()
            .enumerate()
            .map(|(w, js)| {
                let opts = &opts;
                let digest = &digest;
                s.spawn(move || run_worker(profile, digest, js, w, opts))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("generation worker panicked"))
            .collect()
    });
    let mut merged: BTreeMap<usize, JobResult> = BTreeMap::new();
    let mut complete = true;
    let mut accepted = BTreeSet::new();
    for out in outputs {
        let out = out?;
        complete &= out.done;
        accepted.extend(out.accepted);
        for e in out.entries {
            merged.entry(e.order).or_insert(e.result);
        }
    }
    let mut gen = Generation {
        complete,
        ..Default::default()
    };
    let mut ids = BTreeSet::new();
    for (_, r) in merged {
        match r {
            JobResult::Accepted { record, timing } => {
                if accepted.contains(&record.id) && ids.insert(record.id.clone()) {
                    gen.records.push(record);
                    gen.timings.push(timing);
                }
            }
            JobResult::Dropped(d) => gen.dropped.push(d),
        }
    }
    Ok(gen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_list_follows_profile_order() {
        let p = Profile::from_toml(
            r#"
seed = 1
[[family]]
name = "queens"
count = 2
[[family]]
name = "langford"
count = 3
"#,
        )
        .unwrap();
        let js = jobs(&p);
        assert_eq!(js.len(), 5);
        assert_eq!((js[1].spec, js[1].index), (0, 1));
        assert_eq!((js[4].spec, js[4].index, js[4].order), (1, 2, 4));
    }
}
