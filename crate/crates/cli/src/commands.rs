use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Duration;

use cbench_core::certify::{certify as certify_instance, Outcome};
use cbench_core::error::FamilyError;
use cbench_core::families::{
    self, backend_class, normalize_params, sample_variable_data, DataKind, Params, VarData,
};
use cbench_core::solver::{Backend, SolverHandle};
use cbench_eval::admit::admit_all;
use cbench_eval::agent::AgentConfig;
use cbench_eval::batch::{evaluate as run_all, verify_batch, SubmissionLine, VerdictLine};
use cbench_eval::episode::{Condition, EpisodeConfig, Trace};
use cbench_eval::generate::{generate as run_generation, GenerateError, GenerateOptions};
use cbench_eval::metrics::{EvalRun, ForcedRounds, MetricReport};
use cbench_eval::profile::Profile;
use cbench_eval::record::{read_dataset, read_jsonl, read_jsonl_lines, write_jsonl, InstanceRecord};
use cbench_eval::report::{all_tables, pct, sim_table, write_report};
use cbench_eval::sandbox::{execute_script, SandboxPolicy};
use cbench_eval::verify::{Bucket, Verifier};
use serde::{Deserialize, Serialize};

use crate::summary::GenerationSummary;
use crate::{
    AdmitArgs, CertifyArgs, EvaluateArgs, Failure, Forced, GenerateArgs, ReplayArgs, ReportArgs, VerifyArgs,
};

type Res = Result<(), Failure>;

fn data(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

fn family_failure(e: FamilyError) -> Failure {
    match e {
        FamilyError::UnknownFamily(_) | FamilyError::InvalidParams { .. } => Failure::Usage(e.to_string()),
        FamilyError::NoSampler(_) | FamilyError::DataMismatch(_) => Failure::Data(e.to_string()),
        _ => Failure::Solver(e.to_string()),
    }
}

/// Sibling file: `d.jsonl` becomes `d.<tag>.jsonl`.
fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}.{tag}.jsonl"))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// An external solver must answer a trivial instance before a long run starts.
fn check_solver(solver: &SolverHandle) -> Res {
    if matches!(solver.backend(), Backend::Embedded) {
        return Ok(());
    }
    let f = families::lookup("queens").expect("queens is registered");
    let p = normalize_params(f, &[("n".to_string(), 4)].into()).expect("valid");
    match certify_instance(f, &p, &VarData::default(), solver, Duration::from_secs(30)) {
        Ok(c) if matches!(c.outcome, Outcome::Sat(_)) => Ok(()),
        Ok(c) => Err(Failure::Solver(format!(
            "external solver answered {} on a satisfiable probe",
            c.outcome.label()
        ))),
        Err(e) => Err(Failure::Solver(e.to_string())),
    }
}

pub fn generate(a: GenerateArgs) -> Res {
    let mut profile = Profile::load(&a.profile).map_err(data)?;
    if let Some(s) = a.seed {
        profile.seed = s;
    }
    if let Some(b) = a.budget_seconds {
        profile.budget_seconds = b;
    }
    profile.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    if a.workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    let solver = SolverHandle::from_env();
    check_solver(&solver)?;
    let opts = GenerateOptions {
        workers: a.workers,
        checkpoint_dir: a.checkpoint_dir,
        job_limit: None,
        solver,
    };
    let g = run_generation(&profile, &opts).map_err(|e| match e {
        GenerateError::CheckpointMismatch(_) => Failure::Usage(e.to_string()),
        GenerateError::Data(_) => data(e),
    })?;
    write_jsonl(&a.out, &g.records).map_err(data)?;
    write_jsonl(&sibling(&a.out, "timings"), &g.timings).map_err(data)?;
    write_jsonl(&sibling(&a.out, "dropped"), &g.dropped).map_err(data)?;
    let summary = GenerationSummary::new(&g);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    } else {
        print!("{summary}");
    }
    Ok(())
}

fn parse_params(raw: &[String]) -> Result<Params, Failure> {
    raw.iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("parameter {kv:?} is not NAME=VALUE")))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("parameter {k} needs an integer value")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

#[derive(Serialize)]
struct CertifyOutput<'a> {
    family: &'a str,
    params: &'a Params,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a [i64]>,
    elapsed_seconds: f64,
    conflicts: u64,
    decisions: u64,
}

pub fn certify(a: CertifyArgs) -> Res {
    let f = families::lookup(&a.family).map_err(family_failure)?;
    let p = normalize_params(f, &parse_params(&a.params)?).map_err(family_failure)?;
    let data = match f.data_kind() {
        DataKind::None => VarData::default(),
        _ => sample_variable_data(f, &p, a.seed).map_err(family_failure)?,
    };
    if !(a.budget_seconds > 0.0) {
        return Err(Failure::Usage("--budget-seconds must be positive".into()));
    }
    let solver = SolverHandle::from_env();
    let c = certify_instance(f, &p, &data, &solver, Duration::from_secs_f64(a.budget_seconds))
        .map_err(family_failure)?;
    let out = CertifyOutput {
        family: f.name(),
        params: &p,
        outcome: c.outcome.label(),
        witness: match &c.outcome {
            Outcome::Sat(w) => Some(w),
            _ => None,
        },
        elapsed_seconds: c.elapsed.as_secs_f64(),
        conflicts: c.effort.conflicts,
        decisions: c.effort.decisions,
    };
    println!("{}", serde_json::to_string(&out).expect("output serializes"));
    Ok(())
}

fn print_buckets(counts: &BTreeMap<Bucket, usize>, errors: usize, total: usize) {
    println!("graded {}  errors {}", total - errors, errors);
    for b in Bucket::ALL {
        println!("  {:<14} {}", b.label(), counts.get(&b).copied().unwrap_or(0));
    }
}

pub fn verify(a: VerifyArgs) -> Res {
    let dataset = read_dataset(&a.dataset).map_err(data)?;
    let lines = read_jsonl_lines::<SubmissionLine>(&a.submissions).map_err(data)?;
    if !(a.budget_seconds > 0.0) {
        return Err(Failure::Usage("--budget-seconds must be positive".into()));
    }
    let verifier = Verifier {
        budget: Duration::from_secs_f64(a.budget_seconds),
        cross_check: !a.no_cross_check,
        ..Verifier::default()
    };
    let verdicts = verify_batch(&dataset, &lines, &verifier);
    write_jsonl(&a.out, &verdicts).map_err(data)?;
    let mut counts: BTreeMap<Bucket, usize> = BTreeMap::new();
    for v in verdicts.iter().filter_map(|l| l.verdict.as_ref()) {
        let b = if v.correct { Bucket::None } else { v.failure_bucket };
        *counts.entry(b).or_default() += 1;
    }
    let errors = verdicts.iter().filter(|l| l.error.is_some()).count();
    print_buckets(&counts, errors, verdicts.len());
    Ok(())
}

pub fn evaluate(a: EvaluateArgs) -> Res {
    let dataset = read_dataset(&a.dataset).map_err(data)?;
    let text = std::fs::read_to_string(&a.agent)
        .map_err(|e| Failure::Data(format!("cannot read {}: {e}", a.agent.display())))?;
    let agent = AgentConfig::parse(&text).map_err(|e| Failure::Data(format!("{}: {e}", a.agent.display())))?;
    let sandbox = SandboxPolicy::default();
    if a.condition == Condition::Tools {
        if let Err(e) = execute_script(&sandbox, "pass", Duration::from_secs(10)) {
            return Err(Failure::Solver(e.to_string()));
        }
    }
    let solver = SolverHandle::from_env();
    check_solver(&solver)?;
    let cfg = EpisodeConfig {
        budget: a.budget,
        sandbox,
        verifier: Verifier {
            solver,
            ..Verifier::default()
        },
        store_outputs: !a.no_outputs,
        ..EpisodeConfig::default()
    };
    let traces = run_all(&dataset, &agent, a.condition, &cfg, a.workers);
    write_jsonl(&a.out, &traces).map_err(data)?;
    let correct = traces.iter().filter(|t| t.verdict.correct).count();
    println!(
        "{} episodes  accepted {} ({}%)  forced {}",
        traces.len(),
        correct,
        if traces.is_empty() { "0.0".into() } else { pct(correct as f64 / traces.len() as f64) },
        traces.iter().filter(|t| t.forced_submit).count()
    );
    Ok(())
}

fn conv(f: Forced) -> ForcedRounds {
    match f {
        Forced::Total => ForcedRounds::Total,
        Forced::LastExecute => ForcedRounds::LastExecute,
    }
}

fn load_run(path: &Path) -> Result<EvalRun, Failure> {
    let traces: Vec<Trace> = read_jsonl(path).map_err(data)?;
    let Some(first) = traces.first() else {
        return Err(Failure::Data(format!("{}: no traces", path.display())));
    };
    let condition = first.condition;
    if traces.iter().any(|t| t.condition != condition) {
        return Err(Failure::Data(format!("{}: traces mix conditions", path.display())));
    }
    Ok(EvalRun {
        dataset: path.display().to_string(),
        condition,
        traces,
    })
}

fn check_ks(ks: &[usize]) -> Res {
    if ks.is_empty() || ks.contains(&0) {
        return Err(Failure::Usage("--k needs positive round caps".into()));
    }
    Ok(())
}

pub fn replay(a: ReplayArgs) -> Res {
    check_ks(&a.k)?;
    let run = load_run(&a.traces)?;
    if run.condition != Condition::Tools {
        return Err(Failure::Data(format!(
            "{}: sim@k needs tools-condition traces",
            a.traces.display()
        )));
    }
    let m = MetricReport::compute(&run, &a.k, conv(a.forced)).map_err(data)?;
    let label = a.label.unwrap_or_else(|| stem(&a.traces));
    let t = sim_table(&[(label, &m)], &a.k);
    if a.csv {
        print!("{}", t.to_csv());
    } else {
        print!("{}", t.to_text());
    }
    Ok(())
}

pub fn report(a: ReportArgs) -> Res {
    check_ks(&a.k)?;
    let mut labelled = Vec::new();
    for path in &a.traces {
        let run = load_run(path)?;
        let m = MetricReport::compute(&run, &a.k, conv(a.forced)).map_err(data)?;
        labelled.push((stem(path), m));
    }
    let runs: Vec<(String, &MetricReport)> = labelled.iter().map(|(l, m)| (l.clone(), m)).collect();
    let tables = all_tables(&runs, &a.k);
    write_report(&a.out, &tables).map_err(data)?;
    for t in &tables {
        println!("{}", t.to_text());
    }
    Ok(())
}

/// A cohort file holds traces or verdict lines.
#[derive(Deserialize)]
#[serde(untagged)]
enum Graded {
    Trace(Box<Trace>),
    Verdict(VerdictLine),
}

fn cohort_member(path: &Path) -> Result<BTreeMap<String, bool>, Failure> {
    let mut out = BTreeMap::new();
    for g in read_jsonl::<Graded>(path).map_err(data)? {
        let (id, ok) = match g {
            Graded::Trace(t) => (t.instance_id, t.verdict.correct),
            Graded::Verdict(v) => match (v.id, v.verdict) {
                (Some(id), Some(v)) => (id, v.correct),
                (id, _) => {
                    return Err(Failure::Data(format!(
                        "{}: ungraded line for {}",
                        path.display(),
                        id.as_deref().unwrap_or("an unknown id")
                    )))
                }
            },
        };
        out.insert(id, ok);
    }
    Ok(out)
}

pub fn admit(a: AdmitArgs) -> Res {
    let dataset = read_dataset(&a.dataset).map_err(data)?;
    let mut cohort = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for path in &a.cohort {
        let mut name = stem(path);
        while !seen.insert(name.clone()) {
            name.push('\'');
        }
        cohort.insert(name, cohort_member(path)?);
    }
    let ids: Vec<String> = dataset.iter().map(|r| r.id.clone()).collect();
    let decisions = admit_all(&ids, &cohort).map_err(data)?;
    let kept: Vec<InstanceRecord> = dataset
        .into_iter()
        .zip(&decisions)
        .filter(|(_, (_, keep))| *keep)
        .map(|(r, _)| r)
        .collect();
    write_jsonl(&a.out, &kept).map_err(data)?;
    println!(
        "admitted {} of {} instances against {} cohort members",
        kept.len(),
        decisions.len(),
        cohort.len()
    );
    Ok(())
}

pub fn families() -> Res {
    for f in families::registry() {
        let params: Vec<String> = f
            .params()
            .iter()
            .map(|p| format!("{}={}..{} (default {})", p.name, p.min, p.max, p.default))
            .collect();
        println!("{:<26} {:<4} {}", f.name(), backend_class(*f).label(), params.join(", "));
    }
    Ok(())
}
