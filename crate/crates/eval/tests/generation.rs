mod common;

use cbench_core::families::{check_witness, lookup};
use cbench_core::solver::SolverHandle;
use cbench_eval::generate::{generate, DropReason, GenerateOptions, Generation};
use cbench_eval::hints::attach_hints;
use cbench_eval::parse::Submission;
use cbench_eval::profile::Profile;
use cbench_eval::record::{read_dataset, write_jsonl, Polarity};
use cbench_eval::verify::Bucket;
use common::{record, verifier};

const MIXED: &str = r#"
seed = 11
budget_seconds = 60

[hints]
probability = 0.5
fraction = 0.25

[[family]]
name = "langford"
count = 6
params = { n = { min = 3, max = 8 } }

[[family]]
name = "queens"
count = 4
params = { n = [4, 5, 6, 3] }

[[family]]
name = "graph_k_coloring"
count = 3
sampling = "random"
params = { n = { min = 6, max = 9 }, k = [2, 3] }
"#;

fn opts(workers: usize) -> GenerateOptions {
    GenerateOptions {
        workers,
        solver: SolverHandle::embedded(),
        ..GenerateOptions::default()
    }
}

fn hex_suffix(id: &str) -> bool {
    let (_, tail) = id.rsplit_once("__").unwrap();
    tail.len() == 16 && tail.chars().all(|c| c.is_ascii_hexdigit())
}

fn dataset_bytes(g: &Generation) -> Vec<u8> {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.jsonl");
    write_jsonl(&path, &g.records).unwrap();
    std::fs::read(path).unwrap()
}

#[test]
fn langford_polarity_follows_n_mod_4() {
    let p = Profile::from_toml(
        r#"
seed = 1
[[family]]
name = "langford"
count = 6
params = { n = { min = 3, max = 8 } }
"#,
    )
    .unwrap();
    let g = generate(&p, &opts(1)).unwrap();
    assert!(g.complete && g.dropped.is_empty());
    let pol: Vec<Polarity> = g.records.iter().map(|r| r.polarity).collect();
    use Polarity::{Sat, Unsat};
    assert_eq!(pol, [Sat, Sat, Unsat, Unsat, Sat, Sat]);
    assert_eq!(g.timings.len(), 6);
    assert!(g.records.iter().all(|r| r.id.starts_with("langford_n") && hex_suffix(&r.id)));
}

#[test]
fn same_profile_and_seed_give_identical_bytes() {
    let p = Profile::from_toml(MIXED).unwrap();
    let a = generate(&p, &opts(1)).unwrap();
    let b = generate(&p, &opts(1)).unwrap();
    let c = generate(&p, &opts(4)).unwrap();
    assert_eq!(a.records.len(), 13);
    assert_eq!(dataset_bytes(&a), dataset_bytes(&b));
    assert_eq!(dataset_bytes(&a), dataset_bytes(&c));
    assert!(a.records.iter().any(|r| !r.hints.is_empty()));
    assert!(a.records.iter().any(|r| r.difficulty.num_edges.is_some()));

    let mut other = p.clone();
    other.seed += 1;
    let d = generate(&other, &opts(1)).unwrap();
    assert_ne!(dataset_bytes(&a), dataset_bytes(&d));
}

#[test]
fn every_sat_record_carries_a_valid_witness() {
    let p = Profile::from_toml(MIXED).unwrap();
    let g = generate(&p, &opts(2)).unwrap();
    let v = verifier();
    for r in &g.records {
        let f = lookup(&r.family).unwrap();
        match r.polarity {
            Polarity::Sat => {
                let w = r.witness.as_ref().unwrap();
                check_witness(f, &r.params, &r.data, w).unwrap();
                assert!(v.verify(r, &Submission::sat(w.clone())).correct, "{}", r.id);
            }
            Polarity::Unsat => {
                assert!(r.witness.is_none() && r.hints.is_empty());
                assert!(v.verify(r, &Submission::unsat()).correct);
            }
        }
        for h in &r.hints {
            assert!(r.prompt.contains(&format!("- {}={}", h.var, h.value)));
        }
    }
}

#[test]
fn interrupted_run_resumes_to_the_same_dataset() {
    let p = Profile::from_toml(MIXED).unwrap();
    let full = generate(&p, &opts(2)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut o = opts(2);
    o.checkpoint_dir = Some(dir.path().to_path_buf());
    o.job_limit = Some(2);
    let first = generate(&p, &o).unwrap();
    assert!(!first.complete);
    assert_eq!(first.records.len() + first.dropped.len(), 4);
    let mut rounds = 1;
    let resumed = loop {
        let g = generate(&p, &o).unwrap();
        rounds += 1;
        if g.complete {
            break g;
        }
    };
    assert_eq!(rounds, 4);
    assert_eq!(dataset_bytes(&resumed), dataset_bytes(&full));

    o.workers = 3;
    assert!(generate(&p, &o).is_err());
}

#[test]
fn timeouts_and_invalid_points_are_dropped() {
    let p = Profile::from_toml(
        r#"
seed = 5
budget_seconds = 0.000001
[[family]]
name = "queens"
count = 2
params = { n = [40] }
"#,
    )
    .unwrap();
    let g = generate(&p, &opts(1)).unwrap();
    assert!(g.records.is_empty());
    assert_eq!(g.dropped.len(), 2);
    assert!(g.dropped.iter().all(|d| matches!(d.reason, DropReason::Timeout { .. })));
}

#[test]
fn full_hints_reject_the_other_queens_solution() {
    let rec = record("queens", &[("n", 4)]);
    let w = rec.witness.clone().unwrap();
    let other: Vec<i64> = w.iter().rev().copied().collect();
    assert_ne!(w, other);
    let v = verifier();
    assert!(v.verify(&rec, &Submission::sat(other.clone())).correct);
    let hinted = attach_hints(&rec, 3, 1.0).unwrap();
    assert_eq!(hinted.hints.len(), 4);
    assert!(hex_suffix(&hinted.id) && hinted.id != rec.id);
    let verdict = v.verify(&hinted, &Submission::sat(other));
    assert_eq!(verdict.failure_bucket, Bucket::WrongSolution);
    assert!(verdict.validation_details.starts_with("Partial assignment violated"));
    assert!(v.verify(&hinted, &Submission::sat(w)).correct);
}

#[test]
fn datasets_round_trip_through_jsonl() {
    let p = Profile::from_toml(MIXED).unwrap();
    let g = generate(&p, &opts(1)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.jsonl");
    write_jsonl(&path, &g.records).unwrap();
    assert_eq!(read_dataset(&path).unwrap(), g.records);
}
