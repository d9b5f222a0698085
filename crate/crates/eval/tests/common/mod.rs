#![allow(dead_code)]

use std::time::Duration;

use cbench_core::families::{lookup, normalize_params, render_prompt, Hint, Params};
use cbench_core::solver::SolverHandle;
use cbench_eval::generate::{make_record, Candidate};
use cbench_eval::record::{record_id, variant_tag, InstanceRecord, Timing};
use cbench_eval::verify::Verifier;

pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// A certified record from the embedded engine.
pub fn record_with_timing(family: &str, pairs: &[(&str, i64)], seed: u64) -> (InstanceRecord, Timing) {
    let f = lookup(family).unwrap();
    let p = normalize_params(f, &params(pairs)).unwrap();
    match make_record(f, &p, seed, &SolverHandle::embedded(), Duration::from_secs(120)).unwrap() {
        Candidate::Accepted(r, t) => (r, t),
        Candidate::TimedOut(d) => panic!("{family} timed out after {d:?}"),
    }
}

pub fn record(family: &str, pairs: &[(&str, i64)]) -> InstanceRecord {
    record_with_timing(family, pairs, 0).0
}

/// The record with the given hints rendered into its prompt.
pub fn with_hints(mut rec: InstanceRecord, hints: &[(&str, i64)]) -> InstanceRecord {
    let f = rec.family().unwrap();
    rec.hints = hints
        .iter()
        .map(|(v, x)| Hint {
            var: v.to_string(),
            value: *x,
        })
        .collect();
    rec.prompt = render_prompt(f, &rec.params, &rec.data, &rec.hints);
    rec.id = record_id(f, &rec.params, rec.seed, variant_tag(true));
    rec
}

pub fn verifier() -> Verifier {
    Verifier {
        solver: SolverHandle::embedded(),
        ..Verifier::default()
    }
}
