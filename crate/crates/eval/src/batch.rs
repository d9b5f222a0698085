//! Whole-dataset operations: grading stored responses and running agents.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::agent::AgentConfig;
use crate::episode::{run_episode, Condition, EpisodeConfig, Trace};
use crate::parse::{parse_response, Submission};
use crate::record::{InstanceRecord, Line};
use crate::verify::{Bucket, Verdict, Verifier};

/// A stored answer: raw response text, or an already structured submission.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubmissionLine {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub response: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submission: Option<Value>,
    #[serde(default)]
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictLine {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn grade_line(rec: &InstanceRecord, line: &SubmissionLine, verifier: &Verifier) -> Verdict {
    let truth = rec.is_sat();
    if let Some(v) = &line.submission {
        return match Submission::from_value(v) {
            Some(s) => verifier.verify(rec, &s),
            None => Verdict::unparsed(truth, Bucket::Parse, "Submission lacks a boolean \"satisfiable\""),
        };
    }
    let text = line.response.as_deref().unwrap_or("");
    match parse_response(text) {
        Ok((s, _)) => verifier.verify(rec, &s),
        Err(e) if line.truncated => Verdict::unparsed(truth, Bucket::Length, format!("Response truncated before parsing: {e}")),
        Err(e) => Verdict::unparsed(truth, Bucket::Parse, format!("Parse failure: {e}")),
    }
}

/// One verdict line per input line. Unreadable lines and unknown ids become
/// error lines; a readable line that fails to parse is graded into `parse`.
pub fn verify_batch(dataset: &[InstanceRecord], lines: &[Line<SubmissionLine>], verifier: &Verifier) -> Vec<VerdictLine> {
    let by_id: HashMap<&str, &InstanceRecord> = dataset.iter().map(|r| (r.id.as_str(), r)).collect();
    lines
        .iter()
        .map(|line| match line {
            Err(e) => VerdictLine {
                id: None,
                verdict: None,
                error: Some(e.to_string()),
            },
            Ok(l) => match by_id.get(l.id.as_str()) {
                None => VerdictLine {
                    id: Some(l.id.clone()),
                    verdict: None,
                    error: Some(format!("unknown instance id {:?}", l.id)),
                },
                Some(rec) => VerdictLine {
                    id: Some(l.id.clone()),
                    verdict: Some(grade_line(rec, l, verifier)),
                    error: None,
                },
            },
        })
        .collect()
}

/// Runs a fresh agent per instance, `workers` episodes at a time. Traces come
/// back in dataset order.
pub fn evaluate(
    dataset: &[InstanceRecord],
    agent: &AgentConfig,
    condition: Condition,
    cfg: &EpisodeConfig,
    workers: usize,
) -> Vec<Trace> {
    let workers = workers.max(1);
    let mut out: Vec<Option<Trace>> = vec![None; dataset.len()];
    std::thread::scope(|s| {
        let chunks: Vec<_> = out
            .chunks_mut(dataset.len().div_ceil(workers).max(1))
            .zip(dataset.chunks(dataset.len().div_ceil(workers).max(1)))
            .map(|(slots, recs)| {
                s.spawn(move || {
                    for (slot, rec) in slots.iter_mut().zip(recs) {
                        let mut a = agent.instantiate(dataset);
                        *slot = Some(run_episode(a.as_mut(), rec, condition, cfg));
                    }
                })
            })
            .collect();
        for c in chunks {
            c.join().expect("episode worker panicked");
        }
    });
    out.into_iter().map(|t| t.expect("every slot filled")).collect()
}
