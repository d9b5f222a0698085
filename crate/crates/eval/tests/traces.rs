//! The four reference transcripts, replayed as stored submissions and as
//! scripted episodes.

mod common;

use cbench_eval::agent::{AgentReply, ScriptedAgent};
use cbench_eval::batch::{verify_batch, SubmissionLine};
use cbench_eval::episode::{run_episode, Condition, EpisodeConfig};
use cbench_eval::record::InstanceRecord;
use cbench_eval::verify::{Bucket, Verdict, DETAIL_CORRECT_UNSAT, DETAIL_NOT_KEYED, DETAIL_VERIFIED};
use common::{record, record_with_timing, verifier, with_hints};
use serde_json::json;

const COSTAS_10: [i64; 10] = [0, 1, 3, 7, 4, 9, 8, 6, 2, 5];
const ALL_INTERVAL_11: [i64; 11] = [0, 10, 1, 9, 2, 8, 3, 7, 4, 6, 5];

const TRACE1_VERDICT: &str = "ground_truth_satisfiable=True
submitted_satisfiable=True
correct=True
satisfiability_correct=True
solution_correct=True
validation_details=Solution verified by solver
failure_bucket=none";

const TRACE3_VERDICT: &str = "ground_truth_satisfiable=True
submitted_satisfiable=True
correct=False
satisfiability_correct=True
solution_correct=False
validation_details=Partial assignment: submitted solution not keyed by variable
failure_bucket=wrong_solution";

const TRACE4_VERDICT: &str = "ground_truth_satisfiable=False
submitted_satisfiable=False
correct=True
satisfiability_correct=True
solution_correct=True
validation_details=Correct UNSAT
failure_bucket=none";

fn trace3_record() -> InstanceRecord {
    with_hints(record("all_interval", &[("n", 2)]), &[("x[0]", 0), ("d[0]", 1)])
}

fn stored(rec: &InstanceRecord, submission: serde_json::Value) -> Verdict {
    let line = SubmissionLine {
        id: rec.id.clone(),
        response: None,
        submission: Some(submission),
        truncated: false,
    };
    let out = verify_batch(std::slice::from_ref(rec), &[Ok(line)], &verifier());
    assert_eq!(out.len(), 1);
    out[0].verdict.clone().expect("graded")
}

#[test]
fn trace1_costas_witness_is_verified_by_solver() {
    let (rec, timing) = record_with_timing("costas_array", &[("n", 10)], 0);
    assert!(rec.is_sat());
    assert!(timing.certify_seconds < 60.0);
    let v = stored(&rec, json!({"satisfiable": true, "solution": COSTAS_10, "reasoning": "search"}));
    assert_eq!(v.to_string(), TRACE1_VERDICT);
}

#[test]
fn trace2_all_interval_from_free_text() {
    let rec = record("all_interval", &[("n", 11)]);
    let response = format!(
        "Interleave the extremes.\n```json\n{}\n```",
        json!({"satisfiable": true, "solution": ALL_INTERVAL_11, "reasoning": "construction"})
    );
    let line = SubmissionLine {
        id: rec.id.clone(),
        response: Some(response),
        submission: None,
        truncated: false,
    };
    let v = verify_batch(std::slice::from_ref(&rec), &[Ok(line)], &verifier())[0]
        .verdict
        .clone()
        .unwrap();
    assert!(v.correct);
    assert_eq!(v.validation_details, DETAIL_VERIFIED);
    assert_eq!(v.failure_bucket, Bucket::None);
}

#[test]
fn trace3_hint_on_an_auxiliary_variable_is_not_keyed() {
    let rec = trace3_record();
    assert!(rec.prompt.contains("- x[0]=0\n- d[0]=1\n"));
    let v = stored(&rec, json!({"satisfiable": true, "solution": [0, 1]}));
    assert_eq!(v.to_string(), TRACE3_VERDICT);
    assert_eq!(v.validation_details, DETAIL_NOT_KEYED);
}

#[test]
fn trace3_solution_itself_is_valid_without_hints() {
    let rec = record("all_interval", &[("n", 2)]);
    let v = stored(&rec, json!({"satisfiable": true, "solution": [0, 1]}));
    assert!(v.correct, "{v}");
}

#[test]
fn trace4_langford_unsat_claim() {
    let rec = record("langford", &[("n", 6)]);
    assert!(!rec.is_sat());
    let v = stored(&rec, json!({"satisfiable": false, "solution": null, "reasoning": "n mod 4 = 2"}));
    assert_eq!(v.to_string(), TRACE4_VERDICT);
    assert_eq!(v.validation_details, DETAIL_CORRECT_UNSAT);
}

fn probe() -> AgentReply {
    AgentReply::execute("print('checked')")
}

#[test]
fn tool_transcripts_replay_as_episodes() {
    let cfg = EpisodeConfig {
        verifier: verifier(),
        ..EpisodeConfig::default()
    };

    let costas = record("costas_array", &[("n", 10)]);
    let mut a = ScriptedAgent::new([probe(), probe(), AgentReply::submit(true, Some(COSTAS_10.to_vec()))]);
    let t = run_episode(&mut a, &costas, Condition::Tools, &cfg);
    assert_eq!(t.rounds.len(), 3);
    assert!(t.explicit_submission && !t.forced_submit);
    assert_eq!(t.verdict.to_string(), TRACE1_VERDICT);

    let hinted = trace3_record();
    let mut a = ScriptedAgent::new([probe(), AgentReply::submit(true, Some(vec![0, 1]))]);
    let t = run_episode(&mut a, &hinted, Condition::Tools, &cfg);
    assert_eq!(t.rounds.len(), 2);
    assert_eq!(t.verdict.to_string(), TRACE3_VERDICT);

    let langford = record("langford", &[("n", 6)]);
    let mut a = ScriptedAgent::new([probe(), probe(), probe(), AgentReply::submit(false, None)]);
    let t = run_episode(&mut a, &langford, Condition::Tools, &cfg);
    assert_eq!(t.rounds.len(), 4);
    assert_eq!(t.verdict.to_string(), TRACE4_VERDICT);
}

#[test]
fn no_tools_transcript_replays_as_episode() {
    let cfg = EpisodeConfig {
        verifier: verifier(),
        ..EpisodeConfig::default()
    };
    let rec = record("all_interval", &[("n", 11)]);
    let text = json!({"satisfiable": true, "solution": ALL_INTERVAL_11, "reasoning": ""}).to_string();
    let mut a = ScriptedAgent::new([AgentReply::text(text)]);
    let t = run_episode(&mut a, &rec, Condition::NoTools, &cfg);
    assert!(t.rounds.is_empty());
    assert!(t.verdict.correct);
    assert_eq!(t.verdict.validation_details, DETAIL_VERIFIED);
}
