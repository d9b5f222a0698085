//! One agent on one instance: the tool loop, force-submit and grading.

use std::time::Duration;

use cbench_core::families::{backend_class, BackendClass};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::agent::{
    tool_schemas, AgentPort, AgentReply, AgentRequest, Message, EXECUTE_TOOL, SUBMIT_TOOL, SYSTEM_PROMPT,
    TOOLS_BLOCK,
};
use crate::parse::{parse_response, ParseStage, Submission};
use crate::record::{InstanceRecord, Polarity};
use crate::sandbox::{execute_script, SandboxPolicy};
use crate::verify::{Bucket, Verdict, Verifier};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    NoTools,
    Tools,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::NoTools => "no_tools",
            Condition::Tools => "tools",
        }
    }
}

impl std::str::FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "no_tools" => Ok(Condition::NoTools),
            "tools" => Ok(Condition::Tools),
            _ => Err(format!("unknown condition {s:?} (expected no_tools or tools)")),
        }
    }
}

/// The system prompt; the tools block is appended only under tools.
pub fn system_prompt(condition: Condition) -> String {
    match condition {
        Condition::NoTools => SYSTEM_PROMPT.to_string(),
        Condition::Tools => format!("{SYSTEM_PROMPT}{TOOLS_BLOCK}"),
    }
}

/// One executed tool call.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Round {
    pub tool: String,
    pub arguments_digest: String,
    pub ok: bool,
    pub latency_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub instance_id: String,
    pub family: String,
    pub polarity: Polarity,
    pub backend: BackendClass,
    pub condition: Condition,
    pub rounds: Vec<Round>,
    pub explicit_submission: bool,
    pub forced_submit: bool,
    /// The loop stopped because the round budget was used up.
    pub budget_exhausted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submission: Option<Submission>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parse_stage: Option<ParseStage>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct EpisodeConfig {
    pub budget: usize,
    pub sandbox: SandboxPolicy,
    pub verifier: Verifier,
    /// Keep tool output in the trace; otherwise only status and latency.
    pub store_outputs: bool,
    /// Agent text beyond this many bytes is cut and flagged as truncated.
    pub max_response_bytes: usize,
}

impl Default for EpisodeConfig {
    fn default() -> Self {
        EpisodeConfig {
            budget: 8,
            sandbox: SandboxPolicy::default(),
            verifier: Verifier::default(),
            store_outputs: true,
            max_response_bytes: 64 * 1024,
        }
    }
}

fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))[..16].to_string()
}

fn bound(mut reply: AgentReply, max: usize) -> AgentReply {
    if reply.text.len() > max {
        let mut cut = max;
        while !reply.text.is_char_boundary(cut) {
            cut -= 1;
        }
        reply.text.truncate(cut);
        reply.truncated = true;
    }
    reply
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e5).round() / 100.0
}

struct Loop {
    rounds: Vec<Round>,
    submission: Option<Submission>,
    last: Option<AgentReply>,
    exhausted: bool,
    failure: Option<String>,
}

fn run_tool(cfg: &EpisodeConfig, name: &str, args: &Value) -> (bool, String, Duration, Option<Submission>) {
    match name {
        SUBMIT_TOOL => match Submission::from_value(args) {
            Some(s) => (true, "Answer submitted.".into(), Duration::ZERO, Some(s)),
            None => (
                false,
                "error: submit_answer needs a boolean \"satisfiable\"".into(),
                Duration::ZERO,
                None,
            ),
        },
        EXECUTE_TOOL => {
            let Some(code) = args.get("code").and_then(Value::as_str) else {
                return (false, "error: missing \"code\"".into(), Duration::ZERO, None);
            };
            let timeout = args
                .get("timeout_seconds")
                .and_then(Value::as_f64)
                .map(|s| Duration::from_secs_f64(s.max(0.001)))
                .unwrap_or(cfg.sandbox.default_timeout)
                .min(cfg.sandbox.hard_cap);
            match execute_script(&cfg.sandbox, code, timeout) {
                Ok(r) => {
                    let mut out = format!("ok={}\n", if r.ok { "True" } else { "False" });
                    if r.timed_out {
                        out.push_str(&format!("timed out after {:.1} s\n", timeout.as_secs_f64()));
                    }
                    if let Some(v) = &r.violation {
                        out.push_str(&format!("blocked by sandbox policy: {v}\n"));
                    }
                    out.push_str(&format!("stdout:\n{}\nstderr:\n{}", r.stdout, r.stderr));
                    if r.truncated {
                        out.push_str(&format!("\n[output truncated at {} bytes]", cfg.sandbox.max_output));
                    }
                    (r.ok, out, r.elapsed, None)
                }
                Err(e) => (false, format!("error: {e}"), Duration::ZERO, None),
            }
        }
        other => (false, format!("error: unknown tool {other:?}"), Duration::ZERO, None),
    }
}

fn tool_loop(agent: &mut dyn AgentPort, prompt: &str, cfg: &EpisodeConfig) -> Loop {
    let system = system_prompt(Condition::Tools);
    let tools = tool_schemas();
    let mut messages = vec![Message::User {
        content: prompt.to_string(),
    }];
    let mut st = Loop {
        rounds: Vec::new(),
        submission: None,
        last: None,
        exhausted: false,
        failure: None,
    };
    loop {
        let req = AgentRequest {
            system: &system,
            messages: &messages,
            tools: &tools,
        };
        let reply = match agent.respond(&req) {
            Ok(r) => bound(r, cfg.max_response_bytes),
            Err(e) => {
                st.failure = Some(e.to_string());
                return st;
            }
        };
        st.last = Some(reply.clone());
        messages.push(Message::Assistant { reply: reply.clone() });
        let Some(call) = reply.tool_call else {
            return st;
        };
        if st.rounds.len() >= cfg.budget {
            st.exhausted = true;
            return st;
        }
        let (ok, output, latency, submission) = run_tool(cfg, &call.name, &call.arguments);
        st.rounds.push(Round {
            tool: call.name.clone(),
            arguments_digest: digest(&call.arguments),
            ok,
            latency_ms: ms(latency),
            output: (cfg.store_outputs && call.name == EXECUTE_TOOL).then(|| output.clone()),
        });
        if submission.is_some() {
            st.submission = submission;
            return st;
        }
        messages.push(Message::Tool {
            name: call.name,
            content: output,
        });
    }
}

/// Grades free text through the parser cascade.
fn grade_text(
    record: &InstanceRecord,
    verifier: &Verifier,
    reply: Option<&AgentReply>,
    exhausted: bool,
) -> (Option<Submission>, Option<ParseStage>, Verdict) {
    let truth = record.is_sat();
    let text = reply.map_or("", |r| r.text.as_str());
    match parse_response(text) {
        Ok((s, stage)) => {
            let v = verifier.verify(record, &s);
            (Some(s), Some(stage), v)
        }
        Err(e) => {
            let truncated = reply.is_some_and(|r| r.truncated);
            let (bucket, detail) = if truncated {
                (Bucket::Length, format!("Response truncated before parsing: {e}"))
            } else if exhausted {
                (Bucket::MaxRounds, format!("Round budget exhausted without submission: {e}"))
            } else {
                (Bucket::Parse, format!("Parse failure: {e}"))
            };
            (None, None, Verdict::unparsed(truth, bucket, detail))
        }
    }
}

pub fn run_episode(
    agent: &mut dyn AgentPort,
    record: &InstanceRecord,
    condition: Condition,
    cfg: &EpisodeConfig,
) -> Trace {
    let backend = record
        .family()
        .map(backend_class)
        .unwrap_or(BackendClass::Cp);
    let mut trace = Trace {
        instance_id: record.id.clone(),
        family: record.family.clone(),
        polarity: record.polarity,
        backend,
        condition,
        rounds: Vec::new(),
        explicit_submission: false,
        forced_submit: false,
        budget_exhausted: false,
        submission: None,
        parse_stage: None,
        verdict: Verdict::unparsed(record.is_sat(), Bucket::Other, ""),
    };
    let agent_failure = |e: String| Verdict::unparsed(record.is_sat(), Bucket::Other, format!("Agent failure: {e}"));
    match condition {
        Condition::NoTools => {
            let system = system_prompt(condition);
            let messages = [Message::User {
                content: record.prompt.clone(),
            }];
            let req = AgentRequest {
                system: &system,
                messages: &messages,
                tools: &[],
            };
            match agent.respond(&req) {
                Ok(reply) => {
                    let reply = bound(reply, cfg.max_response_bytes);
                    let (s, stage, v) = grade_text(record, &cfg.verifier, Some(&reply), false);
                    trace.submission = s;
                    trace.parse_stage = stage;
                    trace.verdict = v;
                }
                Err(e) => trace.verdict = agent_failure(e.to_string()),
            }
        }
        Condition::Tools => {
            let st = tool_loop(agent, &record.prompt, cfg);
            trace.rounds = st.rounds;
            trace.budget_exhausted = st.exhausted;
            if let Some(e) = st.failure {
                trace.verdict = agent_failure(e);
            } else {
                match st.submission {
                    Some(s) => {
                        trace.explicit_submission = true;
                        trace.verdict = cfg.verifier.verify(record, &s);
                        trace.submission = Some(s);
                    }
                    None => {
                        trace.forced_submit = true;
                        let (s, stage, v) = grade_text(record, &cfg.verifier, st.last.as_ref(), st.exhausted);
                        trace.submission = s;
                        trace.parse_stage = stage;
                        trace.verdict = v;
                    }
                }
            }
        }
    }
    trace
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn responses_are_bounded_on_char_boundaries() {
        let r = bound(AgentReply::text("aé".repeat(10)), 4);
        assert!(r.truncated);
        assert_eq!(r.text, "aéa");
        assert!(!bound(AgentReply::text("abc"), 4).truncated);
    }

    #[test]
    fn conditions_parse() {
        assert_eq!("tools".parse::<Condition>(), Ok(Condition::Tools));
        assert!("both".parse::<Condition>().is_err());
        assert!(system_prompt(Condition::Tools).starts_with(&system_prompt(Condition::NoTools)));
    }
}
