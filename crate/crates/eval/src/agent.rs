//! The conversational port agents are driven through, and the bundled agents.

use std::collections::{HashMap, VecDeque};
use std::io::Write;
use std::process::{Command, Stdio};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::record::InstanceRecord;

pub const SYSTEM_PROMPT: &str = include_str!("../resources/system_prompt.txt");
pub const TOOLS_BLOCK: &str = include_str!("../resources/tools_block.txt");

pub const EXECUTE_TOOL: &str = "execute_python";
pub const SUBMIT_TOOL: &str = "submit_answer";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolSchema {
    pub name: String,
    pub description: String,
    pub parameters: Value,
}

/// Schemas offered in the tools condition.
pub fn tool_schemas() -> Vec<ToolSchema> {
    vec![
        ToolSchema {
            name: EXECUTE_TOOL.into(),
            description: "Run Python code in an isolated subprocess.".into(),
            parameters: json!({
                "type": "object",
                "properties": {
                    "code": {"type": "string"},
                    "timeout_seconds": {"type": "integer"}
                },
                "required": ["code"]
            }),
        },
        ToolSchema {
            name: SUBMIT_TOOL.into(),
            description: "Submit your final answer.".into(),
            parameters: json!({
                "type": "object",
                "properties": {
                    "satisfiable": {"type": "boolean"},
                    "solution": {
                        "anyOf": [
                            {"type": "array", "items": {"type": "integer"}},
                            {"type": "null"}
                        ]
                    },
                    "reasoning": {"type": "string"}
                },
                "required": ["satisfiable", "solution", "reasoning"]
            }),
        },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolCall {
    pub name: String,
    pub arguments: Value,
}

/// One agent turn: free text, optionally ending in a tool call.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AgentReply {
    #[serde(default)]
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tool_call: Option<ToolCall>,
    /// The response hit a length limit before it was complete.
    #[serde(default)]
    pub truncated: bool,
}

impl AgentReply {
    pub fn text(text: impl Into<String>) -> Self {
        AgentReply {
            text: text.into(),
            ..Default::default()
        }
    }

    pub fn call(name: &str, arguments: Value) -> Self {
        AgentReply {
            tool_call: Some(ToolCall {
                name: name.to_string(),
                arguments,
            }),
            ..Default::default()
        }
    }

    pub fn execute(code: &str) -> Self {
        Self::call(EXECUTE_TOOL, json!({ "code": code }))
    }

    pub fn submit(satisfiable: bool, solution: Option<Vec<i64>>) -> Self {
        Self::call(
            SUBMIT_TOOL,
            json!({ "satisfiable": satisfiable, "solution": solution, "reasoning": "" }),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Message {
    User { content: String },
    Assistant { reply: AgentReply },
    Tool { name: String, content: String },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AgentRequest<'a> {
    pub system: &'a str,
    pub messages: &'a [Message],
    pub tools: &'a [ToolSchema],
}

impl AgentRequest<'_> {
    /// The instance prompt, i.e. the first user message.
    pub fn prompt(&self) -> Option<&str> {
        self.messages.iter().find_map(|m| match m {
            Message::User { content } => Some(content.as_str()),
            _ => None,
        })
    }

    pub fn tools_enabled(&self) -> bool {
        !self.tools.is_empty()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AgentError {
    #[error("scripted agent ran out of replies")]
    Exhausted,
    #[error("agent command failed: {0}")]
    Command(String),
    #[error("agent reply is malformed: {0}")]
    Malformed(String),
}

/// A conversational responder. Implementations are untrusted; the harness
/// bounds whatever they return.
pub trait AgentPort {
    fn respond(&mut self, req: &AgentRequest<'_>) -> Result<AgentReply, AgentError>;
}

/// Replays a fixed list of replies.
#[derive(Clone, Debug, Default)]
pub struct ScriptedAgent {
    replies: VecDeque<AgentReply>,
}

impl ScriptedAgent {
    pub fn new(replies: impl IntoIterator<Item = AgentReply>) -> Self {
        ScriptedAgent {
            replies: replies.into_iter().collect(),
        }
    }
}

impl AgentPort for ScriptedAgent {
    fn respond(&mut self, _req: &AgentRequest<'_>) -> Result<AgentReply, AgentError> {
        self.replies.pop_front().ok_or(AgentError::Exhausted)
    }
}

fn answer(req: &AgentRequest<'_>, satisfiable: bool, solution: Option<Vec<i64>>) -> AgentReply {
    if req.tools_enabled() {
        AgentReply::submit(satisfiable, solution)
    } else {
        AgentReply::text(json!({ "satisfiable": satisfiable, "solution": solution, "reasoning": "" }).to_string())
    }
}

/// Claims UNSAT on every instance.
#[derive(Clone, Copy, Debug, Default)]
pub struct AlwaysUnsatAgent;

impl AgentPort for AlwaysUnsatAgent {
    fn respond(&mut self, req: &AgentRequest<'_>) -> Result<AgentReply, AgentError> {
        Ok(answer(req, false, None))
    }
}

/// Answers from the dataset's reference data, looked up by prompt.
#[derive(Clone, Debug, Default)]
pub struct OracleAgent {
    answers: HashMap<String, (bool, Option<Vec<i64>>)>,
}

impl OracleAgent {
    pub fn new(records: &[InstanceRecord]) -> Self {
        OracleAgent {
            answers: records
                .iter()
                .map(|r| (r.prompt.clone(), (r.is_sat(), r.witness.clone())))
                .collect(),
        }
    }
}

impl AgentPort for OracleAgent {
    fn respond(&mut self, req: &AgentRequest<'_>) -> Result<AgentReply, AgentError> {
        let (sat, w) = req
            .prompt()
            .and_then(|p| self.answers.get(p))
            .cloned()
            .ok_or_else(|| AgentError::Malformed("unknown prompt".into()))?;
        Ok(answer(req, sat, w))
    }
}

/// Runs an external program per turn: the request goes to its stdin as JSON,
/// an [`AgentReply`] is read back from its stdout.
#[derive(Clone, Debug)]
pub struct CommandAgent {
    pub argv: Vec<String>,
}

impl AgentPort for CommandAgent {
    fn respond(&mut self, req: &AgentRequest<'_>) -> Result<AgentReply, AgentError> {
        let (prog, args) = self
            .argv
            .split_first()
            .ok_or_else(|| AgentError::Command("empty command".into()))?;
        let mut child = Command::new(prog)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| AgentError::Command(e.to_string()))?;
        let body = serde_json::to_vec(req).map_err(|e| AgentError::Command(e.to_string()))?;
        child
            .stdin
            .take()
            .expect("piped stdin")
            .write_all(&body)
            .map_err(|e| AgentError::Command(e.to_string()))?;
        let out = child.wait_with_output().map_err(|e| AgentError::Command(e.to_string()))?;
        if !out.status.success() {
            return Err(AgentError::Command(format!("exited with {}", out.status)));
        }
        serde_json::from_slice(&out.stdout).map_err(|e| AgentError::Malformed(e.to_string()))
    }
}

/// Agent selection for batch evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AgentConfig {
    AlwaysUnsat,
    Oracle,
    /// The same replies for every instance.
    Scripted { replies: Vec<AgentReply> },
    Command { argv: Vec<String> },
}

impl AgentConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).or_else(|je| toml::from_str(text).map_err(|te| format!("{je}; {te}")))
    }

    /// A fresh agent for one episode.
    pub fn instantiate(&self, dataset: &[InstanceRecord]) -> Box<dyn AgentPort> {
        match self {
            AgentConfig::AlwaysUnsat => Box::new(AlwaysUnsatAgent),
            AgentConfig::Oracle => Box::new(OracleAgent::new(dataset)),
            AgentConfig::Scripted { replies } => Box::new(ScriptedAgent::new(replies.clone())),
            AgentConfig::Command { argv } => Box::new(CommandAgent { argv: argv.clone() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prompts_never_mention_a_round_budget() {
        let full = format!("{SYSTEM_PROMPT}{TOOLS_BLOCK}").to_lowercase();
        for word in ["round", "budget", "eight", " 8 "] {
            assert!(!full.contains(word), "{word}");
        }
        assert!(SYSTEM_PROMPT.starts_with("You are solving constraint satisfaction problems."));
        assert!(TOOLS_BLOCK.contains("execute_python(code, timeout_seconds)"));
    }

    #[test]
    fn config_formats() {
        assert_eq!(AgentConfig::parse(r#"{"kind": "oracle"}"#), Ok(AgentConfig::Oracle));
        assert_eq!(AgentConfig::parse("kind = \"always_unsat\""), Ok(AgentConfig::AlwaysUnsat));
        let s = AgentConfig::parse(r#"{"kind": "scripted", "replies": [{"text": "hi"}]}"#).unwrap();
        assert_eq!(
            s,
            AgentConfig::Scripted {
                replies: vec![AgentReply::text("hi")]
            }
        );
        assert!(AgentConfig::parse("kind = 3").is_err());
    }

    #[test]
    fn scripted_agent_runs_out() {
        let mut a = ScriptedAgent::new([AgentReply::text("x")]);
        let req = AgentRequest {
            system: "",
            messages: &[],
            tools: &[],
        };
        assert_eq!(a.respond(&req).unwrap().text, "x");
        assert_eq!(a.respond(&req), Err(AgentError::Exhausted));
    }
}
