//! Response parsing: strict JSON, then fenced blocks, then brace extraction.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

/// A satisfiability claim with an optional witness. The solution is kept as
/// raw JSON so the verifier can report shape problems instead of the parser.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Submission {
    pub satisfiable: bool,
    #[serde(default)]
    pub solution: Option<Value>,
    #[serde(default)]
    pub reasoning: String,
}

impl Submission {
    pub fn sat(solution: Vec<i64>) -> Self {
        Submission {
            satisfiable: true,
            solution: Some(Value::from(solution)),
            reasoning: String::new(),
        }
    }

    pub fn unsat() -> Self {
        Submission {
            satisfiable: false,
            solution: None,
            reasoning: String::new(),
        }
    }

    /// Builds a submission from a JSON object with a boolean `satisfiable`.
    pub fn from_value(v: &Value) -> Option<Self> {
        let obj: &Map<String, Value> = v.as_object()?;
        let satisfiable = obj.get("satisfiable")?.as_bool()?;
        let solution = match obj.get("solution") {
            None | Some(Value::Null) => None,
            Some(s) => Some(s.clone()),
        };
        let reasoning = match obj.get("reasoning") {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Null) | None => String::new(),
            Some(other) => other.to_string(),
        };
        Some(Submission {
            satisfiable,
            solution,
            reasoning,
        })
    }

    /// The solution as a flat integer list, when it is one.
    pub fn flat_solution(&self) -> Option<Vec<i64>> {
        self.solution
            .as_ref()?
            .as_array()?
            .iter()
            .map(Value::as_i64)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseStage {
    Strict,
    Fenced,
    Braces,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("no JSON object with a boolean \"satisfiable\" key found")]
pub struct ParseFailure;

fn object_at(text: &str) -> Option<Submission> {
    let v: Value = serde_json::from_str(text.trim()).ok()?;
    Submission::from_value(&v)
}

/// Contents of ``` fenced blocks, in order of appearance. The info string
/// after the opening fence is dropped.
fn fenced_blocks(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(open) = rest.find("```") {
        let after = &rest[open + 3..];
        let body_start = after.find('\n').map_or(after.len(), |i| i + 1);
        let info = &after[..body_start];
        // An info string with braces is inline content, not a language tag.
        let body_start = if info.contains('{') { 0 } else { body_start };
        let body = &after[body_start..];
        match body.find("```") {
            Some(close) => {
                out.push(&body[..close]);
                rest = &body[close + 3..];
            }
            None => break,
        }
    }
    out
}

/// End (exclusive) of the JSON value opening with `{` at `start`, tracking
/// strings and escapes.
fn balanced_end(bytes: &[u8], start: usize) -> Option<usize> {
    let mut depth = 0usize;
    let mut in_str = false;
    let mut escaped = false;
    for (i, &b) in bytes.iter().enumerate().skip(start) {
        if in_str {
            match b {
                _ if escaped => escaped = false,
                b'\\' => escaped = true,
                b'"' => in_str = false,
                _ => {}
            }
            continue;
        }
        match b {
            b'"' => in_str = true,
            b'{' => depth += 1,
            b'}' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(i + 1);
                }
            }
            _ => {}
        }
    }
    None
}

/// Innermost-first search for a balanced object enclosing the first
/// `"satisfiable"` key.
fn brace_extract(text: &str) -> Option<Submission> {
    let key = text.find("\"satisfiable\"")?;
    let bytes = text.as_bytes();
    for open in (0..key).rev().filter(|&i| bytes[i] == b'{') {
        if let Some(end) = balanced_end(bytes, open) {
            if end > key {
                if let Some(s) = object_at(&text[open..end]) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Parses a response through the three-stage cascade; the first stage that
/// yields a claim wins.
pub fn parse_response(text: &str) -> Result<(Submission, ParseStage), ParseFailure> {
    if let Some(s) = object_at(text) {
        return Ok((s, ParseStage::Strict));
    }
    if let Some(s) = fenced_blocks(text).into_iter().rev().find_map(object_at) {
        return Ok((s, ParseStage::Fenced));
    }
    brace_extract(text)
        .map(|s| (s, ParseStage::Braces))
        .ok_or(ParseFailure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_object() {
        let (s, stage) = parse_response(r#" {"satisfiable": true, "solution": [1, 2]} "#).unwrap();
        assert_eq!(stage, ParseStage::Strict);
        assert_eq!(s.flat_solution(), Some(vec![1, 2]));
    }

    #[test]
    fn last_valid_fence_wins() {
        let text = "First try:\n```json\n{\"satisfiable\": tru\n```\nFixed:\n```json\n{\"satisfiable\": false, \"solution\": null}\n```\n";
        let (s, stage) = parse_response(text).unwrap();
        assert_eq!(stage, ParseStage::Fenced);
        assert!(!s.satisfiable);
    }

    #[test]
    fn brace_extraction_mid_paragraph() {
        let text = "I checked it. So {\"satisfiable\": false, \"solution\": null, \"reasoning\": \"a {b} c\"} is my answer.";
        let (s, stage) = parse_response(text).unwrap();
        assert_eq!(stage, ParseStage::Braces);
        assert_eq!(s.reasoning, "a {b} c");
    }

    #[test]
    fn extraction_is_anchored_at_first_key() {
        let text = "{\"satisfiable\": true, \"solution\": [3]} then {\"satisfiable\": false}";
        let (s, _) = parse_response(text).unwrap();
        assert!(s.satisfiable);
    }

    #[test]
    fn nested_object_around_the_key() {
        let text = "result: {\"answer\": {\"satisfiable\": true, \"solution\": [0]}, \"note\": 1";
        let (s, stage) = parse_response(text).unwrap();
        assert_eq!(stage, ParseStage::Braces);
        assert_eq!(s.flat_solution(), Some(vec![0]));
    }

    #[test]
    fn failures() {
        assert_eq!(parse_response("no braces here"), Err(ParseFailure));
        assert_eq!(parse_response("{\"satisfiable\": true, \"solution\": [1,"), Err(ParseFailure));
        assert_eq!(parse_response("{\"satisfiable\": \"yes\"}"), Err(ParseFailure));
    }

    #[test]
    fn non_flat_solutions_still_parse() {
        let (s, _) = parse_response(r#"{"satisfiable": true, "solution": {"x[0]": 1}}"#).unwrap();
        assert_eq!(s.flat_solution(), None);
        let (s, _) = parse_response(r#"{"satisfiable": true, "solution": [[1, 2], [3]]}"#).unwrap();
        assert_eq!(s.flat_solution(), None);
    }
}
