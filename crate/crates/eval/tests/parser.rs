use cbench_eval::parse::{parse_response, ParseStage};
use serde::Deserialize;
use serde_json::Value;

#[derive(Deserialize)]
struct Expect {
    stage: ParseStage,
    satisfiable: bool,
    solution: Option<Value>,
}

#[derive(Deserialize)]
struct Case {
    name: String,
    kind: String,
    text: String,
    expect: Option<Expect>,
}

fn corpus() -> Vec<Case> {
    include_str!("data/parser_corpus.jsonl")
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn corpus_parses_with_zero_deviations() {
    let cases = corpus();
    assert_eq!(cases.len(), 30);
    let mut deviations = Vec::new();
    for c in &cases {
        let got = parse_response(&c.text).ok();
        let same = match (&got, &c.expect) {
            (None, None) => true,
            (Some((s, stage)), Some(e)) => {
                *stage == e.stage && s.satisfiable == e.satisfiable && s.solution == e.solution
            }
            _ => false,
        };
        if !same {
            deviations.push(format!("{} ({}): {:?}", c.name, c.kind, got));
        }
    }
    assert!(deviations.is_empty(), "{deviations:#?}");
}

#[test]
fn corpus_covers_every_kind() {
    let cases = corpus();
    for kind in ["strict", "fenced-single", "fenced-multiple", "brace-extraction", "truncated", "garbage"] {
        assert!(cases.iter().filter(|c| c.kind == kind).count() >= 3, "{kind}");
    }
}
