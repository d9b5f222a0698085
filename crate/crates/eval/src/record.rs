//! Dataset records and line-delimited JSON I/O.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use cbench_core::error::FamilyError;
use cbench_core::families::{self, Family, Hint, Params, VarData};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Version tag of the grading rules a record was produced under.
pub const CONTRACT_VERSION: &str = "cbench-verifier/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
}

impl Polarity {
    pub fn from_bool(sat: bool) -> Self {
        if sat {
            Polarity::Sat
        } else {
            Polarity::Unsat
        }
    }

    pub fn is_sat(self) -> bool {
        self == Polarity::Sat
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarity::Sat => "SAT",
            Polarity::Unsat => "UNSAT",
        }
    }
}

/// Structural size of our own encoding of the instance, plus solver effort.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Difficulty {
    pub num_vars: usize,
    pub num_constraints: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_edges: Option<usize>,
    /// Σ log10(domain size) over the witness variables.
    pub log10_search_space: f64,
    pub conflicts: u64,
    pub decisions: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: String,
    pub family: String,
    pub params: Params,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "VarData::is_empty")]
    pub data: VarData,
    pub prompt: String,
    pub polarity: Polarity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hints: Vec<Hint>,
    pub difficulty: Difficulty,
    pub contract_version: String,
}

impl InstanceRecord {
    pub fn family(&self) -> Result<&'static dyn Family, FamilyError> {
        families::lookup(&self.family)
    }

    pub fn is_sat(&self) -> bool {
        self.polarity.is_sat()
    }

    pub fn variant(&self) -> &'static str {
        variant_tag(!self.hints.is_empty())
    }
}

pub fn variant_tag(hinted: bool) -> &'static str {
    if hinted {
        "h"
    } else {
        "nh"
    }
}

/// `{family}_{params}__{hash}` where the hash covers family, canonical
/// parameters, seed and variant.
pub fn record_id(f: &dyn Family, params: &Params, seed: u64, variant: &str) -> String {
    let canon = serde_json::to_string(params).expect("params serialize");
    let mut h = Sha256::new();
    h.update(f.name().as_bytes());
    h.update([0]);
    h.update(canon.as_bytes());
    h.update([0]);
    h.update(seed.to_le_bytes());
    h.update(variant.as_bytes());
    let digest = hex::encode(h.finalize());
    format!(
        "{}_{}__{}",
        f.name(),
        families::param_string(f, params),
        &digest[..16]
    )
}

/// Wall time spent certifying one record, kept outside the dataset so the
/// dataset itself is reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub id: String,
    pub certify_seconds: f64,
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}:{line}: {msg}")]
    Json { path: String, line: usize, msg: String },
}

impl DataError {
    pub(crate) fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        DataError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        }
    }
}

/// One parsed line of a JSONL file, or the error for that line.
pub type Line<T> = Result<T, DataError>;

/// Reads every non-blank line, keeping per-line failures.
pub fn read_jsonl_lines<T: DeserializeOwned>(path: &Path) -> Result<Vec<Line<T>>, DataError> {
    let file = File::open(path).map_err(|e| DataError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| DataError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| DataError::Json {
            path: path.display().to_string(),
            line: i + 1,
            msg: e.to_string(),
        }));
    }
    Ok(out)
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, DataError> {
    read_jsonl_lines(path)?.into_iter().collect()
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<(), DataError> {
    let file = File::create(path).map_err(|e| DataError::io(path, e))?;
    let mut w = BufWriter::new(file);
    for item in items {
        let s = serde_json::to_string(item).map_err(|e| DataError::io(path, e))?;
        writeln!(w, "{s}").map_err(|e| DataError::io(path, e))?;
    }
    w.flush().map_err(|e| DataError::io(path, e))
}

pub fn read_dataset(path: &Path) -> Result<Vec<InstanceRecord>, DataError> {
    read_jsonl(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn ids_are_stable_and_distinct() {
        let f = families::lookup("costas_array").unwrap();
        let p = params(&[("n", 10)]);
        let a = record_id(f, &p, 7, "nh");
        assert_eq!(a, record_id(f, &p, 7, "nh"));
        assert!(a.starts_with("costas_array_n10__"));
        assert_eq!(a.len(), "costas_array_n10__".len() + 16);
        assert_ne!(a, record_id(f, &p, 8, "nh"));
        assert_ne!(a, record_id(f, &p, 7, "h"));
        assert_ne!(a, record_id(f, &params(&[("n", 9)]), 7, "nh"));
    }

    #[test]
    fn polarity_serializes_as_label() {
        assert_eq!(serde_json::to_string(&Polarity::Sat).unwrap(), "\"SAT\"");
        assert_eq!(
            serde_json::from_str::<Polarity>("\"UNSAT\"").unwrap(),
            Polarity::Unsat
        );
    }

    #[test]
    fn jsonl_round_trip_keeps_bad_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.jsonl");
        write_jsonl(&path, &[Timing { id: "a".into(), certify_seconds: 0.5 }]).unwrap();
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str("\nnot json\n");
        std::fs::write(&path, text).unwrap();
        let lines: Vec<Line<Timing>> = read_jsonl_lines(&path).unwrap();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].as_ref().unwrap().id, "a");
        assert!(matches!(lines[1], Err(DataError::Json { line: 3, .. })));
    }
}
