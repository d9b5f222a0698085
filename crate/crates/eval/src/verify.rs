//! Grading a parsed submission against a certified instance.

use std::fmt;
use std::time::Duration;

use cbench_core::certify::{solve_pinned, Outcome};
use cbench_core::error::{CompileError, FamilyError};
use cbench_core::families::{check_witness, Family};
use cbench_core::solver::SolverHandle;
use serde::{Deserialize, Serialize};

use crate::parse::Submission;
use crate::record::InstanceRecord;

/// Mutually exclusive outcome classes; `None` means accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bucket {
    None,
    WrongPolarity,
    WrongSolution,
    Length,
    Parse,
    MaxRounds,
    Other,
}

impl Bucket {
    /// Report column order.
    pub const ALL: [Bucket; 7] = [
        Bucket::None,
        Bucket::WrongPolarity,
        Bucket::WrongSolution,
        Bucket::Length,
        Bucket::Parse,
        Bucket::MaxRounds,
        Bucket::Other,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Bucket::None => "none",
            Bucket::WrongPolarity => "wrong_polarity",
            Bucket::WrongSolution => "wrong_solution",
            Bucket::Length => "length",
            Bucket::Parse => "parse",
            Bucket::MaxRounds => "max_rounds",
            Bucket::Other => "other",
        }
    }

    pub fn header(self) -> &'static str {
        match self {
            Bucket::None => "Accept",
            Bucket::WrongPolarity => "Wrong pol.",
            Bucket::WrongSolution => "Wrong sol.",
            Bucket::Length => "Length",
            Bucket::Parse => "Parse",
            Bucket::MaxRounds => "Max rounds",
            Bucket::Other => "Other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ground_truth_satisfiable: bool,
    pub submitted_satisfiable: Option<bool>,
    pub correct: bool,
    pub satisfiability_correct: bool,
    pub solution_correct: bool,
    pub validation_details: String,
    pub failure_bucket: Bucket,
}

pub const DETAIL_VERIFIED: &str = "Solution verified by solver";
pub const DETAIL_VERIFIED_DIRECT: &str = "Solution verified by direct check";
pub const DETAIL_CORRECT_UNSAT: &str = "Correct UNSAT";
pub const DETAIL_NOT_KEYED: &str = "Partial assignment: submitted solution not keyed by variable";

impl Verdict {
    /// A run that produced no gradable claim.
    pub fn unparsed(ground_truth: bool, bucket: Bucket, detail: impl Into<String>) -> Self {
        Verdict {
            ground_truth_satisfiable: ground_truth,
            submitted_satisfiable: None,
            correct: false,
            satisfiability_correct: false,
            solution_correct: false,
            validation_details: detail.into(),
            failure_bucket: bucket,
        }
    }

    fn claim(ground_truth: bool, claimed: bool) -> Self {
        Verdict {
            ground_truth_satisfiable: ground_truth,
            submitted_satisfiable: Some(claimed),
            correct: false,
            satisfiability_correct: ground_truth == claimed,
            solution_correct: false,
            validation_details: String::new(),
            failure_bucket: Bucket::Other,
        }
    }

    fn reject(mut self, bucket: Bucket, detail: impl Into<String>) -> Self {
        self.failure_bucket = bucket;
        self.validation_details = detail.into();
        self
    }

    fn accept(mut self, detail: &str) -> Self {
        self.correct = true;
        self.solution_correct = true;
        self.failure_bucket = Bucket::None;
        self.validation_details = detail.to_string();
        self
    }
}

fn py_bool(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

/// `key=value` lines, one field per line.
impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ground_truth_satisfiable={}", py_bool(self.ground_truth_satisfiable))?;
        writeln!(
            f,
            "submitted_satisfiable={}",
            self.submitted_satisfiable.map_or("None", py_bool)
        )?;
        writeln!(f, "correct={}", py_bool(self.correct))?;
        writeln!(f, "satisfiability_correct={}", py_bool(self.satisfiability_correct))?;
        writeln!(f, "solution_correct={}", py_bool(self.solution_correct))?;
        writeln!(f, "validation_details={}", self.validation_details)?;
        write!(f, "failure_bucket={}", self.failure_bucket.label())
    }
}

#[derive(Clone, Debug)]
pub struct Verifier {
    pub solver: SolverHandle,
    /// Per-attempt cap on the re-solve.
    pub budget: Duration,
    /// Re-solve with the witness pinned on top of the direct check.
    pub cross_check: bool,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            solver: SolverHandle::from_env(),
            budget: Duration::from_secs(60),
            cross_check: true,
        }
    }
}

impl Verifier {
    pub fn verify(&self, record: &InstanceRecord, sub: &Submission) -> Verdict {
        let truth = record.is_sat();
        let v = Verdict::claim(truth, sub.satisfiable);
        if !v.satisfiability_correct {
            let detail = if truth {
                "Claimed UNSAT but the instance is satisfiable"
            } else {
                "Claimed SAT but the instance is unsatisfiable"
            };
            return v.reject(Bucket::WrongPolarity, detail);
        }
        if !truth {
            return v.accept(DETAIL_CORRECT_UNSAT);
        }
        let f = match record.family() {
            Ok(f) => f,
            Err(e) => return v.reject(Bucket::Other, e.to_string()),
        };
        let Some(w) = sub.flat_solution() else {
            let detail = match &sub.solution {
                None => "No solution submitted",
                Some(_) => "Solution is not a flat list of integers",
            };
            return v.reject(Bucket::WrongSolution, detail);
        };
        if let Err(e) = check_witness(f, &record.params, &record.data, &w) {
            return v.reject(Bucket::WrongSolution, format!("Invalid solution: {e}"));
        }
        if let Err(detail) = hint_compliance(f, record, &w) {
            return v.reject(Bucket::WrongSolution, detail);
        }
        if !self.cross_check {
            return v.accept(DETAIL_VERIFIED_DIRECT);
        }
        match solve_pinned(f, &record.params, &record.data, &w, &self.solver, self.budget) {
            Ok(c) => match c.outcome {
                Outcome::Sat(_) => v.accept(DETAIL_VERIFIED),
                Outcome::Unsat => v.reject(Bucket::WrongSolution, "Solver rejected the submitted assignment"),
                Outcome::Timeout => v.reject(
                    Bucket::Other,
                    format!("Verification timed out after {} s", self.budget.as_secs_f64()),
                ),
            },
            // No model, or a witness too large to pin: the direct check stands.
            Err(FamilyError::EncodingUnavailable(_))
            | Err(FamilyError::Compile(CompileError::DomainTooLarge { .. })) => {
                v.accept(DETAIL_VERIFIED_DIRECT)
            }
            Err(e) => v.reject(Bucket::Other, format!("Verification failed: {e}")),
        }
    }
}

/// Every hinted variable must be a position of the flat witness holding the
/// hinted value.
fn hint_compliance(f: &dyn Family, record: &InstanceRecord, w: &[i64]) -> Result<(), String> {
    if record.hints.is_empty() {
        return Ok(());
    }
    let names = f.witness_names(&record.params);
    let mut positions = Vec::with_capacity(record.hints.len());
    for h in &record.hints {
        match names.iter().position(|n| *n == h.var) {
            Some(i) if i < w.len() => positions.push(i),
            _ => return Err(DETAIL_NOT_KEYED.to_string()),
        }
    }
    for (h, &i) in record.hints.iter().zip(&positions) {
        if w[i] != h.value {
            return Err(format!(
                "Partial assignment violated: {}={} required, submitted {}",
                h.var, h.value, w[i]
            ));
        }
    }
    Ok(())
}
