//! Ground-truth certification: solve a family instance, returning a checked witness or a refutation.
//!
//! Models are solved in a refinement loop. A SAT answer is decoded, projected to
//! the witness and run through the family predicate; when the predicate rejects
//! it, the family supplies cuts that exclude the candidate and solving resumes.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cnf::CnfFormula;
use crate::encode::{compile_to_cnf, decode_model, encode_constraint, VarMap};
use crate::error::{FamilyError, SolverError};
use crate::families::{check_witness, BuiltModel, Family, Params, VarData};
use crate::model::assert_values;
use crate::solver::{Effort, Session, SolveStatus, SolverHandle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    /// A witness that passes the family predicate.
    Sat(Vec<i64>),
    Unsat,
    Timeout,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Sat(_) => "SAT",
            Outcome::Unsat => "UNSAT",
            Outcome::Timeout => "TIMEOUT",
        }
    }

    /// Some(true) for SAT, Some(false) for UNSAT, None when undecided.
    pub fn satisfiable(&self) -> Option<bool> {
        match self {
            Outcome::Sat(_) => Some(true),
            Outcome::Unsat => Some(false),
            Outcome::Timeout => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub outcome: Outcome,
    pub elapsed: Duration,
    pub effort: Effort,
}

struct Refiner<'a> {
    family: &'a dyn Family,
    params: &'a Params,
    data: &'a VarData,
    built: &'a BuiltModel,
    varmap: VarMap,
    session: Session,
    effort: Effort,
}

enum Step {
    Found(Vec<i64>),
    Unsat,
    Timeout,
}

impl<'a> Refiner<'a> {
    fn new(
        family: &'a dyn Family,
        params: &'a Params,
        data: &'a VarData,
        built: &'a BuiltModel,
        solver: &SolverHandle,
    ) -> Result<Self, FamilyError> {
        let (cnf, varmap) = compile_to_cnf(&built.model)?;
        let session = solver.session(&cnf);
        Ok(Refiner {
            family,
            params,
            data,
            built,
            varmap,
            session,
            effort: Effort::default(),
        })
    }

    fn add_constraints(&mut self, cs: &[crate::model::Constraint]) {
        let mut scratch = CnfFormula::with_atoms(self.session.num_atoms());
        for c in cs {
            encode_constraint(&mut scratch, &self.varmap, c);
        }
        self.session.extend(&scratch, 0);
    }

    /// Next model solution that passes the predicate, refining past failures.
    fn next(&mut self, deadline: Instant) -> Result<Step, FamilyError> {
        loop {
            let left = deadline.saturating_duration_since(Instant::now());
            let r = self.session.solve(left)?;
            self.effort.add(&r.effort);
            match r.status {
                SolveStatus::Unsat => return Ok(Step::Unsat),
                SolveStatus::Timeout => return Ok(Step::Timeout),
                SolveStatus::Sat => {}
            }
            let values = decode_model(&self.varmap, r.model.as_deref().unwrap_or(&[]))
                .map_err(|e| SolverError::BackendFailure(e.to_string()))?;
            let w = self.built.witness.extract(&values);
            if check_witness(self.family, self.params, self.data, &w).is_ok() {
                return Ok(Step::Found(values));
            }
            let cuts = self.family.refine(self.params, self.data, self.built, &w);
            if cuts.is_empty() {
                return Err(SolverError::BackendFailure(format!(
                    "{}: model solution rejected by the witness predicate",
                    self.family.name()
                ))
                .into());
            }
            self.add_constraints(&cuts);
        }
    }
}

fn finish(outcome: Outcome, start: Instant, effort: Effort) -> Certificate {
    Certificate {
        outcome,
        elapsed: start.elapsed(),
        effort,
    }
}

/// Solves a built model to a checked outcome.
pub fn certify_model(
    family: &dyn Family,
    params: &Params,
    data: &VarData,
    built: &BuiltModel,
    solver: &SolverHandle,
    budget: Duration,
) -> Result<Certificate, FamilyError> {
    let start = Instant::now();
    let deadline = start + budget;
    let mut r = Refiner::new(family, params, data, built, solver)?;
    let outcome = match r.next(deadline)? {
        Step::Found(values) => Outcome::Sat(built.witness.extract(&values)),
        Step::Unsat => Outcome::Unsat,
        Step::Timeout => Outcome::Timeout,
    };
    Ok(finish(outcome, start, r.effort))
}

/// Ground truth for an instance: the family's own certifier when it has one,
/// otherwise its constraint model.
pub fn certify(
    family: &dyn Family,
    params: &Params,
    data: &VarData,
    solver: &SolverHandle,
    budget: Duration,
) -> Result<Certificate, FamilyError> {
    let start = Instant::now();
    if let Some(c) = family.native_certify(params, data, start + budget) {
        return Ok(c);
    }
    let built = family
        .build(params, data)
        .ok_or_else(|| FamilyError::EncodingUnavailable(family.name().to_string()))?;
    certify_model(family, params, data, &built, solver, budget)
}

/// Re-solves the instance with every witness variable pinned to the submitted
/// value. SAT confirms the submission is a solution of the model.
pub fn solve_pinned(
    family: &dyn Family,
    params: &Params,
    data: &VarData,
    witness: &[i64],
    solver: &SolverHandle,
    budget: Duration,
) -> Result<Certificate, FamilyError> {
    let start = Instant::now();
    let q = family.cross_check_params(params, witness);
    let built = family
        .build(&q, data)
        .ok_or_else(|| FamilyError::EncodingUnavailable(family.name().to_string()))?;
    let Some(pins) = built.witness.pins(witness) else {
        return Ok(finish(Outcome::Unsat, start, Effort::default()));
    };
    let pinned = BuiltModel {
        model: assert_values(&built.model, &pins).map_err(crate::error::CompileError::from)?,
        witness: built.witness.clone(),
    };
    certify_model(family, &q, data, &pinned, solver, budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solutions {
    /// Distinct witnesses, each passing the predicate.
    pub witnesses: Vec<Vec<i64>>,
    /// Every solution was found.
    pub complete: bool,
    pub timed_out: bool,
}

/// Up to `limit` distinct witnesses of an instance.
pub fn enumerate_solutions(
    family: &dyn Family,
    params: &Params,
    data: &VarData,
    solver: &SolverHandle,
    limit: usize,
    budget: Duration,
) -> Result<Solutions, FamilyError> {
    let deadline = Instant::now() + budget;
    let built = family
        .build(params, data)
        .ok_or_else(|| FamilyError::EncodingUnavailable(family.name().to_string()))?;
    let vars = built.witness.vars();
    let mut r = Refiner::new(family, params, data, &built, solver)?;
    let mut witnesses = Vec::new();
    loop {
        if witnesses.len() >= limit {
            return Ok(Solutions {
                witnesses,
                complete: false,
                timed_out: false,
            });
        }
        match r.next(deadline)? {
            Step::Unsat => {
                return Ok(Solutions {
                    witnesses,
                    complete: true,
                    timed_out: false,
                })
            }
            Step::Timeout => {
                return Ok(Solutions {
                    witnesses,
                    complete: false,
                    timed_out: true,
                })
            }
            Step::Found(values) => {
                witnesses.push(built.witness.extract(&values));
                let projected: Vec<i64> = vars.iter().map(|&v| values[v]).collect();
                let block = r.varmap.blocking_clause(&vars, &projected);
                if block.is_empty() {
                    return Ok(Solutions {
                        witnesses,
                        complete: true,
                        timed_out: false,
                    });
                }
                r.session.add_clause(&block);
            }
        }
    }
}
