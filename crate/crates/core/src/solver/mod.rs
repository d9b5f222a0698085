//! Uniform SAT solving: embedded CDCL engine or an external DIMACS solver.

pub mod cdcl;
mod external;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cnf::{CnfFormula, Lit};
use crate::error::SolverError;

pub use cdcl::{Cdcl, CdclStatus};

/// Slack allowed past a budget before a call must have returned.
pub const GRACE: Duration = Duration::from_millis(100);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Effort {
    pub conflicts: u64,
    pub decisions: u64,
}

impl Effort {
    pub fn add(&mut self, other: &Effort) {
        self.conflicts += other.conflicts;
        self.decisions += other.decisions;
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Truth value per atom (index 0 unused), present iff SAT.
    pub model: Option<Vec<bool>>,
    pub elapsed: Duration,
    pub effort: Effort,
}

impl SolveResult {
    /// True atoms of the model in increasing order.
    pub fn true_atoms(&self) -> Vec<u32> {
        self.model
            .as_ref()
            .map(|m| (1..m.len() as u32).filter(|&a| m[a as usize]).collect())
            .unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    Embedded,
    /// Command line; the DIMACS file path is appended as the last argument.
    External(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct SolverHandle {
    backend: Backend,
    default_budget: Duration,
}

impl Default for SolverHandle {
    fn default() -> Self {
        Self::embedded()
    }
}

/// Environment variable naming an external solver command.
pub const SOLVER_ENV: &str = "CBENCH_SOLVER";

impl SolverHandle {
    pub fn embedded() -> Self {
        SolverHandle {
            backend: Backend::Embedded,
            default_budget: Duration::from_secs(3600),
        }
    }

    pub fn external<S: AsRef<str>>(command: &[S]) -> Self {
        SolverHandle {
            backend: Backend::External(command.iter().map(|s| s.as_ref().to_string()).collect()),
            default_budget: Duration::from_secs(3600),
        }
    }

    /// External solver from `CBENCH_SOLVER` when set, embedded engine otherwise.
    pub fn from_env() -> Self {
        match std::env::var(SOLVER_ENV) {
            Ok(cmd) if !cmd.trim().is_empty() => {
                let parts: Vec<&str> = cmd.split_whitespace().collect();
                Self::external(&parts)
            }
            _ => Self::embedded(),
        }
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.default_budget = budget;
        self
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn default_budget(&self) -> Duration {
        self.default_budget
    }

    pub fn solve(&self, cnf: &CnfFormula, budget: Option<Duration>) -> Result<SolveResult, SolverError> {
        let mut session = self.session(cnf);
        session.solve(budget.unwrap_or(self.default_budget))
    }

    /// Opens an incremental session that accepts extra clauses between solves.
    pub fn session(&self, cnf: &CnfFormula) -> Session {
        let engine = match &self.backend {
            Backend::Embedded => Engine::Embedded(Box::new(Cdcl::from_formula(cnf))),
            Backend::External(cmd) => Engine::External {
                command: cmd.clone(),
                cnf: cnf.clone(),
            },
        };
        Session {
            engine,
            num_atoms: cnf.num_atoms(),
        }
    }

    /// Up to `limit` models that differ on the `project` atoms (all atoms when None).
    pub fn enumerate_models(
        &self,
        cnf: &CnfFormula,
        project: Option<&[u32]>,
        limit: usize,
        budget: Option<Duration>,
    ) -> Result<Enumeration, SolverError> {
        let budget = budget.unwrap_or(self.default_budget);
        let deadline = Instant::now() + budget;
        let mut session = self.session(cnf);
        let all: Vec<u32> = (1..=cnf.num_atoms()).collect();
        let project = project.unwrap_or(&all);
        let mut models = Vec::new();
        loop {
            if models.len() >= limit {
                return Ok(Enumeration {
                    models,
                    complete: false,
                    timed_out: false,
                });
            }
            let left = deadline.saturating_duration_since(Instant::now());
            let r = session.solve(left)?;
            match r.status {
                SolveStatus::Unsat => {
                    return Ok(Enumeration {
                        models,
                        complete: true,
                        timed_out: false,
                    })
                }
                SolveStatus::Timeout => {
                    return Ok(Enumeration {
                        models,
                        complete: false,
                        timed_out: true,
                    })
                }
                SolveStatus::Sat => {
                    let m = r.model.unwrap();
                    let block: Vec<Lit> = project
                        .iter()
                        .map(|&a| if m[a as usize] { -(a as Lit) } else { a as Lit })
                        .collect();
                    models.push(m);
                    if block.is_empty() {
                        return Ok(Enumeration {
                            models,
                            complete: true,
                            timed_out: false,
                        });
                    }
                    session.add_clause(&block);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub models: Vec<Vec<bool>>,
    /// Every model was found (the remaining formula is UNSAT).
    pub complete: bool,
    pub timed_out: bool,
}

enum Engine {
    Embedded(Box<Cdcl>),
    External { command: Vec<String>, cnf: CnfFormula },
}

/// Solver state for repeated solves with growing clause sets.
pub struct Session {
    engine: Engine,
    num_atoms: u32,
}

impl Session {
    pub fn num_atoms(&self) -> u32 {
        self.num_atoms
    }

    pub fn add_clause(&mut self, lits: &[Lit]) {
        for &l in lits {
            self.num_atoms = self.num_atoms.max(l.unsigned_abs());
        }
        match &mut self.engine {
            Engine::Embedded(s) => {
                s.add_clause(lits);
            }
            Engine::External { cnf, .. } => cnf.add_clause(lits.iter().copied()),
        }
    }

    /// Adds clauses `from..` of a formula that extends this session's atoms.
    pub fn extend(&mut self, cnf: &CnfFormula, from: usize) {
        for c in &cnf.clauses()[from..] {
            self.add_clause(c);
        }
        self.num_atoms = self.num_atoms.max(cnf.num_atoms());
        if let Engine::Embedded(s) = &mut self.engine {
            s.reserve_atoms(self.num_atoms);
        }
    }

    /// Allocates a fresh atom visible to subsequent clauses.
    pub fn fresh_atom(&mut self) -> Lit {
        self.num_atoms += 1;
        if let Engine::Embedded(s) = &mut self.engine {
            s.reserve_atoms(self.num_atoms);
        }
        self.num_atoms as Lit
    }

    pub fn solve(&mut self, budget: Duration) -> Result<SolveResult, SolverError> {
        let start = Instant::now();
        match &mut self.engine {
            Engine::Embedded(s) => {
                let before = s.stats();
                let status = s.solve(Some(start + budget));
                let after = s.stats();
                let effort = Effort {
                    conflicts: after.conflicts - before.conflicts,
                    decisions: after.decisions - before.decisions,
                };
                let (status, model) = match status {
                    CdclStatus::Sat => {
                        let mut m = vec![false; self.num_atoms as usize + 1];
                        for a in 1..=self.num_atoms.min(s.num_atoms()) {
                            m[a as usize] = s.model_value(a);
                        }
                        (SolveStatus::Sat, Some(m))
                    }
                    CdclStatus::Unsat => (SolveStatus::Unsat, None),
                    CdclStatus::Interrupted => (SolveStatus::Timeout, None),
                };
                Ok(SolveResult {
                    status,
                    model,
                    elapsed: start.elapsed(),
                    effort,
                })
            }
            Engine::External { command, cnf } => {
                let mut r = external::run(command, cnf, budget)?;
                if let Some(m) = &mut r.model {
                    m.resize(self.num_atoms as usize + 1, false);
                    if !cnf.is_satisfied_by(m) {
                        return Err(SolverError::BackendFailure(
                            "external solver returned a non-model".into(),
                        ));
                    }
                }
                r.elapsed = start.elapsed();
                Ok(r)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn php(pigeons: usize, holes: usize) -> CnfFormula {
        let atom = |p: usize, h: usize| (p * holes + h + 1) as Lit;
        let mut f = CnfFormula::new();
        for p in 0..pigeons {
            f.add_clause((0..holes).map(|h| atom(p, h)));
        }
        for h in 0..holes {
            for p in 0..pigeons {
                for q in p + 1..pigeons {
                    f.add_clause([-atom(p, h), -atom(q, h)]);
                }
            }
        }
        f
    }

    #[test]
    fn trivial_formulas() {
        let h = SolverHandle::embedded();
        let r = h.solve(&CnfFormula::new(), None).unwrap();
        assert_eq!(r.status, SolveStatus::Sat);
        assert!(r.true_atoms().is_empty());
        let mut f = CnfFormula::new();
        f.add_clause([1]);
        f.add_clause([-1]);
        assert_eq!(h.solve(&f, None).unwrap().status, SolveStatus::Unsat);
    }

    #[test]
    fn pigeonhole_4_3_unsat() {
        let h = SolverHandle::embedded();
        assert_eq!(h.solve(&php(4, 3), None).unwrap().status, SolveStatus::Unsat);
        assert_eq!(h.solve(&php(3, 3), None).unwrap().status, SolveStatus::Sat);
    }

    #[test]
    fn enumeration_counts() {
        let h = SolverHandle::embedded();
        let f = CnfFormula::with_atoms(1);
        let e = h.enumerate_models(&f, None, 10, None).unwrap();
        assert_eq!(e.models.len(), 2);
        assert!(e.complete);
        let e = h.enumerate_models(&php(4, 3), None, 10, None).unwrap();
        assert!(e.models.is_empty() && e.complete);
        let e = h.enumerate_models(&php(3, 3), None, 4, None).unwrap();
        assert_eq!(e.models.len(), 4);
        assert!(!e.complete);
    }

    #[test]
    fn hard_instance_times_out_within_grace() {
        let h = SolverHandle::embedded();
        let budget = Duration::from_millis(200);
        let r = h.solve(&php(11, 10), Some(budget)).unwrap();
        assert_eq!(r.status, SolveStatus::Timeout);
        assert!(r.model.is_none());
        assert!(r.elapsed <= budget + GRACE, "elapsed {:?}", r.elapsed);
    }
}
