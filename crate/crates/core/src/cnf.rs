//! Clause lists over positive integer atoms and their DIMACS form.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::DimacsError;

/// A signed atom reference in DIMACS convention: `+a` is the atom, `-a` its negation.
pub type Lit = i32;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    num_atoms: u32,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_atoms(num_atoms: u32) -> Self {
        CnfFormula {
            num_atoms,
            clauses: Vec::new(),
        }
    }

    /// Allocates a fresh atom and returns its positive literal.
    pub fn fresh(&mut self) -> Lit {
        self.num_atoms += 1;
        self.num_atoms as Lit
    }

    pub fn num_atoms(&self) -> u32 {
        self.num_atoms
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// Adds a clause. Atoms beyond the current count extend it.
    pub fn add_clause<I: IntoIterator<Item = Lit>>(&mut self, lits: I) {
        let clause: Vec<Lit> = lits.into_iter().collect();
        for &l in &clause {
            assert!(l != 0, "literal 0 is reserved as the clause terminator");
            self.num_atoms = self.num_atoms.max(l.unsigned_abs());
        }
        self.clauses.push(clause);
    }

    /// True if the assignment (indexed by atom, slot 0 unused) satisfies every clause.
    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = values.get(l.unsigned_abs() as usize).copied().unwrap_or(false);
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", self.num_atoms, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn write_dimacs<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(self.to_dimacs().as_bytes())
    }

    /// Parses DIMACS CNF. Comment lines (`c ...`) are skipped; clauses may span lines.
    pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<Self, DimacsError> {
        let mut header: Option<(u32, usize)> = None;
        let mut formula = CnfFormula::new();
        let mut current = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| DimacsError::Io(e.to_string()))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
                continue;
            }
            if trimmed.starts_with('p') {
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(DimacsError::BadHeader(lineno + 1));
                }
                let v = parts[2]
                    .parse()
                    .map_err(|_| DimacsError::BadHeader(lineno + 1))?;
                let c = parts[3]
                    .parse()
                    .map_err(|_| DimacsError::BadHeader(lineno + 1))?;
                header = Some((v, c));
                formula.num_atoms = v;
                continue;
            }
            if header.is_none() {
                return Err(DimacsError::MissingHeader);
            }
            for tok in trimmed.split_whitespace() {
                let l: Lit = tok
                    .parse()
                    .map_err(|_| DimacsError::BadLiteral(lineno + 1, tok.to_string()))?;
                if l == 0 {
                    formula.add_clause(std::mem::take(&mut current));
                } else {
                    current.push(l);
                }
            }
        }
        if !current.is_empty() {
            formula.add_clause(current);
        }
        let (v, c) = header.ok_or(DimacsError::MissingHeader)?;
        if formula.num_atoms > v {
            return Err(DimacsError::AtomOutOfRange(formula.num_atoms, v));
        }
        if formula.clauses.len() != c {
            return Err(DimacsError::ClauseCount {
                declared: c,
                found: formula.clauses.len(),
            });
        }
        Ok(formula)
    }
}
