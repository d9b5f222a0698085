//! At-most-one and exactly-one clause encodings.

use crate::cnf::{CnfFormula, Lit};

/// Above this many literals the sequential counter replaces the pairwise encoding.
pub const PAIRWISE_LIMIT: usize = 8;

pub fn at_most_one(cnf: &mut CnfFormula, lits: &[Lit]) {
    if lits.len() <= 1 {
        return;
    }
    if lits.len() <= PAIRWISE_LIMIT {
        for i in 0..lits.len() {
            for j in i + 1..lits.len() {
                cnf.add_clause([-lits[i], -lits[j]]);
            }
        }
        return;
    }
    // Sequential counter: s[i] holds iff some lit in lits[..=i] is true.
    let n = lits.len();
    let s: Vec<Lit> = (0..n - 1).map(|_| cnf.fresh()).collect();
    cnf.add_clause([-lits[0], s[0]]);
    for i in 1..n - 1 {
        cnf.add_clause([-lits[i], s[i]]);
        cnf.add_clause([-s[i - 1], s[i]]);
        cnf.add_clause([-lits[i], -s[i - 1]]);
    }
    cnf.add_clause([-lits[n - 1], -s[n - 2]]);
    // Reverse direction makes the counter a function of the inputs.
    cnf.add_clause([-s[0], lits[0]]);
    for i in 1..n - 1 {
        cnf.add_clause([-s[i], s[i - 1], lits[i]]);
    }
}

pub fn exactly_one(cnf: &mut CnfFormula, lits: &[Lit]) {
    cnf.add_clause(lits.iter().copied());
    at_most_one(cnf, lits);
}
