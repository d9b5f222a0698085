//! Weighted totalizer over groups of mutually exclusive literals.
//!
//! Each leaf group contributes the weight of its (at most one) true literal.
//! Every tree node exposes order atoms `o[s]` meaning "partial sum >= s", with
//! sums clipped at a cap. Both directions are encoded so the atoms are exact.

use crate::cnf::{CnfFormula, Lit};

/// A group of literals of which at most one is true, each carrying a positive weight.
pub type Group = Vec<(u64, Lit)>;

/// Order atoms of a subtree: sorted distinct positive sums, each with its atom.
#[derive(Clone, Debug)]
pub struct Sums {
    pub levels: Vec<(u64, Lit)>,
}

impl Sums {
    fn lit_at_least(&self, idx: usize) -> Option<Lit> {
        self.levels.get(idx).map(|l| l.1)
    }

    /// Atom for "sum >= bound", or None when bound <= 0 (always) / beyond max (never).
    pub fn at_least(&self, bound: u64) -> AtLeast {
        if bound == 0 {
            return AtLeast::Always;
        }
        match self.levels.iter().find(|l| l.0 >= bound) {
            Some(&(_, lit)) => AtLeast::Lit(lit),
            None => AtLeast::Never,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtLeast {
    Always,
    Never,
    Lit(Lit),
}

fn leaf(cnf: &mut CnfFormula, group: &Group, cap: u64) -> Sums {
    let mut weights: Vec<u64> = group.iter().map(|g| g.0.min(cap)).filter(|&w| w > 0).collect();
    weights.sort_unstable();
    weights.dedup();
    if weights.len() == 1 && group.iter().filter(|g| g.0 > 0).count() == 1 {
        let lit = group.iter().find(|g| g.0 > 0).unwrap().1;
        return Sums {
            levels: vec![(weights[0], lit)],
        };
    }
    let mut levels = Vec::with_capacity(weights.len());
    for &w in &weights {
        let o = cnf.fresh();
        let mut support = vec![-o];
        for &(gw, lit) in group {
            if gw.min(cap) >= w {
                cnf.add_clause([-lit, o]);
                support.push(lit);
            }
        }
        cnf.add_clause(support);
        levels.push((w, o));
    }
    Sums { levels }
}

fn merge(cnf: &mut CnfFormula, a: &Sums, b: &Sums, cap: u64) -> Sums {
    let av: Vec<u64> = std::iter::once(0).chain(a.levels.iter().map(|l| l.0)).collect();
    let bv: Vec<u64> = std::iter::once(0).chain(b.levels.iter().map(|l| l.0)).collect();
    let mut sums: Vec<u64> = av
        .iter()
        .flat_map(|&x| bv.iter().map(move |&y| (x + y).min(cap)))
        .filter(|&s| s > 0)
        .collect();
    sums.sort_unstable();
    sums.dedup();
    let levels: Vec<(u64, Lit)> = sums.iter().map(|&s| (s, cnf.fresh())).collect();
    let out = Sums { levels };
    let idx_of = |s: u64| out.levels.iter().position(|l| l.0 == s).unwrap();

    for (i, &x) in av.iter().enumerate() {
        for (j, &y) in bv.iter().enumerate() {
            // up: a >= x and b >= y imply out >= x + y
            let s = (x + y).min(cap);
            if s > 0 {
                let mut c = Vec::with_capacity(3);
                if i > 0 {
                    c.push(-a.levels[i - 1].1);
                }
                if j > 0 {
                    c.push(-b.levels[j - 1].1);
                }
                c.push(out.levels[idx_of(s)].1);
                cnf.add_clause(c);
            }
            // down: a < next(x) and b < next(y) imply out < smallest level above x + y
            let total = x + y;
            if total >= cap {
                continue;
            }
            if let Some(k) = out.levels.iter().position(|l| l.0 > total) {
                let mut c = Vec::with_capacity(3);
                if let Some(l) = a.lit_at_least(i) {
                    c.push(l);
                }
                if let Some(l) = b.lit_at_least(j) {
                    c.push(l);
                }
                c.push(-out.levels[k].1);
                cnf.add_clause(c);
            }
        }
    }
    for w in out.levels.windows(2) {
        cnf.add_clause([-w[1].1, w[0].1]);
    }
    out
}

/// Builds the totalizer tree over `groups` with sums clipped at `cap`.
pub fn build(cnf: &mut CnfFormula, groups: &[Group], cap: u64) -> Sums {
    let mut layer: Vec<Sums> = groups
        .iter()
        .map(|g| leaf(cnf, g, cap))
        .filter(|s| !s.levels.is_empty())
        .collect();
    if layer.is_empty() {
        return Sums { levels: Vec::new() };
    }
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge(cnf, &a, &b, cap)),
                None => next.push(a),
            }
        }
        layer = next;
    }
    layer.pop().unwrap()
}
