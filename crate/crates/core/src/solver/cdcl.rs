//! Embedded conflict-driven clause-learning SAT engine.
//!
//! Two-watched-literal propagation, VSIDS branching with phase saving,
//! first-UIP learning with recursive minimization, Luby restarts and
//! LBD-based learnt clause reduction. Clauses can be added between calls
//! to [`Cdcl::solve`], which is what model enumeration and lazy refinement
//! rely on.

use std::time::Instant;

use crate::cnf::{CnfFormula, Lit};

const UNDEF_CLAUSE: u32 = u32::MAX;

#[inline]
fn code(l: Lit) -> u32 {
    let v = l.unsigned_abs() - 1;
    (v << 1) | u32::from(l < 0)
}

#[inline]
fn decode(c: u32) -> Lit {
    let v = ((c >> 1) + 1) as Lit;
    if c & 1 == 1 {
        -v
    } else {
        v
    }
}

#[inline]
fn neg(c: u32) -> u32 {
    c ^ 1
}

#[inline]
fn var(c: u32) -> usize {
    (c >> 1) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdclStatus {
    Sat,
    Unsat,
    Interrupted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CdclStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
}

#[derive(Clone, Copy)]
struct Watch {
    cref: u32,
    blocker: u32,
}

struct Clause {
    lits: Vec<u32>,
    learnt: bool,
    deleted: bool,
    lbd: u32,
}

/// Max-heap over variable activities, indexed by variable.
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<usize>,
}

const NOT_IN_HEAP: usize = usize::MAX;

impl VarHeap {
    fn new() -> Self {
        VarHeap {
            heap: Vec::new(),
            pos: Vec::new(),
        }
    }

    fn grow(&mut self, n: usize) {
        if self.pos.len() < n {
            self.pos.resize(n, NOT_IN_HEAP);
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] != NOT_IN_HEAP
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v] = self.heap.len();
        self.heap.push(v as u32);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.pos[v], act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap[0] as usize;
        let last = self.heap.pop().unwrap();
        self.pos[top] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if act[p as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = p;
            self.pos[p as usize] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let child = if r < n && act[self.heap[r] as usize] > act[self.heap[l] as usize] {
                r
            } else {
                l
            };
            let c = self.heap[child];
            if act[c as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = c;
            self.pos[c as usize] = i;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i;
    }
}

fn luby(y: f64, mut x: u64) -> f64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq as i32)
}

pub struct Cdcl {
    num_vars: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watch>>,
    // per variable
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    activity: Vec<f64>,
    phase: Vec<bool>,
    seen: Vec<u8>,
    // trail
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    heap: VarHeap,
    var_inc: f64,
    ok: bool,
    model: Vec<bool>,
    stats: CdclStats,
    num_learnts: usize,
    next_reduce: u64,
    analyze_stack: Vec<u32>,
    analyze_toclear: Vec<u32>,
}

impl Default for Cdcl {
    fn default() -> Self {
        Self::new()
    }
}

impl Cdcl {
    pub fn new() -> Self {
        Cdcl {
            num_vars: 0,
            clauses: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            activity: Vec::new(),
            phase: Vec::new(),
            seen: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            heap: VarHeap::new(),
            var_inc: 1.0,
            ok: true,
            model: Vec::new(),
            stats: CdclStats::default(),
            num_learnts: 0,
            next_reduce: 2000,
            analyze_stack: Vec::new(),
            analyze_toclear: Vec::new(),
        }
    }

    pub fn from_formula(cnf: &CnfFormula) -> Self {
        let mut s = Cdcl::new();
        s.reserve_atoms(cnf.num_atoms());
        for c in cnf.clauses() {
            if !s.add_clause(c) {
                break;
            }
        }
        s
    }

    pub fn num_atoms(&self) -> u32 {
        self.num_vars as u32
    }

    pub fn stats(&self) -> CdclStats {
        self.stats
    }

    pub fn reserve_atoms(&mut self, n: u32) {
        let n = n as usize;
        if n <= self.num_vars {
            return;
        }
        self.assigns.resize(n, 0);
        self.level.resize(n, 0);
        self.reason.resize(n, UNDEF_CLAUSE);
        self.activity.resize(n, 0.0);
        self.phase.resize(n, false);
        self.seen.resize(n, 0);
        self.watches.resize_with(2 * n, Vec::new);
        self.heap.grow(n);
        for v in self.num_vars..n {
            self.heap.insert(v, &self.activity);
        }
        self.num_vars = n;
    }

    #[inline]
    fn value(&self, c: u32) -> i8 {
        let a = self.assigns[var(c)];
        if c & 1 == 1 {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause, backtracking to the root first. Returns false once the
    /// clause set is known to be unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        let max_atom = lits.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0);
        self.reserve_atoms(max_atom);
        let mut cl: Vec<u32> = lits.iter().map(|&l| code(l)).collect();
        cl.sort_unstable();
        cl.dedup();
        let mut simplified = Vec::with_capacity(cl.len());
        for (i, &c) in cl.iter().enumerate() {
            if i + 1 < cl.len() && cl[i + 1] == neg(c) {
                return true; // tautology
            }
            match self.value(c) {
                1 => return true,
                -1 => {}
                _ => simplified.push(c),
            }
        }
        match simplified.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(simplified[0], UNDEF_CLAUSE);
                if self.propagate() != UNDEF_CLAUSE {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                self.attach(simplified, false, 0);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<u32>, learnt: bool, lbd: u32) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[neg(lits[0]) as usize].push(Watch {
            cref,
            blocker: lits[1],
        });
        self.watches[neg(lits[1]) as usize].push(Watch {
            cref,
            blocker: lits[0],
        });
        if learnt {
            self.num_learnts += 1;
        }
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            lbd,
        });
        cref
    }

    fn enqueue(&mut self, c: u32, reason: u32) {
        let v = var(c);
        self.assigns[v] = if c & 1 == 1 { -1 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(c);
    }

    fn propagate(&mut self) -> u32 {
        let mut conflict = UNDEF_CLAUSE;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = neg(p);
            let mut ws = std::mem::take(&mut self.watches[p as usize]);
            let mut i = 0;
            let mut j = 0;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                if first != w.blocker && self.value(first) == 1 {
                    ws[j] = Watch {
                        cref: w.cref,
                        blocker: first,
                    };
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let lk = self.clauses[cref].lits[k];
                    if self.value(lk) != -1 {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[neg(lk) as usize].push(Watch {
                            cref: w.cref,
                            blocker: first,
                        });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watch {
                    cref: w.cref,
                    blocker: first,
                };
                j += 1;
                if self.value(first) == -1 {
                    conflict = w.cref;
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[p as usize] = ws;
            if conflict != UNDEF_CLAUSE {
                break;
            }
        }
        conflict
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl as usize];
        for idx in (lim..self.trail.len()).rev() {
            let c = self.trail[idx];
            let v = var(c);
            self.phase[v] = c & 1 == 0;
            self.assigns[v] = 0;
            self.reason[v] = UNDEF_CLAUSE;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = lim;
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<u32>, u32) {
        let mut learnt: Vec<u32> = vec![0];
        let mut path = 0usize;
        let mut p: Option<u32> = None;
        let mut index = self.trail.len();
        let dl = self.decision_level();
        loop {
            let start = usize::from(p.is_some());
            let len = self.clauses[confl as usize].lits.len();
            for k in start..len {
                let q = self.clauses[confl as usize].lits[k];
                let v = var(q);
                if self.seen[v] == 0 && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = 1;
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var(self.trail[index])] != 0 {
                    break;
                }
            }
            let pl = self.trail[index];
            p = Some(pl);
            confl = self.reason[var(pl)];
            self.seen[var(pl)] = 0;
            path -= 1;
            if path == 0 {
                break;
            }
        }
        learnt[0] = neg(p.unwrap());

        // recursive minimization
        self.analyze_toclear.clear();
        self.analyze_toclear.extend_from_slice(&learnt[1..]);
        let abs_levels = learnt[1..]
            .iter()
            .fold(0u32, |acc, &l| acc | self.abstract_level(var(l)));
        let mut keep = vec![learnt[0]];
        for i in 1..learnt.len() {
            let l = learnt[i];
            if self.reason[var(l)] == UNDEF_CLAUSE || !self.lit_redundant(l, abs_levels) {
                keep.push(l);
            }
        }
        for idx in 0..self.analyze_toclear.len() {
            let v = var(self.analyze_toclear[idx]);
            self.seen[v] = 0;
        }
        let learnt = keep;

        let mut bt = 0;
        let mut learnt = learnt;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[var(learnt[i])] > self.level[var(learnt[max_i])] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            bt = self.level[var(learnt[1])];
        }
        (learnt, bt)
    }

    fn lit_redundant(&mut self, p: u32, abs_levels: u32) -> bool {
        self.analyze_stack.clear();
        self.analyze_stack.push(p);
        let top = self.analyze_toclear.len();
        while let Some(q) = self.analyze_stack.pop() {
            let r = self.reason[var(q)];
            let len = self.clauses[r as usize].lits.len();
            for k in 1..len {
                let l = self.clauses[r as usize].lits[k];
                let v = var(l);
                if self.seen[v] == 0 && self.level[v] > 0 {
                    if self.reason[v] != UNDEF_CLAUSE && (self.abstract_level(v) & abs_levels) != 0
                    {
                        self.seen[v] = 1;
                        self.analyze_stack.push(l);
                        self.analyze_toclear.push(l);
                    } else {
                        for idx in top..self.analyze_toclear.len() {
                            let w = var(self.analyze_toclear[idx]);
                            self.seen[w] = 0;
                        }
                        self.analyze_toclear.truncate(top);
                        return false;
                    }
                }
            }
        }
        true
    }

    fn lbd(&mut self, lits: &[u32]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|&l| self.level[var(l)]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn locked(&self, cref: usize) -> bool {
        let c = &self.clauses[cref];
        let first = c.lits[0];
        let v = var(first);
        self.value(first) == 1 && self.reason[v] == cref as u32
    }

    fn reduce_db(&mut self) {
        let mut candidates: Vec<usize> = (0..self.clauses.len())
            .filter(|&i| {
                let c = &self.clauses[i];
                c.learnt && !c.deleted && c.lbd > 2 && c.lits.len() > 2
            })
            .collect();
        candidates.sort_by_key(|&i| std::cmp::Reverse((self.clauses[i].lbd, self.clauses[i].lits.len())));
        let remove = candidates.len() / 2;
        for &i in candidates.iter().take(remove) {
            if self.locked(i) {
                continue;
            }
            let c = &mut self.clauses[i];
            c.deleted = true;
            c.lits = Vec::new();
            self.num_learnts -= 1;
        }
        // purge dangling watches
        for ws in self.watches.iter_mut() {
            ws.retain(|w| !self.clauses[w.cref as usize].deleted);
        }
    }

    fn pick_branch(&mut self) -> Option<u32> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == 0 {
                let c = ((v as u32) << 1) | u32::from(!self.phase[v]);
                return Some(c);
            }
        }
        None
    }

    /// Runs the search. `deadline` bounds wall time; on expiry the result is
    /// [`CdclStatus::Interrupted`] and the solver stays usable.
    pub fn solve(&mut self, deadline: Option<Instant>) -> CdclStatus {
        if !self.ok {
            return CdclStatus::Unsat;
        }
        self.cancel_until(0);
        if self.propagate() != UNDEF_CLAUSE {
            self.ok = false;
            return CdclStatus::Unsat;
        }
        let mut restart_idx = 0u64;
        loop {
            let budget = (luby(2.0, restart_idx) * 100.0) as u64;
            restart_idx += 1;
            match self.search(budget, deadline) {
                Some(status) => {
                    if status == CdclStatus::Sat {
                        self.model = (0..self.num_vars).map(|v| self.assigns[v] == 1).collect();
                    }
                    self.cancel_until(0);
                    if status == CdclStatus::Unsat {
                        self.ok = false;
                    }
                    return status;
                }
                None => {
                    self.stats.restarts += 1;
                    self.cancel_until(0);
                }
            }
        }
    }

    fn search(&mut self, conflict_budget: u64, deadline: Option<Instant>) -> Option<CdclStatus> {
        let mut conflicts_here = 0u64;
        loop {
            let confl = self.propagate();
            if confl != UNDEF_CLAUSE {
                self.stats.conflicts += 1;
                conflicts_here += 1;
                if self.decision_level() == 0 {
                    return Some(CdclStatus::Unsat);
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], UNDEF_CLAUSE);
                } else {
                    let lbd = self.lbd(&learnt);
                    let first = learnt[0];
                    let cref = self.attach(learnt, true, lbd);
                    self.enqueue(first, cref);
                }
                self.var_inc *= 1.0 / 0.95;
                if self.stats.conflicts % 64 == 0 {
                    if let Some(d) = deadline {
                        if Instant::now() >= d {
                            return Some(CdclStatus::Interrupted);
                        }
                    }
                }
            } else {
                if conflicts_here >= conflict_budget {
                    return None;
                }
                if self.stats.conflicts >= self.next_reduce {
                    self.next_reduce = self.stats.conflicts + 2000 + 300 * (self.stats.restarts + 1);
                    self.reduce_db();
                }
                match self.pick_branch() {
                    None => return Some(CdclStatus::Sat),
                    Some(c) => {
                        self.stats.decisions += 1;
                        if self.stats.decisions % 4096 == 0 {
                            if let Some(d) = deadline {
                                if Instant::now() >= d {
                                    return Some(CdclStatus::Interrupted);
                                }
                            }
                        }
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(c, UNDEF_CLAUSE);
                    }
                }
            }
        }
    }

    /// Value of `atom` in the last model found (false when unset).
    pub fn model_value(&self, atom: u32) -> bool {
        self.model.get(atom as usize - 1).copied().unwrap_or(false)
    }

    /// Signed literals of the last model, one per atom.
    pub fn model_lits(&self) -> Vec<Lit> {
        (0..self.num_vars)
            .map(|v| {
                let c = ((v as u32) << 1) | u32::from(!self.model.get(v).copied().unwrap_or(false));
                decode(c)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(clauses: &[&[Lit]]) -> (CdclStatus, Cdcl) {
        let mut f = CnfFormula::new();
        for c in clauses {
            f.add_clause(c.iter().copied());
        }
        let mut s = Cdcl::from_formula(&f);
        let st = s.solve(None);
        (st, s)
    }

    #[test]
    fn luby_sequence_prefix() {
        let seq: Vec<f64> = (0..7).map(|i| luby(2.0, i)).collect();
        assert_eq!(seq, vec![1.0, 1.0, 2.0, 1.0, 1.0, 2.0, 4.0]);
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(solve(&[]).0, CdclStatus::Sat);
        assert_eq!(solve(&[&[1], &[-1]]).0, CdclStatus::Unsat);
        assert_eq!(solve(&[&[]]).0, CdclStatus::Unsat);
        let (st, s) = solve(&[&[1, 2], &[-1], &[-2, 3]]);
        assert_eq!(st, CdclStatus::Sat);
        assert!(!s.model_value(1) && s.model_value(2) && s.model_value(3));
    }

    #[test]
    fn incremental_blocking() {
        let mut s = Cdcl::new();
        s.reserve_atoms(2);
        let mut count = 0;
        while s.solve(None) == CdclStatus::Sat {
            count += 1;
            let block: Vec<Lit> = s.model_lits().iter().map(|l| -l).collect();
            s.add_clause(&block);
        }
        assert_eq!(count, 4);
    }
}
