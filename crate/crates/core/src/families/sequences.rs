//! One-dimensional families: series, rulers, pairings and colorings of integers.

use std::time::Instant;

use super::util::*;
use super::{param, BuiltModel, Family, ParamSpec, Params, VarData, WitnessError, WitnessMap};
use crate::certify::{Certificate, Outcome};
use crate::model::{BoolLit, Cmp, Constraint, ConstraintModel, Domain};
use crate::solver::Effort;

pub struct AllInterval;

impl Family for AllInterval {
    fn name(&self) -> &'static str {
        "all_interval"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 60, 10)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pv(p, "n");
        in_range(w, 0, n - 1)?;
        if !all_distinct(w) {
            return Err(violated("values are not a permutation of 0..n-1"));
        }
        let d: Vec<i64> = w.windows(2).map(|x| (x[1] - x[0]).abs()).collect();
        if !all_distinct(&d) {
            return Err(violated("consecutive differences repeat"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n, Domain::range(0, n as i64 - 1));
        let d = vec_vars(&mut m, "d", n - 1, Domain::range(1, n as i64 - 1));
        for i in 0..n - 1 {
            post_binary_fn(&mut m, x[i], x[i + 1], d[i], |a, b| (a - b).abs());
        }
        m.post(Constraint::AllDifferent(x.clone()));
        m.post(Constraint::AllDifferent(d));
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("n_minus_1", s(n - 1))]
    }
}

pub struct CostasArray;

impl Family for CostasArray {
    fn name(&self) -> &'static str {
        "costas_array"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 24, 8)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = w.len();
        in_range(w, 0, pv(p, "n") - 1)?;
        if !all_distinct(w) {
            return Err(violated("two marks share a row"));
        }
        for dc in 1..n {
            let dr: Vec<i64> = (0..n - dc).map(|c| w[c + dc] - w[c]).collect();
            if !all_distinct(&dr) {
                return Err(violated(format!("displacement vectors repeat at dc = {dc}")));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let top = n as i64 - 1;
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n, Domain::range(0, top));
        m.post(Constraint::AllDifferent(x.clone()));
        for dc in 1..n {
            let mut row = Vec::new();
            for c in 0..n - dc {
                let d = m.int_var(format!("dr[{dc}][{c}]"), -top, top);
                post_binary_fn(&mut m, x[c], x[c + dc], d, |a, b| b - a);
                row.push(d);
            }
            m.post(Constraint::AllDifferent(row));
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("n_minus_1", s(n - 1))]
    }
}

pub struct DeBruijn;

impl Family for DeBruijn {
    fn name(&self) -> &'static str {
        "debruijn"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("b", 2, 6, 2), param("n", 1, 10, 4)];
        P
    }

    fn validate(&self, p: &Params) -> Result<(), String> {
        match pv(p, "b").checked_pow(pv(p, "n") as u32) {
            Some(l) if l <= 1024 => Ok(()),
            _ => Err("b^n must be at most 1024".into()),
        }
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pv(p, "b").pow(pv(p, "n") as u32) as usize)
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let (b, n) = (pv(p, "b"), pu(p, "n"));
        in_range(w, 0, b - 1)?;
        let len = w.len();
        let windows: Vec<i64> = (0..len)
            .map(|i| (0..n).fold(0, |acc, j| acc * b + w[(i + j) % len]))
            .collect();
        if !all_distinct(&windows) {
            return Err(violated("some window appears twice"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let (b, n) = (pv(p, "b"), pu(p, "n"));
        let len = self.witness_len(p).unwrap();
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", len, Domain::range(0, b - 1));
        let win = vec_vars(&mut m, "w", len, Domain::range(0, len as i64 - 1));
        for i in 0..len {
            let mut terms = vec![(-1, win[i])];
            for j in 0..n {
                terms.push((b.pow((n - 1 - j) as u32), x[(i + j) % len]));
            }
            sum_eq(&mut m, terms, 0);
        }
        m.post(Constraint::AllDifferent(win));
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let b = pv(p, "b");
        vec![
            ("b", s(b)),
            ("n", s(pv(p, "n"))),
            ("len", s(self.witness_len(p).unwrap())),
            ("b_minus_1", s(b - 1)),
        ]
    }
}

/// `length` bounds the largest mark; 0 leaves the ruler unbounded.
pub struct Golomb;

impl Golomb {
    fn model_bound(p: &Params) -> i64 {
        match pv(p, "length") {
            0 => pv(p, "n") * pv(p, "n"),
            l => l,
        }
    }
}

impl Family for Golomb {
    fn name(&self) -> &'static str {
        "golomb"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 14, 7), param("length", 0, 400, 0)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let hi = match pv(p, "length") {
            0 => i64::MAX,
            l => l,
        };
        in_range(w, 0, hi)?;
        if w[0] != 0 {
            return Err(violated("first mark must be 0"));
        }
        if w.windows(2).any(|x| x[1] <= x[0]) {
            return Err(violated("marks are not strictly increasing"));
        }
        let mut d = Vec::new();
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                d.push(w[j] - w[i]);
            }
        }
        if !all_distinct(&d) {
            return Err(violated("two pairs of marks share a distance"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let l = Self::model_bound(p);
        let mut m = ConstraintModel::new();
        let mut x = vec![m.add_var("x[0]", Domain::set([0]))];
        for i in 1..n {
            x.push(m.int_var(format!("x[{i}]"), 1, l));
        }
        for i in 0..n - 1 {
            m.post(Constraint::LinearSum {
                terms: vec![(1, x[i + 1]), (-1, x[i])],
                cmp: Cmp::Ge,
                bound: 1,
            });
        }
        let mut d = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = m.int_var(format!("d[{i}][{j}]"), 1, l);
                sum_eq(&mut m, vec![(1, v), (-1, x[j]), (1, x[i])], 0);
                d.push(v);
            }
        }
        m.post(Constraint::AllDifferent(d));
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn cross_check_params(&self, p: &Params, w: &[i64]) -> Params {
        let mut q = p.clone();
        if pv(p, "length") == 0 {
            let n = pv(p, "n");
            let top = w.iter().copied().max().unwrap_or(0);
            q.insert("length".into(), (n * n).max(top));
        }
        q
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let clause = match pv(p, "length") {
            0 => String::new(),
            l => format!(" The largest mark must be at most {l}."),
        };
        vec![("n", s(pv(p, "n"))), ("length_clause", clause)]
    }
}

/// Legendre pair search behind the Hadamard family.
pub struct Hadamard;

impl Family for Hadamard {
    fn name(&self) -> &'static str {
        "hadamard"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 3, 45, 11)];
        P
    }

    fn validate(&self, p: &Params) -> Result<(), String> {
        if pv(p, "n") % 2 == 0 {
            return Err("n must be odd".into());
        }
        Ok(())
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(2 * pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        if let Some(pos) = w.iter().position(|&v| v != 1 && v != -1) {
            return Err(WitnessError::OutOfRange { pos, value: w[pos] });
        }
        let (x, y) = w.split_at(n);
        if x.iter().sum::<i64>() != 1 || y.iter().sum::<i64>() != 1 {
            return Err(violated("each sequence must sum to 1"));
        }
        for k in 1..=(n - 1) / 2 {
            let c: i64 = (0..n).map(|i| x[i] * x[(i + k) % n] + y[i] * y[(i + k) % n]).sum();
            if c != -2 {
                return Err(violated(format!("correlation at shift {k} is {c}, not -2")));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let pm = Domain::set([-1, 1]);
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n, pm.clone());
        let y = vec_vars(&mut m, "y", n, pm.clone());
        sum_eq(&mut m, x.iter().map(|&v| (1, v)).collect(), 1);
        sum_eq(&mut m, y.iter().map(|&v| (1, v)).collect(), 1);
        for k in 1..=(n - 1) / 2 {
            let mut terms = Vec::new();
            for (name, seq) in [("px", &x), ("py", &y)] {
                for i in 0..n {
                    let prod = m.add_var(format!("{name}[{k}][{i}]"), pm.clone());
                    post_binary_fn(&mut m, seq[i], seq[(i + k) % n], prod, |a, b| a * b);
                    terms.push((1, prod));
                }
            }
            sum_eq(&mut m, terms, -2);
        }
        let mut w = x;
        w.extend(y);
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(w),
        })
    }

    fn witness_names(&self, p: &Params) -> Vec<String> {
        let n = pu(p, "n");
        (0..n)
            .map(|i| format!("x[{i}]"))
            .chain((0..n).map(|i| format!("y[{i}]")))
            .collect()
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        let corr = format!(
            "sum_{{i=0}}^{{{top}}} x[i] * x[(i+k) mod {n}]  +  sum_{{i=0}}^{{{top}}} y[i] * y[(i+k) mod {n}]",
            top = n - 1
        );
        vec![
            ("n", s(n)),
            ("half", s((n - 1) / 2)),
            ("correlation", corr),
            ("len", s(2 * n)),
        ]
    }
}

pub struct Langford;

impl Family for Langford {
    fn name(&self) -> &'static str {
        "langford"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 20, 8)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(2 * pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pv(p, "n");
        in_range(w, 1, n)?;
        for v in 1..=n {
            let pos: Vec<usize> = (0..w.len()).filter(|&i| w[i] == v).collect();
            if pos.len() != 2 {
                return Err(violated(format!("{v} appears {} times", pos.len())));
            }
            if pos[1] - pos[0] != v as usize + 1 {
                return Err(violated(format!("copies of {v} are not {} apart", v + 1)));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let len = 2 * n;
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", len, Domain::range(1, n as i64));
        for v in 1..=n {
            let gap = v + 1;
            // first position of v, channelled to both copies
            let first = m.int_var(format!("first[{v}]"), 0, (len - gap - 1) as i64);
            for i in 0..len - gap {
                m.post(Constraint::Clause(vec![
                    BoolLit::is_not(first, i as i64),
                    BoolLit::is(x[i], v as i64),
                ]));
                m.post(Constraint::Clause(vec![
                    BoolLit::is_not(first, i as i64),
                    BoolLit::is(x[i + gap], v as i64),
                ]));
            }
            for i in 0..len {
                let mut cl = vec![BoolLit::is_not(x[i], v as i64)];
                if i + gap < len {
                    cl.push(BoolLit::is(first, i as i64));
                }
                if i >= gap {
                    cl.push(BoolLit::is(first, (i - gap) as i64));
                }
                m.post(Constraint::Clause(cl));
            }
            m.post(Constraint::CardinalityOfValue {
                vars: x.clone(),
                value: v as i64,
                cmp: Cmp::Eq,
                bound: 2,
            });
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("len", s(2 * n))]
    }
}

pub struct LowAutocorrelation;

pub(crate) fn labs_energy(w: &[i64]) -> i64 {
    let n = w.len();
    (1..n)
        .map(|k| {
            let c: i64 = (0..n - k).map(|i| w[i] * w[i + k]).sum();
            c * c
        })
        .sum()
}

struct LabsSearch {
    n: usize,
    bound: i64,
    seq: Vec<i64>,
    /// Sum of products over fully assigned pairs, per shift.
    partial: Vec<i64>,
    /// Pairs per shift with an unassigned endpoint.
    open: Vec<i64>,
    order: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl LabsSearch {
    fn lower_bound(&self) -> i64 {
        (1..self.n)
            .map(|k| {
                let parity = ((self.n - k) % 2) as i64;
                let c = (self.partial[k].abs() - self.open[k]).max(parity);
                c * c
            })
            .sum()
    }

    fn assign(&mut self, pos: usize, v: i64, sign: i64) {
        if sign > 0 {
            self.seq[pos] = v;
        }
        for k in 1..self.n {
            for q in [pos.checked_sub(k), pos.checked_add(k).filter(|&q| q < self.n)]
                .into_iter()
                .flatten()
            {
                if self.seq[q] != 0 && q != pos {
                    self.partial[k] += sign * v * self.seq[q];
                    self.open[k] -= sign;
                }
            }
        }
        if sign < 0 {
            self.seq[pos] = 0;
        }
    }

    fn search(&mut self, depth: usize) -> bool {
        self.nodes += 1;
        if self.nodes % 4096 == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out || self.lower_bound() > self.bound {
            return false;
        }
        if depth == self.n {
            return true;
        }
        let pos = self.order[depth];
        let choices: &[i64] = if depth == 0 { &[1] } else { &[1, -1] };
        for &v in choices {
            self.assign(pos, v, 1);
            if self.search(depth + 1) {
                return true;
            }
            self.assign(pos, v, -1);
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

impl Family for LowAutocorrelation {
    fn name(&self) -> &'static str {
        "low_autocorrelation"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 40, 12), param("bound", 0, 20000, 14)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        if let Some(pos) = w.iter().position(|&v| v != 1 && v != -1) {
            return Err(WitnessError::OutOfRange { pos, value: w[pos] });
        }
        let e = labs_energy(w);
        if e > pv(p, "bound") {
            return Err(violated(format!("energy {e} exceeds the bound")));
        }
        Ok(())
    }

    /// Exhaustive branch and bound from both ends, first element fixed to +1
    /// since negation preserves every correlation.
    fn native_certify(&self, p: &Params, _: &VarData, deadline: Instant) -> Option<Certificate> {
        let start = Instant::now();
        let n = pu(p, "n");
        let mut order = Vec::with_capacity(n);
        let (mut lo, mut hi) = (0, n - 1);
        while lo <= hi {
            order.push(lo);
            if hi != lo {
                order.push(hi);
            }
            lo += 1;
            if hi == 0 {
                break;
            }
            hi -= 1;
        }
        let mut st = LabsSearch {
            n,
            bound: pv(p, "bound"),
            seq: vec![0; n],
            partial: vec![0; n],
            open: (0..n).map(|k| (n - k) as i64).collect(),
            order,
            nodes: 0,
            deadline,
            timed_out: false,
        };
        let found = st.search(0);
        let outcome = if found {
            Outcome::Sat(st.seq.clone())
        } else if st.timed_out {
            Outcome::Timeout
        } else {
            Outcome::Unsat
        };
        Some(Certificate {
            outcome,
            elapsed: start.elapsed(),
            effort: Effort {
                conflicts: 0,
                decisions: st.nodes,
            },
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("n_minus_1", s(n - 1)), ("bound", s(pv(p, "bound")))]
    }
}

pub struct MagicSequence;

impl Family for MagicSequence {
    fn name(&self) -> &'static str {
        "magic_sequence"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 40, 8)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        in_range(w, 0, pv(p, "n") - 1)?;
        for (i, &x) in w.iter().enumerate() {
            let c = w.iter().filter(|&&v| v == i as i64).count() as i64;
            if c != x {
                return Err(violated(format!("x[{i}] = {x} but {i} appears {c} times")));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n, Domain::range(0, n as i64 - 1));
        for i in 0..n {
            let mut terms = vec![(-1, x[i])];
            for (j, &xj) in x.iter().enumerate() {
                let b = eq_indicator(&mut m, format!("is[{j}][{i}]"), xj, i as i64);
                terms.push((1, b));
            }
            sum_eq(&mut m, terms, 0);
        }
        // implied: the counts add up to n, and so do the weighted counts
        sum_eq(&mut m, x.iter().map(|&v| (1, v)).collect(), n as i64);
        sum_eq(
            &mut m,
            x.iter().enumerate().map(|(i, &v)| (i as i64, v)).collect(),
            n as i64,
        );
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("n_minus_1", s(n - 1))]
    }
}

pub struct NumberPartitioning;

impl Family for NumberPartitioning {
    fn name(&self) -> &'static str {
        "number_partitioning"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 80, 12), param("k", 2, 10, 3)];
        P
    }

    fn validate(&self, p: &Params) -> Result<(), String> {
        let (n, k) = (pv(p, "n"), pv(p, "k"));
        if (n * (n + 1) / 2) % k != 0 {
            return Err(format!("the total {} is not divisible by k = {k}", n * (n + 1) / 2));
        }
        Ok(())
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let (n, k) = (pv(p, "n"), pv(p, "k"));
        in_range(w, 0, k - 1)?;
        let target = n * (n + 1) / 2 / k;
        for j in 0..k {
            let sum: i64 = (0..w.len()).filter(|&i| w[i] == j).map(|i| i as i64 + 1).sum();
            if sum != target {
                return Err(violated(format!("subset {j} sums to {sum}, not {target}")));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let (n, k) = (pu(p, "n"), pv(p, "k"));
        let target = (n * (n + 1) / 2) as i64 / k;
        let mut m = ConstraintModel::new();
        let a = vec_vars(&mut m, "x", n, Domain::range(0, k - 1));
        for j in 0..k {
            let terms = (0..n)
                .map(|i| {
                    let b = eq_indicator(&mut m, format!("in[{i}][{j}]"), a[i], j);
                    (i as i64 + 1, b)
                })
                .collect();
            sum_eq(&mut m, terms, target);
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(a),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let (n, k) = (pv(p, "n"), pv(p, "k"));
        let total = n * (n + 1) / 2;
        vec![
            ("n", s(n)),
            ("k", s(k)),
            ("k_minus_1", s(k - 1)),
            ("total", s(total)),
            ("target", s(total / k)),
        ]
    }
}

/// Classical pigeonhole: n + 1 pigeons into n holes, injectively.
pub struct Pigeons;

impl Family for Pigeons {
    fn name(&self) -> &'static str {
        "pigeons"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 1, 14, 5)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n") + 1)
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        in_range(w, 0, pv(p, "n") - 1)?;
        if !all_distinct(w) {
            return Err(violated("two pigeons share a hole"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n + 1, Domain::range(0, n as i64 - 1));
        m.post(Constraint::AllDifferent(x.clone()));
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("n_minus_1", s(n - 1)), ("pigeons", s(n + 1))]
    }
}

pub struct VanDerWaerden;

fn progressions(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if l == 0 {
        return out;
    }
    for a in 0..n {
        for d in 1..n {
            if a + (l - 1) * d >= n {
                break;
            }
            out.push((0..l).map(|t| a + t * d).collect());
        }
    }
    out
}

impl Family for VanDerWaerden {
    fn name(&self) -> &'static str {
        "van_der_waerden"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 1, 300, 20), param("k", 2, 5, 2), param("L", 2, 8, 3)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        in_range(w, 0, pv(p, "k") - 1)?;
        for ap in progressions(w.len(), pu(p, "L")) {
            if ap.iter().all(|&i| w[i] == w[ap[0]]) {
                return Err(violated(format!(
                    "monochromatic progression starting at {} with step {}",
                    ap[0] + 1,
                    ap[1] - ap[0]
                )));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let (n, k) = (pu(p, "n"), pv(p, "k"));
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n, Domain::range(0, k - 1));
        for ap in progressions(n, pu(p, "L")) {
            for c in 0..k {
                m.post(Constraint::Clause(
                    ap.iter().map(|&i| BoolLit::is_not(x[i], c)).collect(),
                ));
            }
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let (n, k, l) = (pv(p, "n"), pv(p, "k"), pv(p, "L"));
        let range = if k == 2 {
            "0 or 1".to_string()
        } else {
            format!("in 0..{}", k - 1)
        };
        vec![
            ("n", s(n)),
            ("k", s(k)),
            ("k_minus_1", s(k - 1)),
            ("L", s(l)),
            ("L_minus_1", s(l - 1)),
            ("color_range", range),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labs_energy_reference() {
        // Barker sequence of length 13 has all |C_k| <= 1, energy 6
        let barker = [1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1];
        assert_eq!(labs_energy(&barker), 6);
        assert_eq!(labs_energy(&[1, 1]), 1);
    }

    #[test]
    fn progression_counts() {
        // n = 9, length 3: sum over d of (9 - 2d) for d = 1..4
        assert_eq!(progressions(9, 3).len(), 7 + 5 + 3 + 1);
        assert!(progressions(2, 3).is_empty());
    }
}
