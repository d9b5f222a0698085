//! Compilation of a [`ConstraintModel`] into CNF over one-hot value indicators.

use std::collections::HashMap;

use crate::cnf::{CnfFormula, Lit};
use crate::encode::card::{at_most_one, exactly_one};
use crate::encode::totalizer::{self, AtLeast, Group};
use crate::error::{CompileError, DecodeError};
use crate::model::{BoolLit, Cmp, Constraint, ConstraintModel, Operand, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    /// Largest domain given indicator atoms.
    pub max_domain: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { max_domain: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct VarEntry {
    name: String,
    values: Vec<i64>,
    atoms: Vec<u32>,
}

/// Bidirectional map between (variable, value) indicators and CNF atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarMap {
    entries: Vec<VarEntry>,
    by_atom: HashMap<u32, (VarId, usize)>,
}

impl VarMap {
    pub fn num_vars(&self) -> usize {
        self.entries.len()
    }

    /// Atom of the indicator `var == value`, if the value is in the domain.
    pub fn atom(&self, var: VarId, value: i64) -> Option<u32> {
        let e = &self.entries[var];
        e.values.binary_search(&value).ok().map(|i| e.atoms[i])
    }

    pub fn indicator_atoms(&self, var: VarId) -> &[u32] {
        &self.entries[var].atoms
    }

    pub fn values(&self, var: VarId) -> &[i64] {
        &self.entries[var].values
    }

    /// The (variable, value) pair an atom stands for.
    pub fn lookup(&self, atom: u32) -> Option<(VarId, i64)> {
        self.by_atom
            .get(&atom)
            .map(|&(v, i)| (v, self.entries[v].values[i]))
    }

    /// Signed CNF literal for a model literal: `Ok(Some)` for a real atom,
    /// `Ok(None)` when the literal is constantly false, `Err(())` when constantly true.
    fn bool_lit(&self, l: &BoolLit) -> Result<Option<Lit>, ()> {
        match (self.atom(l.var, l.value), l.positive) {
            (Some(a), true) => Ok(Some(a as Lit)),
            (Some(a), false) => Ok(Some(-(a as Lit))),
            (None, true) => Ok(None),
            (None, false) => Err(()),
        }
    }

    /// Translates a model clause into CNF. `None` when the clause is trivially true.
    pub fn clause(&self, lits: &[BoolLit]) -> Option<Vec<Lit>> {
        let mut out = Vec::with_capacity(lits.len());
        for l in lits {
            match self.bool_lit(l) {
                Ok(Some(x)) => out.push(x),
                Ok(None) => {}
                Err(()) => return None,
            }
        }
        Some(out)
    }

    /// Blocking clause excluding the given values of `vars`.
    pub fn blocking_clause(&self, vars: &[VarId], values: &[i64]) -> Vec<Lit> {
        vars.iter()
            .zip(values)
            .filter_map(|(&v, &x)| self.atom(v, x).map(|a| -(a as Lit)))
            .collect()
    }
}

/// Decodes a CNF model (`model[atom]`, slot 0 unused) into one value per variable.
pub fn decode_model(varmap: &VarMap, model: &[bool]) -> Result<Vec<i64>, DecodeError> {
    let truth = |a: u32| model.get(a as usize).copied().unwrap_or(false);
    varmap
        .entries
        .iter()
        .map(|e| {
            let on: Vec<usize> = (0..e.atoms.len()).filter(|&i| truth(e.atoms[i])).collect();
            if on.len() == 1 {
                Ok(e.values[on[0]])
            } else {
                Err(DecodeError::InconsistentModel {
                    var: e.name.clone(),
                    count: on.len(),
                })
            }
        })
        .collect()
}

/// [`decode_model`] from a set of true atoms.
pub fn decode_true_atoms(varmap: &VarMap, true_atoms: &[u32]) -> Result<Vec<i64>, DecodeError> {
    let max = true_atoms.iter().copied().max().unwrap_or(0) as usize;
    let mut model = vec![false; max + 1];
    for &a in true_atoms {
        model[a as usize] = true;
    }
    decode_model(varmap, &model)
}

pub fn compile_to_cnf(model: &ConstraintModel) -> Result<(CnfFormula, VarMap), CompileError> {
    compile_with(model, CompileOptions::default())
}

pub fn compile_with(
    model: &ConstraintModel,
    opts: CompileOptions,
) -> Result<(CnfFormula, VarMap), CompileError> {
    let mut cnf = CnfFormula::new();
    let mut varmap = VarMap::default();
    for (id, v) in model.vars().iter().enumerate() {
        let size = v.domain.size();
        if size > opts.max_domain {
            return Err(CompileError::DomainTooLarge {
                name: v.name.clone(),
                size,
                budget: opts.max_domain,
            });
        }
        let values = v.domain.values();
        let atoms: Vec<u32> = values.iter().map(|_| cnf.fresh() as u32).collect();
        for (i, &a) in atoms.iter().enumerate() {
            varmap.by_atom.insert(a, (id, i));
        }
        varmap.entries.push(VarEntry {
            name: v.name.clone(),
            values,
            atoms,
        });
    }
    for e in &varmap.entries {
        let lits: Vec<Lit> = e.atoms.iter().map(|&a| a as Lit).collect();
        exactly_one(&mut cnf, &lits);
    }
    for c in model.constraints() {
        encode_constraint(&mut cnf, &varmap, c);
    }
    Ok((cnf, varmap))
}

/// Encodes one additional constraint into an existing formula.
pub fn encode_constraint(cnf: &mut CnfFormula, vm: &VarMap, c: &Constraint) {
    match c {
        Constraint::AllDifferent(vars) => {
            let mut by_value: std::collections::BTreeMap<i64, Vec<Lit>> = Default::default();
            for &v in vars {
                for (i, &val) in vm.values(v).iter().enumerate() {
                    by_value
                        .entry(val)
                        .or_default()
                        .push(vm.indicator_atoms(v)[i] as Lit);
                }
            }
            for lits in by_value.values() {
                at_most_one(cnf, lits);
            }
        }
        Constraint::LinearSum { terms, cmp, bound } => {
            let mut offset = 0i64;
            let mut groups = Vec::new();
            for &(coef, v) in terms {
                if coef == 0 {
                    continue;
                }
                let contrib: Vec<i64> = vm.values(v).iter().map(|&x| coef * x).collect();
                let lo = *contrib.iter().min().unwrap();
                offset += lo;
                let g: Group = contrib
                    .iter()
                    .zip(vm.indicator_atoms(v))
                    .filter(|(&w, _)| w > lo)
                    .map(|(&w, &a)| ((w - lo) as u64, a as Lit))
                    .collect();
                groups.push(g);
            }
            encode_pb(cnf, &groups, *cmp, bound - offset);
        }
        Constraint::CardinalityOfValue {
            vars,
            value,
            cmp,
            bound,
        } => {
            let groups: Vec<Group> = vars
                .iter()
                .filter_map(|&v| vm.atom(v, *value).map(|a| vec![(1u64, a as Lit)]))
                .collect();
            encode_pb(cnf, &groups, *cmp, *bound);
        }
        Constraint::ProductPairSum { pairs, cmp, bound } => {
            let mut groups = Vec::new();
            for &(x, y) in pairs {
                let (Some(ax), Some(ay)) = (vm.atom(x, 1), vm.atom(y, 1)) else {
                    continue;
                };
                let p = cnf.fresh();
                cnf.add_clause([-p, ax as Lit]);
                cnf.add_clause([-p, ay as Lit]);
                cnf.add_clause([p, -(ax as Lit), -(ay as Lit)]);
                groups.push(vec![(1u64, p)]);
            }
            encode_pb(cnf, &groups, *cmp, *bound);
        }
        Constraint::Element {
            index,
            array,
            result,
        } => {
            for (i, &idx_val) in vm.values(*index).iter().enumerate() {
                let sel = vm.indicator_atoms(*index)[i] as Lit;
                if idx_val < 0 || idx_val as usize >= array.len() {
                    cnf.add_clause([-sel]);
                    continue;
                }
                match array[idx_val as usize] {
                    Operand::Const(k) => match vm.atom(*result, k) {
                        Some(r) => cnf.add_clause([-sel, r as Lit]),
                        None => cnf.add_clause([-sel]),
                    },
                    Operand::Var(y) => {
                        for (j, &yv) in vm.values(y).iter().enumerate() {
                            let ya = vm.indicator_atoms(y)[j] as Lit;
                            match vm.atom(*result, yv) {
                                Some(r) => cnf.add_clause([-sel, -ya, r as Lit]),
                                None => cnf.add_clause([-sel, -ya]),
                            }
                        }
                    }
                }
            }
        }
        Constraint::NotEqual { a, b, offset } => {
            for (i, &va) in vm.values(*a).iter().enumerate() {
                if let Some(bb) = vm.atom(*b, va - offset) {
                    let aa = vm.indicator_atoms(*a)[i];
                    cnf.add_clause([-(aa as Lit), -(bb as Lit)]);
                }
            }
        }
        Constraint::Clause(lits) => {
            if let Some(cl) = vm.clause(lits) {
                cnf.add_clause(cl);
            }
        }
        Constraint::TableAllowed { vars, tuples } => encode_table(cnf, vm, vars, tuples),
    }
}

fn encode_table(cnf: &mut CnfFormula, vm: &VarMap, vars: &[VarId], tuples: &[Vec<i64>]) {
    let mut rows: Vec<Vec<u32>> = tuples
        .iter()
        .filter_map(|t| {
            t.iter()
                .zip(vars)
                .map(|(&val, &v)| vm.atom(v, val))
                .collect::<Option<Vec<u32>>>()
        })
        .collect();
    rows.sort_unstable();
    rows.dedup();
    if rows.is_empty() {
        cnf.add_clause([]);
        return;
    }
    if vars.len() == 1 || rows.len() == 1 {
        if rows.len() == 1 {
            for &a in &rows[0] {
                cnf.add_clause([a as Lit]);
            }
        } else {
            cnf.add_clause(rows.iter().map(|r| r[0] as Lit));
        }
        return;
    }
    if encode_functional_table(cnf, vm, vars, &rows) {
        return;
    }
    let selectors: Vec<Lit> = rows.iter().map(|_| cnf.fresh()).collect();
    for (s, row) in selectors.iter().zip(&rows) {
        for &a in row {
            cnf.add_clause([-s, a as Lit]);
        }
    }
    cnf.add_clause(selectors.iter().copied());
    // support clauses: an indicator that is on needs a selector using it
    for (k, &v) in vars.iter().enumerate() {
        for &a in vm.indicator_atoms(v) {
            let mut cl = vec![-(a as Lit)];
            cl.extend(
                rows.iter()
                    .zip(&selectors)
                    .filter(|(r, _)| r[k] == a)
                    .map(|(_, &s)| s),
            );
            cnf.add_clause(cl);
        }
    }
}

/// Tables whose last column is a function of the others (|a-b|, a*b, a==v, ...)
/// are encoded without selectors: each prefix combination either implies its
/// result indicator or is forbidden. Returns false when the table is not
/// functional or the prefix space is too large relative to the row count.
fn encode_functional_table(cnf: &mut CnfFormula, vm: &VarMap, vars: &[VarId], rows: &[Vec<u32>]) -> bool {
    let k = vars.len() - 1;
    let mut result = std::collections::HashMap::with_capacity(rows.len());
    for r in rows {
        if result.insert(&r[..k], r[k]).is_some() {
            return false;
        }
    }
    let space = vars[..k]
        .iter()
        .try_fold(1usize, |acc, &v| acc.checked_mul(vm.indicator_atoms(v).len()));
    match space {
        Some(s) if s <= 2 * rows.len() + 4096 => {}
        _ => return false,
    }
    let mut idx = vec![0usize; k];
    let mut prefix = vec![0u32; k];
    loop {
        for i in 0..k {
            prefix[i] = vm.indicator_atoms(vars[i])[idx[i]];
        }
        let mut cl: Vec<Lit> = prefix.iter().map(|&a| -(a as Lit)).collect();
        if let Some(&r) = result.get(&prefix[..]) {
            cl.push(r as Lit);
        }
        cnf.add_clause(cl);
        let mut i = 0;
        loop {
            if i == k {
                return true;
            }
            idx[i] += 1;
            if idx[i] < vm.indicator_atoms(vars[i]).len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Encodes `Σ groups cmp bound` where each group contributes the weight of its true literal.
fn encode_pb(cnf: &mut CnfFormula, groups: &[Group], cmp: Cmp, bound: i64) {
    let max_total: i64 = groups
        .iter()
        .map(|g| g.iter().map(|e| e.0).max().unwrap_or(0) as i64)
        .sum();
    let need_ge = matches!(cmp, Cmp::Ge | Cmp::Eq);
    let need_le = matches!(cmp, Cmp::Le | Cmp::Eq);
    if (need_ge && bound > max_total) || (need_le && bound < 0) {
        cnf.add_clause([]);
        return;
    }
    let ge_trivial = !need_ge || bound <= 0;
    let le_trivial = !need_le || bound >= max_total;
    if ge_trivial && le_trivial {
        return;
    }
    let cap = if need_le { bound + 1 } else { bound } as u64;
    let sums = totalizer::build(cnf, groups, cap);
    if !ge_trivial {
        match sums.at_least(bound as u64) {
            AtLeast::Always => {}
            AtLeast::Never => cnf.add_clause([]),
            AtLeast::Lit(l) => cnf.add_clause([l]),
        }
    }
    if !le_trivial {
        match sums.at_least(bound as u64 + 1) {
            AtLeast::Always => cnf.add_clause([]),
            AtLeast::Never => {}
            AtLeast::Lit(l) => cnf.add_clause([-l]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Domain;

    #[test]
    fn single_var_indicator_clauses() {
        let mut m = ConstraintModel::new();
        m.add_var("x", Domain::set([0, 1, 2]));
        let (cnf, vm) = compile_to_cnf(&m).unwrap();
        assert_eq!(cnf.num_atoms(), 3);
        assert_eq!(cnf.num_clauses(), 4);
        assert_eq!(cnf.clauses()[0], vec![1, 2, 3]);
        assert_eq!(vm.atom(0, 2), Some(3));
        assert_eq!(vm.lookup(2), Some((0, 1)));
    }

    #[test]
    fn decode_requires_exactly_one_indicator() {
        let mut m = ConstraintModel::new();
        m.int_var("x", 0, 2);
        let (_, vm) = compile_to_cnf(&m).unwrap();
        assert_eq!(decode_true_atoms(&vm, &[2]).unwrap(), vec![1]);
        assert!(matches!(
            decode_true_atoms(&vm, &[1, 2]),
            Err(DecodeError::InconsistentModel { count: 2, .. })
        ));
        assert!(matches!(
            decode_true_atoms(&vm, &[]),
            Err(DecodeError::InconsistentModel { count: 0, .. })
        ));
        let empty = compile_to_cnf(&ConstraintModel::new()).unwrap().1;
        assert_eq!(decode_true_atoms(&empty, &[]).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn domain_budget() {
        let mut m = ConstraintModel::new();
        m.int_var("big", 0, 99);
        let err = compile_with(&m, CompileOptions { max_domain: 50 }).unwrap_err();
        assert!(matches!(err, CompileError::DomainTooLarge { size: 100, .. }));
    }

    #[test]
    fn empty_table_is_unsat() {
        let mut m = ConstraintModel::new();
        let x = m.int_var("x", 0, 1);
        m.post(Constraint::TableAllowed {
            vars: vec![x],
            tuples: vec![vec![5]],
        });
        let (cnf, _) = compile_to_cnf(&m).unwrap();
        assert!(cnf.clauses().iter().any(|c| c.is_empty()));
    }

    fn solution_set(m: &ConstraintModel) -> Vec<Vec<i64>> {
        let (cnf, vm) = compile_to_cnf(m).unwrap();
        let project: Vec<u32> = (0..m.num_vars())
            .flat_map(|v| vm.indicator_atoms(v).to_vec())
            .collect();
        let e = crate::solver::SolverHandle::embedded()
            .enumerate_models(&cnf, Some(&project), 10_000, None)
            .unwrap();
        assert!(e.complete);
        let mut out: Vec<Vec<i64>> = e.models.iter().map(|x| decode_model(&vm, x).unwrap()).collect();
        out.sort();
        out
    }

    fn brute_force(m: &ConstraintModel) -> Vec<Vec<i64>> {
        let doms: Vec<Vec<i64>> = m.vars().iter().map(|v| v.domain.values()).collect();
        let mut out = Vec::new();
        let mut cur = vec![0usize; doms.len()];
        loop {
            let a: Vec<i64> = cur.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
            if m.evaluate(&a) {
                out.push(a);
            }
            let mut i = 0;
            while i < cur.len() {
                cur[i] += 1;
                if cur[i] < doms[i].len() {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            if i == cur.len() {
                return out;
            }
        }
    }

    #[test]
    fn functional_and_general_tables_match_brute_force() {
        let mut m = ConstraintModel::new();
        let a = m.int_var("a", 0, 3);
        let b = m.int_var("b", 0, 3);
        let d = m.int_var("d", 1, 3);
        let mut tuples = Vec::new();
        for x in 0..4 {
            for y in 0..4 {
                tuples.push(vec![x, y, (x - y as i64).abs()]);
            }
        }
        m.post(Constraint::TableAllowed { vars: vec![a, b, d], tuples });
        let c = m.int_var("c", 0, 2);
        m.post(Constraint::TableAllowed {
            vars: vec![a, c],
            tuples: vec![vec![0, 1], vec![0, 2], vec![3, 0], vec![2, 2]],
        });
        let got = solution_set(&m);
        let mut want = brute_force(&m);
        want.sort();
        assert_eq!(got, want);
        assert!(!got.is_empty());
    }
}
