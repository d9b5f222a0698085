//! Encoding-agnostic constraint IR: finite-domain integer variables and typed constraints.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

pub type VarId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    /// Inclusive integer range.
    Range(i64, i64),
    /// Explicit finite set; kept sorted and deduplicated.
    Set(Vec<i64>),
}

impl Domain {
    pub fn range(lo: i64, hi: i64) -> Self {
        Domain::Range(lo, hi)
    }

    pub fn set<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut v: Vec<i64> = values.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Domain::Set(v)
    }

    pub fn size(&self) -> usize {
        match self {
            Domain::Range(lo, hi) if hi >= lo => (hi - lo + 1) as usize,
            Domain::Range(..) => 0,
            Domain::Set(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn contains(&self, value: i64) -> bool {
        match self {
            Domain::Range(lo, hi) => *lo <= value && value <= *hi,
            Domain::Set(v) => v.binary_search(&value).is_ok(),
        }
    }

    /// Values in increasing order.
    pub fn values(&self) -> Vec<i64> {
        match self {
            Domain::Range(lo, hi) => (*lo..=*hi).collect(),
            Domain::Set(v) => v.clone(),
        }
    }

    pub fn min(&self) -> Option<i64> {
        match self {
            Domain::Range(lo, hi) if hi >= lo => Some(*lo),
            Domain::Range(..) => None,
            Domain::Set(v) => v.first().copied(),
        }
    }

    pub fn max(&self) -> Option<i64> {
        match self {
            Domain::Range(lo, hi) if hi >= lo => Some(*hi),
            Domain::Range(..) => None,
            Domain::Set(v) => v.last().copied(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntVar {
    pub name: String,
    pub domain: Domain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

impl Cmp {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Cmp::Le => lhs <= rhs,
            Cmp::Eq => lhs == rhs,
            Cmp::Ge => lhs >= rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Operand {
    Var(VarId),
    Const(i64),
}

/// `var == value` when `positive`, `var != value` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoolLit {
    pub var: VarId,
    pub value: i64,
    pub positive: bool,
}

impl BoolLit {
    pub fn is(var: VarId, value: i64) -> Self {
        BoolLit {
            var,
            value,
            positive: true,
        }
    }

    pub fn is_not(var: VarId, value: i64) -> Self {
        BoolLit {
            var,
            value,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        BoolLit {
            positive: !self.positive,
            ..self
        }
    }

    pub fn holds(&self, assignment: &[i64]) -> bool {
        (assignment[self.var] == self.value) == self.positive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    AllDifferent(Vec<VarId>),
    LinearSum {
        terms: Vec<(i64, VarId)>,
        cmp: Cmp,
        bound: i64,
    },
    CardinalityOfValue {
        vars: Vec<VarId>,
        value: i64,
        cmp: Cmp,
        bound: i64,
    },
    /// `result == array[index]`; index values outside the array are infeasible.
    Element {
        index: VarId,
        array: Vec<Operand>,
        result: VarId,
    },
    /// `a != b + offset`.
    NotEqual {
        a: VarId,
        b: VarId,
        offset: i64,
    },
    Clause(Vec<BoolLit>),
    /// Sum of products over pairs of 0/1 variables.
    ProductPairSum {
        pairs: Vec<(VarId, VarId)>,
        cmp: Cmp,
        bound: i64,
    },
    TableAllowed {
        vars: Vec<VarId>,
        tuples: Vec<Vec<i64>>,
    },
}

impl Constraint {
    pub fn kind(&self) -> &'static str {
        match self {
            Constraint::AllDifferent(_) => "AllDifferent",
            Constraint::LinearSum { .. } => "LinearSum",
            Constraint::CardinalityOfValue { .. } => "CardinalityOfValue",
            Constraint::Element { .. } => "Element",
            Constraint::NotEqual { .. } => "NotEqual",
            Constraint::Clause(_) => "Clause",
            Constraint::ProductPairSum { .. } => "ProductPairSum",
            Constraint::TableAllowed { .. } => "TableAllowed",
        }
    }

    fn referenced(&self) -> Vec<VarId> {
        match self {
            Constraint::AllDifferent(v) => v.clone(),
            Constraint::LinearSum { terms, .. } => terms.iter().map(|t| t.1).collect(),
            Constraint::CardinalityOfValue { vars, .. } => vars.clone(),
            Constraint::Element {
                index,
                array,
                result,
            } => {
                let mut v = vec![*index, *result];
                v.extend(array.iter().filter_map(|o| match o {
                    Operand::Var(x) => Some(*x),
                    Operand::Const(_) => None,
                }));
                v
            }
            Constraint::NotEqual { a, b, .. } => vec![*a, *b],
            Constraint::Clause(lits) => lits.iter().map(|l| l.var).collect(),
            Constraint::ProductPairSum { pairs, .. } => {
                pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
            }
            Constraint::TableAllowed { vars, .. } => vars.clone(),
        }
    }

    /// Direct semantics of the constraint under a total assignment.
    pub fn holds(&self, a: &[i64]) -> bool {
        match self {
            Constraint::AllDifferent(vars) => {
                let mut seen: Vec<i64> = vars.iter().map(|&v| a[v]).collect();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            }
            Constraint::LinearSum { terms, cmp, bound } => {
                let s: i64 = terms.iter().map(|&(c, v)| c * a[v]).sum();
                cmp.holds(s, *bound)
            }
            Constraint::CardinalityOfValue {
                vars,
                value,
                cmp,
                bound,
            } => {
                let c = vars.iter().filter(|&&v| a[v] == *value).count() as i64;
                cmp.holds(c, *bound)
            }
            Constraint::Element {
                index,
                array,
                result,
            } => {
                let i = a[*index];
                if i < 0 || i as usize >= array.len() {
                    return false;
                }
                let picked = match array[i as usize] {
                    Operand::Var(x) => a[x],
                    Operand::Const(c) => c,
                };
                picked == a[*result]
            }
            Constraint::NotEqual { a: x, b: y, offset } => a[*x] != a[*y] + offset,
            Constraint::Clause(lits) => lits.iter().any(|l| l.holds(a)),
            Constraint::ProductPairSum { pairs, cmp, bound } => {
                let s: i64 = pairs.iter().map(|&(x, y)| a[x] * a[y]).sum();
                cmp.holds(s, *bound)
            }
            Constraint::TableAllowed { vars, tuples } => tuples
                .iter()
                .any(|t| t.iter().zip(vars).all(|(&val, &v)| a[v] == val)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintModel {
    vars: Vec<IntVar>,
    constraints: Vec<Constraint>,
    names: HashMap<String, VarId>,
}

impl ConstraintModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn try_add_var(&mut self, name: impl Into<String>, domain: Domain) -> Result<VarId, ModelError> {
        let name = name.into();
        if domain.is_empty() {
            return Err(ModelError::EmptyDomain(name));
        }
        if self.names.contains_key(&name) {
            return Err(ModelError::DuplicateName(name));
        }
        let id = self.vars.len();
        self.names.insert(name.clone(), id);
        self.vars.push(IntVar { name, domain });
        Ok(id)
    }

    /// Adds a variable; panics on an empty domain or a duplicate name.
    pub fn add_var(&mut self, name: impl Into<String>, domain: Domain) -> VarId {
        self.try_add_var(name, domain).expect("invalid variable")
    }

    pub fn int_var(&mut self, name: impl Into<String>, lo: i64, hi: i64) -> VarId {
        self.add_var(name, Domain::Range(lo, hi))
    }

    pub fn bool_var(&mut self, name: impl Into<String>) -> VarId {
        self.add_var(name, Domain::Range(0, 1))
    }

    pub fn try_post(&mut self, c: Constraint) -> Result<(), ModelError> {
        for v in c.referenced() {
            if v >= self.vars.len() {
                return Err(ModelError::UnknownVariable(v));
            }
        }
        if let Constraint::TableAllowed { vars, tuples } = &c {
            if let Some(t) = tuples.iter().find(|t| t.len() != vars.len()) {
                return Err(ModelError::ArityMismatch {
                    expected: vars.len(),
                    found: t.len(),
                });
            }
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Posts a constraint; panics if it references unknown variables.
    pub fn post(&mut self, c: Constraint) {
        self.try_post(c).expect("invalid constraint")
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[IntVar] {
        &self.vars
    }

    pub fn var(&self, id: VarId) -> &IntVar {
        &self.vars[id]
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.names.get(name).copied()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// True iff every variable is within its domain and every constraint holds.
    pub fn evaluate(&self, assignment: &[i64]) -> bool {
        assignment.len() == self.vars.len()
            && self
                .vars
                .iter()
                .zip(assignment)
                .all(|(v, &x)| v.domain.contains(x))
            && self.constraints.iter().all(|c| c.holds(assignment))
    }

    /// Σ log10(domain size) over the given variables.
    pub fn log10_search_space(&self, vars: &[VarId]) -> f64 {
        vars.iter()
            .map(|&v| (self.vars[v].domain.size() as f64).log10())
            .sum()
    }
}

/// Returns a copy of `model` whose solutions are exactly the original's
/// solutions agreeing with `partial`. Values outside a domain make the
/// result unsatisfiable.
pub fn assert_values(
    model: &ConstraintModel,
    partial: &BTreeMap<VarId, i64>,
) -> Result<ConstraintModel, ModelError> {
    let mut out = model.clone();
    for (&var, &value) in partial {
        out.try_post(Constraint::TableAllowed {
            vars: vec![var],
            tuples: vec![vec![value]],
        })?;
    }
    Ok(out)
}

/// [`assert_values`] keyed by variable name.
pub fn assert_named(
    model: &ConstraintModel,
    partial: &[(String, i64)],
) -> Result<ConstraintModel, ModelError> {
    let mut map = BTreeMap::new();
    for (name, value) in partial {
        let id = model
            .var_by_name(name)
            .ok_or(ModelError::UnknownVariable(usize::MAX))?;
        map.insert(id, *value);
    }
    assert_values(model, &map)
}
