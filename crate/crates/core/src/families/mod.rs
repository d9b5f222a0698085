//! Problem families: parameter schemas, constraint models, witness predicates and prompts.

mod designs;
mod graphs;
mod grids;
mod prompts;
mod sequences;
mod sms;
pub(crate) mod util;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::Certificate;
use crate::error::FamilyError;
use crate::graph::Graph;
use crate::model::{Constraint, ConstraintModel, VarId};

pub use prompts::{render_hint_block, template};
pub use sms::GraphConstraintSet;

pub type Params = BTreeMap<String, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub min: i64,
    pub max: i64,
    pub default: i64,
}

pub(crate) const fn param(name: &'static str, min: i64, max: i64, default: i64) -> ParamSpec {
    ParamSpec {
        name,
        min,
        max,
        default,
    }
}

/// Which kind of upstream backend a family belongs to, for stratified reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BackendClass {
    #[serde(rename = "CP")]
    Cp,
    #[serde(rename = "SMS")]
    Sms,
}

impl BackendClass {
    pub fn label(self) -> &'static str {
        match self {
            BackendClass::Cp => "CP",
            BackendClass::Sms => "SMS",
        }
    }
}

/// Per-instance auxiliary data: random edge lists or clue vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clues: Option<Vec<i64>>,
}

impl VarData {
    pub fn is_empty(&self) -> bool {
        self.edges.is_none() && self.clues.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataKind {
    None,
    Edges,
    Clues,
    /// Clues may be absent; an absent vector means an empty board.
    OptionalClues,
}

/// One fixed variable shown to the solver and enforced by the verifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hint {
    pub var: String,
    pub value: i64,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },
    #[error("malformed witness: {0}")]
    Malformed(String),
    #[error("value {value} at position {pos} is out of range")]
    OutOfRange { pos: usize, value: i64 },
    #[error("{0}")]
    Violated(String),
}

impl WitnessError {
    /// Shape problems, as opposed to well-formed witnesses that break a constraint.
    pub fn is_shape(&self) -> bool {
        matches!(self, WitnessError::Length { .. } | WitnessError::Malformed(_))
    }
}

/// How witness positions relate to model variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessMap {
    /// Position i of the flat witness is the value of variable i of this list.
    Positional(Vec<VarId>),
    /// The witness is a flattened edge list over the 0/1 edge variables.
    EdgeSet { n: usize, vars: Vec<((usize, usize), VarId)> },
}

impl WitnessMap {
    pub fn vars(&self) -> Vec<VarId> {
        match self {
            WitnessMap::Positional(v) => v.clone(),
            WitnessMap::EdgeSet { vars, .. } => vars.iter().map(|&(_, v)| v).collect(),
        }
    }

    /// Witness read off a full model assignment.
    pub fn extract(&self, values: &[i64]) -> Vec<i64> {
        match self {
            WitnessMap::Positional(v) => v.iter().map(|&id| values[id]).collect(),
            WitnessMap::EdgeSet { vars, .. } => vars
                .iter()
                .filter(|&&(_, id)| values[id] == 1)
                .flat_map(|&((u, v), _)| [u as i64, v as i64])
                .collect(),
        }
    }

    /// Variable pins equivalent to a witness; None when the witness has the wrong shape.
    pub fn pins(&self, w: &[i64]) -> Option<BTreeMap<VarId, i64>> {
        match self {
            WitnessMap::Positional(v) => {
                (v.len() == w.len()).then(|| v.iter().copied().zip(w.iter().copied()).collect())
            }
            WitnessMap::EdgeSet { n, vars } => {
                let g = util::witness_graph(*n, w).ok()?;
                Some(
                    vars.iter()
                        .map(|&((a, b), id)| (id, i64::from(g.has_edge(a, b))))
                        .collect(),
                )
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuiltModel {
    pub model: ConstraintModel,
    pub witness: WitnessMap,
}

/// A problem family. Implementations are stateless.
pub trait Family: Send + Sync {
    fn name(&self) -> &'static str;

    fn params(&self) -> &'static [ParamSpec];

    /// Cross-parameter validity beyond per-parameter ranges.
    fn validate(&self, _p: &Params) -> Result<(), String> {
        Ok(())
    }

    fn data_kind(&self) -> DataKind {
        DataKind::None
    }

    fn sample_data(&self, _p: &Params, _seed: u64) -> Option<VarData> {
        None
    }

    /// Fixed witness length, or None for edge lists.
    fn witness_len(&self, p: &Params) -> Option<usize>;

    /// Direct predicate; the witness already has the right length when fixed.
    fn check(&self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError>;

    fn build(&self, _p: &Params, _data: &VarData) -> Option<BuiltModel> {
        None
    }

    fn native_certify(&self, _p: &Params, _data: &VarData, _deadline: Instant) -> Option<Certificate> {
        None
    }

    /// Cuts excluding a candidate that passes the model but fails the predicate.
    fn refine(&self, _p: &Params, _data: &VarData, _built: &BuiltModel, _w: &[i64]) -> Vec<Constraint> {
        Vec::new()
    }

    /// Parameters under which a specific witness should be re-solved.
    fn cross_check_params(&self, p: &Params, _w: &[i64]) -> Params {
        p.clone()
    }

    /// Hint names of the witness positions.
    fn witness_names(&self, p: &Params) -> Vec<String> {
        (0..self.witness_len(p).unwrap_or(0))
            .map(|i| format!("x[{i}]"))
            .collect()
    }

    fn prompt_vars(&self, p: &Params, data: &VarData) -> Vec<(&'static str, String)>;
}

static REGISTRY: &[&dyn Family] = &[
    &sequences::AllInterval,
    &designs::AntimagicSquare,
    &designs::Bibd,
    &sequences::CostasArray,
    &sequences::DeBruijn,
    &sequences::Golomb,
    &graphs::GracefulGraph,
    &graphs::GraphKColoring,
    &sequences::Hadamard,
    &graphs::HamiltonCycle,
    &grids::KnightTour,
    &sequences::Langford,
    &grids::LatinSquareCompletion,
    &sequences::LowAutocorrelation,
    &sequences::MagicSequence,
    &grids::MagicSquare,
    &graphs::MaxClique,
    &graphs::MaxIndependentSet,
    &designs::NonTransitiveDice,
    &sequences::NumberPartitioning,
    &grids::OrthoLatin,
    &sequences::Pigeons,
    &sms::CHROMATIC_GIRTH,
    &sms::CLIQUE_COLORING,
    &sms::COMBINED_GRAPH,
    &sms::CONTAINS_CLIQUES,
    &sms::DEGREE_BOUNDS,
    &sms::GIRTH_DEGREE,
    &sms::GRAPH_BUILDER,
    &sms::INDEPENDENT_CONNECTIVITY,
    &sms::MIN_CONNECTIVITY,
    &sms::MIN_DEGREE,
    &sms::MIN_GIRTH,
    &sms::MTF,
    &sms::NUM_EDGES_BOUNDS,
    &sms::RAMSEY_GRAPH,
    &grids::Quasigroup,
    &grids::Queens,
    &designs::RamseyEdgeColoring,
    &designs::SocialGolfers,
    &grids::Sudoku,
    &sequences::VanDerWaerden,
    &graphs::VertexCover,
];

/// All registered families, sorted by name.
pub fn registry() -> &'static [&'static dyn Family] {
    REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static dyn Family, FamilyError> {
    REGISTRY
        .iter()
        .copied()
        .find(|f| f.name() == name)
        .ok_or_else(|| FamilyError::UnknownFamily(name.to_string()))
}

pub fn backend_class(f: &dyn Family) -> BackendClass {
    if f.name().starts_with("pysms_") {
        BackendClass::Sms
    } else {
        BackendClass::Cp
    }
}

fn invalid(f: &dyn Family, reason: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParams {
        family: f.name().to_string(),
        reason: reason.into(),
    }
}

/// Fills defaults, rejects unknown names and out-of-range values, then applies
/// the family's own validity rules.
pub fn normalize_params(f: &dyn Family, p: &Params) -> Result<Params, FamilyError> {
    for k in p.keys() {
        if !f.params().iter().any(|s| s.name == k) {
            return Err(invalid(f, format!("unknown parameter {k:?}")));
        }
    }
    let mut out = Params::new();
    for s in f.params() {
        let v = p.get(s.name).copied().unwrap_or(s.default);
        if v < s.min || v > s.max {
            return Err(invalid(
                f,
                format!("{} = {v} outside [{}, {}]", s.name, s.min, s.max),
            ));
        }
        out.insert(s.name.to_string(), v);
    }
    f.validate(&out).map_err(|r| invalid(f, r))?;
    Ok(out)
}

/// Compact parameter tag in schema order, e.g. `n10` or `v7_k3_lambda1`.
pub fn param_string(f: &dyn Family, p: &Params) -> String {
    f.params()
        .iter()
        .map(|s| format!("{}{}", s.name, p.get(s.name).copied().unwrap_or(s.default)))
        .collect::<Vec<_>>()
        .join("_")
}

pub fn sample_variable_data(f: &dyn Family, p: &Params, seed: u64) -> Result<VarData, FamilyError> {
    f.sample_data(p, seed)
        .ok_or_else(|| FamilyError::NoSampler(f.name().to_string()))
}

/// Confirms that the variable data has the shape the family needs.
pub fn validate_data(f: &dyn Family, p: &Params, data: &VarData) -> Result<(), FamilyError> {
    let bad = || FamilyError::DataMismatch(f.name().to_string());
    match f.data_kind() {
        DataKind::None => {
            if !data.is_empty() {
                return Err(bad());
            }
        }
        DataKind::Edges => {
            let n = util::pu(p, "n");
            let edges = data.edges.as_ref().ok_or_else(bad)?;
            let pairs: Vec<(i64, i64)> = edges.iter().map(|e| (e[0] as i64, e[1] as i64)).collect();
            Graph::from_edges(n, &pairs).map_err(|_| bad())?;
            if data.clues.is_some() {
                return Err(bad());
            }
        }
        DataKind::Clues | DataKind::OptionalClues => {
            if data.edges.is_some() {
                return Err(bad());
            }
            match &data.clues {
                None if f.data_kind() == DataKind::OptionalClues => {}
                None => return Err(bad()),
                Some(c) => {
                    let len = f.witness_len(p).unwrap_or(0);
                    if c.len() != len {
                        return Err(bad());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Total witness predicate: shape first, then the family constraints.
pub fn check_witness(f: &dyn Family, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
    if let Some(len) = f.witness_len(p) {
        if w.len() != len {
            return Err(WitnessError::Length {
                expected: len,
                found: w.len(),
            });
        }
    }
    f.check(p, data, w)
}

/// Prompt text for an instance, with the partial-assignment block when hints are given.
pub fn render_prompt(f: &dyn Family, p: &Params, data: &VarData, hints: &[Hint]) -> String {
    let mut text = prompts::render(template(f.name()), &f.prompt_vars(p, data));
    if !hints.is_empty() {
        text.push_str(&render_hint_block(hints));
    }
    text
}
