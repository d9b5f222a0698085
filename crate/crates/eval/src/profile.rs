//! Generation profiles: which families, which parameter domains, how many instances.

use std::path::Path;

use cbench_core::families::{self, normalize_params, Family, Params};
use cbench_core::rng;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("cannot read profile {0}: {1}")]
    Io(String, String),
    #[error("profile does not parse: {0}")]
    Parse(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family}: {reason}")]
    InvalidDomain { family: String, reason: String },
    #[error("{0}: count must be at least 1")]
    EmptyCount(String),
    #[error("unknown prompt template {0:?}")]
    UnknownTemplate(String),
}

/// Values a parameter may take: one value, an inclusive range, or a list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamDomain {
    Fixed(i64),
    Range { min: i64, max: i64 },
    Choices(Vec<i64>),
}

impl ParamDomain {
    pub fn values(&self) -> Vec<i64> {
        match self {
            ParamDomain::Fixed(v) => vec![*v],
            ParamDomain::Range { min, max } => (*min..=*max).collect(),
            ParamDomain::Choices(v) => v.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    /// Walk the parameter grid in order, wrapping around.
    #[default]
    Grid,
    /// Draw every parameter uniformly from its domain.
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    pub count: usize,
    #[serde(default)]
    pub sampling: Sampling,
    #[serde(default)]
    pub params: std::collections::BTreeMap<String, ParamDomain>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HintPolicy {
    /// Chance that a SAT record receives hints.
    #[serde(default)]
    pub probability: f64,
    /// Fraction of witness positions fixed on a hinted record.
    #[serde(default)]
    pub fraction: f64,
}

fn default_budget() -> f64 {
    3600.0
}

fn default_template() -> String {
    "default".to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub seed: u64,
    /// Reference-solver cap per candidate, in seconds.
    #[serde(default = "default_budget")]
    pub budget_seconds: f64,
    #[serde(default = "default_template")]
    pub template: String,
    #[serde(default)]
    pub hints: HintPolicy,
    #[serde(rename = "family")]
    pub families: Vec<FamilySpec>,
}

impl Profile {
    pub fn from_toml(text: &str) -> Result<Self, ProfileError> {
        let p: Profile = toml::from_str(text).map_err(|e| ProfileError::Parse(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self, ProfileError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ProfileError::Io(path.display().to_string(), e.to_string()))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        if self.template != "default" {
            return Err(ProfileError::UnknownTemplate(self.template.clone()));
        }
        let unit = 0.0..=1.0;
        if !unit.contains(&self.hints.probability) || !unit.contains(&self.hints.fraction) {
            return Err(ProfileError::Parse("hint probability and fraction must lie in [0, 1]".into()));
        }
        if !(self.budget_seconds > 0.0) {
            return Err(ProfileError::Parse("budget_seconds must be positive".into()));
        }
        for spec in &self.families {
            let f = families::lookup(&spec.name).map_err(|_| ProfileError::UnknownFamily(spec.name.clone()))?;
            if spec.count == 0 {
                return Err(ProfileError::EmptyCount(spec.name.clone()));
            }
            let bad = |reason: String| ProfileError::InvalidDomain {
                family: spec.name.clone(),
                reason,
            };
            for (name, dom) in &spec.params {
                let schema = f
                    .params()
                    .iter()
                    .find(|s| s.name == name)
                    .ok_or_else(|| bad(format!("unknown parameter {name:?}")))?;
                let vals = dom.values();
                if vals.is_empty() {
                    return Err(bad(format!("{name} has an empty domain")));
                }
                if let Some(v) = vals.iter().find(|&&v| v < schema.min || v > schema.max) {
                    return Err(bad(format!(
                        "{name} = {v} outside [{}, {}]",
                        schema.min, schema.max
                    )));
                }
            }
            if spec.sampling == Sampling::Grid && grid(f, spec).is_empty() {
                return Err(bad("no valid parameter point in the domain".into()));
            }
        }
        Ok(())
    }
}

fn domains(f: &dyn Family, spec: &FamilySpec) -> Vec<(String, Vec<i64>)> {
    f.params()
        .iter()
        .map(|s| {
            let vals = spec
                .params
                .get(s.name)
                .map(ParamDomain::values)
                .unwrap_or_else(|| vec![s.default]);
            (s.name.to_string(), vals)
        })
        .collect()
}

/// Valid parameter points of the domain, in lexicographic schema order.
pub fn grid(f: &dyn Family, spec: &FamilySpec) -> Vec<Params> {
    let mut points = vec![Params::new()];
    for (name, vals) in domains(f, spec) {
        points = points
            .into_iter()
            .flat_map(|p| {
                let name = &name;
                vals.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.insert(name.clone(), v);
                    q
                })
            })
            .collect();
    }
    points
        .into_iter()
        .filter_map(|p| normalize_params(f, &p).ok())
        .collect()
}

const RANDOM_TRIES: u64 = 64;

/// Parameters of candidate `index` of a family spec; None when random
/// sampling keeps landing on invalid points.
pub fn candidate_params(f: &dyn Family, spec: &FamilySpec, seed: u64, index: usize) -> Option<Params> {
    match spec.sampling {
        Sampling::Grid => {
            let g = grid(f, spec);
            (!g.is_empty()).then(|| g[index % g.len()].clone())
        }
        Sampling::Random => {
            let doms = domains(f, spec);
            let tag = format!("params:{}", spec.name);
            (0..RANDOM_TRIES).find_map(|t| {
                let mut r = rng::stream(seed, &tag, index as u64 * RANDOM_TRIES + t);
                let p: Params = doms
                    .iter()
                    .map(|(k, vals)| (k.clone(), *vals.choose(&mut r).expect("non-empty domain")))
                    .collect();
                normalize_params(f, &p).ok()
            })
        }
    }
}
