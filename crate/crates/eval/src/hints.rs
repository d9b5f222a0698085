//! Partial assignments copied from a reference witness into the prompt.

use cbench_core::error::FamilyError;
use cbench_core::families::{render_prompt, Hint};
use cbench_core::rng;
use rand::seq::index::sample;
use thiserror::Error;

use crate::record::{record_id, variant_tag, InstanceRecord};

#[derive(Debug, Error)]
pub enum HintError {
    #[error("{0} is not satisfiable; hints need a reference witness")]
    NotSatisfiable(String),
    #[error("{0} has no reference witness")]
    MissingWitness(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Number of positions a fraction selects; any positive fraction fixes at least one.
fn hint_count(len: usize, fraction: f64) -> usize {
    if fraction <= 0.0 || len == 0 {
        return 0;
    }
    ((fraction * len as f64).round() as usize).clamp(1, len)
}

/// Fixes a seeded subset of witness positions to their reference values and
/// re-renders the prompt with the partial-assignment block.
pub fn attach_hints(record: &InstanceRecord, seed: u64, fraction: f64) -> Result<InstanceRecord, HintError> {
    if !record.is_sat() {
        return Err(HintError::NotSatisfiable(record.id.clone()));
    }
    let witness = record
        .witness
        .as_ref()
        .ok_or_else(|| HintError::MissingWitness(record.id.clone()))?;
    let f = record.family()?;
    let names = f.witness_names(&record.params);
    let k = hint_count(names.len().min(witness.len()), fraction);
    if k == 0 {
        return Ok(record.clone());
    }
    let mut positions = sample(&mut rng::stream(seed, "hints", 0), names.len().min(witness.len()), k).into_vec();
    positions.sort_unstable();
    let hints: Vec<Hint> = positions
        .into_iter()
        .map(|i| Hint {
            var: names[i].clone(),
            value: witness[i],
        })
        .collect();
    let mut out = record.clone();
    out.prompt = render_prompt(f, &record.params, &record.data, &hints);
    out.hints = hints;
    out.id = record_id(f, &record.params, record.seed, variant_tag(true));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(hint_count(10, 0.0), 0);
        assert_eq!(hint_count(10, 0.01), 1);
        assert_eq!(hint_count(10, 0.5), 5);
        assert_eq!(hint_count(10, 1.0), 10);
        assert_eq!(hint_count(0, 1.0), 0);
    }
}
