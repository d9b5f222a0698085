//! Admission filter: keep an instance only if some cohort agent fails it.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdmitError {
    #[error("cohort outcomes are empty")]
    EmptyCohort,
    #[error("instance {id}: missing outcome for cohort member {member}")]
    MissingMember { id: String, member: String },
}

/// True iff at least one cohort member answered incorrectly.
pub fn admit(outcomes: &[bool]) -> Result<bool, AdmitError> {
    if outcomes.is_empty() {
        return Err(AdmitError::EmptyCohort);
    }
    Ok(outcomes.iter().any(|&ok| !ok))
}

/// Applies [`admit`] to every instance given per-member correctness maps.
/// Every member must have graded every instance.
pub fn admit_all(
    ids: &[String],
    cohort: &BTreeMap<String, BTreeMap<String, bool>>,
) -> Result<Vec<(String, bool)>, AdmitError> {
    if cohort.is_empty() {
        return Err(AdmitError::EmptyCohort);
    }
    ids.iter()
        .map(|id| {
            let outcomes = cohort
                .iter()
                .map(|(member, graded)| {
                    graded.get(id).copied().ok_or_else(|| AdmitError::MissingMember {
                        id: id.clone(),
                        member: member.clone(),
                    })
                })
                .collect::<Result<Vec<bool>, _>>()?;
            Ok((id.clone(), admit(&outcomes)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admission_rule() {
        assert_eq!(admit(&[true; 6]), Ok(false));
        assert_eq!(admit(&[true, true, false, true, true, true]), Ok(true));
        assert_eq!(admit(&[false; 3]), Ok(true));
        assert_eq!(admit(&[]), Err(AdmitError::EmptyCohort));
    }

    #[test]
    fn whole_dataset() {
        let ids = vec!["a".to_string(), "b".to_string()];
        let mut cohort = BTreeMap::new();
        cohort.insert("m1".to_string(), BTreeMap::from([("a".to_string(), true), ("b".to_string(), true)]));
        cohort.insert("m2".to_string(), BTreeMap::from([("a".to_string(), false), ("b".to_string(), true)]));
        let out = admit_all(&ids, &cohort).unwrap();
        assert_eq!(out, vec![("a".to_string(), true), ("b".to_string(), false)]);
        cohort.get_mut("m2").unwrap().remove("b");
        assert!(matches!(admit_all(&ids, &cohort), Err(AdmitError::MissingMember { .. })));
        assert_eq!(admit_all(&ids, &BTreeMap::new()), Err(AdmitError::EmptyCohort));
    }
}
