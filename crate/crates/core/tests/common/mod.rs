#![allow(dead_code)]

use std::collections::BTreeSet;
use std::time::Duration;

use cbench_core::certify::{certify, enumerate_solutions, Outcome};
use cbench_core::families::{check_witness, lookup, normalize_params, sample_variable_data, DataKind, Params, VarData};
use cbench_core::solver::SolverHandle;

pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Normalized parameters and seeded variable data for a family.
pub fn instance(family: &str, pairs: &[(&str, i64)], seed: u64) -> (Params, VarData) {
    let f = lookup(family).unwrap();
    let p = normalize_params(f, &params(pairs)).unwrap();
    let data = match f.data_kind() {
        DataKind::None => VarData::default(),
        _ => sample_variable_data(f, &p, seed).unwrap(),
    };
    (p, data)
}

/// Outcome from the embedded engine with a generous budget.
pub fn solve(family: &str, pairs: &[(&str, i64)]) -> Outcome {
    let (p, data) = instance(family, pairs, 0);
    let f = lookup(family).unwrap();
    certify(f, &p, &data, &SolverHandle::embedded(), Duration::from_secs(120))
        .unwrap()
        .outcome
}

/// Every candidate in the cartesian product of per-position value lists.
pub fn product(choices: &[Vec<i64>], mut visit: impl FnMut(&[i64])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut cur: Vec<i64> = choices.iter().map(|c| c[0]).collect();
    loop {
        visit(&cur);
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                cur[pos] = choices[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            cur[pos] = choices[pos][0];
        }
    }
}

/// All permutations of `items` (Heap's algorithm).
pub fn permutations(items: &[i64], mut visit: impl FnMut(&[i64])) {
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Flattened edge lists of every graph on `n` labelled vertices.
pub fn all_graphs(n: usize, mut visit: impl FnMut(&[i64])) {
    let pairs: Vec<(i64, i64)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u as i64, v as i64)))
        .collect();
    assert!(pairs.len() <= 20);
    for mask in 0u32..(1 << pairs.len()) {
        let w: Vec<i64> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, &(u, v))| [u, v])
            .collect();
        visit(&w);
    }
}

/// Compares the brute-force solution set with the model's enumerated solutions.
pub fn assert_oracle_matches(family: &str, p: &Params, data: &VarData, candidates: impl FnOnce(&mut dyn FnMut(&[i64]))) -> usize {
    let f = lookup(family).unwrap();
    let mut brute: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut seen = 0u64;
    candidates(&mut |w: &[i64]| {
        seen += 1;
        assert!(seen <= 1_000_000, "{family}: more than 10^6 candidates");
        if check_witness(f, p, data, w).is_ok() {
            brute.insert(w.to_vec());
        }
    });
    let sols = enumerate_solutions(f, p, data, &SolverHandle::embedded(), brute.len() + 1, Duration::from_secs(120)).unwrap();
    assert!(sols.complete, "{family} {p:?}: enumeration incomplete");
    let model: BTreeSet<Vec<i64>> = sols.witnesses.iter().cloned().collect();
    assert_eq!(model.len(), sols.witnesses.len(), "{family}: duplicate witnesses");
    assert_eq!(brute, model, "{family} {p:?}: solution sets differ");
    let polarity = certify(f, p, data, &SolverHandle::embedded(), Duration::from_secs(120)).unwrap().outcome;
    assert_eq!(polarity.satisfiable(), Some(!brute.is_empty()), "{family} {p:?}: polarity");
    brute.len()
}
