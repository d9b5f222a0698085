//! The witness predicate accepts exactly the assignments the pinned model accepts.

mod common;

use std::time::Duration;

use proptest::prelude::*;

use cbench_core::certify::{certify, solve_pinned, Outcome};
use cbench_core::families::{check_witness, lookup};
use cbench_core::solver::SolverHandle;
use common::instance;

const CASES: &[(&str, &[(&str, i64)], i64, i64)] = &[
    ("all_interval", &[("n", 6)], 0, 5),
    ("costas_array", &[("n", 6)], 0, 5),
    ("golomb", &[("n", 4), ("length", 0)], 0, 12),
    ("langford", &[("n", 4)], 1, 4),
    ("magic_sequence", &[("n", 5)], 0, 4),
    ("queens", &[("n", 6)], 0, 5),
    ("van_der_waerden", &[("n", 8), ("k", 2), ("L", 3)], 0, 1),
    ("ramsey", &[("n", 5), ("r", 3), ("s", 3)], 0, 1),
    ("hadamard", &[("n", 5)], -1, 1),
    ("number_partitioning", &[("n", 6), ("k", 3)], 0, 2),
    ("latin_square_completion", &[("n", 3), ("density_pct", 30)], 0, 2),
    ("graph_k_coloring", &[("n", 6), ("k", 2), ("density_pct", 30)], 0, 1),
];

fn case_and_witness() -> impl Strategy<Value = (usize, Vec<i64>, bool)> {
    (0..CASES.len(), any::<bool>()).prop_flat_map(|(i, mutate_solution)| {
        let (name, pairs, lo, hi) = CASES[i];
        let (p, _) = instance(name, pairs, 0);
        let len = lookup(name).unwrap().witness_len(&p).unwrap();
        (Just(i), prop::collection::vec(lo..=hi, len), Just(mutate_solution))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn predicate_matches_pinned_solve((i, random, near) in case_and_witness()) {
        let (name, pairs, _, _) = CASES[i];
        let f = lookup(name).unwrap();
        let (p, data) = instance(name, pairs, 0);
        let solver = SolverHandle::embedded();
        // half the cases start from a real solution with one position overwritten
        let w = match certify(f, &p, &data, &solver, Duration::from_secs(30)).unwrap().outcome {
            Outcome::Sat(mut s) if near => {
                let pos = random[0].unsigned_abs() as usize % s.len();
                s[pos] = random[pos];
                s
            }
            _ => random,
        };
        let direct = check_witness(f, &p, &data, &w).is_ok();
        let pinned = solve_pinned(f, &p, &data, &w, &solver, Duration::from_secs(30)).unwrap().outcome;
        prop_assert_eq!(direct, matches!(pinned, Outcome::Sat(_)), "{} {:?}", name, w);
    }
}
