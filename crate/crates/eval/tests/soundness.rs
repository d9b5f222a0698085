//! Single-position mutations of reference witnesses, graded by the verifier
//! and by independent predicates written from the family definitions.

mod common;

use std::collections::{BTreeSet, HashSet};

use cbench_eval::parse::Submission;
use cbench_eval::verify::{Bucket, Verifier};
use common::{record, verifier};

fn is_perm(w: &[i64], n: i64) -> bool {
    let s: BTreeSet<i64> = w.iter().copied().collect();
    w.len() as i64 == n && s.len() == w.len() && s.iter().all(|&v| (0..n).contains(&v))
}

fn queens(w: &[i64], n: i64) -> bool {
    is_perm(w, n)
        && (0..w.len()).all(|i| (i + 1..w.len()).all(|j| (w[i] - w[j]).abs() != (j - i) as i64))
}

fn all_interval(w: &[i64], n: i64) -> bool {
    let d: Vec<i64> = w.windows(2).map(|p| (p[1] - p[0]).abs()).collect();
    is_perm(w, n) && is_perm(&d.iter().map(|x| x - 1).collect::<Vec<_>>(), n - 1)
}

fn langford(w: &[i64], n: i64) -> bool {
    w.len() as i64 == 2 * n
        && (1..=n).all(|v| {
            let at: Vec<usize> = (0..w.len()).filter(|&i| w[i] == v).collect();
            at.len() == 2 && (at[1] - at[0]) as i64 == v + 1
        })
}

fn costas(w: &[i64], n: i64) -> bool {
    let mut seen = HashSet::new();
    is_perm(w, n)
        && (0..w.len()).all(|i| (i + 1..w.len()).all(|j| seen.insert(((j - i) as i64, w[j] - w[i]))))
}

fn magic_sequence(w: &[i64], n: i64) -> bool {
    w.len() as i64 == n && (0..n).all(|i| w[i as usize] == w.iter().filter(|&&x| x == i).count() as i64)
}

/// Three colours on 0..7, no monochromatic 3-term progression.
fn van_der_waerden(w: &[i64], n: i64) -> bool {
    let n = n as usize;
    w.len() == n
        && w.iter().all(|&c| (0..3).contains(&c))
        && (0..n).all(|a| (1..n).all(|d| a + 2 * d >= n || !(w[a] == w[a + d] && w[a] == w[a + 2 * d])))
}

/// Two-colouring of the edges of K_n, listed as (0,1), (0,2), ..., with no
/// monochromatic triangle.
fn ramsey33(w: &[i64], n: i64) -> bool {
    let n = n as usize;
    let mut idx = vec![vec![0usize; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            idx[i][j] = k;
            k += 1;
        }
    }
    w.len() == k
        && w.iter().all(|&c| c == 0 || c == 1)
        && (0..n).all(|a| {
            (a + 1..n).all(|b| (b + 1..n).all(|c| !(w[idx[a][b]] == w[idx[a][c]] && w[idx[a][b]] == w[idx[b][c]])))
        })
}

/// (accepted by verifier, valid per predicate) for every mutation of every position
/// to every value in `lo..=hi`.
fn mutations(case: &Case, v: &Verifier) -> (usize, usize, usize) {
    let &(family, extra, n, lo, hi, pred) = case;
    let mut pairs = vec![("n", n)];
    pairs.extend_from_slice(extra);
    let rec = record(family, &pairs);
    let w = rec.witness.clone().expect("SAT instance");
    assert!(pred(&w, n), "reference witness fails the predicate");
    let (mut total, mut accepted, mut valid) = (0, 0, 0);
    for pos in 0..w.len() {
        for val in lo..=hi {
            if val == w[pos] {
                continue;
            }
            let mut m = w.clone();
            m[pos] = val;
            let verdict = v.verify(&rec, &Submission::sat(m.clone()));
            let ok = pred(&m, n);
            assert_eq!(verdict.correct, ok, "{family} {m:?}: {verdict}");
            if !ok {
                assert_eq!(verdict.failure_bucket, Bucket::WrongSolution);
            }
            total += 1;
            accepted += usize::from(verdict.correct);
            valid += usize::from(ok);
        }
    }
    (total, accepted, valid)
}

type Case = (
    &'static str,
    &'static [(&'static str, i64)],
    i64,
    i64,
    i64,
    fn(&[i64], i64) -> bool,
);

const CASES: [Case; 7] = [
    ("queens", &[], 6, -1, 6, queens),
    ("all_interval", &[], 8, -1, 8, all_interval),
    ("langford", &[], 7, 0, 8, langford),
    ("costas_array", &[], 7, -1, 7, costas),
    ("magic_sequence", &[], 7, -1, 7, magic_sequence),
    ("van_der_waerden", &[("k", 3), ("L", 3)], 7, -1, 3, van_der_waerden),
    ("ramsey", &[("r", 3), ("s", 3)], 5, 0, 2, ramsey33),
];

#[test]
fn acceptance_rate_equals_brute_force_validity_rate() {
    let v = verifier();
    let mut some_valid = 0;
    for case in &CASES {
        let (total, accepted, valid) = mutations(case, &v);
        assert!(total > 0);
        assert_eq!(accepted, valid, "{}", case.0);
        some_valid += valid;
    }
    assert!(some_valid > 0);
}

#[test]
fn direct_check_and_pinned_resolve_agree() {
    let resolve = verifier();
    let direct = Verifier {
        cross_check: false,
        ..verifier()
    };
    for case in &CASES {
        assert_eq!(mutations(case, &resolve), mutations(case, &direct), "{}", case.0);
    }
}

#[test]
fn malformed_solutions_are_wrong_solution() {
    let rec = record("queens", &[("n", 5)]);
    let v = verifier();
    for sol in [serde_json::json!([0, 2]), serde_json::json!([[0, 2, 4, 1, 3]]), serde_json::json!("02413"), serde_json::json!(null)] {
        let s = Submission::from_value(&serde_json::json!({"satisfiable": true, "solution": sol})).unwrap();
        let verdict = v.verify(&rec, &s);
        assert!(!verdict.correct && verdict.satisfiability_correct);
        assert_eq!(verdict.failure_bucket, Bucket::WrongSolution);
    }
}
