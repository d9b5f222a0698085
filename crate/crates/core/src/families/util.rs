//! Shared helpers for family definitions.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Params, VarData, WitnessError};
use crate::graph::Graph;
use crate::model::{Cmp, Constraint, ConstraintModel, Domain, VarId};

pub(crate) fn pv(p: &Params, name: &str) -> i64 {
    p[name]
}

pub(crate) fn pu(p: &Params, name: &str) -> usize {
    p[name].max(0) as usize
}

pub(crate) fn list(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub(crate) fn render_edges(edges: &[[usize; 2]]) -> String {
    edges
        .iter()
        .map(|e| format!("({}, {})", e[0], e[1]))
        .collect::<Vec<_>>()
        .join("\n")
}

pub(crate) fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

/// Uniform G(n, m) with m = round(density_pct% of all pairs), edges sorted.
pub(crate) fn random_graph<R: Rng>(n: usize, density_pct: i64, rng: &mut R) -> Vec<[usize; 2]> {
    let mut pairs: Vec<[usize; 2]> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push([u, v]);
        }
    }
    let m = ((pairs.len() as f64) * density_pct as f64 / 100.0).round() as usize;
    let take = m.min(pairs.len());
    let (chosen, _) = pairs.partial_shuffle(rng, take);
    let mut edges = chosen.to_vec();
    edges.sort_unstable();
    edges
}

/// Graph of the family's variable data; callers validate data up front.
pub(crate) fn data_graph(n: usize, data: &VarData) -> Graph {
    let mut g = Graph::empty(n);
    for e in data.edges.iter().flatten() {
        if e[0] < n && e[1] < n && e[0] != e[1] {
            g.add_edge(e[0], e[1]);
        }
    }
    g
}

/// Strict edge-list witness: flattened pairs, 0 <= u < v < n, no repeats.
pub(crate) fn witness_graph(n: usize, w: &[i64]) -> Result<Graph, WitnessError> {
    if w.len() % 2 != 0 {
        return Err(WitnessError::Malformed(format!(
            "edge list has odd length {}",
            w.len()
        )));
    }
    let pairs: Vec<(i64, i64)> = w.chunks(2).map(|c| (c[0], c[1])).collect();
    Graph::from_edges(n, &pairs).map_err(|e| WitnessError::Malformed(e.to_string()))
}

pub(crate) fn in_range(w: &[i64], lo: i64, hi: i64) -> Result<(), WitnessError> {
    match w.iter().position(|&x| x < lo || x > hi) {
        Some(pos) => Err(WitnessError::OutOfRange { pos, value: w[pos] }),
        None => Ok(()),
    }
}

pub(crate) fn violated(msg: impl Into<String>) -> WitnessError {
    WitnessError::Violated(msg.into())
}

pub(crate) fn all_distinct(w: &[i64]) -> bool {
    let set: BTreeSet<i64> = w.iter().copied().collect();
    set.len() == w.len()
}

pub(crate) fn is_latin(grid: &[i64], n: usize) -> bool {
    (0..n).all(|i| {
        all_distinct(&grid[i * n..(i + 1) * n])
            && all_distinct(&(0..n).map(|r| grid[r * n + i]).collect::<Vec<_>>())
    })
}

pub(crate) fn post_latin(m: &mut ConstraintModel, x: &[VarId], n: usize) {
    for i in 0..n {
        m.post(Constraint::AllDifferent((0..n).map(|j| x[i * n + j]).collect()));
        m.post(Constraint::AllDifferent((0..n).map(|j| x[j * n + i]).collect()));
    }
}

pub(crate) fn grid_vars(m: &mut ConstraintModel, prefix: &str, n: usize, lo: i64, hi: i64) -> Vec<VarId> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(m.int_var(format!("{prefix}[{i}][{j}]"), lo, hi));
        }
    }
    out
}

pub(crate) fn vec_vars(m: &mut ConstraintModel, prefix: &str, len: usize, domain: Domain) -> Vec<VarId> {
    (0..len)
        .map(|i| m.add_var(format!("{prefix}[{i}]"), domain.clone()))
        .collect()
}

/// Posts `r = f(a, b)` as a table over the two domains.
pub(crate) fn post_binary_fn(
    m: &mut ConstraintModel,
    a: VarId,
    b: VarId,
    r: VarId,
    f: impl Fn(i64, i64) -> i64,
) {
    let da = m.var(a).domain.values();
    let db = m.var(b).domain.values();
    let mut tuples = Vec::with_capacity(da.len() * db.len());
    for &x in &da {
        for &y in &db {
            tuples.push(vec![x, y, f(x, y)]);
        }
    }
    m.post(Constraint::TableAllowed {
        vars: vec![a, b, r],
        tuples,
    });
}

/// New 0/1 variable equal to `[x == value]`.
pub(crate) fn eq_indicator(m: &mut ConstraintModel, name: String, x: VarId, value: i64) -> VarId {
    let b = m.bool_var(name);
    let tuples = m
        .var(x)
        .domain
        .values()
        .into_iter()
        .map(|v| vec![v, i64::from(v == value)])
        .collect();
    m.post(Constraint::TableAllowed {
        vars: vec![x, b],
        tuples,
    });
    b
}

pub(crate) fn sum_eq(m: &mut ConstraintModel, terms: Vec<(i64, VarId)>, bound: i64) {
    m.post(Constraint::LinearSum {
        terms,
        cmp: Cmp::Eq,
        bound,
    });
}

/// k-subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k)
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Index of pair (i, j), i < j, in lexicographic order over K_n.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Random Latin square: cyclic square under random row, column and symbol permutations.
pub(crate) fn random_latin<R: Rng>(n: usize, rng: &mut R) -> Vec<i64> {
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut syms: Vec<i64> = (0..n as i64).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    syms.shuffle(rng);
    let mut g = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            g[i * n + j] = syms[(rows[i] + cols[j]) % n];
        }
    }
    g
}

/// Hides each cell with probability 1 - keep_pct/100, writing `empty`, then
/// overwrites `noise` random cells with random values in `lo..=hi`.
pub(crate) fn mask_clues<R: Rng>(
    full: &[i64],
    keep_pct: i64,
    noise: usize,
    empty: i64,
    lo: i64,
    hi: i64,
    rng: &mut R,
) -> Vec<i64> {
    let mut clues: Vec<i64> = full
        .iter()
        .map(|&v| if rng.gen_range(0..100) < keep_pct { v } else { empty })
        .collect();
    for _ in 0..noise {
        let pos = rng.gen_range(0..clues.len());
        clues[pos] = rng.gen_range(lo..=hi);
    }
    clues
}

/// Posts pins for every non-empty clue.
pub(crate) fn post_clues(m: &mut ConstraintModel, x: &[VarId], clues: Option<&Vec<i64>>, empty: i64) {
    for (i, &c) in clues.into_iter().flatten().enumerate() {
        if c != empty {
            m.post(Constraint::TableAllowed {
                vars: vec![x[i]],
                tuples: vec![vec![c]],
            });
        }
    }
}

pub(crate) fn respects_clues(w: &[i64], clues: Option<&Vec<i64>>, empty: i64) -> Result<(), WitnessError> {
    for (i, &c) in clues.into_iter().flatten().enumerate() {
        if c != empty && w[i] != c {
            return Err(violated(format!("cell {i} must keep clue {c}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn pair_indices_are_lexicographic() {
        let n = 6;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(pair_index(n, i, j), k);
                k += 1;
            }
        }
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(combinations(5, 2).count(), 10);
    }

    #[test]
    fn random_graph_density() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let e = random_graph(10, 50, &mut rng);
        assert_eq!(e.len(), 23); // round(45 * 0.5)
        assert!(e.windows(2).all(|w| w[0] < w[1]));
        assert!(e.iter().all(|p| p[0] < p[1]));
    }

    #[test]
    fn random_latin_is_latin() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..8 {
            assert!(is_latin(&random_latin(n, &mut rng), n));
        }
    }
}
