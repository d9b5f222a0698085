//! Brute-force solution sets against the CNF pipeline, one case list per
//! family group.

use cbench_core::families::VarData;

use super::common::*;

fn uniform(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    vec![(lo..=hi).collect(); len]
}

fn grid_check(family: &str, pairs: &[(&str, i64)], seed: u64, choices: impl Fn(&VarData) -> Vec<Vec<i64>>) -> usize {
    let (p, data) = instance(family, pairs, seed);
    let c = choices(&data);
    assert_oracle_matches(family, &p, &data, |visit| product(&c, |w| visit(w)))
}

fn simple(family: &str, pairs: &[(&str, i64)], len: usize, lo: i64, hi: i64) -> usize {
    grid_check(family, pairs, 0, |_| uniform(len, lo, hi))
}

/// Clue cells contribute their clue only; other cells take every value.
fn clue_choices(data: &VarData, empty: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    data.clues
        .as_ref()
        .unwrap()
        .iter()
        .map(|&c| if c == empty { (lo..=hi).collect() } else { vec![c] })
        .collect()
}

fn graphs(family: &str, pairs: &[(&str, i64)]) -> usize {
    let (p, data) = instance(family, pairs, 0);
    let v = p["v"] as usize;
    assert_oracle_matches(family, &p, &data, |visit| all_graphs(v, |w| visit(w)))
}

pub fn sequences() {
    assert_eq!(simple("all_interval", &[("n", 5)], 5, 0, 4), 8);
    simple("all_interval", &[("n", 6)], 6, 0, 5);
    assert_eq!(simple("costas_array", &[("n", 5)], 5, 0, 4), 40);
    assert_eq!(simple("costas_array", &[("n", 6)], 6, 0, 5), 116);
    assert_eq!(simple("debruijn", &[("b", 2), ("n", 3)], 8, 0, 1), 16);
    assert_eq!(simple("debruijn", &[("b", 3), ("n", 2)], 9, 0, 2), 216);
    assert_eq!(simple("golomb", &[("n", 4), ("length", 6)], 4, 0, 6), 2);
    simple("golomb", &[("n", 4), ("length", 7)], 4, 0, 7);
    assert_eq!(simple("hadamard", &[("n", 3)], 6, -1, 1), 9);
    simple("hadamard", &[("n", 5)], 10, -1, 1);
    assert_eq!(simple("langford", &[("n", 3)], 6, 1, 3), 2);
    assert_eq!(simple("langford", &[("n", 4)], 8, 1, 4), 2);
    simple("langford", &[("n", 5)], 10, 1, 3);
    assert_eq!(simple("magic_sequence", &[("n", 4)], 4, 0, 4), 2);
    assert_eq!(simple("magic_sequence", &[("n", 6)], 6, 0, 5), 0);
    assert_eq!(simple("magic_sequence", &[("n", 7)], 7, 0, 6), 1);
    assert_eq!(simple("number_partitioning", &[("n", 3), ("k", 2)], 3, 0, 1), 2);
    simple("number_partitioning", &[("n", 6), ("k", 3)], 6, 0, 2);
    simple("number_partitioning", &[("n", 8), ("k", 2)], 8, 0, 1);
    assert_eq!(simple("pigeons", &[("n", 3)], 4, 0, 2), 0);
    simple("van_der_waerden", &[("n", 8), ("k", 2), ("L", 3)], 8, 0, 1);
    assert_eq!(simple("van_der_waerden", &[("n", 9), ("k", 2), ("L", 3)], 9, 0, 1), 0);
    simple("van_der_waerden", &[("n", 9), ("k", 3), ("L", 3)], 9, 0, 2);
}

pub fn designs() {
    // the grid determines the sums, so only grids are enumerated
    let (p, data) = instance("antimagic_square", &[("n", 2)], 0);
    assert_eq!(
        assert_oracle_matches("antimagic_square", &p, &data, |visit| {
            product(&uniform(4, 1, 4), |g| {
                let sums = [g[0] + g[1], g[2] + g[3], g[0] + g[2], g[1] + g[3], g[0] + g[3], g[1] + g[2]];
                let mut w = g.to_vec();
                w.extend(sums);
                visit(&w);
            })
        }),
        0
    );
    assert_eq!(simple("bibd", &[("v", 3), ("k", 2), ("lambda", 1)], 9, 0, 1), 6);
    simple("bibd", &[("v", 4), ("k", 3), ("lambda", 2)], 16, 0, 1);
    simple("non_transitive_dice", &[("dice", 3), ("faces", 2), ("max_value", 3)], 6, 0, 3);
    simple("non_transitive_dice", &[("dice", 3), ("faces", 2), ("max_value", 5)], 6, 0, 5);
    simple("non_transitive_dice", &[("dice", 2), ("faces", 3), ("max_value", 0)], 6, 0, 5);
    assert_eq!(simple("ramsey", &[("n", 5), ("r", 3), ("s", 3)], 10, 0, 1), 12);
    assert_eq!(simple("ramsey", &[("n", 6), ("r", 3), ("s", 3)], 15, 0, 1), 0);
    simple("ramsey", &[("n", 6), ("r", 3), ("s", 4)], 15, 0, 1);
    assert_eq!(simple("social_golfers", &[("groups", 2), ("size", 2), ("weeks", 3)], 12, 0, 1), 48);
    assert_eq!(simple("social_golfers", &[("groups", 2), ("size", 2), ("weeks", 4)], 16, 0, 1), 0);
}

pub fn graph_instances() {
    assert_eq!(simple("graceful_graph", &[("k", 3), ("p", 1)], 3, 0, 3), 12);
    simple("graceful_graph", &[("k", 2), ("p", 2)], 4, 0, 4);
    simple("graceful_graph", &[("k", 3), ("p", 2)], 6, 0, 9);
    for seed in 0..3 {
        grid_check("graph_k_coloring", &[("n", 8), ("k", 3), ("density_pct", 40)], seed, |_| uniform(8, 0, 2));
        grid_check("graph_k_coloring", &[("n", 7), ("k", 2), ("density_pct", 20)], seed, |_| uniform(7, 0, 1));
        grid_check("hamilton_cycle", &[("n", 7), ("density_pct", 50)], seed, |_| uniform(7, 0, 6));
        for fam in ["max_clique", "max_independent_set", "vertex_cover"] {
            grid_check(fam, &[("n", 12), ("k", 4), ("density_pct", 50)], seed, |_| uniform(12, 0, 1));
            grid_check(fam, &[("n", 10), ("k", 6), ("density_pct", 30)], seed, |_| uniform(10, 0, 1));
        }
    }
}

pub fn grids() {
    // permutation-valued families: non-permutations fail the predicate outright
    let (p, data) = instance("knight_tour", &[("n", 3)], 0);
    assert_eq!(
        assert_oracle_matches("knight_tour", &p, &data, |visit| {
            permutations(&(1..9).collect::<Vec<_>>(), |rest| {
                let mut w = vec![0];
                w.extend_from_slice(rest);
                visit(&w);
            })
        }),
        0
    );
    let (p, data) = instance("magic_square", &[("n", 3)], 0);
    assert_eq!(
        assert_oracle_matches("magic_square", &p, &data, |visit| permutations(&(1..=9).collect::<Vec<_>>(), |w| visit(w))),
        8
    );
    let (p, data) = instance("magic_square", &[("n", 3), ("clue_pct", 30)], 5);
    assert_oracle_matches("magic_square", &p, &data, |visit| permutations(&(1..=9).collect::<Vec<_>>(), |w| visit(w)));
    assert_eq!(simple("latin_square_completion", &[("n", 3), ("density_pct", 0)], 9, 0, 2), 12);
    for seed in 0..4 {
        grid_check("latin_square_completion", &[("n", 4), ("density_pct", 70)], seed, |d| clue_choices(d, -1, 0, 3));
        grid_check("latin_square_completion", &[("n", 4), ("density_pct", 70), ("noise", 2)], seed, |d| clue_choices(d, -1, 0, 3));
        grid_check("sudoku", &[("n", 2), ("clue_pct", 70)], seed, |d| clue_choices(d, 0, 1, 4));
        grid_check("sudoku", &[("n", 2), ("clue_pct", 70), ("noise", 2)], seed, |d| clue_choices(d, 0, 1, 4));
    }
    assert_eq!(simple("ortholatin", &[("n", 2)], 8, 0, 1), 0);
    assert_eq!(simple("quasigroup_idempotent", &[("n", 3)], 9, 0, 2), 0);
    assert_eq!(simple("queens", &[("n", 6)], 6, 0, 5), 4);
    assert_eq!(simple("queens", &[("n", 7)], 7, 0, 6), 40);
    assert_eq!(simple("queens", &[("n", 3)], 3, 0, 2), 0);
}

pub fn graph_generation() {
    graphs("pysms_chromatic_girth", &[("v", 6), ("chi", 2), ("girth", 4), ("min_edges", 6)]);
    graphs("pysms_chromatic_girth", &[("v", 5), ("chi", 3), ("girth", 5), ("min_edges", 5)]);
    graphs("pysms_clique_coloring", &[("v", 6), ("max_clique", 2), ("chi", 3), ("min_degree", 2)]);
    graphs(
        "pysms_combined_graph",
        &[
            ("v", 6),
            ("min_degree", 2),
            ("max_degree", 3),
            ("min_edges", 7),
            ("max_edges", 8),
            ("max_clique", 2),
            ("max_indset", 3),
            ("chi", 3),
            ("connectivity", 2),
            ("girth", 0),
            ("free_k", 0),
        ],
    );
    graphs(
        "pysms_combined_graph",
        &[
            ("v", 6),
            ("min_degree", 0),
            ("max_degree", 0),
            ("min_edges", 0),
            ("max_edges", 9),
            ("max_clique", 0),
            ("max_indset", 0),
            ("chi", 0),
            ("connectivity", 1),
            ("girth", 5),
            ("free_k", 0),
        ],
    );
    assert_eq!(graphs("pysms_contains_cliques", &[("v", 6), ("count", 2), ("size", 3)]), 10);
    assert_eq!(graphs("pysms_contains_cliques", &[("v", 6), ("count", 2), ("size", 2)]), 0);
    graphs("pysms_degree_bounds", &[("v", 6), ("min_degree", 2), ("max_degree", 3)]);
    graphs("pysms_girth_degree", &[("v", 6), ("girth", 4), ("min_degree", 2), ("max_degree", 3)]);
    graphs("pysms_graph_builder", &[("v", 6), ("min_edges", 5), ("max_edges", 8), ("chi_min", 3), ("chi_max", 3)]);
    graphs("pysms_graph_builder", &[("v", 6), ("min_edges", 6), ("max_edges", 9), ("chi_min", 4), ("chi_max", 4)]);
    graphs("pysms_independent_connectivity", &[("v", 6), ("max_indset", 2), ("connectivity", 2)]);
    graphs("pysms_min_connectivity", &[("v", 6), ("connectivity", 3)]);
    graphs("pysms_min_connectivity", &[("v", 5), ("connectivity", 4)]);
    graphs("pysms_min_degree", &[("v", 6), ("min_degree", 3)]);
    graphs("pysms_min_girth", &[("v", 6), ("girth", 5)]);
    graphs("pysms_mtf", &[("v", 6)]);
    graphs("pysms_num_edges_bounds", &[("v", 5), ("min_edges", 4), ("max_edges", 6)]);
    assert_eq!(graphs("pysms_ramsey", &[("v", 5), ("r", 3), ("s", 3)]), 12);
    assert_eq!(graphs("pysms_ramsey", &[("v", 6), ("r", 3), ("s", 3)]), 0);
}
