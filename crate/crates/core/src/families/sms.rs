//! Graph generation families: find any graph on v vertices with given structural properties.
//!
//! Properties that are cheap to state in CNF are posted up front. The rest
//! (large clique/independent-set bounds, lower bounds on chromatic number and
//! connectivity, long cycle bans) are enforced by cuts that exclude each
//! failing candidate.

use super::util::*;
use super::{param, BuiltModel, Family, ParamSpec, Params, VarData, WitnessError, WitnessMap};
use crate::graph::Graph;
use crate::model::{BoolLit, Cmp, Constraint, ConstraintModel, VarId};

/// Eager clause budget per property before it switches to cuts.
const EAGER_LIMIT: u128 = 150_000;

/// Structural requirements; None means unconstrained.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphProps {
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub min_edges: Option<usize>,
    pub max_edges: Option<usize>,
    /// No clique on this many vertices.
    pub no_clique: Option<usize>,
    /// No independent set on this many vertices.
    pub no_indset: Option<usize>,
    pub chi_at_most: Option<usize>,
    pub chi_at_least: Option<usize>,
    pub connectivity: Option<usize>,
    pub girth: Option<usize>,
    pub maximal_triangle_free: bool,
    /// (count, size)
    pub disjoint_cliques: Option<(usize, usize)>,
}

fn nz(p: &Params, name: &str) -> Option<usize> {
    match pu(p, name) {
        0 => None,
        v => Some(v),
    }
}

impl GraphProps {
    pub fn check(&self, g: &Graph) -> Result<(), WitnessError> {
        let n = g.n();
        if let Some(d) = self.min_degree {
            if n > 0 && g.min_degree() < d {
                return Err(violated(format!("minimum degree {} is below {d}", g.min_degree())));
            }
        }
        if let Some(d) = self.max_degree {
            if g.max_degree() > d {
                return Err(violated(format!("maximum degree {} exceeds {d}", g.max_degree())));
            }
        }
        let m = g.num_edges();
        if self.min_edges.is_some_and(|b| m < b) || self.max_edges.is_some_and(|b| m > b) {
            return Err(violated(format!("the graph has {m} edges")));
        }
        if let Some(k) = self.no_clique {
            if let Some(c) = g.find_clique(k) {
                return Err(violated(format!("clique {c:?}")));
            }
        }
        if let Some(k) = self.no_indset {
            if let Some(c) = g.find_independent_set(k) {
                return Err(violated(format!("independent set {c:?}")));
            }
        }
        if let Some(k) = self.chi_at_most {
            if g.find_coloring(k).is_none() {
                return Err(violated(format!("not {k}-colorable")));
            }
        }
        if let Some(k) = self.chi_at_least {
            if k >= 1 && g.find_coloring(k - 1).is_some() {
                return Err(violated(format!("chromatic number below {k}")));
            }
        }
        if let Some(c) = self.connectivity {
            let kappa = g.vertex_connectivity();
            if kappa < c {
                return Err(violated(format!("vertex connectivity {kappa} is below {c}")));
            }
        }
        if let Some(gi) = self.girth {
            if let Some(l) = g.girth() {
                if l < gi {
                    return Err(violated(format!("girth {l} is below {gi}")));
                }
            }
        }
        if self.maximal_triangle_free && !g.is_maximal_triangle_free() {
            return Err(violated("not maximal triangle-free"));
        }
        if let Some((count, size)) = self.disjoint_cliques {
            if !g.is_disjoint_cliques(count, size) {
                return Err(violated(format!("not {count} disjoint cliques of size {size}")));
            }
        }
        Ok(())
    }

    fn eager_subsets(n: usize, k: usize) -> bool {
        binomial(n, k) <= EAGER_LIMIT
    }

    fn build(&self, n: usize) -> BuiltModel {
        let mut m = ConstraintModel::new();
        let mut evars: Vec<((usize, usize), VarId)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                evars.push(((u, v), m.bool_var(format!("e[{u}][{v}]"))));
            }
        }
        let e = |u: usize, v: usize| evars[pair_index(n, u.min(v), u.max(v))].1;
        let incident = |u: usize| -> Vec<(i64, VarId)> { (0..n).filter(|&v| v != u).map(|v| (1, e(u, v))).collect() };
        let all: Vec<(i64, VarId)> = evars.iter().map(|&(_, id)| (1, id)).collect();

        let mut min_degree = self.min_degree.unwrap_or(0);
        if let Some(c) = self.connectivity {
            if c >= n.max(1) {
                m.post(Constraint::Clause(Vec::new()));
            }
            // connectivity c forces minimum degree c
            min_degree = min_degree.max(c);
        }
        for u in 0..n {
            if min_degree > 0 {
                m.post(Constraint::LinearSum {
                    terms: incident(u),
                    cmp: Cmp::Ge,
                    bound: min_degree as i64,
                });
            }
            if let Some(d) = self.max_degree {
                m.post(Constraint::LinearSum {
                    terms: incident(u),
                    cmp: Cmp::Le,
                    bound: d as i64,
                });
            }
        }
        if let Some(b) = self.min_edges {
            m.post(Constraint::LinearSum {
                terms: all.clone(),
                cmp: Cmp::Ge,
                bound: b as i64,
            });
        }
        if let Some(b) = self.max_edges {
            m.post(Constraint::LinearSum {
                terms: all.clone(),
                cmp: Cmp::Le,
                bound: b as i64,
            });
        }
        let subset_clauses = |m: &mut ConstraintModel, k: usize, value: i64| {
            for set in combinations(n, k) {
                m.post(Constraint::Clause(
                    pairs_of(&set).map(|(a, b)| BoolLit::is_not(e(a, b), value)).collect(),
                ));
            }
        };
        if let Some(k) = self.no_clique {
            if k <= 1 {
                if n >= k {
                    m.post(Constraint::Clause(Vec::new()));
                }
            } else if Self::eager_subsets(n, k) {
                subset_clauses(&mut m, k, 1);
            }
        }
        if let Some(k) = self.no_indset {
            if k <= 1 {
                if n >= k {
                    m.post(Constraint::Clause(Vec::new()));
                }
            } else if Self::eager_subsets(n, k) {
                subset_clauses(&mut m, k, 0);
            }
        }
        let triangle_free = self.maximal_triangle_free || self.girth.is_some_and(|g| g > 3);
        if triangle_free {
            subset_clauses(&mut m, 3, 1);
        }
        if let Some(g) = self.girth {
            let mut budget = EAGER_LIMIT;
            for len in 4..g.min(n + 1) {
                let count = cycle_count(n, len);
                if count > budget {
                    break;
                }
                budget -= count;
                for cyc in cycles(n, len) {
                    m.post(Constraint::Clause(
                        (0..len).map(|i| BoolLit::is(e(cyc[i], cyc[(i + 1) % len]), 0)).collect(),
                    ));
                }
            }
        }
        if let Some(k) = self.chi_at_most {
            if k == 0 {
                if n > 0 {
                    m.post(Constraint::Clause(Vec::new()));
                }
            } else if k < n {
                // colors bounded by vertex index: any coloring can be relabelled by first use
                let col: Vec<VarId> = (0..n)
                    .map(|u| m.int_var(format!("col[{u}]"), 0, (k - 1).min(u) as i64))
                    .collect();
                for u in 0..n {
                    for v in u + 1..n {
                        for c in 0..=(k - 1).min(u) as i64 {
                            m.post(Constraint::Clause(vec![
                                BoolLit::is(e(u, v), 0),
                                BoolLit::is_not(col[u], c),
                                BoolLit::is_not(col[v], c),
                            ]));
                        }
                    }
                }
            }
        }
        if let Some(k) = self.chi_at_least {
            if k > n {
                m.post(Constraint::Clause(Vec::new()));
            } else if k == 2 {
                m.post(Constraint::Clause(all.iter().map(|&(_, id)| BoolLit::is(id, 1)).collect()));
            }
        }
        if self.maximal_triangle_free {
            for u in 0..n {
                for v in u + 1..n {
                    let mut cl = vec![BoolLit::is(e(u, v), 1)];
                    for w in (0..n).filter(|&w| w != u && w != v) {
                        let t = m.bool_var(format!("t[{u}][{v}][{w}]"));
                        for edge in [e(u, w), e(v, w)] {
                            m.post(Constraint::Clause(vec![BoolLit::is(t, 0), BoolLit::is(edge, 1)]));
                        }
                        cl.push(BoolLit::is(t, 1));
                    }
                    m.post(Constraint::Clause(cl));
                }
            }
        }
        if let Some((count, size)) = self.disjoint_cliques {
            if count == 0 {
                if n > 0 {
                    m.post(Constraint::Clause(Vec::new()));
                }
            } else {
                let grp: Vec<VarId> = (0..n)
                    .map(|u| m.int_var(format!("grp[{u}]"), 0, count as i64 - 1))
                    .collect();
                for g in 0..count as i64 {
                    m.post(Constraint::CardinalityOfValue {
                        vars: grp.clone(),
                        value: g,
                        cmp: Cmp::Eq,
                        bound: size as i64,
                    });
                }
                for u in 0..n {
                    for v in u + 1..n {
                        for g in 0..count as i64 {
                            m.post(Constraint::Clause(vec![
                                BoolLit::is_not(grp[u], g),
                                BoolLit::is_not(grp[v], g),
                                BoolLit::is(e(u, v), 1),
                            ]));
                            m.post(Constraint::Clause(vec![
                                BoolLit::is(e(u, v), 0),
                                BoolLit::is_not(grp[u], g),
                                BoolLit::is(grp[v], g),
                            ]));
                        }
                    }
                }
            }
        }
        BuiltModel {
            model: m,
            witness: WitnessMap::EdgeSet { n, vars: evars },
        }
    }

    /// Cuts for every violated property handled lazily; each excludes `g`.
    fn cuts(&self, g: &Graph, evars: &[((usize, usize), VarId)]) -> Vec<Constraint> {
        let n = g.n();
        let e = |u: usize, v: usize| evars[pair_index(n, u.min(v), u.max(v))].1;
        let mut out = Vec::new();
        if let Some(k) = self.no_clique {
            if let Some(c) = g.find_clique(k) {
                out.push(Constraint::Clause(pairs_of(&c).map(|(a, b)| BoolLit::is(e(a, b), 0)).collect()));
            }
        }
        if let Some(k) = self.no_indset {
            if let Some(c) = g.find_independent_set(k) {
                out.push(Constraint::Clause(pairs_of(&c).map(|(a, b)| BoolLit::is(e(a, b), 1)).collect()));
            }
        }
        if let Some(k) = self.chi_at_least {
            if k >= 2 {
                if let Some(col) = g.find_coloring(k - 1) {
                    let mut cl = Vec::new();
                    for u in 0..n {
                        for v in u + 1..n {
                            if col[u] == col[v] {
                                cl.push(BoolLit::is(e(u, v), 1));
                            }
                        }
                    }
                    out.push(Constraint::Clause(cl));
                }
            }
        }
        if let Some(c) = self.connectivity {
            if let Some(sep) = g.min_separator() {
                if sep.len() < c {
                    let mut removed = vec![false; n];
                    sep.iter().for_each(|&v| removed[v] = true);
                    let comp = g.components_without(&removed);
                    let first = comp.iter().flatten().next().copied();
                    let mut cl = Vec::new();
                    for a in 0..n {
                        for b in 0..n {
                            if comp[a].is_some() && comp[a] == first && comp[b].is_some() && comp[b] != first {
                                cl.push(BoolLit::is(e(a, b), 1));
                            }
                        }
                    }
                    out.push(Constraint::Clause(cl));
                }
            }
        }
        if let Some(gi) = self.girth {
            if let Some(cyc) = g.shortest_cycle() {
                if cyc.len() < gi {
                    let l = cyc.len();
                    out.push(Constraint::Clause(
                        (0..l).map(|i| BoolLit::is(e(cyc[i], cyc[(i + 1) % l]), 0)).collect(),
                    ));
                }
            }
        }
        out
    }
}

fn pairs_of(set: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    set.iter()
        .enumerate()
        .flat_map(move |(i, &a)| set[i + 1..].iter().map(move |&b| (a, b)))
}

/// Number of distinct cycles of length `len` in K_n.
fn cycle_count(n: usize, len: usize) -> u128 {
    if len < 3 || len > n {
        return 0;
    }
    let mut arrangements: u128 = 1;
    for i in 1..len {
        arrangements *= i as u128;
    }
    binomial(n, len) * arrangements / 2
}

/// Each cycle once: smallest vertex first, second vertex below the last.
fn cycles(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, len: usize, path: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if path.len() == len {
            if path[1] < path[len - 1] {
                out.push(path.clone());
            }
            return;
        }
        for v in path[0] + 1..n {
            if !used[v] {
                used[v] = true;
                path.push(v);
                extend(n, len, path, used, out);
                path.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..n {
        let mut used = vec![false; n];
        used[start] = true;
        extend(n, len, &mut vec![start], &mut used, &mut out);
    }
    out
}

/// A graph family defined by a property set computed from its parameters.
pub struct GraphConstraintSet {
    name: &'static str,
    params: &'static [ParamSpec],
    props: fn(&Params) -> GraphProps,
    vars: fn(&Params) -> Vec<(&'static str, String)>,
}

impl GraphConstraintSet {
    pub fn props(&self, p: &Params) -> GraphProps {
        (self.props)(p)
    }
}

impl Family for GraphConstraintSet {
    fn name(&self) -> &'static str {
        self.name
    }

    fn params(&self) -> &'static [ParamSpec] {
        self.params
    }

    fn witness_len(&self, _: &Params) -> Option<usize> {
        None
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let g = witness_graph(pu(p, "v"), w)?;
        self.props(p).check(&g)
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        Some(self.props(p).build(pu(p, "v")))
    }

    fn refine(&self, p: &Params, _: &VarData, built: &BuiltModel, w: &[i64]) -> Vec<Constraint> {
        let (WitnessMap::EdgeSet { vars, .. }, Ok(g)) = (&built.witness, witness_graph(pu(p, "v"), w)) else {
            return Vec::new();
        };
        self.props(p).cuts(&g, vars)
    }

    fn witness_names(&self, p: &Params) -> Vec<String> {
        let n = pu(p, "v");
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                out.push(format!("e[{u}][{v}]"));
            }
        }
        out
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let mut v = vec![("v", s(pv(p, "v")))];
        v.extend((self.vars)(p));
        v
    }
}

const V: ParamSpec = param("v", 2, 30, 10);

fn named(p: &Params, names: &[&'static str]) -> Vec<(&'static str, String)> {
    names.iter().map(|&n| (n, s(pv(p, n)))).collect()
}

pub static CHROMATIC_GIRTH: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_chromatic_girth",
    params: &[V, param("chi", 1, 10, 3), param("girth", 3, 30, 4), param("min_edges", 0, 435, 12)],
    props: |p| GraphProps {
        chi_at_most: Some(pu(p, "chi")),
        girth: Some(pu(p, "girth")),
        min_edges: Some(pu(p, "min_edges")),
        ..Default::default()
    },
    vars: |p| named(p, &["chi", "girth", "min_edges"]),
};

pub static CLIQUE_COLORING: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_clique_coloring",
    params: &[
        param("v", 2, 30, 8),
        param("max_clique", 1, 30, 2),
        param("chi", 1, 30, 3),
        param("min_degree", 0, 29, 3),
    ],
    props: |p| GraphProps {
        no_clique: Some(pu(p, "max_clique") + 1),
        chi_at_most: Some(pu(p, "chi")),
        min_degree: Some(pu(p, "min_degree")),
        ..Default::default()
    },
    vars: |p| named(p, &["max_clique", "chi", "min_degree"]),
};

/// Any subset of bounds; 0 disables one.
pub static COMBINED_GRAPH: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_combined_graph",
    params: &[
        V,
        param("min_degree", 0, 29, 2),
        param("max_degree", 0, 29, 4),
        param("min_edges", 0, 435, 14),
        param("max_edges", 0, 435, 18),
        param("max_clique", 0, 30, 3),
        param("max_indset", 0, 30, 4),
        param("chi", 0, 30, 3),
        param("connectivity", 0, 29, 2),
        param("girth", 0, 30, 4),
        param("free_k", 0, 30, 4),
    ],
    props: |p| {
        let clique = nz(p, "max_clique").map(|c| c + 1);
        let free = nz(p, "free_k");
        GraphProps {
            min_degree: nz(p, "min_degree"),
            max_degree: nz(p, "max_degree"),
            min_edges: nz(p, "min_edges"),
            max_edges: nz(p, "max_edges"),
            no_clique: match (clique, free) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            no_indset: nz(p, "max_indset").map(|a| a + 1),
            chi_at_most: nz(p, "chi"),
            connectivity: nz(p, "connectivity"),
            girth: nz(p, "girth"),
            ..Default::default()
        }
    },
    vars: |p| {
        let mut lines = Vec::new();
        let mut line = |name: &str, text: &dyn Fn(i64) -> String| {
            if let Some(v) = nz(p, name) {
                lines.push(format!("  - {}", text(v as i64)));
            }
        };
        line("min_degree", &|v| format!("minimum degree at least {v}"));
        line("max_degree", &|v| format!("maximum degree at most {v}"));
        line("min_edges", &|v| format!("minimum number of edges: {v}"));
        line("max_edges", &|v| format!("maximum number of edges: {v}"));
        line("max_clique", &|v| format!("maximum clique size at most {v}"));
        line("max_indset", &|v| format!("maximum independent set size at most {v}"));
        line("chi", &|v| format!("chromatic number at most {v}"));
        line("connectivity", &|v| format!("vertex-connectivity at least {v}"));
        line("girth", &|v| format!("girth at least {v}"));
        line("free_k", &|v| format!("free of K_{v} subgraphs"));
        if lines.is_empty() {
            lines.push("  - no further constraints".to_string());
        }
        vec![("constraints", lines.join("\n"))]
    },
};

pub static CONTAINS_CLIQUES: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_contains_cliques",
    params: &[param("v", 2, 30, 9), param("count", 1, 30, 3), param("size", 1, 30, 3)],
    props: |p| GraphProps {
        disjoint_cliques: Some((pu(p, "count"), pu(p, "size"))),
        ..Default::default()
    },
    vars: |p| named(p, &["count", "size"]),
};

pub static DEGREE_BOUNDS: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_degree_bounds",
    params: &[V, param("min_degree", 0, 29, 2), param("max_degree", 0, 29, 4)],
    props: |p| GraphProps {
        min_degree: Some(pu(p, "min_degree")),
        max_degree: Some(pu(p, "max_degree")),
        ..Default::default()
    },
    vars: |p| named(p, &["min_degree", "max_degree"]),
};

pub static GIRTH_DEGREE: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_girth_degree",
    params: &[V, param("girth", 3, 30, 5), param("min_degree", 0, 29, 3), param("max_degree", 0, 29, 3)],
    props: |p| GraphProps {
        girth: Some(pu(p, "girth")),
        min_degree: Some(pu(p, "min_degree")),
        max_degree: Some(pu(p, "max_degree")),
        ..Default::default()
    },
    vars: |p| named(p, &["girth", "min_degree", "max_degree"]),
};

pub static GRAPH_BUILDER: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_graph_builder",
    params: &[
        param("v", 2, 30, 8),
        param("min_edges", 0, 435, 10),
        param("max_edges", 0, 435, 14),
        param("chi_min", 0, 30, 2),
        param("chi_max", 0, 30, 3),
    ],
    props: |p| GraphProps {
        min_edges: Some(pu(p, "min_edges")),
        max_edges: Some(pu(p, "max_edges")),
        chi_at_least: nz(p, "chi_min"),
        chi_at_most: Some(pu(p, "chi_max")),
        ..Default::default()
    },
    vars: |p| {
        let text = format!(
            "  - number of edges between {} and {}\n  - chromatic number between {} and {}",
            pv(p, "min_edges"),
            pv(p, "max_edges"),
            pv(p, "chi_min"),
            pv(p, "chi_max")
        );
        vec![("constraints", text)]
    },
};

pub static INDEPENDENT_CONNECTIVITY: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_independent_connectivity",
    params: &[param("v", 2, 30, 8), param("max_indset", 1, 30, 3), param("connectivity", 0, 29, 2)],
    props: |p| GraphProps {
        no_indset: Some(pu(p, "max_indset") + 1),
        connectivity: nz(p, "connectivity"),
        ..Default::default()
    },
    vars: |p| named(p, &["max_indset", "connectivity"]),
};

pub static MIN_CONNECTIVITY: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_min_connectivity",
    params: &[param("v", 2, 30, 8), param("connectivity", 0, 29, 3)],
    props: |p| GraphProps {
        connectivity: nz(p, "connectivity"),
        ..Default::default()
    },
    vars: |p| named(p, &["connectivity"]),
};

pub static MIN_DEGREE: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_min_degree",
    params: &[param("v", 2, 30, 8), param("min_degree", 0, 29, 3)],
    props: |p| GraphProps {
        min_degree: Some(pu(p, "min_degree")),
        ..Default::default()
    },
    vars: |p| named(p, &["min_degree"]),
};

pub static MIN_GIRTH: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_min_girth",
    params: &[V, param("girth", 3, 30, 5)],
    props: |p| GraphProps {
        girth: Some(pu(p, "girth")),
        ..Default::default()
    },
    vars: |p| named(p, &["girth"]),
};

pub static MTF: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_mtf",
    params: &[param("v", 2, 30, 8)],
    props: |_| GraphProps {
        maximal_triangle_free: true,
        ..Default::default()
    },
    vars: |_| Vec::new(),
};

pub static NUM_EDGES_BOUNDS: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_num_edges_bounds",
    params: &[param("v", 2, 30, 8), param("min_edges", 0, 435, 10), param("max_edges", 0, 435, 14)],
    props: |p| GraphProps {
        min_edges: Some(pu(p, "min_edges")),
        max_edges: Some(pu(p, "max_edges")),
        ..Default::default()
    },
    vars: |p| named(p, &["min_edges", "max_edges"]),
};

pub static RAMSEY_GRAPH: GraphConstraintSet = GraphConstraintSet {
    name: "pysms_ramsey",
    params: &[param("v", 2, 30, 8), param("r", 2, 10, 3), param("s", 2, 10, 4)],
    props: |p| GraphProps {
        no_clique: Some(pu(p, "r")),
        no_indset: Some(pu(p, "s")),
        ..Default::default()
    },
    vars: |p| named(p, &["r", "s"]),
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_enumeration_matches_count() {
        for n in 3..=7 {
            for len in 3..=n {
                assert_eq!(cycles(n, len).len() as u128, cycle_count(n, len), "n = {n}, len = {len}");
            }
        }
        assert_eq!(cycle_count(5, 5), 12);
    }

    #[test]
    fn combined_lines_skip_disabled_bounds() {
        let p: Params = [
            ("v", 10),
            ("min_degree", 2),
            ("max_degree", 0),
            ("min_edges", 14),
            ("max_edges", 0),
            ("max_clique", 0),
            ("max_indset", 0),
            ("chi", 3),
            ("connectivity", 0),
            ("girth", 0),
            ("free_k", 4),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        let vars = COMBINED_GRAPH.prompt_vars(&p, &VarData::default());
        assert_eq!(
            vars[1].1,
            "  - minimum degree at least 2\n  - minimum number of edges: 14\n  - chromatic number at most 3\n  - free of K_4 subgraphs"
        );
    }
}
