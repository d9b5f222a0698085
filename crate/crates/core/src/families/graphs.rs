//! Families over a fixed graph: either a structured one or a random G(n, m) instance.

use super::util::*;
use super::{param, BuiltModel, DataKind, Family, ParamSpec, Params, VarData, WitnessError, WitnessMap};
use crate::model::{BoolLit, Cmp, Constraint, ConstraintModel, Domain};
use crate::rng;

pub struct GracefulGraph;

impl GracefulGraph {
    /// Edges of p copies of K_k joined copy to copy along matching vertices.
    fn edges(p: &Params) -> Vec<[usize; 2]> {
        let (k, copies) = (pu(p, "k"), pu(p, "p"));
        let mut e = Vec::new();
        for g in 0..copies {
            for i in 0..k {
                for j in i + 1..k {
                    e.push([g * k + i, g * k + j]);
                }
            }
            if g + 1 < copies {
                for i in 0..k {
                    e.push([g * k + i, (g + 1) * k + i]);
                }
            }
        }
        e
    }
}

impl Family for GracefulGraph {
    fn name(&self) -> &'static str {
        "graceful_graph"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("k", 1, 8, 3), param("p", 1, 8, 2)];
        P
    }

    fn validate(&self, p: &Params) -> Result<(), String> {
        if pv(p, "k") * pv(p, "p") < 2 {
            return Err("the graph needs at least two vertices".into());
        }
        Ok(())
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "k") * pu(p, "p"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let edges = Self::edges(p);
        in_range(w, 0, edges.len() as i64)?;
        if !all_distinct(w) {
            return Err(violated("vertex labels repeat"));
        }
        let d: Vec<i64> = edges.iter().map(|e| (w[e[0]] - w[e[1]]).abs()).collect();
        if !all_distinct(&d) {
            return Err(violated("edge labels repeat"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let edges = Self::edges(p);
        let m_edges = edges.len() as i64;
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", self.witness_len(p).unwrap(), Domain::range(0, m_edges));
        m.post(Constraint::AllDifferent(x.clone()));
        let mut d = Vec::new();
        for (i, e) in edges.iter().enumerate() {
            let v = m.int_var(format!("d[{i}]"), 1, m_edges.max(1));
            post_binary_fn(&mut m, x[e[0]], x[e[1]], v, |a, b| (a - b).abs());
            d.push(v);
        }
        m.post(Constraint::AllDifferent(d));
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let (k, copies) = (pv(p, "k"), pv(p, "p"));
        vec![
            ("gname", format!("K_{k} x P_{copies}")),
            ("kname", format!("K_{k}")),
            ("k", s(k)),
            ("k_minus_1", s(k - 1)),
            ("p", s(copies)),
            ("p_minus_1", s(copies - 1)),
            ("vertices", s(k * copies)),
            ("m", s(Self::edges(p).len())),
        ]
    }
}

const RANDOM_GRAPH_PARAMS: &[ParamSpec] = &[param("n", 2, 80, 20), param("k", 1, 80, 3), param("density_pct", 0, 100, 30)];

fn sample_edges(family: &str, p: &Params, seed: u64) -> VarData {
    let mut r = rng::stream(seed, family, 0);
    VarData {
        edges: Some(random_graph(pu(p, "n"), pv(p, "density_pct"), &mut r)),
        clues: None,
    }
}

fn edge_vars(p: &Params, data: &VarData) -> Vec<(&'static str, String)> {
    let (n, k) = (pv(p, "n"), pv(p, "k"));
    let edges = data.edges.clone().unwrap_or_default();
    vec![
        ("n", s(n)),
        ("n_minus_1", s(n - 1)),
        ("k", s(k)),
        ("k_minus_1", s(k - 1)),
        ("edge_count", s(edges.len())),
        ("edges", render_edges(&edges)),
    ]
}

macro_rules! random_graph_family {
    ($ty:ident) => {
        impl $ty {
            fn base_params() -> &'static [ParamSpec] {
                RANDOM_GRAPH_PARAMS
            }
        }
    };
}

pub struct GraphKColoring;
random_graph_family!(GraphKColoring);

impl Family for GraphKColoring {
    fn name(&self) -> &'static str {
        "graph_k_coloring"
    }

    fn params(&self) -> &'static [ParamSpec] {
        Self::base_params()
    }

    fn data_kind(&self) -> DataKind {
        DataKind::Edges
    }

    fn sample_data(&self, p: &Params, seed: u64) -> Option<VarData> {
        Some(sample_edges(self.name(), p, seed))
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        in_range(w, 0, pv(p, "k") - 1)?;
        for e in data.edges.iter().flatten() {
            if w[e[0]] == w[e[1]] {
                return Err(violated(format!("edge ({}, {}) is monochromatic", e[0], e[1])));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, data: &VarData) -> Option<BuiltModel> {
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", pu(p, "n"), Domain::range(0, pv(p, "k") - 1));
        for e in data.edges.iter().flatten() {
            m.post(Constraint::NotEqual {
                a: x[e[0]],
                b: x[e[1]],
                offset: 0,
            });
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, data: &VarData) -> Vec<(&'static str, String)> {
        edge_vars(p, data)
    }
}

pub struct HamiltonCycle;

impl Family for HamiltonCycle {
    fn name(&self) -> &'static str {
        "hamilton_cycle"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 3, 60, 12), param("density_pct", 0, 100, 30)];
        P
    }

    fn data_kind(&self) -> DataKind {
        DataKind::Edges
    }

    fn sample_data(&self, p: &Params, seed: u64) -> Option<VarData> {
        Some(sample_edges(self.name(), p, seed))
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 0, n as i64 - 1)?;
        if !all_distinct(w) {
            return Err(violated("vertices repeat"));
        }
        if w[0] != 0 {
            return Err(violated("the cycle must start at vertex 0"));
        }
        let g = data_graph(n, data);
        for i in 0..n {
            let (a, b) = (w[i] as usize, w[(i + 1) % n] as usize);
            if !g.has_edge(a, b) {
                return Err(violated(format!("({a}, {b}) is not an edge")));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, data: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let g = data_graph(n, data);
        let mut m = ConstraintModel::new();
        let mut x = vec![m.add_var("x[0]", Domain::set([0]))];
        for i in 1..n {
            x.push(m.int_var(format!("x[{i}]"), 0, n as i64 - 1));
        }
        m.post(Constraint::AllDifferent(x.clone()));
        for i in 0..n {
            let next = x[(i + 1) % n];
            for u in 0..n {
                let mut cl = vec![BoolLit::is_not(x[i], u as i64)];
                cl.extend(g.neighbors(u).map(|v| BoolLit::is(next, v as i64)));
                m.post(Constraint::Clause(cl));
            }
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, data: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        let edges = data.edges.clone().unwrap_or_default();
        vec![
            ("n", s(n)),
            ("n_minus_1", s(n - 1)),
            ("edge_count", s(edges.len())),
            ("edges", render_edges(&edges)),
        ]
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Selection {
    Clique,
    Independent,
    Cover,
}

impl Selection {
    fn check(self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        let k = pv(p, "k");
        in_range(w, 0, 1)?;
        let g = data_graph(n, data);
        let size: i64 = w.iter().sum();
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (w[u] == 1, w[v] == 1);
                let bad = match self {
                    Selection::Clique => a && b && !g.has_edge(u, v),
                    Selection::Independent => a && b && g.has_edge(u, v),
                    Selection::Cover => !a && !b && g.has_edge(u, v),
                };
                if bad {
                    return Err(violated(format!("pair ({u}, {v}) breaks the selection")));
                }
            }
        }
        let ok = match self {
            Selection::Cover => size <= k,
            _ => size >= k,
        };
        if !ok {
            return Err(violated(format!("selection has {size} vertices")));
        }
        Ok(())
    }

    fn build(self, p: &Params, data: &VarData) -> BuiltModel {
        let n = pu(p, "n");
        let g = data_graph(n, data);
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n, Domain::range(0, 1));
        for u in 0..n {
            for v in u + 1..n {
                let lits = match self {
                    Selection::Clique if !g.has_edge(u, v) => Some(0),
                    Selection::Independent if g.has_edge(u, v) => Some(0),
                    Selection::Cover if g.has_edge(u, v) => Some(1),
                    _ => None,
                };
                if let Some(val) = lits {
                    m.post(Constraint::Clause(vec![BoolLit::is(x[u], val), BoolLit::is(x[v], val)]));
                }
            }
        }
        m.post(Constraint::LinearSum {
            terms: x.iter().map(|&v| (1, v)).collect(),
            cmp: if self == Selection::Cover { Cmp::Le } else { Cmp::Ge },
            bound: pv(p, "k"),
        });
        BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        }
    }
}

macro_rules! selection_family {
    ($ty:ident, $name:literal, $sel:expr) => {
        pub struct $ty;
        random_graph_family!($ty);

        impl Family for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn params(&self) -> &'static [ParamSpec] {
                Self::base_params()
            }

            fn data_kind(&self) -> DataKind {
                DataKind::Edges
            }

            fn sample_data(&self, p: &Params, seed: u64) -> Option<VarData> {
                Some(sample_edges(self.name(), p, seed))
            }

            fn witness_len(&self, p: &Params) -> Option<usize> {
                Some(pu(p, "n"))
            }

            fn check(&self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
                $sel.check(p, data, w)
            }

            fn build(&self, p: &Params, data: &VarData) -> Option<BuiltModel> {
                Some($sel.build(p, data))
            }

            fn prompt_vars(&self, p: &Params, data: &VarData) -> Vec<(&'static str, String)> {
                edge_vars(p, data)
            }
        }
    };
}

selection_family!(MaxClique, "max_clique", Selection::Clique);
selection_family!(MaxIndependentSet, "max_independent_set", Selection::Independent);
selection_family!(VertexCover, "vertex_cover", Selection::Cover);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graceful_edge_count() {
        let p: Params = [("k".to_string(), 3), ("p".to_string(), 2)].into_iter().collect();
        // two triangles plus a 3-edge matching
        assert_eq!(GracefulGraph::edges(&p).len(), 9);
    }
}
