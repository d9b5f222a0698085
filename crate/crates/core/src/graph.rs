//! Simple undirected graphs and the exact structural predicates used by graph families.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    OutOfRange(i64, i64, usize),
    #[error("edge ({0}, {1}) is not ordered u < v")]
    Unordered(i64, i64),
    #[error("edge ({0}, {1}) appears twice")]
    Duplicate(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from a strict edge list: 0 <= u < v < n, no repeats.
    pub fn from_edges(n: usize, edges: &[(i64, i64)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u < 0 || v < 0 || u as usize >= n || v as usize >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            if u >= v {
                return Err(GraphError::Unordered(u, v));
            }
            if g.adj[u as usize][v as usize] {
                return Err(GraphError::Duplicate(u, v));
            }
            g.add_edge(u as usize, v as usize);
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u][v] = true;
        self.adj[v][u] = true;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adj[u][v])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].iter().filter(|&&b| b).count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Edges as ordered pairs, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u][v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// A clique of exactly `k` vertices, if one exists.
    pub fn find_clique(&self, k: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let mut cur = Vec::new();
        let cands: Vec<usize> = (0..self.n).collect();
        self.extend_clique(&mut cur, &cands, k).then_some(cur)
    }

    fn extend_clique(&self, cur: &mut Vec<usize>, cands: &[usize], k: usize) -> bool {
        if cur.len() == k {
            return true;
        }
        if cur.len() + cands.len() < k {
            return false;
        }
        for (i, &v) in cands.iter().enumerate() {
            if cur.len() + cands.len() - i < k {
                return false;
            }
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.adj[v][w])
                .collect();
            cur.push(v);
            if self.extend_clique(cur, &next, k) {
                return true;
            }
            cur.pop();
        }
        false
    }

    pub fn clique_number(&self) -> usize {
        let mut k = 0;
        while k < self.n && self.find_clique(k + 1).is_some() {
            k += 1;
        }
        k
    }

    pub fn find_independent_set(&self, k: usize) -> Option<Vec<usize>> {
        self.complement().find_clique(k)
    }

    pub fn independence_number(&self) -> usize {
        self.complement().clique_number()
    }

    /// A proper coloring with colors 0..k, if one exists.
    pub fn find_coloring(&self, k: usize) -> Option<Vec<usize>> {
        if self.n == 0 {
            return Some(Vec::new());
        }
        if k == 0 {
            return None;
        }
        // color in decreasing-degree order for earlier pruning
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut colors = vec![usize::MAX; self.n];
        self.color_from(&order, 0, k, 0, &mut colors)
            .then_some(colors)
    }

    fn color_from(&self, order: &[usize], i: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // a fresh color is interchangeable with any other fresh color
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if self.neighbors(v).any(|w| colors[w] == c) {
                continue;
            }
            colors[v] = c;
            if self.color_from(order, i + 1, k, used.max(c + 1), colors) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }

    pub fn chromatic_number(&self) -> usize {
        (0..=self.n).find(|&k| self.find_coloring(k).is_some()).unwrap()
    }

    /// Component label per vertex among vertices not in `removed`.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Option<usize>> {
        let mut label = vec![None; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if removed[s] || label[s].is_some() {
                continue;
            }
            let mut queue = VecDeque::from([s]);
            label[s] = Some(next);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if !removed[w] && label[w].is_none() {
                        label[w] = Some(next);
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        let labels = self.components_without(&vec![false; self.n]);
        labels.iter().all(|l| *l == Some(0))
    }

    /// Minimum vertex cut separating non-adjacent `s` and `t`, via unit-capacity
    /// max-flow on the vertex-split graph.
    pub fn min_vertex_cut(&self, s: usize, t: usize) -> Vec<usize> {
        // node 2v = v_in, 2v+1 = v_out
        let m = 2 * self.n;
        let big = self.n as i32 + 1;
        let mut cap = vec![vec![0i32; m]; m];
        for v in 0..self.n {
            cap[2 * v][2 * v + 1] = if v == s || v == t { big } else { 1 };
            for w in self.neighbors(v) {
                cap[2 * v + 1][2 * w] = big;
            }
        }
        let (src, dst) = (2 * s + 1, 2 * t);
        loop {
            let mut parent = vec![usize::MAX; m];
            parent[src] = src;
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                if u == dst {
                    break;
                }
                for w in 0..m {
                    if parent[w] == usize::MAX && cap[u][w] > 0 {
                        parent[w] = u;
                        queue.push_back(w);
                    }
                }
            }
            if parent[dst] == usize::MAX {
                // residual reachability gives the cut: split vertices with in reachable, out not
                return (0..self.n)
                    .filter(|&v| parent[2 * v] != usize::MAX && parent[2 * v + 1] == usize::MAX)
                    .collect();
            }
            let mut w = dst;
            while w != src {
                let u = parent[w];
                cap[u][w] -= 1;
                cap[w][u] += 1;
                w = u;
            }
        }
    }

    /// A smallest separating vertex set, or None for complete graphs.
    pub fn min_separator(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for s in 0..self.n {
            for t in s + 1..self.n {
                if self.adj[s][t] {
                    continue;
                }
                let cut = self.min_vertex_cut(s, t);
                if best.as_ref().is_none_or(|b| cut.len() < b.len()) {
                    best = Some(cut);
                }
            }
        }
        best
    }

    /// Vertex connectivity; n-1 for complete graphs.
    pub fn vertex_connectivity(&self) -> usize {
        match self.min_separator() {
            Some(cut) => cut.len(),
            None => self.n.saturating_sub(1),
        }
    }

    /// A shortest cycle as a vertex sequence, if the graph has any cycle.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.as_ref().is_none_or(|b| len < b.len()) {
                            let path = |mut x: usize| {
                                let mut p = vec![x];
                                while x != s {
                                    x = parent[x];
                                    p.push(x);
                                }
                                p
                            };
                            let pu = path(u);
                            let pw = path(w);
                            // only a simple cycle when the two tree paths meet at s alone
                            let shared = pu.iter().filter(|x| pw.contains(x)).count();
                            if shared == 1 {
                                let mut cyc: Vec<usize> = pu.into_iter().rev().collect();
                                cyc.extend(pw.into_iter().take(dist[w]));
                                best = Some(cyc);
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Length of the shortest cycle; None for forests.
    pub fn girth(&self) -> Option<usize> {
        self.shortest_cycle().map(|c| c.len())
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_clique(3).is_none()
    }

    /// Triangle-free, and every non-edge closes a triangle.
    pub fn is_maximal_triangle_free(&self) -> bool {
        if !self.is_triangle_free() {
            return false;
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u][v] && !(0..self.n).any(|w| self.adj[u][w] && self.adj[v][w]) {
                    return false;
                }
            }
        }
        true
    }

    /// Every component is a clique of `size` vertices and there are exactly `count` of them.
    pub fn is_disjoint_cliques(&self, count: usize, size: usize) -> bool {
        let labels = self.components_without(&vec![false; self.n]);
        let ncomp = labels.iter().flatten().max().map_or(0, |m| m + 1);
        if ncomp != count {
            return false;
        }
        for c in 0..ncomp {
            let members: Vec<usize> = (0..self.n).filter(|&v| labels[v] == Some(c)).collect();
            if members.len() != size {
                return false;
            }
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if !self.adj[u][v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}
