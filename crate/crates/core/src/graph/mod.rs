//! Simple undirected graphs and the structural queries the partition engine
//! relies on.
//!
//! Vertices are `0..n`. Adjacency lists are kept sorted so every traversal in
//! the crate visits vertices in a reproducible order.

mod generate;
mod io;

pub use generate::{generate, GraphSpec};
pub use io::{emit_graph, load_graph, Format};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Largest clique size [`has_clique`] will search for.
pub const MAX_CLIQUE_QUERY: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vertex set does not induce a connected subgraph")]
    NotConnected,
    #[error("size guard exceeded: {what} (limit {limit})")]
    SizeGuardExceeded { what: String, limit: usize },
    #[error("graph generation failed: {0}")]
    GenerationFailed(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// An immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges are collapsed.
    ///
    /// Panics on a loop or an endpoint `>= n`; use [`load_graph`] for
    /// untrusted input.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            assert_ne!(u, v, "loop at vertex {u}");
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let adjacency: Vec<Vec<usize>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let m = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adjacency, m }
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_edges(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet((0..self.n()).collect())
    }

    /// Δ(G); zero for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    fn mask(&self, s: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for &v in s.iter() {
            mask[v] = true;
        }
        mask
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn smallest(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    pub fn with(&self, v: usize) -> VertexSet {
        let mut out = self.clone();
        if let Err(pos) = out.0.binary_search(&v) {
            out.0.insert(pos, v);
        }
        out
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Connected components of `G[s]`, ordered by their minimum vertex.
pub fn induced_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let inside = g.mask(s);
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for &root in s.iter() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &u in g.neighbors(v) {
                if inside[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        out.push(VertexSet::from(comp));
    }
    out
}

/// `|N(v) ∩ s|`. `v` need not belong to `s`.
pub fn degree_in(g: &Graph, s: &VertexSet, v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&u| s.contains(u)).count()
}

/// Vertices of `s` whose degree inside `G[s]` is exactly `r`.
pub fn degree_r_vertices(g: &Graph, s: &VertexSet, r: usize) -> VertexSet {
    s.iter()
        .copied()
        .filter(|&v| degree_in(g, s, v) == r)
        .collect()
}

pub fn is_connected(g: &Graph, s: &VertexSet) -> bool {
    induced_components(g, s).len() <= 1
}

/// Vertices `v` of `s` such that `G[s - v]` stays connected.
///
/// Articulation points are found with an iterative lowpoint DFS.
pub fn non_cut_vertices(g: &Graph, s: &VertexSet) -> Result<VertexSet, GraphError> {
    let Some(root) = s.smallest() else {
        return Ok(VertexSet::new());
    };
    let inside = g.mask(s);
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![UNSEEN; n];
    let mut cut = vec![false; n];
    let mut root_children = 0usize;
    let mut time = 0usize;

    // Stack frames hold (vertex, index of next neighbor to inspect).
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    disc[root] = time;
    low[root] = time;
    time += 1;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        let nb = g.neighbors(v);
        if top.1 < nb.len() {
            let u = nb[top.1];
            top.1 += 1;
            if !inside[u] {
                continue;
            }
            if disc[u] == UNSEEN {
                parent[u] = v;
                disc[u] = time;
                low[u] = time;
                time += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((u, 0));
            } else if u != parent[v] {
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            let p = parent[v];
            if p != UNSEEN {
                low[p] = low[p].min(low[v]);
                if p != root && low[v] >= disc[p] {
                    cut[p] = true;
                }
            }
        }
    }
    if s.iter().any(|&v| disc[v] == UNSEEN) {
        return Err(GraphError::NotConnected);
    }
    cut[root] = root_children > 1;
    Ok(s.iter().copied().filter(|&v| !cut[v]).collect())
}

/// A min-degree peeling order of `G[s]` and the largest back-degree seen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrder {
    /// Vertices in the order they were removed.
    pub order: Vec<usize>,
    pub degeneracy: usize,
}

/// Repeatedly removes a minimum-degree vertex of `G[s]` (lowest id on ties).
pub fn degeneracy_order(g: &Graph, s: &VertexSet) -> DegeneracyOrder {
    let inside = g.mask(s);
    let mut deg = vec![0usize; g.n()];
    let mut queue = BTreeSet::new();
    for &v in s.iter() {
        deg[v] = g.neighbors(v).iter().filter(|&&u| inside[u]).count();
        queue.insert((deg[v], v));
    }
    let mut removed = vec![false; g.n()];
    let mut order = Vec::with_capacity(s.len());
    let mut degeneracy = 0;
    while let Some((d, v)) = queue.pop_first() {
        degeneracy = degeneracy.max(d);
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if inside[u] && !removed[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    DegeneracyOrder { order, degeneracy }
}

/// Whether `G[s]` is a complete graph. The empty set counts as complete.
pub fn is_complete(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|&v| degree_in(g, s, v) + 1 == s.len())
}

/// Whether every vertex of `G[s]` has degree exactly `r` inside `s`.
pub fn is_regular(g: &Graph, s: &VertexSet, r: usize) -> bool {
    s.iter().all(|&v| degree_in(g, s, v) == r)
}

/// Whether `g` contains a clique on `size` vertices.
pub fn has_clique(g: &Graph, size: usize) -> Result<bool, GraphError> {
    if size > MAX_CLIQUE_QUERY {
        return Err(GraphError::SizeGuardExceeded {
            what: format!("clique search for size {size}"),
            limit: MAX_CLIQUE_QUERY,
        });
    }
    if size <= 1 {
        return Ok(size == 0 || g.n() > 0);
    }

    fn extend(g: &Graph, candidates: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if candidates.len() < need {
            return false;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if candidates.len() - i < need {
                break;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            if extend(g, &next, need - 1) {
                return true;
            }
        }
        false
    }

    Ok((0..g.n()).any(|v| {
        if g.degree(v) + 1 < size {
            return false;
        }
        let higher: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        extend(g, &higher, size - 1)
    }))
}
