//! Undirected simple graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;
/// Index into [`Graph::edges`].
pub type EdgeId = usize;
/// An unordered vertex pair stored canonically as `(min, max)`.
pub type Edge = (Vertex, Vertex);

/// Orders the endpoints of an edge.
#[inline]
pub fn canonical(a: Vertex, b: Vertex) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Immutable undirected simple graph.
///
/// Edges are kept sorted lexicographically, so an [`EdgeId`] is the rank of
/// the edge in that order and lookups are binary searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints. Endpoint order within a pair does not matter.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            list.push(canonical(a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    /// `edges` must be canonical, strictly increasing and in range.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut adj: Vec<Vec<(Vertex, EdgeId)>> =
            deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let max_degree = deg.iter().copied().max().unwrap_or(0);
        Self {
            n,
            edges,
            adj,
            max_degree,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Incident `(neighbor, edge id)` pairs of `v`.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn edge_id(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        self.edges.binary_search(&canonical(a, b)).ok()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_id(a, b).is_some()
    }

    /// Vertices with at least one incident edge.
    pub fn non_isolated(&self) -> usize {
        self.adj.iter().filter(|a| !a.is_empty()).count()
    }

    /// Spanning subgraph on the edges for which `keep` holds.
    pub fn filter_edges<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(EdgeId, Edge) -> bool,
    {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(id, &e)| keep(id, e))
            .map(|(_, &e)| e)
            .collect();
        Graph::from_sorted_unchecked(self.n, edges)
    }

    /// Spanning subgraph on a set of edge ids (any order, no repeats).
    pub fn from_edge_ids(&self, ids: &[EdgeId]) -> Graph {
        let mut edges: Vec<Edge> = ids.iter().map(|&id| self.edges[id]).collect();
        edges.sort_unstable();
        Graph::from_sorted_unchecked(self.n, edges)
    }

    /// Induced subgraph on the vertices marked in `keep`; ids are preserved.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        assert_eq!(keep.len(), self.n, "vertex mask has wrong length");
        self.filter_edges(|_, (u, v)| keep[u] && keep[v])
    }

    /// Spanning subgraph with every edge touching a marked vertex removed.
    pub fn remove_vertices(&self, removed: &[bool]) -> Graph {
        self.filter_edges(|_, (u, v)| !removed[u] && !removed[v])
    }

    /// Connected components restricted to non-isolated vertices.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] || self.adj[s].is_empty() {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Undirected multigraph: a support edge set with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Edge, u64)>,
    degree: Vec<u64>,
}

impl Multigraph {
    /// Merges `(edge, multiplicity)` pairs; repeated edges add up.
    /// Zero multiplicities are dropped.
    pub fn from_counts<I>(n: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Edge, u64)>,
    {
        let mut list: Vec<(Edge, u64)> = Vec::new();
        for ((a, b), c) in items {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if c > 0 {
                list.push((canonical(a, b), c));
            }
        }
        list.sort_unstable();
        let mut edges: Vec<(Edge, u64)> = Vec::with_capacity(list.len());
        for (e, c) in list {
            match edges.last_mut() {
                Some((last, total)) if *last == e => *total += c,
                _ => edges.push((e, c)),
            }
        }
        let mut degree = vec![0u64; n];
        for &((u, v), c) in &edges {
            degree[u] += c;
            degree[v] += c;
        }
        Ok(Self { n, edges, degree })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Support edges with their multiplicities, sorted.
    pub fn edges(&self) -> &[(Edge, u64)] {
        &self.edges
    }

    /// Degree counting multiplicity.
    pub fn degree(&self, v: Vertex) -> u64 {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degree
    }

    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> u64 {
        let e = canonical(a, b);
        self.edges
            .binary_search_by(|probe| probe.0.cmp(&e))
            .map(|i| self.edges[i].1)
            .unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|&(_, c)| c).sum()
    }

    /// The simple graph on the support ("parallel edges removed").
    pub fn dedup(&self) -> Graph {
        Graph::from_sorted_unchecked(self.n, self.edges.iter().map(|&(e, _)| e).collect())
    }
}

/// A two-coloring of the vertices; `true` marks the right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    right: Vec<bool>,
}

impl Bipartition {
    pub fn from_sides(right: Vec<bool>) -> Self {
        Self { right }
    }

    /// Vertices `0..n_left` on the left, the rest on the right.
    pub fn prefix(n_left: usize, n: usize) -> Self {
        Self {
            right: (0..n).map(|v| v >= n_left).collect(),
        }
    }

    /// BFS two-coloring; `None` if `g` has an odd cycle.
    pub fn two_color(g: &Graph) -> Option<Self> {
        let mut color: Vec<Option<bool>> = vec![None; g.n()];
        let mut queue = VecDeque::new();
        for s in 0..g.n() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for w in g.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Self {
            right: color.into_iter().map(|c| c.unwrap_or(false)).collect(),
        })
    }

    pub fn is_right(&self, v: Vertex) -> bool {
        self.right[v]
    }

    pub fn len(&self) -> usize {
        self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.right.is_empty()
    }

    /// Checks that every edge of `g` crosses the bipartition.
    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.right.len() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "bipartition covers {} vertices, graph has {}",
                self.right.len(),
                g.n()
            )));
        }
        match g.edges().iter().find(|&&(u, v)| self.right[u] == self.right[v]) {
            Some(&e) => Err(Error::NotBipartite(e)),
            None => Ok(()),
        }
    }
}
