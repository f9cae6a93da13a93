//! Matchings, vertex covers, and the exact and approximate solvers used as
//! oracles.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical, Bipartition, Edge, Graph, Vertex};
use crate::rng::SeededRng;

const NONE: usize = usize::MAX;

/// Default component-size cap of the brute-force oracles.
pub const DEFAULT_ORACLE_CAP: usize = 32;

/// Cap on vertices per connected component for the brute-force oracles.
/// `EDCS_ORACLE_CAP` overrides the default; values above 128 are clamped.
pub fn oracle_cap() -> usize {
    std::env::var("EDCS_ORACLE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
        .min(128)
}

/// A set of edges; use [`is_matching`] to check it against a host.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// Canonicalizes, sorts and deduplicates; does not check disjointness.
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(a, b)| canonical(a, b)).collect();
        edges.sort_unstable();
        edges.dedup();
        Self { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `V(M)`, sorted.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Mask of matched vertices over `0..n`.
    pub fn matched_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &(u, v) in &self.edges {
            mask[u] = true;
            mask[v] = true;
        }
        mask
    }

    pub fn union(&self, other: &Matching) -> Matching {
        Matching::new(self.edges.iter().chain(other.edges.iter()).copied())
    }
}

/// A vertex set; use [`is_cover`] to check it against a host.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCover {
    vertices: Vec<Vertex>,
}

impl VertexCover {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self {
            vertices: (0..mask.len()).filter(|&v| mask[v]).collect(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.vertices {
            if v < n {
                m[v] = true;
            }
        }
        m
    }

    pub fn union(&self, other: &VertexCover) -> VertexCover {
        VertexCover::new(self.vertices.iter().chain(other.vertices.iter()).copied())
    }
}

/// True iff every edge of `m` is a host edge and no two share a vertex.
pub fn is_matching(g: &Graph, m: &Matching) -> bool {
    let mut used = vec![false; g.n()];
    for &(u, v) in m.edges() {
        if v >= g.n() || !g.has_edge(u, v) || used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

/// True iff every host edge has an endpoint in `c`.
pub fn is_cover(g: &Graph, c: &VertexCover) -> bool {
    let mask = c.mask(g.n());
    g.edges().iter().all(|&(u, v)| mask[u] || mask[v])
}

/// True iff a matching no larger than `|c| / α` is certified: `α·|m| ≥ |c|`.
pub fn check_duality(m: &Matching, c: &VertexCover, alpha: f64) -> bool {
    alpha * m.len() as f64 >= c.len() as f64
}

/// `γ·Δ·|V_high| / (2(Δ + 1))`.
pub fn vizing_lower_bound(delta: usize, gamma: f64, v_high: usize) -> f64 {
    if v_high == 0 {
        return 0.0;
    }
    gamma * delta as f64 * v_high as f64 / (2.0 * (delta as f64 + 1.0))
}

/// Order in which [`greedy_maximal_matching`] scans edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Sorted edge order.
    Natural,
    /// A seeded uniform permutation.
    Shuffled(u64),
    /// An explicit permutation of the host edges.
    Explicit(Vec<Edge>),
}

/// Scans edges in `order` and keeps every edge whose endpoints are both free.
pub fn greedy_maximal_matching(g: &Graph, order: &EdgeOrder) -> Result<Matching> {
    let ids: Vec<usize> = match order {
        EdgeOrder::Natural => (0..g.m()).collect(),
        EdgeOrder::Shuffled(seed) => {
            let mut ids: Vec<usize> = (0..g.m()).collect();
            ids.shuffle(&mut SeededRng::new(*seed));
            ids
        }
        EdgeOrder::Explicit(edges) => {
            if edges.len() != g.m() {
                return Err(Error::BadEdgeOrder(format!(
                    "{} edges given, host has {}",
                    edges.len(),
                    g.m()
                )));
            }
            let mut seen = vec![false; g.m()];
            let mut ids = Vec::with_capacity(edges.len());
            for &(a, b) in edges {
                let id = g
                    .edge_id(a, b)
                    .ok_or_else(|| Error::BadEdgeOrder(format!("({a}, {b}) not in host")))?;
                if std::mem::replace(&mut seen[id], true) {
                    return Err(Error::BadEdgeOrder(format!("({a}, {b}) repeated")));
                }
                ids.push(id);
            }
            ids
        }
    };
    Ok(greedy_in_order(g, ids))
}

pub(crate) fn greedy_in_order(g: &Graph, ids: impl IntoIterator<Item = usize>) -> Matching {
    let mut used = vec![false; g.n()];
    let mut out = Vec::new();
    for id in ids {
        let (u, v) = g.edge(id);
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            out.push((u, v));
        }
    }
    Matching::new(out)
}

/// Maximum matching of a bipartite graph.
pub fn hopcroft_karp(g: &Graph, bip: &Bipartition) -> Result<Matching> {
    bip.check(g)?;
    let mate = hk_mates(g, bip);
    Ok(mates_to_matching(&mate, bip))
}

fn mates_to_matching(mate: &[usize], bip: &Bipartition) -> Matching {
    Matching::new(
        (0..mate.len())
            .filter(|&u| !bip.is_right(u) && mate[u] != NONE)
            .map(|u| (u, mate[u])),
    )
}

fn hk_mates(g: &Graph, bip: &Bipartition) -> Vec<usize> {
    let n = g.n();
    let left: Vec<Vertex> = (0..n)
        .filter(|&v| !bip.is_right(v) && g.degree(v) > 0)
        .collect();
    let mut mate = vec![NONE; n];
    let mut dist = vec![u32::MAX; n];
    let mut iter = vec![0usize; n];
    let mut queue = VecDeque::new();

    // Greedy warm start.
    for &u in &left {
        if let Some(w) = g.neighbors(u).find(|&w| mate[w] == NONE) {
            mate[u] = w;
            mate[w] = u;
        }
    }

    loop {
        queue.clear();
        for &u in &left {
            if mate[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x) {
                let w = mate[y];
                if w == NONE {
                    found = true;
                } else if dist[w] == u32::MAX {
                    dist[w] = dist[x] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }

        for &u in &left {
            iter[u] = 0;
        }
        let mut stack: Vec<Vertex> = Vec::new();
        for &root in &left {
            if mate[root] != NONE {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&x) = stack.last() {
                let adj = g.incident(x);
                if iter[x] == adj.len() {
                    dist[x] = u32::MAX;
                    stack.pop();
                    continue;
                }
                let y = adj[iter[x]].0;
                iter[x] += 1;
                let w = mate[y];
                if w == NONE {
                    let mut free = y;
                    for &xx in stack.iter().rev() {
                        let prev = mate[xx];
                        mate[xx] = free;
                        mate[free] = xx;
                        free = prev;
                    }
                    break;
                } else if dist[w] != u32::MAX && dist[w] == dist[x] + 1 {
                    stack.push(w);
                }
            }
        }
    }
    mate
}

/// Minimum vertex cover of a bipartite graph via König's theorem.
pub fn bipartite_min_vertex_cover(g: &Graph, bip: &Bipartition) -> Result<VertexCover> {
    bip.check(g)?;
    let mate = hk_mates(g, bip);
    // Z = vertices reachable from free left vertices by alternating paths.
    let mut reached = vec![false; g.n()];
    let mut queue = VecDeque::new();
    for u in 0..g.n() {
        if !bip.is_right(u) && mate[u] == NONE {
            reached[u] = true;
            queue.push_back(u);
        }
    }
    while let Some(x) = queue.pop_front() {
        for y in g.neighbors(x) {
            if reached[y] {
                continue;
            }
            reached[y] = true;
            let w = mate[y];
            if w != NONE && !reached[w] {
                reached[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok(VertexCover::new((0..g.n()).filter(|&v| {
        g.degree(v) > 0 && (bip.is_right(v) == reached[v])
    })))
}

/// Local relabelling of one connected component into bitmasks.
struct Component {
    verts: Vec<Vertex>,
    adj: Vec<u128>,
}

fn components_for_oracle(g: &Graph) -> Result<Vec<Component>> {
    let cap = oracle_cap();
    let mut out = Vec::new();
    let mut local = vec![NONE; g.n()];
    for verts in g.components() {
        if verts.len() > cap {
            return Err(Error::OracleTooLarge {
                vertices: verts.len(),
                cap,
            });
        }
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| g.neighbors(v).fold(0u128, |acc, w| acc | 1u128 << local[w]))
            .collect();
        out.push(Component { verts, adj });
    }
    Ok(out)
}

/// Exact maximum matching of one component by memoized branching.
///
/// A non-isolated vertex is covered by some maximum matching, so branching
/// only over its partners is complete.
fn mm_component(c: &Component) -> Vec<(usize, usize)> {
    fn solve(
        mask: u128,
        adj: &[u128],
        memo: &mut HashMap<u128, (u32, u32, u32)>,
    ) -> u32 {
        // Drop vertices with no neighbor inside the mask.
        let mut mask = mask;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if adj[v] & mask == 0 {
                mask &= !(1u128 << v);
            }
        }
        if mask == 0 {
            return 0;
        }
        if let Some(&(best, _, _)) = memo.get(&mask) {
            return best;
        }
        let ceiling = mask.count_ones() / 2;
        // Branch on the vertex with fewest neighbors, ties to lowest id.
        let mut v = NONE;
        let mut v_deg = u32::MAX;
        let mut bits = mask;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let d = (adj[x] & mask).count_ones();
            if d < v_deg {
                v = x;
                v_deg = d;
            }
        }
        let mut best = (0u32, v as u32, u32::MAX);
        let mut nbrs = adj[v] & mask;
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let rest = mask & !(1u128 << v) & !(1u128 << w);
            let val = 1 + solve(rest, adj, memo);
            if val > best.0 {
                best = (val, v as u32, w as u32);
                if val == ceiling {
                    break;
                }
            }
        }
        memo.insert(mask, best);
        best.0
    }

    let full = if c.verts.len() == 128 {
        u128::MAX
    } else {
        (1u128 << c.verts.len()) - 1
    };
    let mut memo = HashMap::new();
    solve(full, &c.adj, &mut memo);

    // Replay the memoized choices.
    let mut pairs = Vec::new();
    let mut mask = full;
    loop {
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if c.adj[v] & mask == 0 {
                mask &= !(1u128 << v);
            }
        }
        match memo.get(&mask) {
            Some(&(val, v, w)) if val > 0 => {
                pairs.push((v as usize, w as usize));
                mask &= !(1u128 << v) & !(1u128 << w);
            }
            _ => break,
        }
    }
    pairs
}

/// Maximum matching of a general graph by exhaustive search over each
/// connected component. Fails if a component exceeds [`oracle_cap`].
pub fn exact_mm_bruteforce_matching(g: &Graph) -> Result<Matching> {
    let comps = components_for_oracle(g)?;
    let mut edges = Vec::new();
    for c in &comps {
        for (a, b) in mm_component(c) {
            edges.push((c.verts[a], c.verts[b]));
        }
    }
    Ok(Matching::new(edges))
}

/// `MM(g)` by exhaustive search; see [`exact_mm_bruteforce_matching`].
pub fn exact_mm_bruteforce(g: &Graph) -> Result<usize> {
    Ok(exact_mm_bruteforce_matching(g)?.len())
}

/// Minimum vertex cover of one component by branch and bound.
fn vc_component(c: &Component) -> u128 {
    fn greedy_matching_size(mask: u128, adj: &[u128]) -> u32 {
        let mut free = mask;
        let mut size = 0;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if free & (1u128 << v) == 0 {
                continue;
            }
            let cand = adj[v] & free;
            if cand != 0 {
                let w = cand.trailing_zeros() as usize;
                free &= !(1u128 << v) & !(1u128 << w);
                size += 1;
            }
        }
        size
    }

    // `mask` = vertices still undecided; edges inside it are uncovered.
    fn go(mask: u128, chosen: u128, adj: &[u128], best: &mut (u32, u128)) {
        let mut mask = mask;
        let mut chosen = chosen;
        // Reductions: drop isolated vertices, take the neighbor of a leaf.
        loop {
            let mut changed = false;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if mask & (1u128 << v) == 0 {
                    continue;
                }
                let nb = adj[v] & mask;
                match nb.count_ones() {
                    0 => {
                        mask &= !(1u128 << v);
                        changed = true;
                    }
                    1 => {
                        chosen |= nb;
                        mask &= !nb & !(1u128 << v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let taken = chosen.count_ones();
        if mask == 0 {
            if taken < best.0 {
                *best = (taken, chosen);
            }
            return;
        }
        if taken + greedy_matching_size(mask, adj) >= best.0 {
            return;
        }
        // Branch on a maximum-degree vertex: take it, or take all its neighbors.
        let mut v = NONE;
        let mut v_deg = 0;
        let mut bits = mask;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let d = (adj[x] & mask).count_ones();
            if d > v_deg {
                v = x;
                v_deg = d;
            }
        }
        go(mask & !(1u128 << v), chosen | (1u128 << v), adj, best);
        let nb = adj[v] & mask;
        go(mask & !nb & !(1u128 << v), chosen | nb, adj, best);
    }

    let full = if c.verts.len() == 128 {
        u128::MAX
    } else {
        (1u128 << c.verts.len()) - 1
    };
    let mut best = (c.verts.len() as u32, full);
    go(full, 0, &c.adj, &mut best);
    best.1
}

/// Minimum vertex cover of a general graph by branch and bound over each
/// connected component. Fails if a component exceeds [`oracle_cap`].
pub fn exact_vc_bruteforce(g: &Graph) -> Result<VertexCover> {
    let comps = components_for_oracle(g)?;
    let mut out = Vec::new();
    for c in &comps {
        let chosen = vc_component(c);
        out.extend((0..c.verts.len()).filter(|&i| chosen >> i & 1 == 1).map(|i| c.verts[i]));
    }
    Ok(VertexCover::new(out))
}

/// Maximum matching: Hopcroft–Karp when `g` is two-colorable, otherwise the
/// capped brute-force oracle.
pub fn maximum_matching(g: &Graph) -> Result<Matching> {
    match Bipartition::two_color(g) {
        Some(bip) => Ok(mates_to_matching(&hk_mates(g, &bip), &bip)),
        None => exact_mm_bruteforce_matching(g),
    }
}

/// Minimum vertex cover: König when `g` is two-colorable, otherwise the
/// capped brute-force oracle.
pub fn minimum_vertex_cover(g: &Graph) -> Result<VertexCover> {
    match Bipartition::two_color(g) {
        Some(bip) => bipartite_min_vertex_cover(g, &bip),
        None => exact_vc_bruteforce(g),
    }
}

/// Matching oracle used by the extraction and composition routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchingSolver {
    /// [`maximum_matching`].
    Exact,
    /// Greedy maximal matching in natural order; a 2-approximation.
    Greedy,
}

impl MatchingSolver {
    pub fn solve(self, g: &Graph) -> Result<Matching> {
        match self {
            MatchingSolver::Exact => maximum_matching(g),
            MatchingSolver::Greedy => Ok(greedy_in_order(g, 0..g.m())),
        }
    }

    pub fn is_exact(self) -> bool {
        self == MatchingSolver::Exact
    }
}

/// Cover strategy used by the extraction and composition routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverStrategy {
    /// [`minimum_vertex_cover`].
    Exact,
    /// Both endpoints of a greedy maximal matching; a 2-approximation.
    MatchedVertices,
}

impl CoverStrategy {
    pub fn solve(self, g: &Graph) -> Result<VertexCover> {
        match self {
            CoverStrategy::Exact => minimum_vertex_cover(g),
            CoverStrategy::MatchedVertices => {
                Ok(VertexCover::new(greedy_in_order(g, 0..g.m()).vertices()))
            }
        }
    }
}
