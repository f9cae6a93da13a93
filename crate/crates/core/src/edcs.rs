//! Edge degree constrained subgraphs.
//!
//! `H ⊆ G` is an EDCS(G, β, β⁻) when
//! * (P1) every edge `(u, v)` of `H` has `deg_H(u) + deg_H(v) ≤ β`, and
//! * (P2) every edge `(u, v)` of `G ∖ H` has `deg_H(u) + deg_H(v) ≥ β⁻`.
//!
//! [`construct_edcs`] reaches such an `H` from any start by repeatedly
//! fixing a violating edge. Each fix raises the potential
//! `Φ = (β − ½)·Σ_v deg_H(v) − Σ_v deg_H(v)²` by at least 1, and
//! `Φ ≤ n·β²/4`, which bounds the number of fixes.

use std::collections::VecDeque;
use std::fmt;
use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, Vertex};
use crate::io;
use crate::matching::{CoverStrategy, Matching, MatchingSolver, VertexCover};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdcsParams {
    beta: u64,
    beta_minus: u64,
}

impl EdcsParams {
    /// Requires `β > β⁻ ≥ 0`.
    pub fn new(beta: u64, beta_minus: u64) -> Result<Self> {
        if beta == 0 || beta_minus >= beta {
            return Err(Error::InvalidParameter(format!(
                "need beta > beta_minus >= 0, got beta = {beta}, beta_minus = {beta_minus}"
            )));
        }
        Ok(Self { beta, beta_minus })
    }

    /// `β⁻ = ⌊(1 − λ)·β⌋`, clamped below `β`.
    pub fn from_lambda(beta: u64, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!("lambda {lambda} outside [0, 1]")));
        }
        let bm = ((1.0 - lambda) * beta as f64 + 1e-9).floor() as u64;
        Self::new(beta, bm.min(beta.saturating_sub(1)))
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn beta_minus(&self) -> u64 {
        self.beta_minus
    }

    /// `λ = 1 − β⁻/β`.
    pub fn lambda(&self) -> f64 {
        1.0 - self.beta_minus as f64 / self.beta as f64
    }

    /// Whether a vertex of this EDCS degree is in `V_high` (`deg ≥ β⁻/2`).
    pub fn is_high(&self, degree: u64) -> bool {
        2 * degree >= self.beta_minus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    P1,
    P2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub edge: Edge,
    pub property: Property,
    pub degree_sum: u64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} violated on ({}, {}) with degree sum {}",
            self.property, self.edge.0, self.edge.1, self.degree_sum
        )
    }
}

/// A subgraph `H` of a host graph, with cached degrees and parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edcs<'g> {
    host: &'g Graph,
    params: EdcsParams,
    in_h: Vec<bool>,
    deg: Vec<u64>,
    size: usize,
}

impl<'g> Edcs<'g> {
    /// Wraps an arbitrary edge subset of `host`; no EDCS property is checked.
    pub fn from_edges(
        host: &'g Graph,
        params: EdcsParams,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut in_h = vec![false; host.m()];
        for (a, b) in edges {
            let id = host.edge_id(a, b).ok_or(Error::NotHostEdge((a, b)))?;
            in_h[id] = true;
        }
        Ok(Self::from_mask(host, params, in_h))
    }

    fn from_mask(host: &'g Graph, params: EdcsParams, in_h: Vec<bool>) -> Self {
        let mut deg = vec![0u64; host.n()];
        let mut size = 0;
        for (id, &(u, v)) in host.edges().iter().enumerate() {
            if in_h[id] {
                deg[u] += 1;
                deg[v] += 1;
                size += 1;
            }
        }
        Self {
            host,
            params,
            in_h,
            deg,
            size,
        }
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn params(&self) -> EdcsParams {
        self.params
    }

    pub fn degree(&self, v: Vertex) -> u64 {
        self.deg[v]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.deg
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.in_h[id]
    }

    pub fn mask(&self) -> &[bool] {
        &self.in_h
    }

    /// `|H|`.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.host
            .edges()
            .iter()
            .zip(&self.in_h)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
            .collect()
    }

    /// `H` as a spanning subgraph of the host.
    pub fn subgraph(&self) -> Graph {
        self.host.filter_edges(|id, _| self.in_h[id])
    }

    /// Mask of `V_high = {v : 2·deg_H(v) ≥ β⁻}`.
    pub fn high_vertices(&self) -> Vec<bool> {
        self.deg.iter().map(|&d| self.params.is_high(d)).collect()
    }

    pub fn max_degree(&self) -> u64 {
        self.deg.iter().copied().max().unwrap_or(0)
    }
}

/// Checks P1 and P2 for an edge subset of `host` given its degrees.
pub fn check_properties<F>(
    host: &Graph,
    in_h: F,
    deg: &[u64],
    beta: u64,
    beta_minus: u64,
) -> Vec<Violation>
where
    F: Fn(EdgeId) -> bool,
{
    let mut out = Vec::new();
    for (id, &(u, v)) in host.edges().iter().enumerate() {
        let sum = deg[u] + deg[v];
        if in_h(id) {
            if sum > beta {
                out.push(Violation {
                    edge: (u, v),
                    property: Property::P1,
                    degree_sum: sum,
                });
            }
        } else if sum < beta_minus {
            out.push(Violation {
                edge: (u, v),
                property: Property::P2,
                degree_sum: sum,
            });
        }
    }
    out
}

/// All P1 and P2 violations of `e`, in host edge order.
pub fn validate_edcs(e: &Edcs<'_>) -> Vec<Violation> {
    check_properties(
        e.host,
        |id| e.in_h[id],
        &e.deg,
        e.params.beta,
        e.params.beta_minus,
    )
}

/// Validates a simple subgraph `h` of `host` against `(β, β⁻)`.
pub fn validate_subgraph(host: &Graph, h: &Graph, beta: u64, beta_minus: u64) -> Result<Vec<Violation>> {
    let mut in_h = vec![false; host.m()];
    for &(u, v) in h.edges() {
        in_h[host.edge_id(u, v).ok_or(Error::NotHostEdge((u, v)))?] = true;
    }
    let deg: Vec<u64> = h.degrees().into_iter().map(|d| d as u64).collect();
    Ok(check_properties(host, |id| in_h[id], &deg, beta, beta_minus))
}

/// Extreme edge-degree sums of a subgraph: the largest over its own edges
/// and the smallest over the remaining host edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeSumExtremes {
    pub max_inside: Option<u64>,
    pub min_outside: Option<u64>,
}

pub fn degree_sum_extremes<F>(host: &Graph, in_h: F, deg: &[u64]) -> DegreeSumExtremes
where
    F: Fn(EdgeId) -> bool,
{
    let mut out = DegreeSumExtremes::default();
    for (id, &(u, v)) in host.edges().iter().enumerate() {
        let s = deg[u] + deg[v];
        if in_h(id) {
            out.max_inside = Some(out.max_inside.map_or(s, |m| m.max(s)));
        } else {
            out.min_outside = Some(out.min_outside.map_or(s, |m| m.min(s)));
        }
    }
    out
}

/// Initial edge set for [`construct_edcs`].
#[derive(Debug, Clone, PartialEq)]
pub enum Start {
    Empty,
    All,
    /// Each host edge independently with this probability.
    Random(f64),
    Edges(Vec<Edge>),
}

/// How [`construct_edcs`] picks the next violating edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ScanPolicy {
    /// Queues of edges whose endpoint degrees changed, P1 before P2,
    /// seeded in edge order.
    #[default]
    Queue,
    /// As `Queue`, seeded in a random order.
    ShuffledQueue,
    /// A uniformly random current violator at every step.
    Random,
}

/// Record of a run of the fixing procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixTrace {
    pub steps: usize,
    pub p1_fixes: usize,
    pub p2_fixes: usize,
    /// `2Φ` before the first step and after every step.
    pub doubled_potential: Vec<i128>,
}

impl FixTrace {
    pub fn phi_start(&self) -> f64 {
        self.doubled_potential[0] as f64 / 2.0
    }

    /// True iff `Φ` rose by at least 1 at every step.
    pub fn potential_strictly_increasing(&self) -> bool {
        self.doubled_potential.windows(2).all(|w| w[1] - w[0] >= 2)
    }

    /// `2nβ² + max(0, −Φ_start)`. From an empty start `Φ_start = 0`.
    pub fn step_bound(&self, n: usize, beta: u64) -> f64 {
        2.0 * n as f64 * (beta as f64).powi(2) + (-self.phi_start()).max(0.0)
    }
}

fn doubled_phi(beta: u64, sum_deg: i128, sum_sq: i128) -> i128 {
    (2 * beta as i128 - 1) * sum_deg - 2 * sum_sq
}

struct Fixer<'a> {
    g: &'a Graph,
    beta: u64,
    beta_minus: u64,
    in_h: Vec<bool>,
    deg: Vec<u64>,
    sum_deg: i128,
    sum_sq: i128,
    trace: FixTrace,
}

impl<'a> Fixer<'a> {
    fn violation(&self, id: EdgeId) -> Option<Property> {
        let (u, v) = self.g.edge(id);
        let s = self.deg[u] + self.deg[v];
        if self.in_h[id] {
            (s > self.beta).then_some(Property::P1)
        } else {
            (s < self.beta_minus).then_some(Property::P2)
        }
    }

    fn bump(&mut self, x: Vertex, up: bool) {
        let d = self.deg[x] as i128;
        if up {
            self.sum_sq += 2 * d + 1;
            self.sum_deg += 1;
            self.deg[x] += 1;
        } else {
            self.sum_sq -= 2 * d - 1;
            self.sum_deg -= 1;
            self.deg[x] -= 1;
        }
    }

    /// Toggles edge `id`; returns whether it was added.
    fn flip(&mut self, id: EdgeId, property: Property) -> bool {
        let (u, v) = self.g.edge(id);
        let add = !self.in_h[id];
        self.in_h[id] = add;
        self.bump(u, add);
        self.bump(v, add);
        self.trace.steps += 1;
        match property {
            Property::P1 => self.trace.p1_fixes += 1,
            Property::P2 => self.trace.p2_fixes += 1,
        }
        self.trace
            .doubled_potential
            .push(doubled_phi(self.beta, self.sum_deg, self.sum_sq));
        add
    }

    /// Edges around `id`'s endpoints that may have started violating:
    /// H-edges after an addition, non-H edges after a removal.
    fn affected(&self, id: EdgeId, added: bool) -> impl Iterator<Item = EdgeId> + '_ {
        let (u, v) = self.g.edge(id);
        self.g
            .incident(u)
            .iter()
            .chain(self.g.incident(v))
            .map(|&(_, e)| e)
            .filter(move |&e| self.in_h[e] == added)
    }
}

/// Runs the fixing procedure from `start` until `H` is an EDCS of `g`.
///
/// `rng` is used by [`Start::Random`] and by the randomized policies.
pub fn construct_edcs<'g, R: Rng + ?Sized>(
    g: &'g Graph,
    params: EdcsParams,
    start: &Start,
    policy: ScanPolicy,
    rng: &mut R,
) -> Result<(Edcs<'g>, FixTrace)> {
    let mut in_h = vec![false; g.m()];
    match start {
        Start::Empty => {}
        Start::All => in_h.iter_mut().for_each(|x| *x = true),
        Start::Random(p) => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::InvalidParameter(format!("start probability {p}")));
            }
            in_h.iter_mut().for_each(|x| *x = rng.gen::<f64>() < *p);
        }
        Start::Edges(edges) => {
            for &(a, b) in edges {
                in_h[g.edge_id(a, b).ok_or(Error::NotHostEdge((a, b)))?] = true;
            }
        }
    }
    let start_h = Edcs::from_mask(g, params, in_h);
    let sum_deg: i128 = start_h.deg.iter().map(|&d| d as i128).sum();
    let sum_sq: i128 = start_h.deg.iter().map(|&d| (d as i128) * (d as i128)).sum();
    let mut fx = Fixer {
        g,
        beta: params.beta,
        beta_minus: params.beta_minus,
        in_h: start_h.in_h,
        deg: start_h.deg,
        sum_deg,
        sum_sq,
        trace: FixTrace {
            steps: 0,
            p1_fixes: 0,
            p2_fixes: 0,
            doubled_potential: vec![doubled_phi(params.beta, sum_deg, sum_sq)],
        },
    };

    let mut order: Vec<EdgeId> = (0..g.m()).collect();
    if policy != ScanPolicy::Queue {
        order.shuffle(rng);
    }

    let max_host_sum = g
        .edges()
        .iter()
        .map(|&(u, v)| (g.degree(u) + g.degree(v)) as u64)
        .max()
        .unwrap_or(0);
    if max_host_sum <= params.beta_minus.saturating_add(1) {
        // Every host edge has degree sum at most β⁻ + 1 ≤ β, so no P1
        // violation can ever arise and each missing edge stays a P2
        // violator until added: the result is H = G whatever the order.
        for id in order {
            if !fx.in_h[id] {
                fx.flip(id, Property::P2);
            }
        }
    } else if policy == ScanPolicy::Random {
        run_random(&mut fx, &order, rng);
    } else {
        run_queue(&mut fx, &order);
    }

    let trace = fx.trace;
    let edcs = Edcs::from_mask(g, params, fx.in_h);
    debug_assert_eq!(edcs.deg, fx.deg);
    Ok((edcs, trace))
}

fn run_queue(fx: &mut Fixer<'_>, order: &[EdgeId]) {
    let mut queued = vec![false; fx.g.m()];
    let mut p1 = VecDeque::new();
    let mut p2 = VecDeque::new();
    for &id in order {
        match fx.violation(id) {
            Some(Property::P1) => p1.push_back(id),
            Some(Property::P2) => p2.push_back(id),
            None => continue,
        }
        queued[id] = true;
    }
    let mut touched = Vec::new();
    while let Some(id) = p1.pop_front().or_else(|| p2.pop_front()) {
        queued[id] = false;
        let Some(prop) = fx.violation(id) else { continue };
        let added = fx.flip(id, prop);
        touched.clear();
        touched.extend(fx.affected(id, added));
        for &e in &touched {
            if queued[e] {
                continue;
            }
            match fx.violation(e) {
                Some(Property::P1) => p1.push_back(e),
                Some(Property::P2) => p2.push_back(e),
                None => continue,
            }
            queued[e] = true;
        }
    }
}

fn run_random<R: Rng + ?Sized>(fx: &mut Fixer<'_>, order: &[EdgeId], rng: &mut R) {
    const ABSENT: usize = usize::MAX;
    let mut pos = vec![ABSENT; fx.g.m()];
    let mut set: Vec<EdgeId> = Vec::new();
    let sync = |e: EdgeId, fx: &Fixer<'_>, set: &mut Vec<EdgeId>, pos: &mut Vec<usize>| {
        let bad = fx.violation(e).is_some();
        if bad && pos[e] == ABSENT {
            pos[e] = set.len();
            set.push(e);
        } else if !bad && pos[e] != ABSENT {
            let i = pos[e];
            set.swap_remove(i);
            if i < set.len() {
                pos[set[i]] = i;
            }
            pos[e] = ABSENT;
        }
    };
    for &id in order {
        sync(id, fx, &mut set, &mut pos);
    }
    let mut touched = Vec::new();
    while !set.is_empty() {
        let id = set[rng.gen_range(0..set.len())];
        let prop = fx.violation(id).expect("set holds only violators");
        let (u, v) = fx.g.edge(id);
        fx.flip(id, prop);
        // Any edge at u or v may have changed status.
        touched.clear();
        touched.extend(fx.g.incident(u).iter().chain(fx.g.incident(v)).map(|&(_, e)| e));
        for &e in &touched {
            sync(e, fx, &mut set, &mut pos);
        }
    }
}

/// A matching of `H` computed by `solver`.
pub fn edcs_matching(e: &Edcs<'_>, solver: MatchingSolver) -> Result<Matching> {
    solver.solve(&e.subgraph())
}

/// `V_high ∪ cover(H)`, a vertex cover of the host.
pub fn edcs_vertex_cover(e: &Edcs<'_>, strategy: CoverStrategy) -> Result<VertexCover> {
    let high = VertexCover::from_mask(&e.high_vertices());
    Ok(high.union(&strategy.solve(&e.subgraph())?))
}

/// `max_v |deg_A(v) − deg_B(v)|`, over `common` when given.
pub fn degree_gap(a: &Edcs<'_>, b: &Edcs<'_>, common: Option<&[bool]>) -> Result<u64> {
    if a.params != b.params {
        return Err(Error::ParamsMismatch(
            a.params.beta,
            a.params.beta_minus,
            b.params.beta,
            b.params.beta_minus,
        ));
    }
    if a.deg.len() != b.deg.len() {
        return Err(Error::InvalidParameter(format!(
            "vertex counts differ: {} vs {}",
            a.deg.len(),
            b.deg.len()
        )));
    }
    Ok((0..a.deg.len())
        .filter(|&v| common.is_none_or(|c| c[v]))
        .map(|v| a.deg[v].abs_diff(b.deg[v]))
        .max()
        .unwrap_or(0))
}

fn header(params: EdcsParams) -> String {
    format!("edcs beta={} beta_minus={}", params.beta, params.beta_minus)
}

/// Writes `H` in the graph file format under an `# edcs ...` header.
pub fn write_edcs<W: Write>(writer: W, e: &Edcs<'_>) -> Result<()> {
    io::write_graph_with_comments(writer, &e.subgraph(), &[header(e.params)])
}

/// Reads an EDCS file written by [`write_edcs`] against its host.
pub fn read_edcs<'g, R: Read>(reader: R, host: &'g Graph) -> Result<Edcs<'g>> {
    let file = io::read_graph_full(reader)?;
    let params = file
        .comments
        .iter()
        .find_map(|c| parse_header(c))
        .ok_or_else(|| Error::Parse {
            line: 1,
            reason: "missing \"# edcs beta=.. beta_minus=..\" header".into(),
        })??;
    if file.graph.n() != host.n() {
        return Err(Error::InvalidParameter(format!(
            "EDCS file has {} vertices, host has {}",
            file.graph.n(),
            host.n()
        )));
    }
    Edcs::from_edges(host, params, file.graph.edges().iter().copied())
}

fn parse_header(line: &str) -> Option<Result<EdcsParams>> {
    let rest = line.strip_prefix("edcs")?;
    let mut beta = None;
    let mut beta_minus = None;
    for tok in rest.split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        let v: u64 = v.parse().ok()?;
        match k {
            "beta" => beta = Some(v),
            "beta_minus" => beta_minus = Some(v),
            _ => return None,
        }
    }
    Some(EdcsParams::new(beta?, beta_minus?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::matching::is_cover;
    use crate::rng::SeededRng;

    fn build<'g>(g: &'g Graph, b: u64, bm: u64) -> (Edcs<'g>, FixTrace) {
        construct_edcs(
            g,
            EdcsParams::new(b, bm).unwrap(),
            &Start::Empty,
            ScanPolicy::Queue,
            &mut SeededRng::new(0),
        )
        .unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(EdcsParams::new(3, 3).is_err());
        assert!(EdcsParams::new(0, 0).is_err());
        assert_eq!(EdcsParams::from_lambda(40, 0.1).unwrap().beta_minus(), 36);
        assert!((EdcsParams::new(40, 36).unwrap().lambda() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn single_edge_forced() {
        let g = path_graph(2);
        let (h, t) = build(&g, 2, 1);
        assert_eq!(h.edges(), vec![(0, 1)]);
        assert_eq!(t.steps, 1);
        assert!(validate_edcs(&h).is_empty());
    }

    #[test]
    fn small_complete_graphs() {
        let t = cycle_graph(3);
        let (h, _) = build(&t, 2, 1);
        assert_eq!(h.len(), 1);
        let k4 = complete_graph(4);
        let (h, _) = build(&k4, 2, 1);
        assert_eq!(h.len(), 2);
        assert!(h.degrees().iter().all(|&d| d == 1));
    }

    #[test]
    fn validation_examples() {
        let t = cycle_graph(3);
        let p = EdcsParams::new(2, 1).unwrap();
        let h = Edcs::from_edges(&t, p, [(0, 1), (1, 2)]).unwrap();
        let v = validate_edcs(&h);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|x| x.property == Property::P1 && x.degree_sum == 3));
        let h = Edcs::from_edges(&t, p, []).unwrap();
        let v = validate_edcs(&h);
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|x| x.property == Property::P2));
        assert!(Edcs::from_edges(&t, p, [(0, 5)]).is_err());
    }

    #[test]
    fn star_cover() {
        let g = star_graph(5);
        let h = Edcs::from_edges(&g, EdcsParams::new(6, 5).unwrap(), g.edges().to_vec()).unwrap();
        assert!(validate_edcs(&h).is_empty());
        let c = edcs_vertex_cover(&h, CoverStrategy::Exact).unwrap();
        assert_eq!(c.vertices(), &[0]);
    }

    #[test]
    fn triangle_cover_from_one_edge() {
        let g = cycle_graph(3);
        let h = Edcs::from_edges(&g, EdcsParams::new(2, 1).unwrap(), [(0, 1)]).unwrap();
        let high = h.high_vertices();
        assert_eq!(high, vec![true, true, false]);
        assert!(is_cover(&g, &edcs_vertex_cover(&h, CoverStrategy::MatchedVertices).unwrap()));
    }

    #[test]
    fn zero_beta_minus_makes_everything_high() {
        let g = complete_graph(5);
        let h = Edcs::from_edges(&g, EdcsParams::new(8, 0).unwrap(), g.edges().to_vec()).unwrap();
        assert!(h.high_vertices().iter().all(|&x| x));
        assert!(is_cover(&g, &edcs_vertex_cover(&h, CoverStrategy::Exact).unwrap()));
    }

    #[test]
    fn matching_of_edcs() {
        let k4 = complete_graph(4);
        let (h, _) = build(&k4, 2, 1);
        assert_eq!(edcs_matching(&h, MatchingSolver::Exact).unwrap().len(), 2);
        let empty = Edcs::from_edges(&k4, h.params(), []).unwrap();
        assert!(edcs_matching(&empty, MatchingSolver::Exact).unwrap().is_empty());
    }

    #[test]
    fn gap_examples() {
        let k4 = complete_graph(4);
        let p = EdcsParams::new(2, 1).unwrap();
        let a = Edcs::from_edges(&k4, p, [(0, 1), (2, 3)]).unwrap();
        let b = Edcs::from_edges(&k4, p, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(degree_gap(&a, &b, None).unwrap(), 0);
        assert_eq!(degree_gap(&a, &a, None).unwrap(), 0);
        let c = Edcs::from_edges(&k4, EdcsParams::new(3, 1).unwrap(), []).unwrap();
        assert!(matches!(degree_gap(&a, &c, None), Err(Error::ParamsMismatch(..))));
    }

    #[test]
    fn potential_rises_from_full_start() {
        let g = complete_graph(12);
        let (h, t) = construct_edcs(
            &g,
            EdcsParams::new(4, 2).unwrap(),
            &Start::All,
            ScanPolicy::Random,
            &mut SeededRng::new(3),
        )
        .unwrap();
        assert!(validate_edcs(&h).is_empty());
        assert!(t.potential_strictly_increasing());
        assert!(t.phi_start() < 0.0);
        assert!((t.steps as f64) <= t.step_bound(g.n(), 4));
    }

    #[test]
    fn file_round_trip() {
        let g = complete_graph(6);
        let (h, _) = build(&g, 4, 3);
        let mut buf = Vec::new();
        write_edcs(&mut buf, &h).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# edcs beta=4 beta_minus=3\n"));
        let back = read_edcs(buf.as_slice(), &g).unwrap();
        assert_eq!(back, h);
    }
}
