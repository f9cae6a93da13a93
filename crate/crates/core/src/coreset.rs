//! Randomized composable coresets for matching and vertex cover.
//!
//! The host's edges are split by a random k-partition; every part is reduced
//! to a small subgraph independently, and the problem is solved on the union.
//! Two reductions are provided: a maximum matching per part, and an EDCS per
//! part (plus, for vertex cover, the part's high-degree vertices).

use std::fs;
use std::path::Path;

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edcs::{
    construct_edcs, degree_sum_extremes, EdcsParams, ScanPolicy, Start,
    Violation,
};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Edge, Graph, Vertex};
use crate::io;
use crate::matching::{
    greedy_maximal_matching, hopcroft_karp, is_cover, is_matching, maximum_matching,
    minimum_vertex_cover, CoverStrategy, EdgeOrder, Matching, MatchingSolver, VertexCover,
};
use crate::report::ApproxReport;
use crate::rng::SeededRng;
use crate::sampling::random_k_partition;

/// `c₁` in `λ = c₁·(ε / ln n)²`.
pub const THEORY_C1: f64 = 1e-4;
/// `c₂` in `β = c₂·λ⁻³·ln n`.
pub const THEORY_C2: f64 = 750.0;
/// Largest β used; theory-mode values beyond it are clamped.
pub const BETA_CAP: u64 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    Theory,
    Practice,
}

/// Parameters of the EDCS coreset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoresetParams {
    pub k: usize,
    /// Slack of the vertex-cover threshold `(1 − ε)·β/2`.
    pub epsilon: f64,
    /// Per-part `(β, β⁻)`.
    pub edcs: EdcsParams,
    /// `λ_C` of the composed parameters.
    pub lambda_c: f64,
    pub mode: ParamMode,
    /// True when theory-mode β was clamped to [`BETA_CAP`].
    pub saturated: bool,
}

impl CoresetParams {
    /// `λ = c₁(ε/ln n)²`, `β = c₂λ⁻³ ln n`, `β⁻ = (1 − λ)β`, `λ_C = ln n·√λ`.
    pub fn theory(n: usize, k: usize, epsilon: f64) -> Result<Self> {
        check_k_eps(k, epsilon)?;
        let ln_n = (n.max(3) as f64).ln();
        let lambda = THEORY_C1 * (epsilon / ln_n).powi(2);
        let beta_real = THEORY_C2 * lambda.powi(-3) * ln_n;
        let saturated = beta_real.is_nan() || beta_real >= BETA_CAP as f64;
        let beta = if saturated { BETA_CAP } else { beta_real.ceil() as u64 };
        Ok(Self {
            k,
            epsilon,
            edcs: EdcsParams::from_lambda(beta, lambda)?,
            lambda_c: ln_n * lambda.sqrt(),
            mode: ParamMode::Theory,
            saturated,
        })
    }

    /// Explicit `(β, β⁻)`; `ε` defaults to `λ = 1 − β⁻/β` and `λ_C` to 0.35.
    pub fn practice(k: usize, beta: u64, beta_minus: u64) -> Result<Self> {
        let edcs = EdcsParams::new(beta, beta_minus)?;
        if k == 0 {
            return Err(Error::InvalidParameter("coreset needs k >= 1".into()));
        }
        Ok(Self {
            k,
            epsilon: edcs.lambda(),
            edcs,
            lambda_c: 0.35,
            mode: ParamMode::Practice,
            saturated: false,
        })
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        check_k_eps(self.k, epsilon)?;
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn with_lambda_c(mut self, lambda_c: f64) -> Self {
        self.lambda_c = lambda_c;
        self
    }

    /// `(β_C, β⁻_C) = ((1 + λ_C)·k·β, (1 − 2λ_C)·k·β)` as integers, rounded
    /// towards the stricter side.
    pub fn composed(&self) -> (u64, u64) {
        composed_bounds(self.k, self.edcs.beta(), self.lambda_c)
    }

    /// A part's vertex is fixed when `2·deg ≥ min(β⁻, ⌈(1 − ε)·β⌉)`.
    pub fn vc_threshold(&self) -> u64 {
        let scaled = ((1.0 - self.epsilon) * self.edcs.beta() as f64 - 1e-9).ceil().max(0.0) as u64;
        scaled.min(self.edcs.beta_minus())
    }
}

fn check_k_eps(k: usize, epsilon: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("coreset needs k >= 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1)")));
    }
    Ok(())
}

/// Integer `((1 + λ)·k·β, (1 − 2λ)·k·β)`, floor and ceiling respectively.
pub fn composed_bounds(k: usize, beta: u64, lambda: f64) -> (u64, u64) {
    let kb = k as f64 * beta as f64;
    let hi = ((1.0 + lambda) * kb + 1e-9).floor();
    let lo = ((1.0 - 2.0 * lambda) * kb - 1e-9).ceil().max(0.0);
    (hi.min(u64::MAX as f64) as u64, lo as u64)
}

/// Output of a coreset run.
#[derive(Debug, Clone, PartialEq)]
pub struct CoresetResult {
    pub k: usize,
    /// Per-part coresets as spanning subgraphs of the host.
    pub parts: Vec<Graph>,
    pub union: Graph,
    /// Vertex-cover variant only: vertices fixed by some part.
    pub fixed: Option<VertexCover>,
    /// Edges of the largest part `G^(i)`.
    pub max_part_edges: usize,
    pub params: Option<CoresetParams>,
}

impl CoresetResult {
    pub fn coreset_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Graph::m).collect()
    }

    /// Total edges sent by all parts.
    pub fn communication(&self) -> usize {
        self.parts.iter().map(Graph::m).sum()
    }
}

fn union_of(n: usize, parts: &[Graph]) -> Graph {
    let mut edges: Vec<Edge> = parts.iter().flat_map(|p| p.edges().iter().copied()).collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_sorted_unchecked(n, edges)
}

/// One maximum matching per part.
pub fn maxmatching_coreset(
    g: &Graph,
    k: usize,
    rng: &mut SeededRng,
    solver: MatchingSolver,
) -> Result<CoresetResult> {
    let partition = random_k_partition(g, k, rng)?;
    let subgraphs = partition.subgraphs(g);
    let parts = subgraphs
        .par_iter()
        .map(|part| Ok(part.filter_edges(matching_mask(&solver.solve(part)?, part))))
        .collect::<Result<Vec<Graph>>>()?;
    Ok(CoresetResult {
        k,
        union: union_of(g.n(), &parts),
        parts,
        fixed: None,
        max_part_edges: subgraphs.iter().map(Graph::m).max().unwrap_or(0),
        params: None,
    })
}

fn matching_mask(m: &Matching, host: &Graph) -> impl FnMut(usize, Edge) -> bool {
    let mut keep = vec![false; host.m()];
    for &(u, v) in m.edges() {
        if let Some(id) = host.edge_id(u, v) {
            keep[id] = true;
        }
    }
    move |id, _| keep[id]
}

/// One EDCS per part, plus each part's vertices of degree at least the
/// vertex-cover threshold.
pub fn edcs_coreset(g: &Graph, params: &CoresetParams, rng: &mut SeededRng) -> Result<CoresetResult> {
    let partition = random_k_partition(g, params.k, rng)?;
    let subgraphs = partition.subgraphs(g);
    let base = rng.next_u64();
    let threshold = params.vc_threshold();
    let outputs = subgraphs
        .par_iter()
        .enumerate()
        .map(|(i, part)| {
            let mut prng = SeededRng::new(crate::rng::mix_seed(base, i as u64));
            let (h, _) = construct_edcs(part, params.edcs, &Start::Empty, ScanPolicy::Queue, &mut prng)?;
            let fixed: Vec<Vertex> = (0..g.n()).filter(|&v| 2 * h.degree(v) >= threshold && part.degree(v) > 0).collect();
            Ok((h.subgraph(), fixed))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut parts = Vec::with_capacity(outputs.len());
    let mut fixed = Vec::new();
    for (h, f) in outputs {
        parts.push(h);
        fixed.extend(f);
    }
    Ok(CoresetResult {
        k: params.k,
        union: union_of(g.n(), &parts),
        parts,
        fixed: Some(VertexCover::new(fixed)),
        max_part_edges: subgraphs.iter().map(Graph::m).max().unwrap_or(0),
        params: Some(*params),
    })
}

/// Violations of the union against the composed `(β_C, β⁻_C)`.
pub fn validate_union(g: &Graph, r: &CoresetResult, beta_c: u64, beta_minus_c: u64) -> Result<Vec<Violation>> {
    crate::edcs::validate_subgraph(g, &r.union, beta_c, beta_minus_c)
}

/// Smallest `λ̂ ≥ 0` for which the union satisfies P1 and P2 at
/// `((1 + λ̂)·k·β, (1 − 2λ̂)·k·β)`.
pub fn fitted_union_lambda(g: &Graph, union: &Graph, k: usize, beta: u64) -> f64 {
    let deg: Vec<u64> = union.degrees().into_iter().map(|d| d as u64).collect();
    let in_union: Vec<bool> = g.edges().iter().map(|&(u, v)| union.has_edge(u, v)).collect();
    let ext = degree_sum_extremes(g, |id| in_union[id], &deg);
    let kb = k as f64 * beta as f64;
    let mut lam: f64 = 0.0;
    if let Some(mx) = ext.max_inside {
        lam = lam.max(mx as f64 / kb - 1.0);
    }
    if let Some(mn) = ext.min_outside {
        lam = lam.max((1.0 - mn as f64 / kb) / 2.0);
    }
    lam
}

/// What [`compose_and_solve`] computes on the union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Matching(MatchingSolver),
    VertexCover(CoverStrategy),
}

/// Solves `problem` on the union and compares it with the host's optimum.
///
/// Oracle values that cannot be computed (non-bipartite host above the
/// brute-force cap) are left as `None`.
pub fn compose_and_solve(g: &Graph, r: &CoresetResult, problem: Problem) -> Result<ApproxReport> {
    let mut rep = ApproxReport::new(format!("n={} m={}", g.n(), g.m()), "", 0);
    rep.resources.insert("max_part_edges".into(), r.max_part_edges as f64);
    rep.resources.insert("union_edges".into(), r.union.m() as f64);
    rep.resources.insert("communication".into(), r.communication() as f64);
    match problem {
        Problem::Matching(solver) => {
            let m = solver.solve(&r.union)?;
            rep.matching_feasible = Some(is_matching(g, &m));
            rep.matching_size = Some(m.len());
            rep.exact_solver = solver.is_exact();
            rep.oracle_mm = maximum_matching(g).ok().map(|m| m.len());
        }
        Problem::VertexCover(strategy) => {
            let mut c = strategy.solve(&r.union)?;
            if let Some(f) = &r.fixed {
                c = c.union(f);
            }
            rep.cover_feasible = Some(is_cover(g, &c));
            rep.cover_size = Some(c.len());
            rep.exact_solver = strategy == CoverStrategy::Exact;
            rep.oracle_vc = minimum_vertex_cover(g).ok().map(|c| c.len());
            rep.vc_lower_bound = Some(greedy_maximal_matching(g, &EdgeOrder::Natural)?.len());
        }
    }
    Ok(rep)
}

/// Layer of a vertex in the lower-bound graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Layer {
    L1,
    L2,
    R1,
    R2,
}

/// The four-layer bipartite instance on which per-part maximum matchings
/// compose poorly.
#[derive(Debug, Clone)]
pub struct LowerBoundInstance {
    pub graph: Graph,
    pub bipartition: Bipartition,
    pub labels: Vec<Layer>,
    pub n: usize,
    pub k: usize,
}

/// `|L1| = n/2 + n/k`, `|L2| = |R1| = |R2| = n/2`; `L1 × R2` complete,
/// `L2 — R2` a perfect matching, and `L1 — R1` a matching saturating `R1`.
/// Vertices are laid out as `L1, L2, R1, R2`; the maximum matching has size `n`.
pub fn gen_lowerbound_graph(n: usize, k: usize) -> Result<LowerBoundInstance> {
    if k == 0 || n == 0 || !n.is_multiple_of(2 * k) {
        return Err(Error::InvalidParameter(format!(
            "lower-bound graph needs n a positive multiple of 2k, got n = {n}, k = {k}"
        )));
    }
    let half = n / 2;
    let l1 = half + n / k;
    let (l2_0, r1_0, r2_0) = (l1, l1 + half, l1 + 2 * half);
    let total = l1 + 3 * half;
    let mut labels = vec![Layer::L1; l1];
    labels.extend(std::iter::repeat_n(Layer::L2, half));
    labels.extend(std::iter::repeat_n(Layer::R1, half));
    labels.extend(std::iter::repeat_n(Layer::R2, half));
    let mut edges = Vec::with_capacity(l1 * half + 2 * half);
    for a in 0..l1 {
        if a < half {
            edges.push((a, r1_0 + a));
        }
        for j in 0..half {
            edges.push((a, r2_0 + j));
        }
    }
    for j in 0..half {
        edges.push((l2_0 + j, r2_0 + j));
    }
    edges.sort_unstable();
    Ok(LowerBoundInstance {
        graph: Graph::from_sorted_unchecked(total, edges),
        bipartition: Bipartition::from_sides(labels.iter().map(|l| matches!(l, Layer::R1 | Layer::R2)).collect()),
        labels,
        n,
        k,
    })
}

/// A maximum matching of `part` avoiding `L2 — R2` edges when one exists.
/// Returns the matching and whether avoidance failed.
pub fn adversarial_max_matching(part: &Graph, labels: &[Layer], bip: &Bipartition) -> Result<(Matching, bool)> {
    let best = hopcroft_karp(part, bip)?;
    let avoiding = part.filter_edges(|_, (u, v)| {
        !matches!((labels[u], labels[v]), (Layer::L2, Layer::R2) | (Layer::R2, Layer::L2))
    });
    let cand = hopcroft_karp(&avoiding, bip)?;
    if cand.len() == best.len() {
        Ok((cand, false))
    } else {
        Ok((best, true))
    }
}

/// One run of the lower-bound demonstration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundDemo {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    /// `MM(∪ adversarial maximum matchings) / MM(G)`.
    pub maxmatching_ratio: f64,
    /// `MM(∪ per-part EDCS) / MM(G)`.
    pub edcs_ratio: f64,
    /// Parts where an `L2 — R2`-free maximum matching did not exist.
    pub flagged_parts: usize,
}

/// Compares the adversarial maximum-matching coreset with the EDCS coreset
/// on the same random k-partition of the lower-bound graph.
pub fn lowerbound_demo(n: usize, k: usize, edcs: EdcsParams, seed: u64) -> Result<LowerBoundDemo> {
    let inst = gen_lowerbound_graph(n, k)?;
    let g = &inst.graph;
    let mm = hopcroft_karp(g, &inst.bipartition)?.len();
    let mut rng = SeededRng::new(seed);
    let partition = random_k_partition(g, k, &mut rng)?;
    let subgraphs = partition.subgraphs(g);

    let adv = subgraphs
        .par_iter()
        .map(|p| adversarial_max_matching(p, &inst.labels, &inst.bipartition))
        .collect::<Result<Vec<_>>>()?;
    let flagged_parts = adv.iter().filter(|(_, f)| *f).count();
    let mm_union = Graph::new(g.n(), adv.iter().flat_map(|(m, _)| m.edges().iter().copied()))?;
    let mm_ratio = hopcroft_karp(&mm_union, &inst.bipartition)?.len() as f64 / mm as f64;

    let edcs_parts = subgraphs
        .par_iter()
        .map(|p| {
            let (h, _) = construct_edcs(p, edcs, &Start::Empty, ScanPolicy::Queue, &mut SeededRng::new(0))?;
            Ok(h.subgraph())
        })
        .collect::<Result<Vec<_>>>()?;
    let edcs_union = union_of(g.n(), &edcs_parts);
    let edcs_ratio = hopcroft_karp(&edcs_union, &inst.bipartition)?.len() as f64 / mm as f64;

    Ok(LowerBoundDemo {
        n,
        k,
        seed,
        maxmatching_ratio: mm_ratio,
        edcs_ratio,
        flagged_parts,
    })
}

/// `manifest.json` of a serialized coreset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoresetManifest {
    pub k: usize,
    pub params: Option<CoresetParams>,
    pub seed: u64,
    pub part_sizes: Vec<usize>,
    pub union_size: usize,
    pub communication: usize,
    pub fixed_vertices: Option<usize>,
    pub report: Option<ApproxReport>,
}

/// Writes `part_<i>.txt` per part, `union.txt` and `manifest.json` into `dir`.
pub fn write_coreset_dir(
    dir: impl AsRef<Path>,
    r: &CoresetResult,
    seed: u64,
    report: Option<ApproxReport>,
) -> Result<CoresetManifest> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    for (i, p) in r.parts.iter().enumerate() {
        io::write_graph_path(dir.join(format!("part_{i}.txt")), p)?;
    }
    io::write_graph_path(dir.join("union.txt"), &r.union)?;
    let manifest = CoresetManifest {
        k: r.k,
        params: r.params,
        seed,
        part_sizes: r.coreset_sizes(),
        union_size: r.union.m(),
        communication: r.communication(),
        fixed_vertices: r.fixed.as_ref().map(VertexCover::len),
        report,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(manifest)
}
