//! A metered simulation of the MPC model.
//!
//! Machines are isolated tasks whose per-round load (edge units held or
//! exchanged) is compared with a budget; rounds are charged per primitive:
//! [`ROUNDS_PARALLEL_EDCS`], [`ROUNDS_RANDOM_MATCH`], [`ROUNDS_BASE_CASE`].
//! Sorting and aggregation primitives are not simulated; their cost is folded
//! into those fixed charges.

use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edcs::{construct_edcs, degree_sum_extremes, EdcsParams, ScanPolicy, Start};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Multigraph, Vertex};
use crate::hash::{range_for_probability, KWiseHash};
use crate::matching::{greedy_in_order, Matching, VertexCover};
use crate::rng::{mix_seed, SeededRng};

pub const ROUNDS_PARALLEL_EDCS: usize = 3;
pub const ROUNDS_RANDOM_MATCH: usize = 3;
pub const ROUNDS_BASE_CASE: usize = 2;

/// Default `c` of the per-machine budget `c·s·ln² n`. The sampling formulas
/// give an expected machine load of at most `(200 ln n)²·s/2` edges.
pub const DEFAULT_MEMORY_C: f64 = 20_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MpcMode {
    Theory,
    Practice,
}

/// Per-level parameters used in practice mode:
/// `p = min(1, p_const·√(s/(nΔ)))`, `k = ⌈k_const·ln n / p̂²⌉`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PracticeSchedule {
    pub p_const: f64,
    pub k_const: f64,
    pub kappa: usize,
    pub beta: u64,
    pub lambda: f64,
    pub lambda_c: f64,
}

impl Default for PracticeSchedule {
    fn default() -> Self {
        Self {
            p_const: 16.0,
            k_const: 1.0,
            kappa: 16,
            beta: 16,
            lambda: 0.125,
            lambda_c: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MpcConfig {
    /// Memory parameter `s`, in edges.
    pub s: usize,
    /// Maximum number of machines per round; `None` for unbounded.
    pub machines: Option<usize>,
    pub mode: MpcMode,
    pub seed: u64,
    /// Practice-mode base-case threshold on Δ.
    pub base_threshold: usize,
    pub memory_c: f64,
    pub schedule: PracticeSchedule,
    /// Size ParallelEDCS by the average degree `⌈m/n⌉` instead of Δ.
    pub average_degree: bool,
}

impl MpcConfig {
    pub fn practice(s: usize, seed: u64) -> Self {
        Self {
            s,
            machines: None,
            mode: MpcMode::Practice,
            seed,
            base_threshold: 16,
            memory_c: DEFAULT_MEMORY_C,
            schedule: PracticeSchedule::default(),
            average_degree: false,
        }
    }

    pub fn theory(s: usize, seed: u64) -> Self {
        Self {
            mode: MpcMode::Theory,
            ..Self::practice(s, seed)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::InvalidParameter("MPC memory s must be >= 1".into()));
        }
        if self.memory_c.is_nan() || self.memory_c <= 0.0 {
            return Err(Error::InvalidParameter("memory constant must be positive".into()));
        }
        Ok(())
    }

    /// `(n/s)·400·ln¹² n` in theory mode, `base_threshold` otherwise.
    pub fn base_case_threshold(&self, n: usize) -> f64 {
        match self.mode {
            MpcMode::Theory => (n as f64 / self.s as f64) * 400.0 * ln_n(n).powi(12),
            MpcMode::Practice => self.base_threshold as f64,
        }
    }
}

fn ln_n(n: usize) -> f64 {
    (n.max(3) as f64).ln()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub machine_loads: Vec<usize>,
    pub messages: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpcTrace {
    pub rounds: usize,
    pub per_round: Vec<RoundRecord>,
    pub violations: Vec<String>,
}

/// Totals of a trace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpcSummary {
    pub rounds: usize,
    pub peak_memory: usize,
    pub message_volume: usize,
    pub max_machines: usize,
    pub violations: Vec<String>,
}

/// Simulated machine set with meters.
#[derive(Debug, Clone)]
pub struct MpcRun {
    config: MpcConfig,
    budget: usize,
    trace: MpcTrace,
}

impl MpcRun {
    /// A run on graphs over `n` vertices; the per-machine budget is
    /// `⌈c·s·ln² n⌉`.
    pub fn new(config: MpcConfig, n: usize) -> Result<Self> {
        config.validate()?;
        let budget = (config.memory_c * config.s as f64 * ln_n(n).powi(2)).ceil() as usize;
        Ok(Self {
            config,
            budget,
            trace: MpcTrace::default(),
        })
    }

    pub fn config(&self) -> &MpcConfig {
        &self.config
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn trace(&self) -> &MpcTrace {
        &self.trace
    }

    pub fn into_trace(self) -> MpcTrace {
        self.trace
    }

    fn charge(&mut self, machine_loads: Vec<usize>, messages: usize) {
        let r = self.trace.rounds;
        if let Some(cap) = self.config.machines {
            if machine_loads.len() > cap {
                self.trace.violations.push(format!(
                    "round {r}: {} machines exceed machine budget {cap}",
                    machine_loads.len()
                ));
            }
        }
        for (i, &load) in machine_loads.iter().enumerate() {
            if load > self.budget {
                self.trace.violations.push(format!(
                    "round {r}: machine {i} load {load} exceeds budget {}",
                    self.budget
                ));
            }
        }
        self.trace.rounds += 1;
        self.trace.per_round.push(RoundRecord {
            machine_loads,
            messages,
        });
    }

    /// Edge-holder loads when `m` edges are spread over machines of size `s`.
    fn spread(&self, m: usize) -> Vec<usize> {
        let s = self.config.s;
        let full = m / s;
        let mut loads = vec![s; full];
        if !m.is_multiple_of(s) {
            loads.push(m % s);
        }
        loads
    }
}

/// Totals over the run so far.
pub fn account(run: &MpcRun) -> MpcSummary {
    let t = &run.trace;
    MpcSummary {
        rounds: t.rounds,
        peak_memory: t
            .per_round
            .iter()
            .flat_map(|r| r.machine_loads.iter().copied())
            .max()
            .unwrap_or(0),
        message_volume: t.per_round.iter().map(|r| r.messages).sum(),
        max_machines: t.per_round.iter().map(|r| r.machine_loads.len()).max().unwrap_or(0),
        violations: t.violations.clone(),
    }
}

/// Parameters of one ParallelEDCS call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PedcsParams {
    pub p_requested: f64,
    /// Hash range `r = round(1/p)`; a vertex joins machine `i` iff `h_v(i) = 0`.
    pub range: u64,
    pub p_realized: f64,
    pub k: usize,
    pub kappa: usize,
    pub edcs: EdcsParams,
    pub lambda_c: f64,
}

impl PedcsParams {
    /// `p = min(1, 200 ln n·√(s/(nΔ)))`, `k = ⌈800 ln n/p²⌉`, `κ = ⌈20 ln n⌉`,
    /// `λ = (2 ln n)⁻³`, `β = ⌈750·λ⁻²·ln n⌉`, `λ_C = ln n·√λ`.
    pub fn theory(n: usize, s: usize, delta: usize) -> Result<Self> {
        let l = ln_n(n);
        let p = (200.0 * l * (s as f64 / (n.max(1) as f64 * delta.max(1) as f64)).sqrt()).min(1.0);
        let k = (800.0 * l / (p * p)).ceil() as usize;
        let kappa = (20.0 * l).ceil() as usize;
        let lambda = (2.0 * l).powi(-3);
        let beta = (750.0 * lambda.powi(-2) * l).ceil() as u64;
        Self::explicit(p, k, kappa, beta, lambda, l * lambda.sqrt())
    }

    pub fn practice(n: usize, s: usize, delta: usize, sch: &PracticeSchedule) -> Result<Self> {
        let l = ln_n(n);
        let p = (sch.p_const * (s as f64 / (n.max(1) as f64 * delta.max(1) as f64)).sqrt()).min(1.0);
        let (_, p_hat) = range_for_probability(p)?;
        let k = (sch.k_const * l / (p_hat * p_hat)).ceil().max(1.0) as usize;
        Self::explicit(p, k, sch.kappa, sch.beta, sch.lambda, sch.lambda_c)
    }

    pub fn explicit(p: f64, k: usize, kappa: usize, beta: u64, lambda: f64, lambda_c: f64) -> Result<Self> {
        if k == 0 || kappa == 0 {
            return Err(Error::InvalidParameter("ParallelEDCS needs k, kappa >= 1".into()));
        }
        let (range, p_realized) = range_for_probability(p)?;
        Ok(Self {
            p_requested: p,
            range,
            p_realized,
            k,
            kappa,
            edcs: EdcsParams::from_lambda(beta, lambda)?,
            lambda_c,
        })
    }

    /// `p̂·k·β`, the center of the composed degree bounds.
    pub fn center(&self) -> f64 {
        self.p_realized * self.k as f64 * self.edcs.beta() as f64
    }

    /// `(β_C, β⁻_C) = (p̂k(1 + λ_C)β, p̂k(1 − λ_C)β)` as integers, rounded
    /// towards the stricter side.
    pub fn composed(&self) -> (u64, u64) {
        let c = self.center();
        let hi = ((1.0 + self.lambda_c) * c + 1e-9).floor();
        let lo = ((1.0 - self.lambda_c) * c - 1e-9).ceil().max(0.0);
        (hi.min(u64::MAX as f64) as u64, lo.min(u64::MAX as f64) as u64)
    }
}

/// Output of [`parallel_edcs`].
#[derive(Debug, Clone)]
pub struct PedcsOutput {
    /// Union of the machine-local EDCS, with multiplicities.
    pub c: Multigraph,
    /// Edges of the input placed on no machine.
    pub uncovered: usize,
    /// `|E(G^(i))|` per machine.
    pub machine_edges: Vec<usize>,
    pub params: PedcsParams,
}

impl PedcsOutput {
    /// Smallest `λ̂ ≥ 0` with `C` satisfying P1 and P2 at
    /// `(p̂k(1 + λ̂)β, p̂k(1 − λ̂)β)`, using multiplicity degrees.
    pub fn fitted_lambda(&self, g: &Graph) -> f64 {
        let support = self.c.dedup();
        let in_c: Vec<bool> = g.edges().iter().map(|&(u, v)| support.has_edge(u, v)).collect();
        let ext = degree_sum_extremes(g, |id| in_c[id], self.c.degrees());
        let c = self.params.center();
        let mut lam: f64 = 0.0;
        if let Some(mx) = ext.max_inside {
            lam = lam.max(mx as f64 / c - 1.0);
        }
        if let Some(mn) = ext.min_outside {
            lam = lam.max(1.0 - mn as f64 / c);
        }
        lam
    }
}

/// Builds `k` vertex-sampled subgraphs through per-vertex κ-wise hashes,
/// computes an EDCS on each, and returns their multigraph union.
pub fn parallel_edcs(
    run: &mut MpcRun,
    g: &Graph,
    params: &PedcsParams,
    rng: &mut SeededRng,
) -> Result<PedcsOutput> {
    let n = g.n();
    let k = params.k;
    let base = rng.next_u64();
    let kappa = params.kappa;

    // Round 1: every vertex draws h_v and annotates its edges.
    let hash_words = if params.range == 1 { 0 } else { n * kappa };
    run.charge(run.spread(g.m()), hash_words);

    let machine_edge_ids: Vec<Vec<usize>> = if params.range == 1 {
        // h_v ≡ 0: every machine holds all of g.
        vec![(0..g.m()).collect()]
    } else {
        let hashes: Vec<KWiseHash> = (0..n)
            .into_par_iter()
            .map(|v| KWiseHash::new(kappa, params.range, &mut SeededRng::new(mix_seed(base, v as u64))))
            .collect::<Result<_>>()?;
        (0..k)
            .into_par_iter()
            .map(|i| {
                let keep: Vec<bool> = hashes.iter().map(|h| h.eval(i as u64) == 0).collect();
                g.edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, &(u, v))| keep[u] && keep[v])
                    .map(|(id, _)| id)
                    .collect()
            })
            .collect()
    };

    let mut cover_count = vec![0usize; g.m()];
    for ids in &machine_edge_ids {
        for &id in ids {
            cover_count[id] += 1;
        }
    }
    let uncovered = cover_count.iter().filter(|&&c| c == 0).count();

    let local: Vec<Vec<Edge>> = machine_edge_ids
        .par_iter()
        .map(|ids| {
            let part = g.from_edge_ids(ids);
            let (h, _) = construct_edcs(&part, params.edcs, &Start::Empty, ScanPolicy::Queue, &mut SeededRng::new(0))?;
            Ok(h.edges())
        })
        .collect::<Result<_>>()?;

    let (machine_edges, c) = if params.range == 1 {
        let m = machine_edge_ids[0].len();
        let c = Multigraph::from_counts(n, local[0].iter().map(|&e| (e, k as u64)))?;
        (vec![m; k], c)
    } else {
        let c = Multigraph::from_counts(n, local.iter().flat_map(|h| h.iter().map(|&e| (e, 1))))?;
        (machine_edge_ids.iter().map(Vec::len).collect(), c)
    };

    // Round 2: edges shipped to the machines that sampled both endpoints.
    let shipped: usize = machine_edges.iter().sum();
    run.charge(machine_edges.clone(), shipped);
    // Round 3: local EDCS computed and returned.
    let returned = c.total_multiplicity() as usize;
    run.charge(machine_edges.clone(), returned);

    Ok(PedcsOutput {
        c,
        uncovered,
        machine_edges,
        params: *params,
    })
}

/// One round of sampled proposals from `S` producing a matching incident on `S`.
///
/// Every `v ∈ S` must satisfy `3·deg(v) ≥ Δ`.
pub fn random_match(
    run: &mut MpcRun,
    g: &Graph,
    s: &[bool],
    delta: usize,
    rng: &mut SeededRng,
) -> Result<Matching> {
    if s.len() != g.n() {
        return Err(Error::InvalidParameter("vertex mask has wrong length".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| s[v] && 3 * g.degree(v) < delta) {
        return Err(Error::LowDegree {
            vertex: v,
            degree: g.degree(v),
            delta,
        });
    }
    Ok(random_match_unchecked(run, g, s, rng))
}

/// [`random_match`] without the degree precondition.
pub fn random_match_unchecked(run: &mut MpcRun, g: &Graph, s: &[bool], rng: &mut SeededRng) -> Matching {
    let n = g.n();
    let mut in_sp = vec![false; n];
    let mut sp_size = 0;
    for v in 0..n {
        if s[v] && rng.gen::<bool>() {
            in_sp[v] = true;
            sp_size += 1;
        }
    }
    run.charge(run.spread(g.m()), sp_size);

    let mut picked: Vec<Edge> = Vec::with_capacity(sp_size);
    let mut outside: Vec<Vertex> = Vec::new();
    for v in 0..n {
        if !in_sp[v] {
            continue;
        }
        outside.clear();
        outside.extend(g.neighbors(v).filter(|&w| !in_sp[w]));
        if !outside.is_empty() {
            picked.push((v, outside[rng.gen_range(0..outside.len())]));
        }
    }
    run.charge(run.spread(g.m()), picked.len());

    let mut count = vec![0u32; n];
    for &(v, w) in &picked {
        count[v] += 1;
        count[w] += 1;
    }
    let m = Matching::new(picked.iter().copied().filter(|&(v, w)| count[v] == 1 && count[w] == 1));
    run.charge(run.spread(picked.len()), picked.len());
    m
}

/// Statistics of one recursion level of [`parallel_algorithm`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelStats {
    /// Degree bound the level was called with.
    pub delta: usize,
    /// Degree used to size ParallelEDCS (Δ or the average degree).
    pub sizing_delta: usize,
    pub edges: usize,
    pub params: PedcsParams,
    pub c_support: usize,
    pub uncovered: usize,
    pub fitted_lambda: f64,
    pub v_high: usize,
    pub m_high: usize,
    /// Input edges inside `V⁻` missing from `C` (zero when `C` satisfies P2).
    pub repair_edges: usize,
    /// Maximum degree of the graph passed to the next level.
    pub next_delta: usize,
}

#[derive(Debug, Clone)]
pub struct ParallelOutcome {
    pub cover: VertexCover,
    pub matching: Matching,
    /// Recursive (non-base) levels run.
    pub depth: usize,
    pub levels: Vec<LevelStats>,
    /// True if some level failed to reduce the degree and the base case was
    /// forced.
    pub stalled: bool,
    /// Theory mode: the degree stayed below the base-case guard of
    /// ParallelEDCS at the top level.
    pub below_theory_guard: bool,
}

/// Recursive matching and vertex cover: a ParallelEDCS call, the high-degree
/// vertices of `C`, a RandomMatch on them, and recursion on the rest.
///
/// The graph passed down is `G[V⁻]`, i.e. `C[V⁻]` plus any input edges
/// inside `V⁻` that `C` missed; the next degree bound is its measured
/// maximum degree.
pub fn parallel_algorithm(run: &mut MpcRun, g: &Graph, delta: usize, rng: &mut SeededRng) -> Result<ParallelOutcome> {
    if delta < g.max_degree() {
        return Err(Error::InvalidParameter(format!(
            "delta {delta} below max degree {}",
            g.max_degree()
        )));
    }
    let n = g.n();
    let mut outcome = ParallelOutcome {
        cover: VertexCover::default(),
        matching: Matching::default(),
        depth: 0,
        levels: Vec::new(),
        stalled: false,
        below_theory_guard: false,
    };
    if g.m() == 0 {
        return Ok(outcome);
    }
    let threshold = run.config.base_case_threshold(n);
    outcome.below_theory_guard = run.config.mode == MpcMode::Theory && (delta as f64) < threshold;

    let mut cover = vec![false; n];
    let mut matched: Vec<Edge> = Vec::new();
    let mut cur = g.clone();
    let mut delta_cur = delta;
    let mut force_base = false;
    loop {
        if force_base || (delta_cur as f64) <= threshold || cur.m() == 0 {
            run.charge(vec![cur.m()], cur.m());
            let m = greedy_in_order(&cur, 0..cur.m());
            for &(u, v) in m.edges() {
                cover[u] = true;
                cover[v] = true;
            }
            run.charge(vec![cur.m()], 2 * m.len());
            matched.extend_from_slice(m.edges());
            break;
        }
        let sizing_delta = if run.config.average_degree {
            cur.m().div_ceil(n.max(1)).max(1)
        } else {
            delta_cur
        };
        let params = match run.config.mode {
            MpcMode::Theory => PedcsParams::theory(n, run.config.s, sizing_delta)?,
            MpcMode::Practice => PedcsParams::practice(n, run.config.s, sizing_delta, &run.config.schedule)?,
        };
        let out = parallel_edcs(run, &cur, &params, rng)?;
        let (_, beta_minus_c) = params.composed();
        let high: Vec<bool> = out.c.degrees().iter().map(|&d| 2 * d >= beta_minus_c).collect();
        let support = out.c.dedup();
        let m_high = random_match_unchecked(run, &support, &high, rng);
        let m_mask = m_high.matched_mask(n);
        let keep: Vec<bool> = (0..n).map(|v| !high[v] && !m_mask[v]).collect();
        for v in 0..n {
            if !keep[v] {
                cover[v] = true;
            }
        }
        matched.extend_from_slice(m_high.edges());

        let next = cur.induced(&keep);
        let repair_edges = next.m() - support.induced(&keep).m();
        let next_delta = next.max_degree();
        outcome.levels.push(LevelStats {
            delta: delta_cur,
            sizing_delta,
            edges: cur.m(),
            params,
            c_support: support.m(),
            uncovered: out.uncovered,
            fitted_lambda: out.fitted_lambda(&cur),
            v_high: high.iter().filter(|&&h| h).count(),
            m_high: m_high.len(),
            repair_edges,
            next_delta,
        });
        outcome.depth += 1;
        if next_delta >= delta_cur {
            outcome.stalled = true;
            force_base = true;
        }
        cur = next;
        delta_cur = next_delta;
    }
    // A zero threshold marks isolated vertices as high; they cover nothing.
    for (v, c) in cover.iter_mut().enumerate() {
        if g.degree(v) == 0 {
            *c = false;
        }
    }
    outcome.cover = VertexCover::from_mask(&cover);
    outcome.matching = Matching::new(matched);
    Ok(outcome)
}

/// Output of [`iterate_matching`].
#[derive(Debug, Clone)]
pub struct IterateOutcome {
    pub matching: Matching,
    /// `T = max(1, ⌈α·ln(1/ε)⌉)`.
    pub planned_passes: usize,
    /// Passes actually run; later passes are skipped once no edge remains.
    pub passes: usize,
    pub pass_sizes: Vec<usize>,
}

/// Repeats [`parallel_algorithm`] `T = max(1, ⌈α·ln(1/ε)⌉)` times, each time
/// removing the vertices matched so far.
pub fn iterate_matching(
    run: &mut MpcRun,
    g: &Graph,
    epsilon: f64,
    alpha: f64,
    rng: &mut SeededRng,
) -> Result<IterateOutcome> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1)")));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!("alpha {alpha} must be positive")));
    }
    let planned = ((alpha * (1.0 / epsilon).ln()).ceil() as usize).max(1);
    let mut removed = vec![false; g.n()];
    let mut edges = Vec::new();
    let mut sizes = Vec::new();
    let mut passes = 0;
    for _ in 0..planned {
        let residual = g.remove_vertices(&removed);
        if residual.m() == 0 && passes > 0 {
            break;
        }
        let out = parallel_algorithm(run, &residual, residual.max_degree(), rng)?;
        passes += 1;
        sizes.push(out.matching.len());
        for &(u, v) in out.matching.edges() {
            removed[u] = true;
            removed[v] = true;
        }
        edges.extend_from_slice(out.matching.edges());
    }
    Ok(IterateOutcome {
        matching: Matching::new(edges),
        planned_passes: planned,
        passes,
        pass_sizes: sizes,
    })
}
