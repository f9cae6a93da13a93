//! The named experiments behind `edcs run`.
//!
//! Each experiment maps one seed to one CSV row. Rows are computed in
//! parallel and sorted by `(instance, seed)` before writing.

use std::fmt;
use std::io::Write;
use std::ops::Range;
use std::str::FromStr;

use edcs_core::coreset::{
    compose_and_solve, edcs_coreset, fitted_union_lambda, lowerbound_demo, maxmatching_coreset, CoresetParams, Problem,
};
use edcs_core::edcs::{construct_edcs, degree_gap, validate_edcs, EdcsParams, ScanPolicy, Start};
use edcs_core::matching::{hopcroft_karp, is_cover, is_matching, maximum_matching, CoverStrategy, MatchingSolver};
use edcs_core::mpc::{account, iterate_matching, parallel_algorithm, MpcConfig, MpcMode, MpcRun, DEFAULT_MEMORY_C};
use edcs_core::sampling::edge_sample;
use edcs_core::streaming::{stream_coreset, StreamVariant};
use edcs_core::{mix_seed, Bipartition, Graph, SeededRng};
use rayon::prelude::*;

use crate::config::Config;
use crate::error::{CliError, Result};
use crate::instance::{InstanceSpec, ALGO_STREAM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Experiment {
    EdcsValidate,
    DdlGap,
    CoresetMatching,
    CoresetVc,
    MaxmatchingCoreset,
    LowerboundDemo,
    MpcFull,
    MpcIterate,
    Stream,
    ConcentrationDemo,
}

impl Experiment {
    pub const ALL: [Experiment; 10] = [
        Experiment::EdcsValidate,
        Experiment::DdlGap,
        Experiment::CoresetMatching,
        Experiment::CoresetVc,
        Experiment::MaxmatchingCoreset,
        Experiment::LowerboundDemo,
        Experiment::MpcFull,
        Experiment::MpcIterate,
        Experiment::Stream,
        Experiment::ConcentrationDemo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::EdcsValidate => "edcs-validate",
            Experiment::DdlGap => "ddl-gap",
            Experiment::CoresetMatching => "coreset-matching",
            Experiment::CoresetVc => "coreset-vc",
            Experiment::MaxmatchingCoreset => "maxmatching-coreset",
            Experiment::LowerboundDemo => "lowerbound-demo",
            Experiment::MpcFull => "mpc-full",
            Experiment::MpcIterate => "mpc-iterate",
            Experiment::Stream => "stream",
            Experiment::ConcentrationDemo => "concentration-demo",
        }
    }

    /// Columns between `instance, seed` and `violations`.
    fn columns(self) -> &'static [&'static str] {
        match self {
            Experiment::EdcsValidate => &[
                "n", "m", "beta", "beta_minus", "edcs_edges", "steps", "p1_fixes", "p2_fixes", "step_bound",
                "potential_increasing",
            ],
            Experiment::DdlGap => &["n", "m", "beta", "beta_minus", "gap", "bound", "within_bound"],
            Experiment::CoresetMatching => &[
                "n", "m", "k", "beta", "beta_minus", "union_edges", "max_part_edges", "matching", "oracle_mm", "ratio",
                "fitted_lambda",
            ],
            Experiment::CoresetVc => &[
                "n", "m", "k", "beta", "beta_minus", "union_edges", "fixed", "cover", "vc_lower_bound", "oracle_vc",
                "cover_to_lower_bound", "cover_ratio",
            ],
            Experiment::MaxmatchingCoreset => &["n", "m", "k", "union_edges", "matching", "oracle_mm", "ratio"],
            Experiment::LowerboundDemo => &["n", "k", "maxmatching_ratio", "edcs_ratio", "flagged_parts"],
            Experiment::MpcFull => &[
                "n", "m", "delta", "depth", "rounds", "matching", "cover", "cover_over_matching", "peak_load", "budget",
                "messages", "repair_edges", "stalled", "deltas",
            ],
            Experiment::MpcIterate => &[
                "n", "m", "epsilon", "alpha", "planned_passes", "passes", "rounds", "matching", "oracle_mm", "ratio",
            ],
            Experiment::Stream => &[
                "n", "m", "k", "s_target", "peak_space", "space_bound", "union_edges", "matching", "oracle_mm", "ratio",
            ],
            Experiment::ConcentrationDemo => &["n", "m", "p", "mm_full", "mm_sample", "scale"],
        }
    }

    pub fn header(self) -> Vec<&'static str> {
        let mut h = vec!["instance", "seed"];
        h.extend_from_slice(self.columns());
        h.push("violations");
        h
    }

    /// Settings used for keys the config file leaves out.
    pub fn defaults(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Experiment::EdcsValidate => &[("family", "triangle"), ("beta", "2"), ("beta_minus", "1")],
            Experiment::DdlGap => &[("family", "er"), ("n", "500"), ("p", "0.0801603"), ("beta", "40"), ("lambda", "0.1")],
            Experiment::CoresetMatching | Experiment::CoresetVc => &[
                ("family", "bipartite"),
                ("n_left", "400"),
                ("n_right", "400"),
                ("p", "0.15"),
                ("k", "4"),
                ("beta", "40"),
                ("beta_minus", "36"),
            ],
            Experiment::MaxmatchingCoreset => {
                &[("family", "bipartite"), ("n_left", "300"), ("n_right", "300"), ("p", "0.1"), ("k", "5")]
            }
            Experiment::LowerboundDemo => &[("n", "2000"), ("k", "10"), ("beta", "40"), ("beta_minus", "36")],
            Experiment::MpcFull => &[("family", "regular"), ("n", "4000"), ("d", "256")],
            Experiment::MpcIterate => &[
                ("family", "bipartite"),
                ("n_left", "1000"),
                ("n_right", "1000"),
                ("p", "0.05"),
                ("epsilon", "0.2"),
            ],
            Experiment::Stream => &[
                ("family", "bipartite"),
                ("n_left", "500"),
                ("n_right", "500"),
                ("p", "0.1"),
                ("beta", "40"),
                ("beta_minus", "36"),
            ],
            Experiment::ConcentrationDemo => &[
                ("family", "bipartite"),
                ("n_left", "500"),
                ("n_right", "500"),
                ("p", "0.01"),
                ("graph_seed", "0"),
                ("sample_p", "0.5"),
            ],
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| CliError::UnknownExperiment(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub instance: String,
    pub seed: u64,
    pub cells: Vec<String>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub experiment: Experiment,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn violations(&self) -> usize {
        self.rows.iter().map(|r| r.violations).sum()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.experiment.header())?;
        for r in &self.rows {
            let mut rec = vec![r.instance.clone(), r.seed.to_string()];
            rec.extend(r.cells.iter().cloned());
            rec.push(r.violations.to_string());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Parses `a..b` (end exclusive) or `a..=b`.
pub fn parse_seeds(s: &str) -> Result<Range<u64>> {
    let bad = || CliError::Args(format!("seed range `{s}` is not a..b or a..=b"));
    let (a, b, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b, false)
    } else {
        let v: u64 = s.trim().parse().map_err(|_| bad())?;
        return Ok(v..v + 1);
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    let end = if inclusive { b + 1 } else { b };
    if a > end {
        return Err(bad());
    }
    Ok(a..end)
}

trait Pipeline: Sync {
    fn instance(&self) -> String;
    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)>;
}

/// Runs `experiment` on every seed of `seeds`.
pub fn run_experiment(experiment: Experiment, cfg: Config, seeds: Range<u64>) -> Result<Table> {
    let cfg = experiment
        .defaults()
        .iter()
        .fold(cfg, |c, (k, v)| c.with_default(k, v));
    let pipeline: Box<dyn Pipeline> = match experiment {
        Experiment::EdcsValidate => Box::new(EdcsValidate::new(&cfg)?),
        Experiment::DdlGap => Box::new(DdlGap::new(&cfg)?),
        Experiment::CoresetMatching => Box::new(CoresetRun::new(&cfg, false)?),
        Experiment::CoresetVc => Box::new(CoresetRun::new(&cfg, true)?),
        Experiment::MaxmatchingCoreset => Box::new(MaxmatchingRun::new(&cfg)?),
        Experiment::LowerboundDemo => Box::new(LowerboundRun::new(&cfg)?),
        Experiment::MpcFull => Box::new(MpcFullRun::new(&cfg)?),
        Experiment::MpcIterate => Box::new(MpcIterateRun::new(&cfg)?),
        Experiment::Stream => Box::new(StreamRun::new(&cfg)?),
        Experiment::ConcentrationDemo => Box::new(ConcentrationRun::new(&cfg)?),
    };
    cfg.finish()?;
    let instance = pipeline.instance();
    let mut rows = seeds
        .into_par_iter()
        .map(|seed| {
            let (cells, violations) = pipeline.row(seed)?;
            debug_assert_eq!(cells.len(), experiment.columns().len());
            Ok(Row {
                instance: instance.clone(),
                seed,
                cells,
                violations,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| (&a.instance, a.seed).cmp(&(&b.instance, b.seed)));
    Ok(Table { experiment, rows })
}

fn fmt_f(x: f64) -> String {
    format!("{x:.6}")
}

fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn fmt_opt_f(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_default()
}

fn algo_rng(seed: u64) -> SeededRng {
    SeededRng::new(mix_seed(seed, ALGO_STREAM))
}

fn oracle_mm(g: &Graph, bip: Option<&Bipartition>) -> Option<usize> {
    match bip {
        Some(b) => hopcroft_karp(g, b).ok().map(|m| m.len()),
        None => maximum_matching(g).ok().map(|m| m.len()),
    }
}

fn ratio(a: usize, b: Option<usize>) -> Option<f64> {
    match b? {
        0 => Some(if a == 0 { 1.0 } else { f64::INFINITY }),
        b => Some(a as f64 / b as f64),
    }
}

fn edcs_params(cfg: &Config) -> Result<EdcsParams> {
    let beta: u64 = cfg.require("beta")?;
    let bm = match cfg.opt::<u64>("beta_minus")? {
        Some(bm) => bm,
        None => (((1.0 - cfg.get("lambda", 0.1)?) * beta as f64).floor()) as u64,
    };
    Ok(EdcsParams::new(beta, bm)?)
}

struct EdcsValidate {
    spec: InstanceSpec,
    params: EdcsParams,
    start: Start,
    policy: ScanPolicy,
}

impl EdcsValidate {
    fn new(cfg: &Config) -> Result<Self> {
        let start = match cfg.get("start", "empty".to_string())?.as_str() {
            "empty" => Start::Empty,
            "all" => Start::All,
            s => match s.strip_prefix("random:").map(str::parse::<f64>) {
                Some(Ok(p)) if (0.0..=1.0).contains(&p) => Start::Random(p),
                _ => {
                    return Err(CliError::ConfigValue {
                        key: "start".into(),
                        reason: format!("expected empty, all or random:<p>, got `{s}`"),
                    })
                }
            },
        };
        let policy = match cfg.get("policy", "queue".to_string())?.as_str() {
            "queue" => ScanPolicy::Queue,
            "shuffled" => ScanPolicy::ShuffledQueue,
            "random" => ScanPolicy::Random,
            s => {
                return Err(CliError::ConfigValue {
                    key: "policy".into(),
                    reason: format!("expected queue, shuffled or random, got `{s}`"),
                })
            }
        };
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            params: edcs_params(cfg)?,
            start,
            policy,
        })
    }
}

impl Pipeline for EdcsValidate {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, _) = self.spec.build(seed)?;
        let (h, trace) = construct_edcs(&g, self.params, &self.start, self.policy, &mut algo_rng(seed))?;
        let bad = validate_edcs(&h).len();
        let inc = trace.potential_strictly_increasing();
        let bound = trace.step_bound(g.n(), self.params.beta());
        let over = trace.steps as f64 > bound;
        let cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            self.params.beta().to_string(),
            self.params.beta_minus().to_string(),
            h.len().to_string(),
            trace.steps.to_string(),
            trace.p1_fixes.to_string(),
            trace.p2_fixes.to_string(),
            fmt_f(bound),
            inc.to_string(),
        ];
        Ok((cells, bad + usize::from(!inc) + usize::from(over)))
    }
}

struct DdlGap {
    spec: InstanceSpec,
    params: EdcsParams,
    c: f64,
}

impl DdlGap {
    fn new(cfg: &Config) -> Result<Self> {
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            params: edcs_params(cfg)?,
            c: cfg.get("c", 1.0)?,
        })
    }
}

impl Pipeline for DdlGap {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, _) = self.spec.build(seed)?;
        let rng = algo_rng(seed);
        let (a, _) = construct_edcs(&g, self.params, &Start::Empty, ScanPolicy::ShuffledQueue, &mut rng.child(0))?;
        let (b, _) = construct_edcs(&g, self.params, &Start::Random(0.5), ScanPolicy::Random, &mut rng.child(1))?;
        let gap = degree_gap(&a, &b, None)?;
        let beta = self.params.beta();
        let bound = self.c * (g.n().max(2) as f64).ln() * self.params.lambda().sqrt() * beta as f64;
        let bad = validate_edcs(&a).len() + validate_edcs(&b).len();
        let cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            beta.to_string(),
            self.params.beta_minus().to_string(),
            gap.to_string(),
            fmt_f(bound),
            (gap as f64 <= bound).to_string(),
        ];
        Ok((cells, bad))
    }
}

struct CoresetRun {
    spec: InstanceSpec,
    params: CoresetParams,
    cover: Option<CoverStrategy>,
}

impl CoresetRun {
    fn new(cfg: &Config, cover: bool) -> Result<Self> {
        let e = edcs_params(cfg)?;
        let mut params = CoresetParams::practice(cfg.require("k")?, e.beta(), e.beta_minus())?;
        if let Some(eps) = cfg.opt("epsilon")? {
            params = params.with_epsilon(eps)?;
        }
        let cover = if cover {
            Some(match cfg.get("cover", "matched".to_string())?.as_str() {
                "matched" => CoverStrategy::MatchedVertices,
                "exact" => CoverStrategy::Exact,
                s => {
                    return Err(CliError::ConfigValue {
                        key: "cover".into(),
                        reason: format!("expected matched or exact, got `{s}`"),
                    })
                }
            })
        } else {
            None
        };
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            params,
            cover,
        })
    }
}

impl Pipeline for CoresetRun {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, _) = self.spec.build(seed)?;
        let r = edcs_coreset(&g, &self.params, &mut algo_rng(seed))?;
        let p = &self.params;
        let mut cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            p.k.to_string(),
            p.edcs.beta().to_string(),
            p.edcs.beta_minus().to_string(),
            r.union.m().to_string(),
        ];
        match self.cover {
            None => {
                let rep = compose_and_solve(&g, &r, Problem::Matching(MatchingSolver::Exact))?;
                let lam = fitted_union_lambda(&g, &r.union, p.k, p.edcs.beta());
                cells.extend([
                    r.max_part_edges.to_string(),
                    fmt_opt(rep.matching_size),
                    fmt_opt(rep.oracle_mm),
                    fmt_opt_f(rep.matching_ratio()),
                    fmt_f(lam),
                ]);
                Ok((cells, usize::from(rep.matching_feasible != Some(true))))
            }
            Some(strategy) => {
                let rep = compose_and_solve(&g, &r, Problem::VertexCover(strategy))?;
                cells.extend([
                    fmt_opt(r.fixed.as_ref().map(|f| f.len())),
                    fmt_opt(rep.cover_size),
                    fmt_opt(rep.vc_lower_bound),
                    fmt_opt(rep.oracle_vc),
                    fmt_opt_f(rep.cover_to_lower_bound()),
                    fmt_opt_f(rep.cover_ratio()),
                ]);
                Ok((cells, usize::from(rep.cover_feasible != Some(true))))
            }
        }
    }
}

struct MaxmatchingRun {
    spec: InstanceSpec,
    k: usize,
    solver: MatchingSolver,
}

impl MaxmatchingRun {
    fn new(cfg: &Config) -> Result<Self> {
        let solver = match cfg.get("solver", "exact".to_string())?.as_str() {
            "exact" => MatchingSolver::Exact,
            "greedy" => MatchingSolver::Greedy,
            s => {
                return Err(CliError::ConfigValue {
                    key: "solver".into(),
                    reason: format!("expected exact or greedy, got `{s}`"),
                })
            }
        };
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            k: cfg.require("k")?,
            solver,
        })
    }
}

impl Pipeline for MaxmatchingRun {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, _) = self.spec.build(seed)?;
        let r = maxmatching_coreset(&g, self.k, &mut algo_rng(seed), self.solver)?;
        let rep = compose_and_solve(&g, &r, Problem::Matching(MatchingSolver::Exact))?;
        let cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            self.k.to_string(),
            r.union.m().to_string(),
            fmt_opt(rep.matching_size),
            fmt_opt(rep.oracle_mm),
            fmt_opt_f(rep.matching_ratio()),
        ];
        Ok((cells, usize::from(rep.matching_feasible != Some(true))))
    }
}

struct LowerboundRun {
    n: usize,
    k: usize,
    params: EdcsParams,
}

impl LowerboundRun {
    fn new(cfg: &Config) -> Result<Self> {
        let (n, k) = (cfg.require("n")?, cfg.require("k")?);
        edcs_core::coreset::gen_lowerbound_graph(n, k)?;
        Ok(Self {
            n,
            k,
            params: edcs_params(cfg)?,
        })
    }
}

impl Pipeline for LowerboundRun {
    fn instance(&self) -> String {
        format!("lowerbound(n={},k={})", self.n, self.k)
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let d = lowerbound_demo(self.n, self.k, self.params, mix_seed(seed, ALGO_STREAM))?;
        let cells = vec![
            d.n.to_string(),
            d.k.to_string(),
            fmt_f(d.maxmatching_ratio),
            fmt_f(d.edcs_ratio),
            d.flagged_parts.to_string(),
        ];
        Ok((cells, 0))
    }
}

/// MPC settings shared by `mpc-full`, `mpc-iterate` and the `mpc` command.
/// `s` defaults to the vertex count of the instance.
#[derive(Debug, Clone)]
pub struct MpcSettings {
    pub mode: MpcMode,
    pub s: Option<usize>,
    pub base_threshold: usize,
    pub memory_c: f64,
    pub machines: Option<usize>,
    pub average_degree: bool,
    pub schedule: edcs_core::mpc::PracticeSchedule,
}

impl MpcSettings {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        let mode = match cfg.get("mode", "practice".to_string())?.as_str() {
            "practice" => MpcMode::Practice,
            "theory" => MpcMode::Theory,
            s => {
                return Err(CliError::ConfigValue {
                    key: "mode".into(),
                    reason: format!("expected theory or practice, got `{s}`"),
                })
            }
        };
        let d = edcs_core::mpc::PracticeSchedule::default();
        Ok(Self {
            mode,
            s: cfg.opt("s")?,
            base_threshold: cfg.get("base_threshold", 16)?,
            memory_c: cfg.get("memory_c", DEFAULT_MEMORY_C)?,
            machines: cfg.opt("machines")?,
            average_degree: cfg.get("average_degree", false)?,
            schedule: edcs_core::mpc::PracticeSchedule {
                p_const: cfg.get("p_const", d.p_const)?,
                k_const: cfg.get("k_const", d.k_const)?,
                kappa: cfg.get("kappa", d.kappa)?,
                beta: cfg.get("mpc_beta", d.beta)?,
                lambda: cfg.get("mpc_lambda", d.lambda)?,
                lambda_c: cfg.get("lambda_c", d.lambda_c)?,
            },
        })
    }

    pub fn run(&self, n: usize, seed: u64) -> Result<MpcRun> {
        let mut c = match self.mode {
            MpcMode::Theory => MpcConfig::theory(self.s.unwrap_or(n.max(1)), seed),
            MpcMode::Practice => MpcConfig::practice(self.s.unwrap_or(n.max(1)), seed),
        };
        c.base_threshold = self.base_threshold;
        c.memory_c = self.memory_c;
        c.machines = self.machines;
        c.average_degree = self.average_degree;
        c.schedule = self.schedule;
        Ok(MpcRun::new(c, n)?)
    }
}

struct MpcFullRun {
    spec: InstanceSpec,
    mpc: MpcSettings,
}

impl MpcFullRun {
    fn new(cfg: &Config) -> Result<Self> {
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            mpc: MpcSettings::from_config(cfg)?,
        })
    }
}

impl Pipeline for MpcFullRun {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, _) = self.spec.build(seed)?;
        let mut run = self.mpc.run(g.n(), seed)?;
        let out = parallel_algorithm(&mut run, &g, g.max_degree(), &mut algo_rng(seed))?;
        let summary = account(&run);
        let feasible = is_matching(&g, &out.matching) && is_cover(&g, &out.cover);
        let mut deltas: Vec<String> = out.levels.iter().map(|l| l.delta.to_string()).collect();
        if let Some(l) = out.levels.last() {
            deltas.push(l.next_delta.to_string());
        }
        let cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            g.max_degree().to_string(),
            out.depth.to_string(),
            summary.rounds.to_string(),
            out.matching.len().to_string(),
            out.cover.len().to_string(),
            fmt_opt_f(ratio(out.cover.len(), Some(out.matching.len()))),
            summary.peak_memory.to_string(),
            run.budget().to_string(),
            summary.message_volume.to_string(),
            out.levels.iter().map(|l| l.repair_edges).sum::<usize>().to_string(),
            out.stalled.to_string(),
            deltas.join(";"),
        ];
        Ok((cells, usize::from(!feasible) + summary.violations.len()))
    }
}

struct MpcIterateRun {
    spec: InstanceSpec,
    mpc: MpcSettings,
    epsilon: f64,
    alpha: f64,
}

impl MpcIterateRun {
    fn new(cfg: &Config) -> Result<Self> {
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            mpc: MpcSettings::from_config(cfg)?,
            epsilon: cfg.require("epsilon")?,
            alpha: cfg.get("alpha", 8.0)?,
        })
    }
}

impl Pipeline for MpcIterateRun {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, bip) = self.spec.build(seed)?;
        let mut run = self.mpc.run(g.n(), seed)?;
        let out = iterate_matching(&mut run, &g, self.epsilon, self.alpha, &mut algo_rng(seed))?;
        let summary = account(&run);
        let mm = oracle_mm(&g, bip.as_ref());
        let cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            self.epsilon.to_string(),
            self.alpha.to_string(),
            out.planned_passes.to_string(),
            out.passes.to_string(),
            summary.rounds.to_string(),
            out.matching.len().to_string(),
            fmt_opt(mm),
            fmt_opt_f(ratio(out.matching.len(), mm)),
        ];
        Ok((cells, usize::from(!is_matching(&g, &out.matching)) + summary.violations.len()))
    }
}

struct StreamRun {
    spec: InstanceSpec,
    s_target: Option<usize>,
    variant: StreamVariant,
}

impl StreamRun {
    fn new(cfg: &Config) -> Result<Self> {
        let variant = match cfg.get("variant", "edcs".to_string())?.as_str() {
            "edcs" => StreamVariant::Edcs(edcs_params(cfg)?),
            "maxmatching" => {
                cfg.raw("beta");
                cfg.raw("beta_minus");
                StreamVariant::MaxMatching(MatchingSolver::Exact)
            }
            s => {
                return Err(CliError::ConfigValue {
                    key: "variant".into(),
                    reason: format!("expected edcs or maxmatching, got `{s}`"),
                })
            }
        };
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            s_target: cfg.opt("s_target")?,
            variant,
        })
    }
}

/// `m/k + k·n·β/2` for the EDCS variant and `m/k + k·n/2` for maximum
/// matchings: one buffered piece plus `k` stored coresets.
pub fn stream_space_bound(m: usize, n: usize, k: usize, variant: StreamVariant) -> f64 {
    let per = match variant {
        StreamVariant::Edcs(p) => p.beta() as f64,
        StreamVariant::MaxMatching(_) => 1.0,
    };
    m as f64 / k as f64 + k as f64 * n as f64 * per / 2.0
}

impl Pipeline for StreamRun {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, _) = self.spec.build(seed)?;
        let s = self.s_target.unwrap_or(g.n().max(1));
        let out = stream_coreset(&g, s, self.variant, &mut algo_rng(seed))?;
        let rep = &out.report;
        let cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            out.k.to_string(),
            s.to_string(),
            out.peak_space.to_string(),
            fmt_f(stream_space_bound(g.m(), g.n(), out.k, self.variant)),
            out.union.m().to_string(),
            fmt_opt(rep.matching_size),
            fmt_opt(rep.oracle_mm),
            fmt_opt_f(rep.matching_ratio()),
        ];
        Ok((cells, usize::from(rep.matching_feasible != Some(true))))
    }
}

struct ConcentrationRun {
    spec: InstanceSpec,
    sample_p: f64,
}

impl ConcentrationRun {
    fn new(cfg: &Config) -> Result<Self> {
        let sample_p: f64 = cfg.require("sample_p")?;
        if !(0.0..=1.0).contains(&sample_p) {
            return Err(CliError::ConfigValue {
                key: "sample_p".into(),
                reason: format!("{sample_p} outside [0, 1]"),
            });
        }
        Ok(Self {
            spec: InstanceSpec::from_config(cfg)?,
            sample_p,
        })
    }
}

impl Pipeline for ConcentrationRun {
    fn instance(&self) -> String {
        self.spec.describe()
    }

    fn row(&self, seed: u64) -> Result<(Vec<String>, usize)> {
        let (g, bip) = self.spec.build(seed)?;
        let sample = edge_sample(&g, self.sample_p, &mut algo_rng(seed));
        let full = oracle_mm(&g, bip.as_ref());
        let part = oracle_mm(&sample, bip.as_ref());
        let scale = full.map(|mm| (mm as f64 * self.sample_p).sqrt());
        let cells = vec![
            g.n().to_string(),
            g.m().to_string(),
            self.sample_p.to_string(),
            fmt_opt(full),
            fmt_opt(part),
            fmt_opt_f(scale),
        ];
        Ok((cells, 0))
    }
}
