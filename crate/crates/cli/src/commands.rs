//! `edcs gen` and `edcs mpc`.

use std::path::Path;

use edcs_core::coreset::gen_lowerbound_graph;
use edcs_core::generators::{gen_random_bipartite, gen_random_graph, gen_regular_ish};
use edcs_core::io::{read_graph_path, write_graph_with_comments};
use edcs_core::matching::{greedy_maximal_matching, is_cover, is_matching, maximum_matching, EdgeOrder};
use edcs_core::mpc::{account, iterate_matching, parallel_algorithm};
use edcs_core::report::ApproxReport;
use edcs_core::{Graph, SeededRng};

use crate::error::{CliError, Result};
use crate::experiments::MpcSettings;

fn arg<T: std::str::FromStr>(params: &[String], i: usize, name: &str) -> Result<T> {
    let raw = params
        .get(i)
        .ok_or_else(|| CliError::Args(format!("missing parameter `{name}`")))?;
    // Accept both `8` and `n=8`.
    let v = match raw.split_once('=') {
        Some((k, v)) if k == name => v,
        Some((k, _)) => return Err(CliError::Args(format!("expected `{name}`, got `{k}`"))),
        None => raw.as_str(),
    };
    v.parse()
        .map_err(|_| CliError::Args(format!("cannot parse `{name}` from `{raw}`")))
}

fn prob(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(CliError::Args(format!("probability {p} outside [0, 1]")))
    }
}

/// Builds a graph from a generator name and its positional parameters:
/// `lowerbound n k`, `bipartite n_left n_right p`, `er n p`, `regular n d`.
/// Returns the graph and header comments describing it.
pub fn generate(generator: &str, params: &[String], seed: u64) -> Result<(Graph, Vec<String>)> {
    let expect = |count: usize| {
        if params.len() == count {
            Ok(())
        } else {
            Err(CliError::Args(format!(
                "`{generator}` takes {count} parameters, got {}",
                params.len()
            )))
        }
    };
    let rng = &mut SeededRng::new(seed);
    let (g, comment) = match generator {
        "lowerbound" => {
            expect(2)?;
            let (n, k): (usize, usize) = (arg(params, 0, "n")?, arg(params, 1, "k")?);
            let inst = gen_lowerbound_graph(n, k)?;
            let half = n / 2;
            let l1 = half + n / k;
            let layout = format!(
                "layers L1=0..{l1} L2={l1}..{} R1={}..{} R2={}..{}",
                l1 + half,
                l1 + half,
                l1 + 2 * half,
                l1 + 2 * half,
                l1 + 3 * half
            );
            (inst.graph, vec![format!("lowerbound n={n} k={k}"), layout])
        }
        "bipartite" => {
            expect(3)?;
            let (a, b): (usize, usize) = (arg(params, 0, "n_left")?, arg(params, 1, "n_right")?);
            let p = prob(arg(params, 2, "p")?)?;
            (
                gen_random_bipartite(a, b, p, rng),
                vec![format!("bipartite n_left={a} n_right={b} p={p} seed={seed}"), format!("left 0..{a}")],
            )
        }
        "er" => {
            expect(2)?;
            let n: usize = arg(params, 0, "n")?;
            let p = prob(arg(params, 1, "p")?)?;
            (gen_random_graph(n, p, rng), vec![format!("er n={n} p={p} seed={seed}")])
        }
        "regular" => {
            expect(2)?;
            let (n, d): (usize, usize) = (arg(params, 0, "n")?, arg(params, 1, "d")?);
            if n > 0 && d >= n {
                return Err(CliError::Args(format!("degree {d} impossible on {n} vertices")));
            }
            (gen_regular_ish(n, d, rng), vec![format!("regular n={n} d={d} seed={seed}")])
        }
        other => return Err(CliError::Args(format!("unknown generator `{other}`"))),
    };
    Ok((g, comment))
}

pub fn gen_to_path(generator: &str, params: &[String], seed: u64, out: &Path) -> Result<Graph> {
    let (g, comments) = generate(generator, params, seed)?;
    let file = std::io::BufWriter::new(std::fs::File::create(out)?);
    write_graph_with_comments(file, &g, &comments)?;
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MpcAlgorithm {
    Full,
    Iterate,
}

pub struct MpcRequest<'a> {
    pub input: &'a Path,
    pub settings: MpcSettings,
    pub algorithm: MpcAlgorithm,
    pub epsilon: f64,
    pub alpha: f64,
    pub seed: u64,
    pub trace_out: Option<&'a Path>,
}

/// Runs one MPC pipeline on a graph file; returns the report and the number
/// of violations (infeasible outputs plus memory violations).
pub fn run_mpc(req: &MpcRequest<'_>) -> Result<(ApproxReport, usize)> {
    let g = read_graph_path(req.input)?;
    let mut run = req.settings.run(g.n(), req.seed)?;
    let rng = &mut SeededRng::new(req.seed);
    let name = match req.algorithm {
        MpcAlgorithm::Full => "mpc-full",
        MpcAlgorithm::Iterate => "mpc-iterate",
    };
    let mut rep = ApproxReport::new(req.input.display().to_string(), name, req.seed);
    let mut bad = 0;
    match req.algorithm {
        MpcAlgorithm::Full => {
            let out = parallel_algorithm(&mut run, &g, g.max_degree(), rng)?;
            let (fm, fc) = (is_matching(&g, &out.matching), is_cover(&g, &out.cover));
            bad += usize::from(!fm) + usize::from(!fc);
            rep.matching_size = Some(out.matching.len());
            rep.matching_feasible = Some(fm);
            rep.cover_size = Some(out.cover.len());
            rep.cover_feasible = Some(fc);
            rep.resources.insert("depth".into(), out.depth as f64);
            rep.resources.insert("stalled".into(), f64::from(u8::from(out.stalled)));
        }
        MpcAlgorithm::Iterate => {
            let out = iterate_matching(&mut run, &g, req.epsilon, req.alpha, rng)?;
            let fm = is_matching(&g, &out.matching);
            bad += usize::from(!fm);
            rep.matching_size = Some(out.matching.len());
            rep.matching_feasible = Some(fm);
            rep.resources.insert("passes".into(), out.passes as f64);
        }
    }
    rep.oracle_mm = maximum_matching(&g).ok().map(|m| m.len());
    rep.vc_lower_bound = Some(greedy_maximal_matching(&g, &EdgeOrder::Natural)?.len());
    let summary = account(&run);
    bad += summary.violations.len();
    rep.resources.insert("rounds".into(), summary.rounds as f64);
    rep.resources.insert("peak_memory".into(), summary.peak_memory as f64);
    rep.resources.insert("messages".into(), summary.message_volume as f64);
    rep.resources.insert("budget".into(), run.budget() as f64);
    rep.resources.insert("memory_violations".into(), summary.violations.len() as f64);
    if let Some(path) = req.trace_out {
        let f = std::io::BufWriter::new(std::fs::File::create(path)?);
        serde_json::to_writer(f, run.trace())?;
    }
    Ok((rep, bad))
}
