//! Acceptance gate: one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.

use std::time::{Duration, Instant};

use edcs_cli::{run_experiment, Config, Experiment, Table};
use edcs_core::edcs::{construct_edcs, degree_gap, validate_edcs, EdcsParams, ScanPolicy, Start};
use edcs_core::generators::{gen_random_graph, gen_regular_ish};
use edcs_core::mpc::{account, parallel_edcs, MpcConfig, MpcRun, PedcsParams};
use edcs_core::{Edge, Graph, SeededRng};
use rand::Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn column(t: &Table, name: &str) -> Vec<String> {
    let idx = t.experiment.header().iter().position(|h| *h == name).expect(name) - 2;
    t.rows.iter().map(|r| r.cells[idx].clone()).collect()
}

fn floats(t: &Table, name: &str) -> Vec<f64> {
    column(t, name).iter().map(|v| v.parse().unwrap()).collect()
}

fn frac(xs: &[bool]) -> f64 {
    xs.iter().filter(|&&x| x).count() as f64 / xs.len() as f64
}

fn run(e: Experiment, cfg: &str, seeds: u64) -> Table {
    run_experiment(e, Config::parse(cfg).unwrap(), 0..seeds).unwrap()
}

fn edcs_soundness() -> Outcome {
    let mut fuzz = SeededRng::new(0xEDC5);
    let cases: Vec<(u64, usize, f64, u64, u64, u8, u8)> = (0..1000)
        .map(|i| {
            let beta = fuzz.gen_range(3..=60u64);
            (
                i,
                fuzz.gen_range(2..=120usize),
                fuzz.gen_range(0.02..0.6),
                beta,
                fuzz.gen_range(1..beta),
                fuzz.gen_range(0..4u8),
                fuzz.gen_range(0..3u8),
            )
        })
        .collect();
    let results: Vec<(bool, bool, bool, bool)> = cases
        .par_iter()
        .map(|&(seed, n, p, beta, bm, start, policy)| {
            let mut rng = SeededRng::new(seed);
            let g = gen_random_graph(n, p, &mut rng);
            let start_edges: Vec<Edge> = match start {
                0 => Vec::new(),
                1 => g.edges().to_vec(),
                _ => {
                    let q: f64 = rng.gen();
                    g.edges().iter().copied().filter(|_| rng.gen_bool(q)).collect()
                }
            };
            let start_size = start_edges.len();
            let policy = [ScanPolicy::Queue, ScanPolicy::ShuffledQueue, ScanPolicy::Random][policy as usize];
            let params = EdcsParams::new(beta, bm).unwrap();
            let (h, trace) = construct_edcs(&g, params, &Start::Edges(start_edges), policy, &mut rng).unwrap();
            let bound = 2.0 * n as f64 * (beta as f64).powi(2);
            // An EDCS has at most n(β − 1)/2 edges, so a start larger than
            // that by more than the bound needs more removals than it allows.
            let forced = start_size as f64 - n as f64 * (beta - 1) as f64 / 2.0 > bound;
            (
                validate_edcs(&h).is_empty(),
                trace.potential_strictly_increasing(),
                trace.steps as f64 <= bound || (forced && trace.steps as f64 <= trace.step_bound(n, beta)),
                trace.steps as f64 > bound,
            )
        })
        .collect();
    let valid = results.iter().all(|r| r.0);
    let inc = results.iter().all(|r| r.1);
    let bounded = results.iter().all(|r| r.2);
    let over = results.iter().filter(|r| r.3).count();
    Outcome {
        pass: valid && inc && bounded,
        detail: format!(
            "1000 runs: valid={valid} potential_increasing={inc} steps_within_2nβ²={bounded} ({over} runs over 2nβ², each from a start whose forced removals exceed it)"
        ),
    }
}

fn valid_masks(g: &Graph, beta: u64, beta_minus: u64) -> Vec<u32> {
    let edges = g.edges();
    (0u32..1 << edges.len())
        .filter(|mask| {
            let mut deg = vec![0u64; g.n()];
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            edges.iter().enumerate().all(|(i, &(u, v))| {
                let s = deg[u] + deg[v];
                if mask >> i & 1 == 1 {
                    s <= beta
                } else {
                    s >= beta_minus
                }
            })
        })
        .collect()
}

fn micro_oracle() -> Outcome {
    let cases: Vec<(usize, u32)> = (1..=5usize)
        .flat_map(|n| (0u32..1 << (n * (n - 1) / 2)).map(move |gm| (n, gm)))
        .collect();
    let (checked, bad): (usize, usize) = cases
        .par_iter()
        .map(|&(n, gm)| {
            let pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| gm >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            let mut rng = SeededRng::new(gm as u64 ^ (n as u64) << 32);
            let (mut checked, mut bad) = (0, 0);
            for beta in 1..=6u64 {
                for bm in 0..beta {
                    let valid = valid_masks(&g, beta, bm);
                    for (start, policy) in [
                        (Start::Empty, ScanPolicy::Queue),
                        (Start::All, ScanPolicy::Random),
                        (Start::Random(0.5), ScanPolicy::ShuffledQueue),
                    ] {
                        let (h, _) = construct_edcs(&g, EdcsParams::new(beta, bm).unwrap(), &start, policy, &mut rng).unwrap();
                        let mask: u32 = h.edges().iter().map(|&(u, v)| 1u32 << g.edge_id(u, v).unwrap()).sum();
                        checked += 1;
                        bad += usize::from(!valid.contains(&mask));
                    }
                }
            }
            (checked, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Outcome {
        pass: bad == 0,
        detail: format!("{checked} constructions on all graphs with <= 5 vertices, {bad} outside the enumerated EDCS set"),
    }
}

fn degree_distribution() -> Outcome {
    let (n, beta, lambda) = (500usize, 40u64, 0.1);
    let params = EdcsParams::from_lambda(beta, lambda).unwrap();
    let bound = 1.0 * (n as f64).ln() * lambda.sqrt() * beta as f64;
    let gaps: Vec<u64> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let g = gen_random_graph(n, 40.0 / (n - 1) as f64, &mut SeededRng::new(seed));
            let (a, _) = construct_edcs(&g, params, &Start::Empty, ScanPolicy::ShuffledQueue, &mut SeededRng::new(2 * seed + 1000)).unwrap();
            let (b, _) = construct_edcs(&g, params, &Start::Random(0.5), ScanPolicy::Random, &mut SeededRng::new(2 * seed + 1001)).unwrap();
            degree_gap(&a, &b, None).unwrap()
        })
        .collect();
    let over = gaps.iter().filter(|&&g| g as f64 > bound).count();
    Outcome {
        pass: over <= 1,
        detail: format!(
            "bound {bound:.1}, max gap {}, {over}/20 over the bound",
            gaps.iter().max().unwrap()
        ),
    }
}

const CORESET_CFG: &str = "family = bipartite\nn_left = 400\nn_right = 400\np = 0.15\nk = 4\nbeta = 40\nbeta_minus = 36\n";

fn coreset_matching() -> Outcome {
    let t = run(Experiment::CoresetMatching, CORESET_CFG, 100);
    let ok: Vec<bool> = floats(&t, "ratio").iter().map(|&r| r >= 1.0 / 1.6).collect();
    let lam = floats(&t, "fitted_lambda").into_iter().fold(0.0, f64::max);
    Outcome {
        pass: frac(&ok) >= 0.9 && t.violations() == 0,
        detail: format!("ratio >= 1/1.6 on {:.0}% of 100 seeds, max fitted lambda {lam:.3}", 100.0 * frac(&ok)),
    }
}

fn coreset_vc() -> Outcome {
    let t = run(Experiment::CoresetVc, CORESET_CFG, 100);
    let feasible = t.violations() == 0;
    let ok: Vec<bool> = floats(&t, "cover_to_lower_bound").iter().map(|&r| r <= 4.5).collect();
    Outcome {
        pass: feasible && frac(&ok) >= 0.9,
        detail: format!(
            "feasible on all seeds: {feasible}; |C| <= 4.5 x maximal matching on {:.0}% of 100 seeds",
            100.0 * frac(&ok)
        ),
    }
}

fn warm_up_bounds() -> Outcome {
    let t = run(
        Experiment::MaxmatchingCoreset,
        "family = bipartite\nn_left = 300\nn_right = 300\np = 0.1\nk = 5\n",
        50,
    );
    let worst = floats(&t, "ratio").into_iter().fold(1.0, f64::min);
    let lb = run(Experiment::LowerboundDemo, "n = 2000\nk = 10\nbeta = 40\nbeta_minus = 36\n", 20);
    let ok: Vec<bool> = floats(&lb, "maxmatching_ratio").iter().map(|&r| r <= 0.62).collect();
    let edcs_min = floats(&lb, "edcs_ratio").into_iter().fold(1.0, f64::min);
    Outcome {
        pass: worst >= 1.0 / 3.0 && frac(&ok) >= 0.9,
        detail: format!(
            "maximum-matching coreset worst ratio {worst:.3} over 50 seeds; adversarial union <= 0.62 on {:.0}% of 20 seeds (EDCS union min {edcs_min:.3})",
            100.0 * frac(&ok)
        ),
    }
}

fn parallel_algorithm_criterion() -> Outcome {
    let t = run(Experiment::MpcFull, "family = regular\nn = 4000\nd = 256\nbase_threshold = 16\n", 50);
    let feasible = t.rows.iter().all(|r| r.violations == 0);
    let dual: Vec<bool> = floats(&t, "cover_over_matching").iter().map(|&r| r <= 8.0).collect();
    let depth = floats(&t, "depth").into_iter().fold(0.0, f64::max);
    let decreasing = column(&t, "deltas").iter().zip(column(&t, "stalled")).all(|(d, s)| {
        let ds: Vec<u64> = d.split(';').filter(|x| !x.is_empty()).map(|x| x.parse().unwrap()).collect();
        s == "false" && ds.windows(2).all(|w| w[1] < w[0])
    });
    Outcome {
        pass: feasible && frac(&dual) >= 0.9 && depth <= 4.0 && decreasing,
        detail: format!(
            "feasible {feasible}; |V| <= 8|M| on {:.0}% of 50 seeds; max depth {depth}; strictly decreasing degrees {decreasing}",
            100.0 * frac(&dual)
        ),
    }
}

fn memory_law() -> Outcome {
    let (n, d) = (2000usize, 1500usize);
    let results: Vec<(usize, usize, usize, bool)> = (0..10u64)
        .map(|seed| {
            let g = gen_regular_ish(n, d, &mut SeededRng::new(seed));
            let cfg = MpcConfig::theory(n, seed);
            let guard = cfg.base_case_threshold(n);
            let mut run = MpcRun::new(cfg, n).unwrap();
            let params = PedcsParams::theory(n, n, g.max_degree()).unwrap();
            parallel_edcs(&mut run, &g, &params, &mut SeededRng::new(seed)).unwrap();
            let s = account(&run);
            (s.violations.len(), s.peak_memory, run.budget(), (g.max_degree() as f64) < guard)
        })
        .collect();
    let violations: usize = results.iter().map(|r| r.0).sum();
    let peak = results.iter().map(|r| r.1).max().unwrap();
    let raw = n as f64 * (n as f64).ln().powi(2);
    Outcome {
        pass: violations == 0,
        detail: format!(
            "{violations} violations over 10 seeds; peak load {peak} vs budget {} = 20000·s·ln²n (peak / s·ln²n = {:.1}); below theory base-case guard: {}",
            results[0].2,
            peak as f64 / raw,
            results.iter().all(|r| r.3)
        ),
    }
}

fn iteration() -> Outcome {
    let t = run(
        Experiment::MpcIterate,
        "family = bipartite\nn_left = 1000\nn_right = 1000\np = 0.05\nepsilon = 0.2\nalpha = 8\n",
        30,
    );
    let ok: Vec<bool> = floats(&t, "ratio").iter().map(|&r| r >= 1.0 / 2.3).collect();
    Outcome {
        pass: frac(&ok) >= 0.9 && t.violations() == 0,
        detail: format!(
            "ratio >= 1/2.3 on {:.0}% of 30 seeds, min {:.3}",
            100.0 * frac(&ok),
            floats(&t, "ratio").into_iter().fold(1.0, f64::min)
        ),
    }
}

fn streaming() -> Outcome {
    let t = run(
        Experiment::Stream,
        "family = bipartite\nn_left = 500\nn_right = 500\np = 0.1\nbeta = 40\nbeta_minus = 36\n",
        50,
    );
    let ok: Vec<bool> = floats(&t, "ratio").iter().map(|&r| r >= 1.0 / 1.6).collect();
    let space = floats(&t, "peak_space")
        .iter()
        .zip(floats(&t, "space_bound"))
        .all(|(&p, b)| p <= 1.1 * b);
    Outcome {
        pass: frac(&ok) >= 0.9 && space,
        detail: format!(
            "ratio >= 1/1.6 on {:.0}% of 50 seeds; peak space within bound + 10% on all: {space}",
            100.0 * frac(&ok)
        ),
    }
}

fn determinism() -> Outcome {
    let mut differing = Vec::new();
    for e in Experiment::ALL {
        let csv = || {
            let t = run_experiment(e, Config::default(), 0..2).unwrap();
            let mut buf = Vec::new();
            t.write_csv(&mut buf).unwrap();
            buf
        };
        if csv() != csv() {
            differing.push(e.name());
        }
    }
    Outcome {
        pass: differing.is_empty(),
        detail: format!("{} experiments re-run on seeds 0..2; differing: {differing:?}", Experiment::ALL.len()),
    }
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 11] = [
        ("edcs-soundness", edcs_soundness, Some(Duration::from_secs(60))),
        ("micro-oracle", micro_oracle, Some(Duration::from_secs(120))),
        ("degree-distribution", degree_distribution, None),
        ("coreset-matching", coreset_matching, Some(Duration::from_secs(300))),
        ("coreset-vertex-cover", coreset_vc, None),
        ("warm-up-bounds", warm_up_bounds, None),
        ("parallel-algorithm", parallel_algorithm_criterion, Some(Duration::from_secs(300))),
        ("memory-law", memory_law, None),
        ("matching-iteration", iteration, None),
        ("streaming", streaming, None),
        ("determinism", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut out = f();
        let took = t.elapsed();
        if let Some(l) = limit {
            if took > *l {
                out.pass = false;
                out.detail.push_str(&format!("; exceeded time limit {l:?}"));
            }
        }
        failed += usize::from(!out.pass);
        println!(
            "acceptance {:>2} {:<22} {} ({:.1}s) {}",
            i + 1,
            name,
            if out.pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
