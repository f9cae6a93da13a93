//! Outputs compared with independent brute-force enumeration.

use edcs_core::coreset::gen_lowerbound_graph;
use edcs_core::edcs::{construct_edcs, EdcsParams, ScanPolicy, Start};
use edcs_core::generators::{cycle_graph, gen_random_graph, petersen_graph};
use edcs_core::matching::{
    exact_vc_bruteforce, hopcroft_karp, maximum_matching, minimum_vertex_cover, vizing_lower_bound,
};
use edcs_core::{Edge, Graph, SeededRng};

fn all_pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every subset of `g`'s edges satisfying both EDCS properties, as bitmasks
/// over `g.edges()`.
fn valid_edcs_masks(g: &Graph, beta: u64, beta_minus: u64) -> Vec<u32> {
    let edges = g.edges();
    let mut out = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        let mut deg = vec![0u64; g.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let ok = edges.iter().enumerate().all(|(i, &(u, v))| {
            let sum = deg[u] + deg[v];
            if mask >> i & 1 == 1 {
                sum <= beta
            } else {
                sum >= beta_minus
            }
        });
        if ok {
            out.push(mask);
        }
    }
    out
}

fn mask_of(g: &Graph, h: &[Edge]) -> u32 {
    h.iter().map(|&(u, v)| 1u32 << g.edge_id(u, v).unwrap()).sum()
}

#[test]
fn construction_lands_in_enumerated_set() {
    let mut rng = SeededRng::new(11);
    let mut checked = 0;
    for n in 1..=5 {
        let pairs = all_pairs(n);
        for gm in 0u32..(1 << pairs.len()) {
            let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| gm >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            for beta in 1..=6u64 {
                for beta_minus in 0..beta {
                    let valid = valid_edcs_masks(&g, beta, beta_minus);
                    assert!(!valid.is_empty());
                    let params = EdcsParams::new(beta, beta_minus).unwrap();
                    for (start, policy) in [
                        (Start::Empty, ScanPolicy::Queue),
                        (Start::All, ScanPolicy::Random),
                        (Start::Random(0.5), ScanPolicy::ShuffledQueue),
                    ] {
                        let (h, _) = construct_edcs(&g, params, &start, policy, &mut rng).unwrap();
                        assert!(valid.contains(&mask_of(&g, &h.edges())), "n {n} graph {gm} beta {beta}/{beta_minus}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 60_000);
}

#[test]
fn triangle_and_k4_enumerations() {
    let k3 = Graph::new(3, all_pairs(3)).unwrap();
    let valid = valid_edcs_masks(&k3, 2, 1);
    assert_eq!(valid.len(), 3);
    assert!(valid.iter().all(|m| m.count_ones() == 1));

    let k4 = Graph::new(4, all_pairs(4)).unwrap();
    let valid = valid_edcs_masks(&k4, 2, 1);
    assert_eq!(valid.len(), 3);
    for m in valid {
        let h: Vec<Edge> = (0..6).filter(|i| m >> i & 1 == 1).map(|i| k4.edges()[i]).collect();
        assert_eq!(h.len(), 2);
        assert_ne!(h[0].0, h[1].0);
        assert!(![h[1].0, h[1].1].contains(&h[0].1));
    }
}

fn brute_mm(g: &Graph) -> usize {
    let edges = g.edges();
    let mut best = 0;
    for mask in 0u32..(1 << edges.len()) {
        let mut used = vec![false; g.n()];
        let mut ok = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if used[u] || used[v] {
                    ok = false;
                    break;
                }
                used[u] = true;
                used[v] = true;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

fn brute_vc(g: &Graph) -> usize {
    (0u32..(1 << g.n()))
        .filter(|s| g.edges().iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

#[test]
fn exact_solvers_match_enumeration() {
    for seed in 0..150 {
        let mut rng = SeededRng::new(seed);
        let n = 2 + (seed as usize % 8);
        let g = gen_random_graph(n, 0.45, &mut rng);
        if g.m() > 18 {
            continue;
        }
        assert_eq!(maximum_matching(&g).unwrap().len(), brute_mm(&g), "seed {seed}");
        assert_eq!(minimum_vertex_cover(&g).unwrap().len(), brute_vc(&g), "seed {seed}");
        assert_eq!(exact_vc_bruteforce(&g).unwrap().len(), brute_vc(&g), "seed {seed}");
    }
}

#[test]
fn named_graph_optima() {
    assert_eq!(maximum_matching(&petersen_graph()).unwrap().len(), 5);
    assert_eq!(brute_mm(&petersen_graph()), 5);
    assert_eq!(maximum_matching(&cycle_graph(5)).unwrap().len(), 2);
    assert_eq!(minimum_vertex_cover(&cycle_graph(5)).unwrap().len(), 3);
    assert_eq!(brute_vc(&cycle_graph(5)), 3);
}

#[test]
fn lower_bound_graph_sizes() {
    let inst = gen_lowerbound_graph(8, 4).unwrap();
    assert_eq!(inst.graph.n(), 6 + 4 + 4 + 4);
    assert_eq!(inst.graph.m(), 6 * 4 + 4 + 4);
    assert_eq!(hopcroft_karp(&inst.graph, &inst.bipartition).unwrap().len(), 8);

    let inst = gen_lowerbound_graph(40, 4).unwrap();
    assert_eq!(hopcroft_karp(&inst.graph, &inst.bipartition).unwrap().len(), 40);
}

#[test]
fn vizing_bound_substitution() {
    // γ·Δ·|V_high| / (2(Δ + 1)) with γ = 1/2, Δ = 9, |V_high| = 20.
    assert!((vizing_lower_bound(9, 0.5, 20) - 4.5).abs() < 1e-12);
}
