//! Seeded random instances and small named graphs.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{canonical, Edge, Graph, Vertex};

fn check_prob(p: f64) {
    assert!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
}

/// Erdős–Rényi G(n, p).
///
/// # Panics
/// If `p` is outside `[0, 1]`.
pub fn gen_random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    check_prob(p);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_unchecked(n, edges)
}

/// Random bipartite graph with left side `0..n_left` and right side
/// `n_left..n_left + n_right`; each cross pair is an edge with probability `p`.
///
/// # Panics
/// If `p` is outside `[0, 1]`.
pub fn gen_random_bipartite<R: Rng + ?Sized>(
    n_left: usize,
    n_right: usize,
    p: f64,
    rng: &mut R,
) -> Graph {
    check_prob(p);
    let mut edges = Vec::new();
    for u in 0..n_left {
        for v in n_left..n_left + n_right {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_sorted_unchecked(n_left + n_right, edges)
}

struct EdgeBag {
    edges: Vec<Edge>,
    pos: HashMap<Edge, usize>,
    deg: Vec<usize>,
}

impl EdgeBag {
    fn has(&self, a: Vertex, b: Vertex) -> bool {
        self.pos.contains_key(&canonical(a, b))
    }

    fn add(&mut self, a: Vertex, b: Vertex) -> bool {
        if a == b || self.has(a, b) {
            return false;
        }
        let e = canonical(a, b);
        self.pos.insert(e, self.edges.len());
        self.edges.push(e);
        self.deg[a] += 1;
        self.deg[b] += 1;
        true
    }

    fn remove_at(&mut self, i: usize) -> Edge {
        let e = self.edges.swap_remove(i);
        self.pos.remove(&e);
        if i < self.edges.len() {
            self.pos.insert(self.edges[i], i);
        }
        self.deg[e.0] -= 1;
        self.deg[e.1] -= 1;
        e
    }
}

/// Near-`d`-regular graph: stub pairing followed by a repair phase.
///
/// Every degree ends in `[d − 2, d]`; in practice all vertices have degree
/// exactly `d` except one vertex at `d − 1` when `n·d` is odd.
///
/// # Panics
/// If `d >= n` while `n > 0`.
pub fn gen_regular_ish<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Graph {
    if n == 0 || d == 0 {
        return Graph::empty(n);
    }
    assert!(d < n, "degree {d} impossible on {n} vertices");
    if d == n - 1 {
        return complete_graph(n);
    }
    if 2 * d > n {
        return dense_regular_ish(n, d, rng);
    }
    let mut bag = EdgeBag {
        edges: Vec::with_capacity(n * d / 2),
        pos: HashMap::with_capacity(n * d / 2),
        deg: vec![0; n],
    };
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    for pair in stubs.chunks_exact(2) {
        bag.add(pair[0], pair[1]);
    }

    let mut deficit: Vec<Vertex> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, d - bag.deg[v]))
        .collect();
    deficit.shuffle(rng);
    let max_tries = 64 * n;
    while deficit.len() >= 2 {
        let u = deficit.pop().unwrap();
        if let Some(j) = deficit.iter().position(|&v| v != u && !bag.has(u, v)) {
            let v = deficit.swap_remove(j);
            bag.add(u, v);
            continue;
        }
        // Every remaining deficit vertex is u itself or already adjacent to
        // u: splice u and a partner w into a random edge (x, y).
        let w = deficit.pop().unwrap();
        let mut done = false;
        for _ in 0..max_tries {
            let i = rng.gen_range(0..bag.edges.len());
            let (mut x, mut y) = bag.edges[i];
            if rng.gen::<bool>() {
                std::mem::swap(&mut x, &mut y);
            }
            if [x, y].contains(&u) || [x, y].contains(&w) || bag.has(u, x) || bag.has(w, y) {
                continue;
            }
            bag.remove_at(i);
            bag.add(u, x);
            bag.add(w, y);
            done = true;
            break;
        }
        if !done {
            break;
        }
    }

    let mut edges = bag.edges;
    edges.sort_unstable();
    Graph::from_sorted_unchecked(n, edges)
}

/// Complement of a sparse `(n − 1 − d)`-regular-ish graph, trimmed back to
/// maximum degree `d`. Stub pairing alone leaves too many collisions here.
fn dense_regular_ish<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Graph {
    let sparse = gen_regular_ish(n, n - 1 - d, rng);
    let mut adj = vec![vec![false; n]; n];
    for (u, row) in adj.iter_mut().enumerate() {
        row[u] = true;
        for w in sparse.neighbors(u) {
            row[w] = true;
        }
    }
    let mut deg: Vec<usize> = (0..n).map(|u| n - 1 - sparse.degree(u)).collect();
    for u in 0..n {
        while deg[u] > d {
            let pick = (0..n)
                .filter(|&w| !adj[u][w])
                .max_by_key(|&w| (deg[w] > d, deg[w], std::cmp::Reverse(w)))
                .expect("excess vertex has neighbors");
            adj[u][pick] = true;
            adj[pick][u] = true;
            deg[u] -= 1;
            deg[pick] -= 1;
        }
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !adj[u][v])
        .collect();
    Graph::from_sorted_unchecked(n, edges)
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted_unchecked(n, edges)
}

/// `K_{a,b}` with left side `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted_unchecked(a + b, edges)
}

pub fn path_graph(n: usize) -> Graph {
    let edges = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_sorted_unchecked(n, edges)
}

/// # Panics
/// If `n < 3`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
}

/// Star `K_{1,leaves}` with center 0.
pub fn star_graph(leaves: usize) -> Graph {
    let edges = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_sorted_unchecked(leaves + 1, edges)
}

/// `pairs` disjoint edges `(2i, 2i+1)`.
pub fn perfect_matching_graph(pairs: usize) -> Graph {
    let edges = (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_sorted_unchecked(2 * pairs, edges)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i — i+5`.
pub fn petersen_graph() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, edges).expect("valid Petersen graph")
}
