//! Single-pass random-arrival streaming with the coreset algorithm.
//!
//! The stream is cut into `k = ⌈√(m/s)⌉` consecutive pieces of `⌊m/k⌋` edges
//! (the last piece takes the remainder). Each piece is buffered, summarized
//! by an EDCS or a maximum matching, and dropped.

use rand::seq::SliceRandom;

use crate::edcs::{construct_edcs, EdcsParams, ScanPolicy, Start};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matching::{is_matching, maximum_matching, MatchingSolver};
use crate::report::ApproxReport;
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StreamVariant {
    Edcs(EdcsParams),
    MaxMatching(MatchingSolver),
}

impl StreamVariant {
    pub fn name(&self) -> &'static str {
        match self {
            StreamVariant::Edcs(_) => "stream-edcs",
            StreamVariant::MaxMatching(_) => "stream-maxmatching",
        }
    }
}

/// Edges in arrival order, readable once.
pub struct EdgeStream {
    inner: std::vec::IntoIter<Edge>,
    consumed: usize,
}

impl EdgeStream {
    /// A uniformly random arrival order of `g`'s edges.
    pub fn shuffled(g: &Graph, rng: &mut SeededRng) -> Self {
        let mut edges = g.edges().to_vec();
        edges.shuffle(rng);
        Self {
            inner: edges.into_iter(),
            consumed: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }
}

impl Iterator for EdgeStream {
    type Item = Edge;

    fn next(&mut self) -> Option<Edge> {
        let e = self.inner.next()?;
        self.consumed += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

#[derive(Debug, Clone)]
pub struct StreamOutcome {
    /// Union of the per-piece coresets.
    pub union: Graph,
    pub report: ApproxReport,
    /// Maximum of buffered piece plus stored coresets, in edges.
    pub peak_space: usize,
    pub k: usize,
    pub piece_sizes: Vec<usize>,
}

/// `⌈√(m/s)⌉`, at least 1.
pub fn piece_count(m: usize, s_target: usize) -> usize {
    ((m as f64 / s_target as f64).sqrt().ceil() as usize).max(1)
}

/// Runs the coreset algorithm over a random-arrival stream of `g`.
///
/// The union is solved exactly when it is bipartite or small, greedily
/// otherwise. Fails if `s_target < n`, since memory must hold at least a
/// coreset.
pub fn stream_coreset(g: &Graph, s_target: usize, variant: StreamVariant, rng: &mut SeededRng) -> Result<StreamOutcome> {
    let n = g.n();
    if s_target < n.max(1) {
        return Err(Error::InvalidParameter(format!("stream space {s_target} below n = {n}")));
    }
    let m = g.m();
    let k = piece_count(m, s_target);
    let mut stream = EdgeStream::shuffled(g, rng);
    let mut kept: Vec<Edge> = Vec::new();
    let mut peak = 0;
    let mut piece_sizes = Vec::with_capacity(k);
    for i in 0..k {
        let size = if i + 1 == k { m - (m / k) * (k - 1) } else { m / k };
        let buffer: Vec<Edge> = stream.by_ref().take(size).collect();
        piece_sizes.push(buffer.len());
        peak = peak.max(buffer.len() + kept.len());
        let piece = Graph::new(n, buffer)?;
        match variant {
            StreamVariant::Edcs(params) => {
                let (h, _) = construct_edcs(&piece, params, &Start::Empty, ScanPolicy::Queue, &mut rng.child(i as u64))?;
                kept.extend(h.edges());
            }
            StreamVariant::MaxMatching(solver) => kept.extend_from_slice(solver.solve(&piece)?.edges()),
        }
        peak = peak.max(kept.len());
    }
    debug_assert_eq!(stream.consumed(), m);

    let union = Graph::new(n, kept)?;
    let mut report = ApproxReport::new(format!("n={} m={}", n, m), variant.name(), rng.seed());
    let (mm, exact) = match maximum_matching(&union) {
        Ok(mm) => (mm, true),
        Err(Error::OracleTooLarge { .. }) => (MatchingSolver::Greedy.solve(&union)?, false),
        Err(e) => return Err(e),
    };
    report.matching_feasible = Some(is_matching(g, &mm));
    report.matching_size = Some(mm.len());
    report.exact_solver = exact;
    report.oracle_mm = maximum_matching(g).ok().map(|m| m.len());
    report.resources.insert("k".into(), k as f64);
    report.resources.insert("peak_space".into(), peak as f64);
    report.resources.insert("union_edges".into(), union.m() as f64);
    Ok(StreamOutcome {
        union,
        report,
        peak_space: peak,
        k,
        piece_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn single_piece_is_whole_graph() {
        let g = complete_bipartite(4, 5);
        let out = stream_coreset(&g, 100, StreamVariant::MaxMatching(MatchingSolver::Exact), &mut SeededRng::new(1)).unwrap();
        assert_eq!(out.k, 1);
        assert_eq!(out.piece_sizes, vec![20]);
        assert_eq!(out.report.matching_ratio(), Some(1.0));
    }

    #[test]
    fn empty_graph() {
        let g = Graph::empty(4);
        let p = EdcsParams::new(4, 2).unwrap();
        let out = stream_coreset(&g, 4, StreamVariant::Edcs(p), &mut SeededRng::new(1)).unwrap();
        assert_eq!((out.union.m(), out.peak_space), (0, 0));
    }

    #[test]
    fn pieces_cover_stream() {
        let g = gen_random_graph(60, 0.3, &mut SeededRng::new(3));
        let p = EdcsParams::new(6, 4).unwrap();
        let out = stream_coreset(&g, 60, StreamVariant::Edcs(p), &mut SeededRng::new(2)).unwrap();
        assert_eq!(out.k, piece_count(g.m(), 60));
        assert_eq!(out.piece_sizes.iter().sum::<usize>(), g.m());
        assert!(out.piece_sizes[..out.k - 1].iter().all(|&s| s == g.m() / out.k));
    }

    #[test]
    fn space_must_hold_a_coreset() {
        let g = path_graph(10);
        assert!(stream_coreset(&g, 9, StreamVariant::MaxMatching(MatchingSolver::Greedy), &mut SeededRng::new(0)).is_err());
    }
}
