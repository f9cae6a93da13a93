//! Edge sampling, vertex sampling and random edge partitions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

fn check_prob(p: f64) {
    assert!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
}

/// One uniform draw in `[0, 1)` per edge, in edge-id order.
///
/// Sampling with the same draws at two probabilities `p <= p'` gives nested
/// edge sets; [`edge_sample`] is built on this.
pub fn edge_uniforms<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Vec<f64> {
    (0..g.m()).map(|_| rng.gen::<f64>()).collect()
}

/// Keeps each edge independently with probability `p`.
///
/// # Panics
/// If `p` is outside `[0, 1]`.
pub fn edge_sample<R: Rng + ?Sized>(g: &Graph, p: f64, rng: &mut R) -> Graph {
    check_prob(p);
    let draws = edge_uniforms(g, rng);
    g.filter_edges(|id, _| draws[id] < p)
}

/// Keeps each vertex independently with probability `p` and returns the
/// induced subgraph (vertex ids preserved) plus the kept mask.
///
/// # Panics
/// If `p` is outside `[0, 1]`.
pub fn vertex_sample<R: Rng + ?Sized>(g: &Graph, p: f64, rng: &mut R) -> (Graph, Vec<bool>) {
    check_prob(p);
    let kept: Vec<bool> = (0..g.n()).map(|_| rng.gen::<f64>() < p).collect();
    (g.induced(&kept), kept)
}

/// Assignment of every edge of a host graph to one of `k` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    k: usize,
    part_of: Vec<u32>,
}

impl Partition {
    /// `part_of[e]` is the part of edge id `e`; every entry must be `< k`.
    pub fn from_assignment(k: usize, part_of: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("partition needs k >= 1".into()));
        }
        if let Some(&bad) = part_of.iter().find(|&&p| p as usize >= k) {
            return Err(Error::InvalidParameter(format!(
                "part index {bad} out of range for k = {k}"
            )));
        }
        Ok(Self { k, part_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn part_of(&self, e: EdgeId) -> usize {
        self.part_of[e] as usize
    }

    /// Number of host edges covered; equals the host's `m`.
    pub fn len(&self) -> usize {
        self.part_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.part_of.is_empty()
    }

    /// Edge ids of each part, ascending.
    pub fn parts(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.k];
        for (e, &p) in self.part_of.iter().enumerate() {
            out[p as usize].push(e);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for &p in &self.part_of {
            out[p as usize] += 1;
        }
        out
    }

    /// The spanning subgraphs `G^(0) .. G^(k-1)` of `g`.
    pub fn subgraphs(&self, g: &Graph) -> Vec<Graph> {
        assert_eq!(g.m(), self.part_of.len(), "partition built for another graph");
        self.parts()
            .into_iter()
            .map(|ids| g.from_edge_ids(&ids))
            .collect()
    }
}

/// Sends every edge to a part chosen independently and uniformly from `0..k`.
pub fn random_k_partition<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Result<Partition> {
    if k == 0 {
        return Err(Error::InvalidParameter("random_k_partition needs k >= 1".into()));
    }
    if k > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!("k = {k} too large")));
    }
    let part_of = (0..g.m()).map(|_| rng.gen_range(0..k) as u32).collect();
    Ok(Partition { k, part_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_graph;
    use crate::rng::SeededRng;

    #[test]
    fn certainty_cases() {
        let g = complete_graph(6);
        let mut rng = SeededRng::new(1);
        assert_eq!(edge_sample(&g, 1.0, &mut rng), g);
        assert_eq!(edge_sample(&g, 0.0, &mut rng).m(), 0);
        let (h, kept) = vertex_sample(&g, 1.0, &mut rng);
        assert_eq!(h, g);
        assert!(kept.iter().all(|&k| k));
        let (h, kept) = vertex_sample(&g, 0.0, &mut rng);
        assert_eq!(h.m(), 0);
        assert!(kept.iter().all(|&k| !k));
    }

    #[test]
    fn coupled_draws_nest() {
        let g = complete_graph(20);
        let a = edge_sample(&g, 0.3, &mut SeededRng::new(9));
        let b = edge_sample(&g, 0.6, &mut SeededRng::new(9));
        assert!(a.edges().iter().all(|&(u, v)| b.has_edge(u, v)));
    }

    #[test]
    fn k_one_puts_everything_in_part_zero() {
        let g = complete_graph(5);
        let p = random_k_partition(&g, 1, &mut SeededRng::new(3)).unwrap();
        assert_eq!(p.sizes(), vec![10]);
    }

    #[test]
    fn zero_parts_rejected() {
        let g = complete_graph(3);
        assert!(random_k_partition(&g, 0, &mut SeededRng::new(0)).is_err());
    }
}
