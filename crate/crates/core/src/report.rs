//! Experiment output records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Measured solution sizes against oracle values for one run.
///
/// `None` means the value was not computed or no oracle was available.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub matching_size: Option<usize>,
    pub matching_feasible: Option<bool>,
    pub cover_size: Option<usize>,
    pub cover_feasible: Option<bool>,
    /// Exact `MM(G)`.
    pub oracle_mm: Option<usize>,
    /// Exact `VC(G)`.
    pub oracle_vc: Option<usize>,
    /// Size of a maximal matching of `G`, a lower bound on `VC(G)`.
    pub vc_lower_bound: Option<usize>,
    /// Whether the matching was computed by an exact solver.
    pub exact_solver: bool,
    pub resources: BTreeMap<String, f64>,
}

impl ApproxReport {
    pub fn new(instance: impl Into<String>, algorithm: impl Into<String>, seed: u64) -> Self {
        Self {
            instance: instance.into(),
            algorithm: algorithm.into(),
            seed,
            ..Self::default()
        }
    }

    /// `|M| / MM(G)`; 1 when both are zero.
    pub fn matching_ratio(&self) -> Option<f64> {
        ratio(self.matching_size?, self.oracle_mm?)
    }

    /// `|C| / VC(G)`; 1 when both are zero.
    pub fn cover_ratio(&self) -> Option<f64> {
        ratio(self.cover_size?, self.oracle_vc?)
    }

    /// `|C| / |maximal matching of G|`.
    pub fn cover_to_lower_bound(&self) -> Option<f64> {
        ratio(self.cover_size?, self.vc_lower_bound?)
    }

    pub fn with_resource(mut self, key: &str, value: f64) -> Self {
        self.resources.insert(key.to_string(), value);
        self
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    match (num, den) {
        (0, 0) => Some(1.0),
        (_, 0) => None,
        (a, b) => Some(a as f64 / b as f64),
    }
}
