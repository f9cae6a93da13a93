//! Graph families named in config files.

use std::path::PathBuf;

use edcs_core::coreset::gen_lowerbound_graph;
use edcs_core::generators::{gen_random_bipartite, gen_random_graph, gen_regular_ish};
use edcs_core::io::read_graph_path;
use edcs_core::{mix_seed, Bipartition, Graph, SeededRng};

use crate::config::Config;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    File(PathBuf),
    Er { n: usize, p: f64 },
    Bipartite { n_left: usize, n_right: usize, p: f64 },
    Regular { n: usize, d: usize },
    LowerBound { n: usize, k: usize },
    Triangle,
}

/// A family and whether every seed draws a fresh graph from it.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    /// When set, all seeds share the graph drawn from this seed.
    pub graph_seed: Option<u64>,
}

fn check_p(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(CliError::ConfigValue {
            key: "p".into(),
            reason: format!("{p} outside [0, 1]"),
        })
    }
}

impl Family {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        let name: String = cfg.require("family")?;
        Ok(match name.as_str() {
            "file" => Family::File(cfg.require::<String>("path")?.into()),
            "er" => Family::Er {
                n: cfg.require("n")?,
                p: check_p(cfg.require("p")?)?,
            },
            "bipartite" => Family::Bipartite {
                n_left: cfg.require("n_left")?,
                n_right: cfg.require("n_right")?,
                p: check_p(cfg.require("p")?)?,
            },
            "regular" => {
                let (n, d): (usize, usize) = (cfg.require("n")?, cfg.require("d")?);
                if d >= n.max(1) && n > 0 {
                    return Err(CliError::ConfigValue {
                        key: "d".into(),
                        reason: format!("degree {d} impossible on {n} vertices"),
                    });
                }
                Family::Regular { n, d }
            }
            "lowerbound" => Family::LowerBound {
                n: cfg.require("n")?,
                k: cfg.require("k")?,
            },
            "triangle" => Family::Triangle,
            other => {
                return Err(CliError::ConfigValue {
                    key: "family".into(),
                    reason: format!("unknown family `{other}`"),
                })
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Family::File(p) => format!("file:{}", p.display()),
            Family::Er { n, p } => format!("er(n={n},p={p})"),
            Family::Bipartite { n_left, n_right, p } => format!("bipartite(n_left={n_left},n_right={n_right},p={p})"),
            Family::Regular { n, d } => format!("regular(n={n},d={d})"),
            Family::LowerBound { n, k } => format!("lowerbound(n={n},k={k})"),
            Family::Triangle => "triangle".into(),
        }
    }

    /// The graph and, when known by construction, its bipartition.
    pub fn build(&self, seed: u64) -> Result<(Graph, Option<Bipartition>)> {
        let rng = &mut SeededRng::new(seed);
        Ok(match self {
            Family::File(p) => {
                let g = read_graph_path(p)?;
                let bip = Bipartition::two_color(&g);
                (g, bip)
            }
            Family::Er { n, p } => (gen_random_graph(*n, *p, rng), None),
            Family::Bipartite { n_left, n_right, p } => (
                gen_random_bipartite(*n_left, *n_right, *p, rng),
                Some(Bipartition::prefix(*n_left, n_left + n_right)),
            ),
            Family::Regular { n, d } => (gen_regular_ish(*n, *d, rng), None),
            Family::LowerBound { n, k } => {
                let inst = gen_lowerbound_graph(*n, *k)?;
                (inst.graph, Some(inst.bipartition))
            }
            Family::Triangle => (Graph::new(3, [(0, 1), (1, 2), (0, 2)])?, None),
        })
    }
}

impl InstanceSpec {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        Ok(Self {
            family: Family::from_config(cfg)?,
            graph_seed: cfg.opt("graph_seed")?,
        })
    }

    pub fn describe(&self) -> String {
        self.family.describe()
    }

    /// The graph used for run `seed`.
    pub fn build(&self, seed: u64) -> Result<(Graph, Option<Bipartition>)> {
        self.family.build(mix_seed(self.graph_seed.unwrap_or(seed), GRAPH_STREAM))
    }
}

/// Stream index of the graph generator within a run's seed.
pub const GRAPH_STREAM: u64 = 0;
/// Stream index of the algorithm within a run's seed.
pub const ALGO_STREAM: u64 = 1;
