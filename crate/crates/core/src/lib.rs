//! Edge degree constrained subgraphs and the coreset, MPC and streaming
//! pipelines built on them.

pub mod coreset;
pub mod edcs;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hash;
pub mod io;
pub mod matching;
pub mod mpc;
pub mod report;
pub mod rng;
pub mod sampling;
pub mod streaming;

pub use error::{Error, Result};
pub use graph::{canonical, Bipartition, Edge, EdgeId, Graph, Multigraph, Vertex};
pub use rng::{mix_seed, SeededRng};
