//! Experiment driver for `edcs-core`: config parsing, instance families and
//! the named experiments run by the `edcs` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod experiments;
pub mod instance;

pub use config::Config;
pub use error::{CliError, Result};
pub use experiments::{parse_seeds, run_experiment, Experiment, Table};
