//! Experiment harness around the simulation core: config files, the two
//! benchmark scenarios (sweeping source count and sweeping aggregation
//! ratio), CSV emission, and gnuplot script generation.

pub mod config;
pub mod report;
pub mod scenario;

pub use config::{load_config, parse_config, ConfigError, ExperimentConfig, Planner};
pub use report::{emit_csv, emit_plot_script};
pub use scenario::{run_vary_aggregation, run_vary_sources};

use std::path::PathBuf;

/// Harness-level failures, split so the binary can map them to exit codes:
/// configuration problems exit 1, simulation and output problems exit 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),

    #[error("simulation error in cell ({context}): {source}")]
    Simulation {
        context: String,
        source: masim_core::Error,
    },

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Simulation { .. } | Error::Output { .. } => 2,
        }
    }
}
