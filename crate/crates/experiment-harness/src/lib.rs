//! Campaign runner behind the `fgsvqa` binary: declarative experiment
//! configs, deterministic seeded job grids, per-run trace artifacts and
//! machine-readable acceptance reports.

pub mod campaign;
pub mod config;
pub mod experiments;
pub mod stats;
pub mod targets;

pub use campaign::{derive_seed, fnv1a, Provenance};
pub use config::{DepthRule, ExperimentConfig, SeedConfig};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Vqa(#[from] vqa_engine::VqaError),
    #[error(transparent)]
    Fgs(#[from] fgs_core::FgsError),
    #[error(transparent)]
    Oracle(#[from] exact_oracle::OracleError),
    #[error(transparent)]
    Lie(#[from] lie_closure::LieError),
    #[error("target sampling failed: {0}")]
    Sampling(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Exit codes of the CLI: 0 success, 1 acceptance failure, 2 config error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ACCEPTANCE_FAILURE: i32 = 1;
pub const EXIT_CONFIG_ERROR: i32 = 2;
