//! Monte Carlo experiments over the standard test memory, written as CSV.

pub mod config;
mod experiments;
mod output;
mod stream;

pub use config::{ExperimentConfig, ExperimentKind, Model};
pub use experiments::{
    dynamic_k, run, run_cancellation, run_comparison, run_estimates, run_potential_answers,
    run_recognition,
};
pub use output::{to_csv, Row, CSV_HEADER};
pub use stream::substream;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("unknown question `{0}`")]
    UnknownQuestion(String),
    #[error("invalid combination: {0}")]
    InvalidCombination(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] gavsa_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}
