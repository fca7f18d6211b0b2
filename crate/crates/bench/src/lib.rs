//! Experiment runner: TOML-configured sweeps over algorithms and budgets that
//! write one CSV row per run.

pub mod config;
pub mod error;
pub mod runner;

pub use config::{AlgorithmEntry, DatasetConfig, ExperimentConfig, ObjectiveConfig};
pub use error::BenchError;
pub use runner::{derive_seed, run_experiment, ExperimentOutput, SummaryRow};
