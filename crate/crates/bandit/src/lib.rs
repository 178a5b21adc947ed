//! Experiment harness for budget-limited bandit policies: JSON configuration,
//! parallel Monte-Carlo runs over budget grids, regret aggregation with 95%
//! confidence intervals, and the results CSV format.

pub mod commands;
pub mod config;
pub mod csv;
mod error;
pub mod experiment;

pub use error::{Error, Result};
