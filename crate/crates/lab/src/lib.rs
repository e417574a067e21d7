//! Experiment harness for `gme-core`: ensembles, property suites, CSV output
//! and the `gme-lab` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod suites;
pub mod summary;

pub use error::{LabError, Result};
