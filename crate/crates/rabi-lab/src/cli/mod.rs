//! Command-line front end: configuration, sweep execution, and bit-exact
//! CSV/JSON emission of spectra and instanton reports.

pub mod commands;
pub mod config;
pub mod format;
pub mod manifest;

pub use commands::{dispatch, main, Cli, CliError};
pub use config::{Config, ENV_CONFIG};
pub use format::{fmt_g, fmt_opt};
pub use manifest::{OutputPaths, PointOutcome, RunManifest};
