//! Command-line front end: configuration files, output formats and the
//! `energy`, `sweep`, `verify` and `figure` commands.

pub mod app;
pub mod config;
pub mod output;
pub mod random;

pub use app::{run, Cli, CliError, Command, ExitKind, Format};
