//! Command-line front end: argument parsing, job execution and reports.
//!
//! A [`JobConfig`] fully determines a run. JSON reports carry every field of
//! the config, so a report can be parsed back into a config and replayed.

pub mod args;
pub mod config;
pub mod report;
pub mod run;

pub use config::{
    parse_complex, parse_param, parse_shift, Command, FamilyCase, JobConfig, OutputFormat,
};
pub use report::Report;
pub use run::{run, EXIT_DEGENERATE, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
