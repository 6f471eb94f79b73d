//! Command-line front end: configuration resolution, the trace/sweep CSV
//! emitters and the validation report.

pub mod commands;
pub mod config;
pub mod validate;

pub use commands::{cmd_dho, cmd_sho, cmd_sweep, fmt_float, run, SWEEP_HEADER, TRACE_HEADER};
pub use config::{parse_config, CliError, Command, Overrides, RunConfig, SweepVar};
pub use validate::{build_report, cmd_validate, ValidationReport};
