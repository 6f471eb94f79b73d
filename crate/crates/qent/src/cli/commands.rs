//! Trace and sweep commands with byte-deterministic CSV output.
//!
//! Floats are printed with 17 significant digits (`{:.16e}`), lines end with
//! `\n`, and caustic rows keep their time but leave every entropy cell empty,
//! so downstream plots show the discontinuities as gaps. Identical configs
//! produce identical bytes.

use std::io::Write;

use super::config::{CliError, Command, RunConfig, SweepVar};
use crate::entropy::{entropy_trace, envelope, EntropyTrace, TraceColumn, TraceMode};
use crate::grid::build_grid;
use crate::params::{validate_params, Mode};

pub const TRACE_HEADER: &str = "t,S_x,S_p,S_joint_numeric,S_joint_closed,deficit_x,deficit_p,caustic";
pub const SWEEP_HEADER: &str = "sweep_value,t,S_joint_closed,S_joint_numeric";

/// 17-significant-digit float formatting shared by all emitters.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_cell(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn write_output(out: Option<&std::path::Path>, bytes: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes)?;
        }
        None => {
            std::io::stdout().write_all(bytes.as_bytes())?;
        }
    }
    Ok(())
}

fn render_trace(trace: &EntropyTrace) -> String {
    let mut s = String::from(TRACE_HEADER);
    s.push('\n');
    for row in &trace.rows {
        s.push_str(&fmt_float(row.t));
        for cell in [
            row.s_x,
            row.s_p,
            row.s_joint_numeric,
            row.s_joint_closed,
            row.deficit_x,
            row.deficit_p,
        ] {
            s.push(',');
            s.push_str(&fmt_cell(cell));
        }
        s.push(',');
        s.push_str(if row.caustic { "true" } else { "false" });
        s.push('\n');
    }
    s
}

fn envelope_comment(trace: &EntropyTrace, column: TraceColumn, label: &str) -> String {
    match envelope(trace, column) {
        Ok(rep) => {
            let mut line = format!(
                "# envelope {label} non_decreasing={} maxima={}",
                rep.non_decreasing,
                rep.maxima.len()
            );
            if let Some(((t1, v1), (t2, v2))) = rep.first_violation {
                line.push_str(&format!(
                    " first_violation=({},{})->({},{})",
                    fmt_float(t1),
                    fmt_float(v1),
                    fmt_float(t2),
                    fmt_float(v2)
                ));
            }
            line.push('\n');
            line
        }
        Err(e) => format!("# envelope {label} unavailable: {e}\n"),
    }
}

fn run_trace(cfg: &RunConfig, mode: Mode) -> Result<EntropyTrace, CliError> {
    let p = validate_params(cfg.params, mode).map_err(CliError::Constraint)?;
    let grid = build_grid(cfg.l, cfg.n, cfg.params.hbar).map_err(CliError::Constraint)?;
    entropy_trace(&cfg.times(), &p, &grid, TraceMode::Both, cfg.delta).map_err(CliError::Numeric)
}

pub fn cmd_sho(cfg: &RunConfig) -> Result<(), CliError> {
    let trace = run_trace(cfg, Mode::Sho)?;
    write_output(cfg.out.as_deref(), &render_trace(&trace))
}

pub fn cmd_dho(cfg: &RunConfig) -> Result<(), CliError> {
    let trace = run_trace(cfg, Mode::Dho)?;
    let mut bytes = render_trace(&trace);
    bytes.push_str(&envelope_comment(&trace, TraceColumn::Numeric, "numeric"));
    bytes.push_str(&envelope_comment(&trace, TraceColumn::Closed, "closed"));
    write_output(cfg.out.as_deref(), &bytes)
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let var = cfg
        .sweep
        .ok_or_else(|| CliError::Config("sweep variable missing".into()))?;
    let grid = build_grid(cfg.l, cfg.n, cfg.params.hbar).map_err(CliError::Constraint)?;
    let times = cfg.times();
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for v in cfg.sweep_values() {
        let mut params = cfg.params;
        let mode = match var {
            SweepVar::Omega => {
                params.omega0 = v;
                Mode::Sho
            }
            SweepVar::Gamma => {
                params.gamma = v;
                Mode::Dho
            }
        };
        let p = validate_params(params, mode).map_err(CliError::Constraint)?;
        let trace =
            entropy_trace(&times, &p, &grid, TraceMode::Both, cfg.delta).map_err(CliError::Numeric)?;
        for row in &trace.rows {
            s.push_str(&fmt_float(v));
            s.push(',');
            s.push_str(&fmt_float(row.t));
            s.push(',');
            s.push_str(&fmt_cell(row.s_joint_closed));
            s.push(',');
            s.push_str(&fmt_cell(row.s_joint_numeric));
            s.push('\n');
        }
    }
    write_output(cfg.out.as_deref(), &s)
}

/// Dispatch a resolved config; returns the process exit code.
pub fn run(cfg: &RunConfig) -> Result<i32, CliError> {
    match cfg.command {
        Command::Sho => {
            cmd_sho(cfg)?;
            Ok(0)
        }
        Command::Dho => {
            cmd_dho(cfg)?;
            Ok(0)
        }
        Command::Sweep => {
            cmd_sweep(cfg)?;
            Ok(0)
        }
        Command::Validate => {
            let passed = super::validate::cmd_validate(cfg)?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}
