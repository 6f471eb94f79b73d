//! Run configuration: plain `key = value` files plus flag overrides, with
//! flags winning. Defaults: `m = hbar = omega0 = 1`, `gamma = xbar = 0`,
//! `L = 12`, `n = 2048`, times `0..6.3` step `0.05`, caustic delta `1e-6`.

use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::params::{validate_params, Mode, OscillatorParams};

/// CLI-level failure, mapped onto the process exit code:
/// 0 success, 1 validation failure, 2 config error, 3 runtime error.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Constraint(Error),
    Numeric(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Constraint(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Constraint(e) => write!(f, "constraint violation: {e}"),
            CliError::Numeric(e) => write!(f, "numeric error: {e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Sho,
    Dho,
    Validate,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    Omega,
    Gamma,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub params: OscillatorParams,
    pub l: f64,
    pub n: usize,
    pub t_start: f64,
    pub t_stop: f64,
    pub t_step: f64,
    pub sweep: Option<SweepVar>,
    pub sweep_range: Option<(f64, f64, f64)>,
    pub out: Option<PathBuf>,
    pub delta: f64,
}

/// Unresolved flag values; `None` means "not given on the command line".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub m: Option<f64>,
    pub omega0: Option<f64>,
    pub gamma: Option<f64>,
    pub xbar: Option<f64>,
    pub hbar: Option<f64>,
    pub l: Option<f64>,
    pub n: Option<usize>,
    pub t_start: Option<f64>,
    pub t_stop: Option<f64>,
    pub t_step: Option<f64>,
    pub sweep: Option<String>,
    pub sweep_range: Option<String>,
    pub out: Option<PathBuf>,
}

fn default_config(command: Command) -> RunConfig {
    RunConfig {
        command,
        params: OscillatorParams::default(),
        l: 12.0,
        n: 2048,
        t_start: 0.0,
        t_stop: 6.3,
        t_step: 0.05,
        sweep: None,
        sweep_range: None,
        out: None,
        delta: 1e-6,
    }
}

fn parse_sweep_var(s: &str) -> Result<SweepVar, CliError> {
    match s {
        "omega" => Ok(SweepVar::Omega),
        "gamma" => Ok(SweepVar::Gamma),
        other => Err(CliError::Config(format!(
            "sweep variable must be 'omega' or 'gamma', got '{other}'"
        ))),
    }
}

fn parse_sweep_range(s: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "sweep range must be A:B:STEP, got '{s}'"
        )));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    match nums {
        Ok(v) => Ok((v[0], v[1], v[2])),
        Err(_) => Err(CliError::Config(format!("bad sweep range '{s}'"))),
    }
}

fn apply_file(cfg: &mut RunConfig, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected key = value, got '{raw}'",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            CliError::Config(format!(
                "{}:{}: bad {what} value '{value}'",
                path.display(),
                lineno + 1
            ))
        };
        let parse_f64 = |what: &str| value.parse::<f64>().map_err(|_| bad(what));
        match key {
            "m" => cfg.params.m = parse_f64("m")?,
            "omega0" => cfg.params.omega0 = parse_f64("omega0")?,
            "gamma" => cfg.params.gamma = parse_f64("gamma")?,
            "xbar" => cfg.params.xbar = parse_f64("xbar")?,
            "hbar" => cfg.params.hbar = parse_f64("hbar")?,
            "L" | "l" => cfg.l = parse_f64("L")?,
            "n" => cfg.n = value.parse::<usize>().map_err(|_| bad("n"))?,
            "t_start" => cfg.t_start = parse_f64("t_start")?,
            "t_stop" => cfg.t_stop = parse_f64("t_stop")?,
            "t_step" => cfg.t_step = parse_f64("t_step")?,
            "delta" => cfg.delta = parse_f64("delta")?,
            "sweep" => cfg.sweep = Some(parse_sweep_var(value)?),
            "sweep_range" => cfg.sweep_range = Some(parse_sweep_range(value)?),
            "out" => cfg.out = Some(PathBuf::from(value)),
            other => {
                return Err(CliError::Config(format!(
                    "{}:{}: unknown key '{other}'",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(())
}

fn apply_overrides(cfg: &mut RunConfig, ov: &Overrides) -> Result<(), CliError> {
    if let Some(v) = ov.m {
        cfg.params.m = v;
    }
    if let Some(v) = ov.omega0 {
        cfg.params.omega0 = v;
    }
    if let Some(v) = ov.gamma {
        cfg.params.gamma = v;
    }
    if let Some(v) = ov.xbar {
        cfg.params.xbar = v;
    }
    if let Some(v) = ov.hbar {
        cfg.params.hbar = v;
    }
    if let Some(v) = ov.l {
        cfg.l = v;
    }
    if let Some(v) = ov.n {
        cfg.n = v;
    }
    if let Some(v) = ov.t_start {
        cfg.t_start = v;
    }
    if let Some(v) = ov.t_stop {
        cfg.t_stop = v;
    }
    if let Some(v) = ov.t_step {
        cfg.t_step = v;
    }
    if let Some(ref v) = ov.sweep {
        cfg.sweep = Some(parse_sweep_var(v)?);
    }
    if let Some(ref v) = ov.sweep_range {
        cfg.sweep_range = Some(parse_sweep_range(v)?);
    }
    if let Some(ref v) = ov.out {
        cfg.out = Some(v.clone());
    }
    Ok(())
}

/// Resolve defaults, then the config file, then flags, and check constraints.
pub fn parse_config(
    command: Command,
    config_file: Option<&Path>,
    overrides: &Overrides,
) -> Result<RunConfig, CliError> {
    let mut cfg = default_config(command);
    if let Some(path) = config_file {
        apply_file(&mut cfg, path)?;
    }
    apply_overrides(&mut cfg, overrides)?;

    if cfg.t_step <= 0.0 || cfg.t_step.is_nan() {
        return Err(CliError::Config(format!("t_step = {} must be > 0", cfg.t_step)));
    }
    if cfg.t_start < 0.0 || cfg.t_start.is_nan() {
        return Err(CliError::Config(format!(
            "t_start = {} must be >= 0",
            cfg.t_start
        )));
    }
    if cfg.t_stop <= cfg.t_start || cfg.t_stop.is_nan() {
        return Err(CliError::Config(format!(
            "t_stop = {} must be > t_start = {}",
            cfg.t_stop, cfg.t_start
        )));
    }
    if cfg.delta <= 0.0 || cfg.delta.is_nan() {
        return Err(CliError::Config(format!("delta = {} must be > 0", cfg.delta)));
    }
    crate::grid::build_grid(cfg.l, cfg.n, cfg.params.hbar.max(f64::MIN_POSITIVE))
        .map_err(CliError::Constraint)?;

    match command {
        Command::Sho => {
            validate_params(cfg.params, Mode::Sho).map_err(CliError::Constraint)?;
        }
        Command::Dho => {
            validate_params(cfg.params, Mode::Dho).map_err(CliError::Constraint)?;
        }
        Command::Validate => {
            validate_params(cfg.params, Mode::Sho).map_err(CliError::Constraint)?;
        }
        Command::Sweep => {
            let var = cfg.sweep.ok_or_else(|| {
                CliError::Config("sweep command needs --sweep omega|gamma".into())
            })?;
            let (a, b, step) = cfg.sweep_range.ok_or_else(|| {
                CliError::Config("sweep command needs --sweep-range A:B:STEP".into())
            })?;
            if step <= 0.0 || step.is_nan() || b < a {
                return Err(CliError::Config(format!(
                    "sweep range {a}:{b}:{step} must have A <= B and STEP > 0"
                )));
            }
            // reject configurations whose extremes cannot run
            for v in [a, b] {
                let mut p = cfg.params;
                match var {
                    SweepVar::Omega => {
                        p.omega0 = v;
                        validate_params(p, Mode::Sho).map_err(CliError::Constraint)?;
                    }
                    SweepVar::Gamma => {
                        p.gamma = v;
                        validate_params(p, Mode::Dho).map_err(CliError::Constraint)?;
                    }
                }
            }
        }
    }
    Ok(cfg)
}

impl RunConfig {
    /// Deterministic trace times `t_k = t_start + k * t_step`.
    pub fn times(&self) -> Vec<f64> {
        let count = ((self.t_stop - self.t_start) / self.t_step + 1e-9).floor() as usize;
        (0..=count)
            .map(|k| self.t_start + k as f64 * self.t_step)
            .collect()
    }

    /// Sweep lattice `A, A+STEP, ..., <= B`.
    pub fn sweep_values(&self) -> Vec<f64> {
        match self.sweep_range {
            Some((a, b, step)) => {
                let count = ((b - a) / step + 1e-9).floor() as usize;
                (0..=count).map(|k| a + k as f64 * step).collect()
            }
            None => Vec::new(),
        }
    }
}
