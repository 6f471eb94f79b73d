use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use qent::cli::{self, Command, Overrides};

#[derive(Parser)]
#[command(
    name = "qent",
    about = "Joint (Leipnik) entropy of oscillating quantum states: traces, sweeps and validation",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Entropy trace of the undamped oscillator (CSV)
    Sho(Common),
    /// Entropy trace of the underdamped oscillator (CSV, caustic gaps kept)
    Dho(Common),
    /// Cross-route validation suite (JSON report; exit 1 on hard failures)
    Validate(Common),
    /// Long-format entropy surface over omega or gamma (CSV)
    Sweep(Common),
}

#[derive(Args)]
struct Common {
    /// key = value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    omega0: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    xbar: Option<f64>,
    #[arg(long)]
    hbar: Option<f64>,
    /// Grid half width
    #[arg(long = "L")]
    l: Option<f64>,
    /// Grid points (power of two, >= 16)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "t-start")]
    t_start: Option<f64>,
    #[arg(long = "t-stop")]
    t_stop: Option<f64>,
    #[arg(long = "t-step")]
    t_step: Option<f64>,
    /// Sweep variable: omega | gamma
    #[arg(long)]
    sweep: Option<String>,
    /// Sweep lattice A:B:STEP
    #[arg(long = "sweep-range")]
    sweep_range: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            m: self.m,
            omega0: self.omega0,
            gamma: self.gamma,
            xbar: self.xbar,
            hbar: self.hbar,
            l: self.l,
            n: self.n,
            t_start: self.t_start,
            t_stop: self.t_stop,
            t_step: self.t_step,
            sweep: self.sweep.clone(),
            sweep_range: self.sweep_range.clone(),
            out: self.out.clone(),
        }
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("QENT_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                // ignore failure: the pool may already be initialized
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let args = CliArgs::parse();
    let (command, common) = match &args.command {
        Cmd::Sho(c) => (Command::Sho, c),
        Cmd::Dho(c) => (Command::Dho, c),
        Cmd::Validate(c) => (Command::Validate, c),
        Cmd::Sweep(c) => (Command::Sweep, c),
    };
    let cfg = match cli::parse_config(command, common.config.as_deref(), &common.overrides()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("qent: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match cli::run(&cfg) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qent: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
