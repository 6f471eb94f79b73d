//! Validation suite: every cross-route identity the library promises, run at
//! pinned tolerances and emitted as a machine-readable JSON report.
//!
//! Hard checks gate the exit code. Known discrepancies of the published
//! closed forms (the displaced-packet joint entropy versus the numeric
//! oracle, and the literal density normalization deficits) are reported as
//! data, never as failures. The suite runs on canonical natural-unit
//! parameters with the configured grid geometry, so a deliberately bad grid
//! (for example `--L 2`) turns up as listed hard-check failures and exit
//! code 1.

use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::f64::consts::PI;

use super::config::{CliError, RunConfig};
use crate::analytic::{dho, sho};
use crate::entropy::{
    leipnik_minimum, numeric_record, sho_joint_entropy_closed,
};
use crate::error::Result as QResult;
use crate::grid::{build_grid, DensityProfile, Grid, Space, WaveSample};
use crate::numeric::{kernel_compose, to_momentum, van_vleck_prefactor_fd, DEFAULT_FD_STEP};
use crate::params::{validate_params, Checked, Mode, OscillatorParams};

#[derive(Debug, Serialize)]
pub struct GridInfo {
    pub half_width: f64,
    pub n_points: usize,
}

/// One hard check. `kind` is "max" (pass when value <= threshold) or
/// "min" (pass when value >= threshold).
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub kind: &'static str,
    pub value: Option<f64>,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Discrepancy {
    pub max_abs: Option<f64>,
    pub packet_center: f64,
    pub sampled_times: usize,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Deficit {
    pub raw_integral: Option<f64>,
    pub expected: f64,
    pub abs_error: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SpectralInfo {
    pub n_max: usize,
    pub eps: f64,
    pub max_error: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct InfoReports {
    pub closed_form_discrepancy: Discrepancy,
    pub position_density_deficit: Deficit,
    pub momentum_density_deficit: Deficit,
    pub spectral_sum_literal: SpectralInfo,
}

#[derive(Debug, Serialize)]
pub struct ValidationReport {
    pub grid: GridInfo,
    pub checks: Vec<Check>,
    pub reports: InfoReports,
    pub passed: bool,
}

fn check_max(name: &'static str, threshold: f64, result: QResult<f64>) -> Check {
    match result {
        Ok(v) => Check {
            name,
            kind: "max",
            value: Some(v),
            threshold,
            passed: v <= threshold,
            detail: String::new(),
        },
        Err(e) => Check {
            name,
            kind: "max",
            value: None,
            threshold,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn check_min(name: &'static str, threshold: f64, result: QResult<f64>) -> Check {
    match result {
        Ok(v) => Check {
            name,
            kind: "min",
            value: Some(v),
            threshold,
            passed: v >= threshold,
            detail: String::new(),
        },
        Err(e) => Check {
            name,
            kind: "min",
            value: None,
            threshold,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn sho_params(xbar: f64) -> Checked {
    validate_params(
        OscillatorParams {
            xbar,
            ..Default::default()
        },
        Mode::Sho,
    )
    .expect("canonical params are valid")
}

fn dho_params(omega0: f64, gamma: f64) -> Checked {
    validate_params(
        OscillatorParams {
            omega0,
            gamma,
            ..Default::default()
        },
        Mode::Dho,
    )
    .expect("canonical params are valid")
}

const MEHLER_POINTS: [(f64, f64); 3] = [(0.0, 0.0), (0.2, -0.1), (1.0, 0.5)];

fn mehler_error(n_max: usize, eps: f64) -> QResult<f64> {
    let p = sho_params(0.0);
    let t = PI / 3.0;
    let mut worst: f64 = 0.0;
    for (a, b) in MEHLER_POINTS {
        let approx = sho::mehler_kernel(a, b, t, &p, n_max, eps)?;
        let exact = sho::kernel(b, a, t, &p)?;
        worst = worst.max((approx - exact).norm());
    }
    Ok(worst)
}

fn van_vleck_error() -> QResult<f64> {
    let p = sho_params(0.0);
    let mut worst: f64 = 0.0;
    for t in [0.5, PI / 3.0, 2.0] {
        let f = van_vleck_prefactor_fd(
            |a, b, tt| sho::classical_action(a, b, tt, &p),
            0.4,
            -0.3,
            t,
            DEFAULT_FD_STEP,
            &p,
        )?;
        let k = sho::kernel(0.0, 0.0, t, &p)?;
        worst = worst.max((f - k).norm());
    }
    Ok(worst)
}

fn composition_residual(grid: &Grid) -> QResult<f64> {
    let p = sho_params(0.0);
    kernel_compose(
        |x1, x0, t| sho::kernel_at(x1, x0, t, &p),
        PI / 6.0,
        PI / 6.0,
        grid,
    )
}

fn parseval_error(grid: &Grid) -> QResult<f64> {
    let p = sho_params(1.0);
    let t = 0.9;
    let w = WaveSample::from_fn(grid.clone(), Space::Position, t, |x| {
        sho::coherent_state(x, t, &p)
    });
    let wt = to_momentum(&w)?;
    Ok((w.norm_sq() - wt.norm_sq()).abs())
}

fn momentum_density_fourier_error(grid: &Grid) -> QResult<f64> {
    let p = sho_params(1.0);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260809);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let t: f64 = rng.gen_range(0.0..2.0 * PI);
        let w = WaveSample::from_fn(grid.clone(), Space::Position, t, |x| {
            sho::coherent_state(x, t, &p)
        });
        let wt = to_momentum(&w)?;
        for (j, q) in grid.nodes(Space::Momentum).enumerate() {
            let expected = sho::momentum_density(q, t, &p);
            worst = worst.max((wt.values[j].norm_sqr() - expected).abs());
        }
    }
    Ok(worst)
}

fn kernel_assembly_error() -> QResult<f64> {
    let p = dho_params(1.0, 0.37);
    let w = p.omega();
    let mut worst: f64 = 0.0;
    for t in [0.4 / w, 1.1 / w, 2.4 / w] {
        for (x1, x0) in [(0.0, 0.0), (0.7, -0.4), (2.0, 1.2), (-3.0, 2.5)] {
            let assembled = dho::kernel(x1, x0, t, &p, &crate::params::DriveForce::Zero)?;
            let direct = dho::kernel_undriven(x1, x0, t, &p)?;
            worst = worst.max((assembled - direct).norm() / direct.norm());
        }
    }
    Ok(worst)
}

fn damping_continuity_error(grid: &Grid) -> QResult<f64> {
    let pd = dho_params(1.0, 1e-8);
    let ps = sho_params(0.0);
    let mut worst: f64 = 0.0;
    for t in [0.5, 1.1, 2.3] {
        let prof = dho::position_density_profile(grid, t, &pd)?;
        for (i, x) in grid.nodes(Space::Position).enumerate() {
            worst = worst.max((prof.values()[i] - sho::position_density(x, t, &ps)).abs());
        }
        let mom = dho::momentum_density_profile(grid, t, &pd)?;
        for (j, q) in grid.nodes(Space::Momentum).enumerate() {
            worst = worst.max((mom.values()[j] - sho::momentum_density(q, t, &ps)).abs());
        }
        let rec = numeric_record(t, &pd, grid)?;
        worst = worst.max((rec.s_joint - leipnik_minimum()).abs());
    }
    Ok(worst)
}

fn leipnik_bound_min_margin(grid: &Grid) -> QResult<f64> {
    let mut min_margin = f64::INFINITY;
    for gamma in [0.1, 0.5, 1.0] {
        for omega0 in [1.0, 2.0] {
            let p = dho_params(omega0, gamma);
            let w = p.omega();
            for k in 1..=12 {
                let t = k as f64 * (2.0 * PI / omega0) / 13.0;
                if (w * t).sin().abs() <= 1e-3 {
                    continue;
                }
                let rec = numeric_record(t, &p, grid)?;
                min_margin = min_margin.min(rec.s_joint - leipnik_minimum());
            }
        }
    }
    Ok(min_margin)
}

fn grid_tail_mass(grid: &Grid) -> QResult<f64> {
    let p = sho_params(1.0);
    let raw: Vec<f64> = grid
        .nodes(Space::Position)
        .map(|x| sho::position_density(x, 0.0, &p))
        .collect();
    let d = DensityProfile::from_raw(grid.clone(), Space::Position, raw)?;
    Ok(d.tail_mass(0.05))
}

fn closed_form_discrepancy(grid: &Grid) -> Discrepancy {
    let p = sho_params(1.0);
    let mut max_abs: f64 = 0.0;
    let mut sampled = 0usize;
    for k in 1..64 {
        let t = k as f64 * PI / 32.0;
        if t.sin().abs() <= 1e-6 {
            continue;
        }
        match numeric_record(t, &p, grid) {
            Ok(rec) => {
                sampled += 1;
                max_abs = max_abs.max((sho_joint_entropy_closed(t, &p) - rec.s_joint).abs());
            }
            Err(e) => {
                return Discrepancy {
                    max_abs: None,
                    packet_center: 1.0,
                    sampled_times: sampled,
                    detail: e.to_string(),
                }
            }
        }
    }
    Discrepancy {
        max_abs: Some(max_abs),
        packet_center: 1.0,
        sampled_times: sampled,
        detail: "closed form minus numeric joint entropy over one period".into(),
    }
}

fn density_deficits() -> (Deficit, Deficit) {
    let p = dho_params(1.0, 1e-8);
    let w = p.omega();
    let t = (PI / 4.0) / w;
    let expected_x = (PI / 4.0f64).sin();
    let expected_p = std::f64::consts::SQRT_2 * (PI / 4.0f64).sin();
    let pos = match dho::position_density_norm(t, &p) {
        Ok(v) => Deficit {
            raw_integral: Some(v),
            expected: expected_x,
            abs_error: Some((v - expected_x).abs()),
            detail: "literal position density integral at an eighth period, small damping".into(),
        },
        Err(e) => Deficit {
            raw_integral: None,
            expected: expected_x,
            abs_error: None,
            detail: e.to_string(),
        },
    };
    let mom = match dho::momentum_density_norm(t, &p) {
        Ok(v) => Deficit {
            raw_integral: Some(v),
            expected: expected_p,
            abs_error: Some((v - expected_p).abs()),
            detail: "literal momentum density integral at an eighth period, small damping".into(),
        },
        Err(e) => Deficit {
            raw_integral: None,
            expected: expected_p,
            abs_error: None,
            detail: e.to_string(),
        },
    };
    (pos, mom)
}

/// Run every check and assemble the report.
pub fn build_report(cfg: &RunConfig) -> Result<ValidationReport, CliError> {
    // canonical natural units on the configured grid geometry
    let grid = build_grid(cfg.l, cfg.n, 1.0).map_err(CliError::Constraint)?;

    let checks = vec![
        check_max("spectral_sum_convergence", 2e-3, mehler_error(2560, 1e-3)),
        check_max("semiclassical_prefactor", 1e-6, van_vleck_error()),
        check_max("kernel_composition", 1e-5, composition_residual(&grid)),
        check_max("parseval", 1e-10, parseval_error(&grid)),
        check_max(
            "momentum_density_fourier",
            1e-7,
            momentum_density_fourier_error(&grid),
        ),
        check_max("kernel_assembly_consistency", 1e-12, kernel_assembly_error()),
        check_max("damping_continuity", 1e-6, damping_continuity_error(&grid)),
        check_min("leipnik_bound_margin", -1e-9, leipnik_bound_min_margin(&grid)),
        check_max("grid_tail_mass", 1e-8, grid_tail_mass(&grid)),
    ];

    let (pos_deficit, mom_deficit) = density_deficits();
    let literal = match mehler_error(80, 1e-3) {
        Ok(v) => SpectralInfo {
            n_max: 80,
            eps: 1e-3,
            max_error: Some(v),
            detail: "80-term damped spectral sum: the oscillatory tail converges slowly".into(),
        },
        Err(e) => SpectralInfo {
            n_max: 80,
            eps: 1e-3,
            max_error: None,
            detail: e.to_string(),
        },
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport {
        grid: GridInfo {
            half_width: cfg.l,
            n_points: cfg.n,
        },
        checks,
        reports: InfoReports {
            closed_form_discrepancy: closed_form_discrepancy(&grid),
            position_density_deficit: pos_deficit,
            momentum_density_deficit: mom_deficit,
            spectral_sum_literal: literal,
        },
        passed,
    })
}

/// Build the report, write it as pretty JSON, and return overall pass/fail.
pub fn cmd_validate(cfg: &RunConfig) -> Result<bool, CliError> {
    let report = build_report(cfg)?;
    let mut json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Config(format!("report serialization failed: {e}")))?;
    json.push('\n');
    match cfg.out.as_deref() {
        Some(path) => std::fs::write(path, &json)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(json.as_bytes())?;
        }
    }
    Ok(report.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::{parse_config, Command, Overrides};

    #[test]
    fn default_report_passes_all_hard_checks() {
        let cfg = parse_config(Command::Validate, None, &Overrides::default()).unwrap();
        let report = build_report(&cfg).unwrap();
        for c in &report.checks {
            assert!(c.passed, "check {} failed: {:?} {}", c.name, c.value, c.detail);
        }
        assert!(report.passed);
        let disc = report.reports.closed_form_discrepancy.max_abs.unwrap();
        assert!((disc - 4.0).abs() < 1e-4, "discrepancy {disc}");
        let lit = report.reports.spectral_sum_literal.max_error.unwrap();
        assert!(lit > 2e-3, "literal 80-term error should be visible, got {lit}");
    }

    #[test]
    fn bad_grid_fails_with_listed_checks() {
        let cfg = parse_config(
            Command::Validate,
            None,
            &Overrides {
                l: Some(2.0),
                n: Some(256),
                ..Default::default()
            },
        )
        .unwrap();
        let report = build_report(&cfg).unwrap();
        assert!(!report.passed);
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        assert!(failing.contains(&"grid_tail_mass"), "failing: {failing:?}");
        let tail_detail: String = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.detail.clone())
            .collect::<Vec<_>>()
            .join("; ");
        assert!(
            tail_detail.contains("grid too small") || !tail_detail.is_empty(),
            "details: {tail_detail}"
        );
    }
}
