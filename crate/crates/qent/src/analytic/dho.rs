//! Damped (Caldirola-Kanai) harmonic oscillator: the damped free-particle
//! kernel, the driven kernel coefficients, the zero-drive kernel, the
//! auxiliary bundle behind the time-dependent wave functions, and the
//! literal position/momentum densities with their normalization deficits.
//!
//! The published closed-form density does not integrate to one (its raw
//! integral is `1/eta(t)`); profiles built here are renormalized and the raw
//! integral is always surfaced. `N(t)` is evaluated with `|sin(omega t)|` so
//! densities stay non-negative past the first caustic; no branch tracking is
//! attempted there.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{acot, caustic_guard, sho, KernelValue, CAUSTIC_DELTA, HERMITE_MAX};
use crate::error::{Error, Result};
use crate::grid::{DensityProfile, Grid, Space};
use crate::numeric::quad::integrate;
use crate::params::{Checked, DriveForce};

const QUAD_ABS_TOL: f64 = 1e-10;
const QUAD_REL_TOL: f64 = 1e-8;

/// Damped free-particle kernel; requires `gamma > 0` and `t > 0`.
pub fn free_kernel(x1: f64, x0: f64, t: f64, p: &Checked) -> Result<KernelValue> {
    free_kernel_at(x1.into(), x0.into(), t, p)
}

/// Damped free-particle kernel at complex endpoints.
pub fn free_kernel_at(x1: Complex64, x0: Complex64, t: f64, p: &Checked) -> Result<KernelValue> {
    let gamma = p.gamma();
    if gamma <= 0.0 {
        return Err(Error::ZeroDamping);
    }
    if t <= 0.0 {
        return Err(Error::ZeroTime);
    }
    // gamma e^{gamma t/2} / (4 sinh(gamma t/2)) -> 1/(2t) as gamma -> 0
    let k = gamma * p.m() * (gamma * t / 2.0).exp() / (4.0 * p.hbar() * (gamma * t / 2.0).sinh());
    let pref = (Complex64::new(k / PI, 0.0) / Complex64::i()).sqrt();
    let d = x1 - x0;
    Ok(pref * (Complex64::i() * k * d * d).exp())
}

/// Quadratic-form coefficients of the driven kernel exponent. `a`, `b`, `c`
/// are closed-form; `d`, `e`, `f` come from adaptive quadrature over the
/// drive and are exact zeros for [`DriveForce::Zero`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

/// Evaluate the kernel coefficients at time t for the given drive.
pub fn drive_coefficients(t: f64, drive: &DriveForce, p: &Checked) -> Result<DriveCoefficients> {
    let w = p.omega();
    let s = caustic_guard(t, w, CAUSTIC_DELTA)?;
    let cot = (w * t).cos() / s;
    let gamma = p.gamma();
    let egt = (gamma * t).exp();
    let m = p.m();

    let a = (-gamma / 2.0 + w * cot) * egt;
    let b = gamma / 2.0 + w * cot;
    let c = -w * egt / s;

    let (d, e, f) = if drive.is_zero() {
        (0.0, 0.0, 0.0)
    } else {
        let d_int = integrate(
            |s1| drive.eval(s1) * (gamma * s1 / 2.0).exp() * (w * s1).sin(),
            0.0,
            t,
            QUAD_ABS_TOL,
            QUAD_REL_TOL,
        )?;
        let e_int = integrate(
            |s1| drive.eval(s1) * (gamma * s1 / 2.0).exp() * (w * (t - s1)).sin(),
            0.0,
            t,
            QUAD_ABS_TOL,
            QUAD_REL_TOL,
        )?;
        // nested: inner integral carries e^{gamma s}, outer e^{gamma t'/2}
        let f_outer = integrate(
            |tp| {
                let inner = integrate(
                    |s1| drive.eval(s1) * (gamma * s1).exp() * (w * s1).sin(),
                    0.0,
                    tp,
                    QUAD_ABS_TOL / 10.0,
                    QUAD_REL_TOL / 10.0,
                )
                .map(|r| r.value)
                .unwrap_or(f64::NAN);
                drive.eval(tp) * (gamma * tp / 2.0).exp() * (w * (t - tp)).sin() * inner
            },
            0.0,
            t,
            QUAD_ABS_TOL,
            QUAD_REL_TOL,
        )?;
        if !f_outer.value.is_finite() {
            return Err(Error::QuadratureFailure {
                est_error: f64::INFINITY,
                tol: QUAD_ABS_TOL,
            });
        }
        (
            egt / (m * s) * d_int.value,
            1.0 / (m * s) * e_int.value,
            1.0 / (m * m * w) * f_outer.value,
        )
    };

    Ok(DriveCoefficients { a, b, c, d, e, f })
}

fn prefactor(t: f64, sin_wt: f64, p: &Checked) -> Complex64 {
    let scale = p.m() * p.omega() * (p.gamma() * t / 2.0).exp() / (2.0 * PI * p.hbar());
    (Complex64::new(scale, 0.0) / Complex64::new(0.0, sin_wt)).sqrt()
}

/// Driven kernel assembled from [`DriveCoefficients`].
///
/// The cross term uses `c * e^{-gamma t/2}`; with zero drive the assembly is
/// identical to [`kernel_undriven`].
pub fn kernel(x1: f64, x0: f64, t: f64, p: &Checked, drive: &DriveForce) -> Result<KernelValue> {
    let coeffs = drive_coefficients(t, drive, p)?;
    let s = (p.omega() * t).sin();
    let cross = coeffs.c * (-p.gamma() * t / 2.0).exp();
    let quad = coeffs.a * x1 * x1
        + coeffs.b * x0 * x0
        + 2.0 * x1 * x0 * cross
        + 2.0 * x1 * coeffs.d
        + 2.0 * x0 * coeffs.e
        - coeffs.f;
    let phase = Complex64::new(0.0, p.m() / (2.0 * p.hbar()) * quad);
    Ok(prefactor(t, s, p) * phase.exp())
}

/// Zero-drive kernel in its directly grouped closed form.
pub fn kernel_undriven(x1: f64, x0: f64, t: f64, p: &Checked) -> Result<KernelValue> {
    kernel_undriven_at(x1.into(), x0.into(), t, p)
}

/// Zero-drive kernel at complex endpoints; used by contour composition checks.
pub fn kernel_undriven_at(
    x1: Complex64,
    x0: Complex64,
    t: f64,
    p: &Checked,
) -> Result<KernelValue> {
    let w = p.omega();
    let s = caustic_guard(t, w, CAUSTIC_DELTA)?;
    let c = (w * t).cos();
    let gamma = p.gamma();
    let egt = (gamma * t).exp();
    let eght = (gamma * t / 2.0).exp();
    let inner = gamma * (x0 * x0 - egt * x1 * x1)
        + 2.0 * w / s * ((x0 * x0 + x1 * x1 * egt) * c - 2.0 * eght * x1 * x0);
    let phase = Complex64::i() * p.m() / (4.0 * p.hbar()) * inner;
    Ok(prefactor(t, s, p) * phase.exp())
}

/// Auxiliary bundle for the zero-drive wave functions at one time.
///
/// `eta_sq`, `big_d`, `big_n` diverge at caustics even though
/// `eta_sq * sin^2(omega t)` stays finite; `caustic` flags those times
/// instead of erroring.
#[derive(Debug, Clone, Copy)]
pub struct DhoAux {
    pub omega: f64,
    pub eta_sq: f64,
    pub big_d: f64,
    pub big_a: Complex64,
    pub a_prime: f64,
    pub big_n: f64,
    pub caustic: bool,
}

/// Evaluate the auxiliary quantities at time t.
pub fn aux(t: f64, p: &Checked) -> DhoAux {
    let w = p.omega();
    let gamma = p.gamma();
    let s = (w * t).sin();
    let c = (w * t).cos();
    let s2 = s * s;
    let g2w = gamma / (2.0 * w);
    // eta^2 sin^2(wt) = 1 + (gamma/w) cos(wt) sin^2(wt) + (gamma/2w)^2 sin^2(wt),
    // finite through caustics
    let eta2_sin2 = 1.0 + gamma / w * c * s2 + g2w * g2w * s2;
    let eta_sq = eta2_sin2 / s2;
    let egt = (gamma * t).exp();
    let scale = p.m() * w / (2.0 * p.hbar());
    let a_prime = scale * egt / eta2_sin2;
    let cot = c / s;
    let im_a = scale * egt * (g2w - cot + (g2w + cot) / eta2_sin2);
    let big_a = Complex64::new(a_prime, im_a);
    let alpha0 = (p.m() * w / p.hbar()).sqrt();
    let eta = eta_sq.sqrt();
    let big_d = alpha0 * (gamma * t / 2.0).exp() / (eta * s);
    // |sin| keeps N real and the density non-negative past the first caustic
    let big_n = (p.m() * w / (PI * p.hbar())).powf(0.25) * (gamma * t / 4.0).exp()
        / (eta * s.abs().sqrt());
    DhoAux {
        omega: w,
        eta_sq,
        big_d,
        big_a,
        a_prime,
        big_n,
        caustic: s.abs() <= CAUSTIC_DELTA,
    }
}

fn checked_aux(t: f64, p: &Checked) -> Result<DhoAux> {
    let a = aux(t, p);
    if a.caustic {
        let s = (p.omega() * t).sin();
        return Err(Error::CausticTime {
            t,
            sin_abs: s.abs(),
            delta: CAUSTIC_DELTA,
        });
    }
    Ok(a)
}

fn two_pow_n_factorial(n: usize) -> f64 {
    let mut acc = 1.0f64;
    for k in 1..=n {
        acc *= 2.0 * k as f64;
    }
    acc
}

/// Initial eigenstate `psi_n(x, 0)`: a Hermite-Gaussian at the shifted
/// frequency, unit-normalized.
pub fn initial_state(n: i64, x: f64, p: &Checked) -> Result<f64> {
    if n < 0 {
        return Err(Error::NegativeQuantumNumber { n });
    }
    if n > HERMITE_MAX {
        return Err(Error::QuantumNumberTooLarge { n, max: HERMITE_MAX });
    }
    let alpha0 = (p.m() * p.omega() / p.hbar()).sqrt();
    let phi = sho::hermite_functions(alpha0 * x, n as usize);
    Ok(alpha0.sqrt() * phi[n as usize])
}

/// Time-dependent zero-drive wave function `psi_n(x, t)` in its literal
/// published form (normalization deficit `1/eta` included; renormalize before
/// taking densities).
pub fn wavefunction(n: i64, x: f64, t: f64, p: &Checked) -> Result<Complex64> {
    if n < 0 {
        return Err(Error::NegativeQuantumNumber { n });
    }
    if n > HERMITE_MAX {
        return Err(Error::QuantumNumberTooLarge { n, max: HERMITE_MAX });
    }
    let a = checked_aux(t, p)?;
    let w = a.omega;
    let cot = (w * t).cos() / (w * t).sin();
    let phase = -(n as f64 + 0.5) * acot(p.gamma() / (2.0 * w) + cot);
    let h = sho::hermite_polynomials(a.big_d * x, n as usize)[n as usize];
    let norm = a.big_n / two_pow_n_factorial(n as usize).sqrt();
    let gauss = (-a.big_a * x * x).exp();
    Ok(norm * h * Complex64::new(0.0, phase).exp() * gauss)
}

/// Literal ground-state position density `N^2 exp(-2 A' x^2)`.
pub fn position_density(x: f64, t: f64, p: &Checked) -> Result<f64> {
    let a = checked_aux(t, p)?;
    Ok(a.big_n * a.big_n * (-2.0 * a.a_prime * x * x).exp())
}

/// Analytic integral of the literal position density: `N^2 sqrt(pi / 2A')`,
/// which equals `1/eta(t)`.
pub fn position_density_norm(t: f64, p: &Checked) -> Result<f64> {
    let a = checked_aux(t, p)?;
    Ok(a.big_n * a.big_n * (PI / (2.0 * a.a_prime)).sqrt())
}

/// Literal ground-state momentum density
/// `N^2 / sqrt(2 |A|^2 hbar) * exp[-(p^2 / 2 hbar^2) A'/|A|^2]`.
pub fn momentum_density(p_val: f64, t: f64, p: &Checked) -> Result<f64> {
    let a = checked_aux(t, p)?;
    let a2 = a.big_a.norm_sqr();
    let scale = a.big_n * a.big_n / (2.0 * a2 * p.hbar()).sqrt();
    Ok(scale * (-p_val * p_val / (2.0 * p.hbar() * p.hbar()) * a.a_prime / a2).exp())
}

/// Analytic integral of the literal momentum density: `N^2 sqrt(pi hbar / A')`.
pub fn momentum_density_norm(t: f64, p: &Checked) -> Result<f64> {
    let a = checked_aux(t, p)?;
    Ok(a.big_n * a.big_n * (PI * p.hbar() / a.a_prime).sqrt())
}

/// Renormalized ground-state position density on a grid, deficit preserved
/// from the analytic raw integral.
pub fn position_density_profile(grid: &Grid, t: f64, p: &Checked) -> Result<DensityProfile> {
    let norm = position_density_norm(t, p)?;
    let a = checked_aux(t, p)?;
    let raw: Vec<f64> = grid
        .nodes(Space::Position)
        .map(|x| a.big_n * a.big_n * (-2.0 * a.a_prime * x * x).exp())
        .collect();
    DensityProfile::from_raw_with_norm(grid.clone(), Space::Position, raw, norm)
}

/// Renormalized ground-state momentum density on a grid.
pub fn momentum_density_profile(grid: &Grid, t: f64, p: &Checked) -> Result<DensityProfile> {
    let norm = momentum_density_norm(t, p)?;
    let a = checked_aux(t, p)?;
    let a2 = a.big_a.norm_sqr();
    let scale = a.big_n * a.big_n / (2.0 * a2 * p.hbar()).sqrt();
    let raw: Vec<f64> = grid
        .nodes(Space::Momentum)
        .map(|q| scale * (-q * q / (2.0 * p.hbar() * p.hbar()) * a.a_prime / a2).exp())
        .collect();
    DensityProfile::from_raw_with_norm(grid.clone(), Space::Momentum, raw, norm)
}
