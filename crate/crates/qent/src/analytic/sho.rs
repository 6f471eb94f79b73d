//! Simple harmonic oscillator: classical action, Feynman kernel, spectrum,
//! Hermite-Gaussian eigenstates, the damped spectral (Mehler) sum, and the
//! displaced-Gaussian coherent state with its position/momentum densities.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{caustic_guard, KernelValue, CAUSTIC_DELTA, HERMITE_MAX};
use crate::error::{Error, Result};
use crate::params::Checked;

/// Classical action between endpoints x0 -> x1 in time t:
/// `(m w / 2 sin(wt)) * [(x0^2 + x1^2) cos(wt) - 2 x0 x1]`.
pub fn classical_action(x0: f64, x1: f64, t: f64, p: &Checked) -> Result<f64> {
    let w = p.omega();
    let s = caustic_guard(t, w, CAUSTIC_DELTA)?;
    let c = (w * t).cos();
    Ok(p.m() * w / (2.0 * s) * ((x0 * x0 + x1 * x1) * c - 2.0 * x0 * x1))
}

/// Feynman kernel K(x1, t; x0, 0) = sqrt(m w / (2 pi hbar i sin wt)) exp(i S / hbar).
pub fn kernel(x1: f64, x0: f64, t: f64, p: &Checked) -> Result<KernelValue> {
    let action = classical_action(x0, x1, t, p)?;
    let s = (p.omega() * t).sin();
    let pref = prefactor(s, p);
    Ok(pref * Complex64::new(0.0, action / p.hbar()).exp())
}

/// Kernel at complex endpoints; used by contour-deformed composition checks.
pub fn kernel_at(x1: Complex64, x0: Complex64, t: f64, p: &Checked) -> Result<KernelValue> {
    let w = p.omega();
    let s = caustic_guard(t, w, CAUSTIC_DELTA)?;
    let c = (w * t).cos();
    let action = (x0 * x0 + x1 * x1) * c - 2.0 * x0 * x1;
    let action = action * (p.m() * w / (2.0 * s));
    Ok(prefactor(s, p) * (Complex64::i() * action / p.hbar()).exp())
}

fn prefactor(sin_wt: f64, p: &Checked) -> Complex64 {
    let scale = p.m() * p.omega() / (2.0 * PI * p.hbar());
    (Complex64::new(scale, 0.0) / Complex64::new(0.0, sin_wt)).sqrt()
}

/// Energy spectrum `hbar w (n + 1/2)`.
pub fn energy(n: i64, p: &Checked) -> Result<f64> {
    if n < 0 {
        return Err(Error::NegativeQuantumNumber { n });
    }
    Ok(p.hbar() * p.omega() * (n as f64 + 0.5))
}

/// Normalized Hermite functions `phi_0..=phi_n` at argument `alpha`,
/// by the stable three-term recurrence; `integral phi_n^2 d(alpha) = 1`.
pub(crate) fn hermite_functions(alpha: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let phi0 = PI.powf(-0.25) * (-alpha * alpha / 2.0).exp();
    out.push(phi0);
    if n_max >= 1 {
        out.push(std::f64::consts::SQRT_2 * alpha * phi0);
    }
    for k in 1..n_max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * alpha * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Physicists' Hermite polynomial values `H_0..=H_n` at `u`.
pub(crate) fn hermite_polynomials(u: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max >= 1 {
        out.push(2.0 * u);
    }
    for k in 1..n_max {
        let next = 2.0 * u * out[k] - 2.0 * k as f64 * out[k - 1];
        out.push(next);
    }
    out
}

/// Stationary eigenstate `psi_n(x)`, real-valued.
pub fn eigenstate(n: i64, x: f64, p: &Checked) -> Result<f64> {
    if n < 0 {
        return Err(Error::NegativeQuantumNumber { n });
    }
    if n > HERMITE_MAX {
        return Err(Error::QuantumNumberTooLarge { n, max: HERMITE_MAX });
    }
    // alpha = sqrt(m w / hbar) x; sqrt(a0) restores unit L2 norm in x
    let a0 = (p.m() * p.omega() / p.hbar()).sqrt();
    let phi = hermite_functions(a0 * x, n as usize);
    Ok(a0.sqrt() * phi[n as usize])
}

/// Damped spectral sum `sum_{n<=n_max} e^{-i w t (n+1/2)} e^{-eps w n} psi_n(x0) psi_n(x1)`.
///
/// Converges to [`kernel`] as `n_max -> inf`, `eps -> 0+`; the damping factor
/// makes the sum absolutely convergent at fixed `eps`.
pub fn mehler_kernel(
    x0: f64,
    x1: f64,
    t: f64,
    p: &Checked,
    n_max: usize,
    eps: f64,
) -> Result<KernelValue> {
    assert!(eps > 0.0, "damping eps must be > 0");
    let w = p.omega();
    let a0 = (p.m() * w / p.hbar()).sqrt();
    let f0 = hermite_functions(a0 * x0, n_max);
    let f1 = hermite_functions(a0 * x1, n_max);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..=n_max {
        let nf = n as f64;
        let rot = Complex64::new(0.0, -w * t * (nf + 0.5)).exp();
        let damp = (-eps * w * nf).exp();
        sum += rot * damp * (a0 * f0[n] * f1[n]);
    }
    Ok(sum)
}

/// Ground-state Gaussian displaced to `xbar` and propagated to time t.
pub fn coherent_state(x: f64, t: f64, p: &Checked) -> Complex64 {
    let w = p.omega();
    let scale = (p.m() * w / (PI * p.hbar())).powf(0.25);
    let alpha = (p.m() * w / p.hbar()).sqrt() * x;
    let abar = (p.m() * w / p.hbar()).sqrt() * p.xbar();
    let rot1 = Complex64::new(0.0, -w * t).exp();
    let rot2 = Complex64::new(0.0, -2.0 * w * t).exp();
    let expo = Complex64::new(-abar * abar / 4.0 - alpha * alpha / 2.0, -w * t / 2.0)
        - abar * abar / 4.0 * rot2
        + alpha * abar * rot1;
    scale * expo.exp()
}

/// `|Psi(x,t)|^2 = sqrt(m w / pi hbar) exp[-(m w / hbar)(x - xbar cos wt)^2]`.
pub fn position_density(x: f64, t: f64, p: &Checked) -> f64 {
    let w = p.omega();
    let a = p.m() * w / p.hbar();
    let center = p.xbar() * (w * t).cos();
    (a / PI).sqrt() * (-a * (x - center) * (x - center)).exp()
}

/// Momentum density of the coherent state: a Gaussian of variance
/// `m w hbar / 2` centered at `-m w xbar sin(wt)` (the completed-square form,
/// stable for large `xbar`).
pub fn momentum_density(p_val: f64, t: f64, p: &Checked) -> f64 {
    let w = p.omega();
    let scale = 1.0 / (p.m() * w * PI * p.hbar()).sqrt();
    let center = -p.m() * w * p.xbar() * (w * t).sin();
    let d = p_val - center;
    scale * (-d * d / (p.m() * w * p.hbar())).exp()
}
