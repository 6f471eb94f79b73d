//! Physical parameters, validation, and the drive force.
//!
//! Everything downstream works in the natural units fixed here: the defaults
//! are `m = hbar = omega0 = 1`, `gamma = 0`, `xbar = 0`. The damped oscillator
//! is only treated in the underdamped regime, where the shifted frequency
//! `omega = sqrt(omega0^2 - gamma^2/4)` is real.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Physical constants of one oscillator run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Mass, > 0.
    pub m: f64,
    /// Undamped angular frequency, > 0.
    pub omega0: f64,
    /// Damping factor, >= 0.
    pub gamma: f64,
    /// Reduced Planck constant, > 0.
    pub hbar: f64,
    /// Initial packet center. Large values need a wider grid.
    pub xbar: f64,
}

impl Default for OscillatorParams {
    fn default() -> Self {
        OscillatorParams {
            m: 1.0,
            omega0: 1.0,
            gamma: 0.0,
            hbar: 1.0,
            xbar: 0.0,
        }
    }
}

/// Which oscillator family a parameter set is validated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sho,
    Dho,
}

/// Validated parameters plus the effective angular frequency.
///
/// For `Mode::Sho` the frequency is `omega0`; for `Mode::Dho` it is the
/// shifted `sqrt(omega0^2 - gamma^2/4)`. Immutable after construction and
/// safe to share across workers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checked {
    params: OscillatorParams,
    mode: Mode,
    omega: f64,
}

impl Checked {
    pub fn params(&self) -> &OscillatorParams {
        &self.params
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Effective angular frequency (shifted for the damped oscillator).
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn m(&self) -> f64 {
        self.params.m
    }

    pub fn gamma(&self) -> f64 {
        self.params.gamma
    }

    pub fn hbar(&self) -> f64 {
        self.params.hbar
    }

    pub fn xbar(&self) -> f64 {
        self.params.xbar
    }
}

/// Validate a parameter set for the requested mode.
///
/// Rejects non-positive `m`, `omega0`, `hbar`, negative `gamma`, and (in
/// `Dho` mode) the overdamped and critically damped regimes `gamma >= 2*omega0`.
/// Idempotent: re-validating the params of a `Checked` value reproduces it
/// bit for bit.
pub fn validate_params(p: OscillatorParams, mode: Mode) -> Result<Checked> {
    let positive = [("m", p.m), ("omega0", p.omega0), ("hbar", p.hbar)];
    for (name, value) in positive {
        if value <= 0.0 || !value.is_finite() {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    if p.gamma < 0.0 || !p.gamma.is_finite() {
        return Err(Error::NonPositiveParameter {
            name: "gamma",
            value: p.gamma,
        });
    }
    if !p.xbar.is_finite() {
        return Err(Error::NonPositiveParameter {
            name: "xbar",
            value: p.xbar,
        });
    }
    let omega = match mode {
        Mode::Sho => p.omega0,
        Mode::Dho => {
            if p.gamma >= 2.0 * p.omega0 {
                return Err(Error::Overdamped {
                    gamma: p.gamma,
                    omega0: p.omega0,
                });
            }
            (p.omega0 * p.omega0 - p.gamma * p.gamma / 4.0).sqrt()
        }
    };
    Ok(Checked {
        params: p,
        mode,
        omega,
    })
}

/// External drive j(t), with the zero drive singled out so that the
/// drive-dependent kernel coefficients can be exact zeros.
#[derive(Clone)]
pub enum DriveForce {
    Zero,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl DriveForce {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        DriveForce::Custom(Arc::new(f))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            DriveForce::Zero => 0.0,
            DriveForce::Custom(f) => f(t),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DriveForce::Zero)
    }
}

impl fmt::Debug for DriveForce {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DriveForce::Zero => write!(f, "DriveForce::Zero"),
            DriveForce::Custom(_) => write!(f, "DriveForce::Custom(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sho_identity_frequency() {
        let p = OscillatorParams::default();
        let c = validate_params(p, Mode::Sho).unwrap();
        assert_eq!(c.omega(), 1.0);
    }

    #[test]
    fn dho_shifted_frequency() {
        let p = OscillatorParams {
            omega0: 2.0,
            gamma: 1.0,
            ..Default::default()
        };
        let c = validate_params(p, Mode::Dho).unwrap();
        assert_eq!(c.omega(), (4.0f64 - 0.25).sqrt());
    }

    #[test]
    fn overdamped_rejected_at_boundary() {
        let p = OscillatorParams {
            gamma: 2.0,
            ..Default::default()
        };
        match validate_params(p, Mode::Dho) {
            Err(Error::Overdamped { .. }) => {}
            other => panic!("expected Overdamped, got {other:?}"),
        }
    }

    #[test]
    fn nonpositive_rejected() {
        for (name, p) in [
            ("m", OscillatorParams { m: 0.0, ..Default::default() }),
            ("omega0", OscillatorParams { omega0: -1.0, ..Default::default() }),
            ("hbar", OscillatorParams { hbar: 0.0, ..Default::default() }),
            ("gamma", OscillatorParams { gamma: -0.5, ..Default::default() }),
        ] {
            match validate_params(p, Mode::Sho) {
                Err(Error::NonPositiveParameter { name: n, .. }) => assert_eq!(n, name),
                other => panic!("expected NonPositiveParameter for {name}, got {other:?}"),
            }
        }
    }

    #[test]
    fn validation_is_idempotent() {
        let p = OscillatorParams {
            omega0: 2.0,
            gamma: 0.7,
            xbar: 0.3,
            ..Default::default()
        };
        let c1 = validate_params(p, Mode::Dho).unwrap();
        let c2 = validate_params(*c1.params(), Mode::Dho).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(c1.params().gamma.to_bits(), c2.params().gamma.to_bits());
    }

    #[test]
    fn zero_drive_evaluates_to_zero() {
        let d = DriveForce::Zero;
        for t in [0.0, 0.5, 100.0, -3.0] {
            assert_eq!(d.eval(t), 0.0);
        }
        assert!(d.is_zero());
        assert!(!DriveForce::from_fn(|t| t).is_zero());
    }
}
