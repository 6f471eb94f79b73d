//! Closed-form actions, propagators, eigenstates, time-dependent wave
//! functions and densities for the undamped oscillator and the damped
//! (Caldirola-Kanai) oscillator.
//!
//! Everything here is a pure function of immutable inputs. Kernel prefactors
//! take the principal branch of `sqrt(1/(i sin(omega t)))`; no Maslov branch
//! tracking is done past the first caustic, and the validation suite stays
//! inside `0 < omega*t < pi`. Times with `|sin(omega t)| <= CAUSTIC_DELTA`
//! are rejected with [`Error::CausticTime`](crate::error::Error::CausticTime).

use crate::error::{Error, Result};

pub mod dho;
pub mod sho;

/// Complex kernel amplitude K(x1, t; x0, 0).
pub type KernelValue = num_complex::Complex64;

/// Times with |sin(omega t)| at or below this are treated as caustics.
pub const CAUSTIC_DELTA: f64 = 1e-6;

/// Largest quantum number the Hermite evaluators accept.
pub const HERMITE_MAX: i64 = 64;

/// Returns sin(omega*t) or a caustic error when it is below the guard.
pub(crate) fn caustic_guard(t: f64, omega: f64, delta: f64) -> Result<f64> {
    let s = (omega * t).sin();
    if s.abs() <= delta {
        Err(Error::CausticTime {
            t,
            sin_abs: s.abs(),
            delta,
        })
    } else {
        Ok(s)
    }
}

/// arccot on the principal branch (0, pi).
pub(crate) fn acot(x: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 - x.atan()
}
