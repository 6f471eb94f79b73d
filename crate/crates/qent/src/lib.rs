//! # qent
//!
//! Time-dependent joint (Leipnik) entropy of oscillating quantum states,
//! computed two independent ways and cross-checked.
//!
//! For a pure state the joint entropy combines the position and momentum
//! Shannon entropies of `|psi(x,t)|^2` and `|psi~(p,t)|^2`:
//!
//! ```text
//! S_j(t) = S_x(t) + S_p(t) - ln(2 pi hbar),      S_j >= ln(e/2)
//! ```
//!
//! with the bound saturated by minimum-uncertainty Gaussians. The crate
//! covers the simple harmonic oscillator (displaced-Gaussian packets) and
//! the underdamped Caldirola-Kanai oscillator, each along two routes:
//!
//! * closed forms ([`analytic`]): actions, propagator kernels, eigenstates,
//!   the evolved wave functions, densities and the published closed-form
//!   joint entropies, evaluated literally;
//! * an independent numerical pipeline ([`numeric`] + [`entropy`]): sampled
//!   states, FFT momentum densities, grid quadrature for the entropies,
//!   kernel-convolution propagation, propagator composition on a deformed
//!   contour, a finite-difference semiclassical prefactor, and adaptive
//!   quadrature for the driven-kernel coefficients.
//!
//! Where the two routes disagree (they genuinely do for the displaced-packet
//! closed form, the damped closed-form entropy, and the damped density
//! normalization), both numbers are reported side by side; nothing is
//! silently preferred. See the `validate` subcommand of the `qent` binary
//! and the runnable `examples/` for the full story.
//!
//! ```no_run
//! use qent::entropy::{numeric_record, leipnik_minimum};
//! use qent::params::{validate_params, Mode, OscillatorParams};
//!
//! let p = validate_params(OscillatorParams::default(), Mode::Sho)?;
//! let grid = qent::grid::build_grid(12.0, 2048, 1.0)?;
//! let rec = numeric_record(0.9, &p, &grid)?;
//! assert!((rec.s_joint - leipnik_minimum()).abs() < 1e-6);
//! # Ok::<(), qent::error::Error>(())
//! ```

pub mod analytic;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod grid;
pub mod numeric;
pub mod params;

pub use error::{Error, Result};
pub use grid::{build_grid, DensityProfile, Grid, Space, WaveSample};
pub use params::{validate_params, Checked, DriveForce, Mode, OscillatorParams};
