//! Grid transforms, kernel propagation, composition checks, adaptive
//! quadrature and the finite-difference semiclassical prefactor: the
//! machinery that validates the closed forms in [`crate::analytic`]
//! through independent routes.

pub mod fourier;
pub mod propagate;
pub mod quad;
pub mod vanvleck;

pub use fourier::{to_momentum, to_position};
pub use propagate::{kernel_compose, propagate};
pub use quad::{integrate, QuadratureResult};
pub use vanvleck::{van_vleck_prefactor_fd, DEFAULT_FD_STEP};
