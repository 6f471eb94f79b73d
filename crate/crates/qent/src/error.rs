use thiserror::Error;

/// Errors shared by the parameter, analytic, numeric and entropy layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {name} = {value} is outside its allowed range")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("overdamped: gamma = {gamma} >= 2*omega0 = {}", 2.0 * omega0)]
    Overdamped { gamma: f64, omega0: f64 },

    #[error("quantum number {n} is negative")]
    NegativeQuantumNumber { n: i64 },

    #[error("quantum number {n} exceeds the Hermite evaluation cap {max}")]
    QuantumNumberTooLarge { n: i64, max: i64 },

    #[error("caustic time: |sin(omega*t)| = {sin_abs:.3e} <= {delta:.3e} at t = {t}")]
    CausticTime { t: f64, sin_abs: f64, delta: f64 },

    #[error("time must be strictly positive")]
    ZeroTime,

    #[error("zero damping: use the undamped kernel in the gamma = 0 limit")]
    ZeroDamping,

    #[error("bad grid spec: {0}")]
    BadGridSpec(String),

    #[error("sample is in {found} space, expected {expected}")]
    WrongSpace {
        expected: crate::grid::Space,
        found: crate::grid::Space,
    },

    #[error("quadrature failed: estimated error {est_error:.3e} > tolerance {tol:.3e}")]
    QuadratureFailure { est_error: f64, tol: f64 },

    #[error("density is not normalized: integral = {integral}")]
    NotNormalized { integral: f64 },

    #[error("grid too small: tail mass {tail_mass:.3e} exceeds {limit:.3e} in the outer {edge_fraction}% of the grid")]
    GridTooSmall {
        tail_mass: f64,
        limit: f64,
        edge_fraction: f64,
    },

    #[error("too few finite points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
