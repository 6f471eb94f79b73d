//! Uniform grids, sampled wave functions, and probability densities.
//!
//! A [`Grid`] covers the half-open interval `[x_min, x_max)` with a
//! power-of-two number of nodes and carries its conjugate momentum lattice:
//! `dp = 2*pi*hbar / (n * dx)`, momentum nodes on `[-pi*hbar/dx, pi*hbar/dx)`.
//! Grid integrals use the node sum `sum f * spacing`, the trapezoid rule with
//! periodic closure on the half-open interval; for the smooth decaying
//! integrands handled here it agrees with the open-ended trapezoid rule to
//! well below the tolerances the crate promises.

use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};

/// Which representation a sample or density lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Position,
    Momentum,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Position => write!(f, "position"),
            Space::Momentum => write!(f, "momentum"),
        }
    }
}

/// Uniform spatial grid and its conjugate momentum lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
    dx: f64,
    dp: f64,
    p_min: f64,
    hbar: f64,
}

impl Grid {
    /// Grid over `[x_min, x_max)` with `n_points` nodes (power of two, >= 16).
    pub fn from_bounds(x_min: f64, x_max: f64, n_points: usize, hbar: f64) -> Result<Grid> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::BadGridSpec(format!(
                "need x_min < x_max, got [{x_min}, {x_max})"
            )));
        }
        if n_points < 16 || !n_points.is_power_of_two() {
            return Err(Error::BadGridSpec(format!(
                "n_points = {n_points} must be a power of two >= 16"
            )));
        }
        if hbar <= 0.0 || hbar.is_nan() {
            return Err(Error::BadGridSpec(format!("hbar = {hbar} must be > 0")));
        }
        let dx = (x_max - x_min) / n_points as f64;
        let dp = 2.0 * std::f64::consts::PI * hbar / (n_points as f64 * dx);
        let p_min = -std::f64::consts::PI * hbar / dx;
        Ok(Grid {
            x_min,
            x_max,
            n_points,
            dx,
            dp,
            p_min,
            hbar,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dp(&self) -> f64 {
        self.dp
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn spacing(&self, space: Space) -> f64 {
        match space {
            Space::Position => self.dx,
            Space::Momentum => self.dp,
        }
    }

    pub fn node(&self, i: usize, space: Space) -> f64 {
        match space {
            Space::Position => self.x_min + self.dx * i as f64,
            Space::Momentum => self.p_min + self.dp * i as f64,
        }
    }

    pub fn nodes(&self, space: Space) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.node(i, space))
    }

    /// Node sum times spacing over the given representation.
    pub fn integral(&self, values: &[f64], space: Space) -> f64 {
        debug_assert_eq!(values.len(), self.n_points);
        values.iter().sum::<f64>() * self.spacing(space)
    }
}

/// Symmetric grid `[-x_half_width, x_half_width)`.
pub fn build_grid(x_half_width: f64, n_points: usize, hbar: f64) -> Result<Grid> {
    if x_half_width <= 0.0 || x_half_width.is_nan() {
        return Err(Error::BadGridSpec(format!(
            "half width {x_half_width} must be > 0"
        )));
    }
    Grid::from_bounds(-x_half_width, x_half_width, n_points, hbar)
}

/// Complex amplitudes sampled on a grid at one time.
#[derive(Debug, Clone)]
pub struct WaveSample {
    pub grid: Grid,
    pub values: Vec<Complex64>,
    pub space: Space,
    pub time: f64,
}

impl WaveSample {
    pub fn from_fn<F>(grid: Grid, space: Space, time: f64, f: F) -> WaveSample
    where
        F: FnMut(f64) -> Complex64,
    {
        let values = grid.nodes(space).map(f).collect();
        WaveSample {
            grid,
            values,
            space,
            time,
        }
    }

    /// `sum |psi|^2 * spacing`.
    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.spacing(self.space)
    }

    /// Rescaled so that `norm_sq() == 1`.
    pub fn normalized(mut self) -> WaveSample {
        let scale = 1.0 / self.norm_sq().sqrt();
        for v in &mut self.values {
            *v *= scale;
        }
        self
    }

    /// `|psi|^2` per node.
    pub fn density_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }
}

/// Non-negative density on a grid, renormalized to unit integral, with the
/// raw normalization kept around as a diagnostic.
#[derive(Debug, Clone)]
pub struct DensityProfile {
    grid: Grid,
    values: Vec<f64>,
    space: Space,
    raw_norm: f64,
}

impl DensityProfile {
    /// Normalize by the numeric grid integral of `raw`.
    pub fn from_raw(grid: Grid, space: Space, raw: Vec<f64>) -> Result<DensityProfile> {
        let raw_norm = grid.integral(&raw, space);
        Self::from_raw_with_norm(grid, space, raw, raw_norm)
    }

    /// Normalize by an externally supplied (e.g. analytically integrated)
    /// normalization of the raw values.
    pub fn from_raw_with_norm(
        grid: Grid,
        space: Space,
        raw: Vec<f64>,
        raw_norm: f64,
    ) -> Result<DensityProfile> {
        if raw.len() != grid.n_points() {
            return Err(Error::BadGridSpec(format!(
                "density has {} values on a {}-node grid",
                raw.len(),
                grid.n_points()
            )));
        }
        if !raw_norm.is_finite() || raw_norm <= 0.0 {
            return Err(Error::NotNormalized { integral: raw_norm });
        }
        let mut values = raw;
        for v in &mut values {
            debug_assert!(*v >= 0.0 || v.abs() < 1e-300);
            if *v < 0.0 {
                *v = 0.0;
            }
            *v /= raw_norm;
        }
        Ok(DensityProfile {
            grid,
            values,
            space,
            raw_norm,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Integral of the raw values before renormalization.
    pub fn raw_norm(&self) -> f64 {
        self.raw_norm
    }

    /// Raw integral minus one.
    pub fn deficit(&self) -> f64 {
        self.raw_norm - 1.0
    }

    /// Integral of the renormalized values; 1 up to grid accuracy.
    pub fn integral(&self) -> f64 {
        self.grid.integral(&self.values, self.space)
    }

    /// Mass in the outer `edge_fraction` of the span on each side.
    pub fn tail_mass(&self, edge_fraction: f64) -> f64 {
        let span = self.grid.n_points() as f64 * self.grid.spacing(self.space);
        let lo = self.grid.node(0, self.space) + edge_fraction * span;
        let hi = self.grid.node(0, self.space) + (1.0 - edge_fraction) * span;
        let mut mass = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            let x = self.grid.node(i, self.space);
            if x < lo || x > hi {
                mass += v;
            }
        }
        mass * self.grid.spacing(self.space)
    }

    /// Mean of the density.
    pub fn mean(&self) -> f64 {
        let s = self.grid.spacing(self.space);
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.node(i, self.space) * v)
            .sum::<f64>()
            * s
    }

    /// Variance about the mean.
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        let s = self.grid.spacing(self.space);
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let d = self.grid.node(i, self.space) - mu;
                d * d * v
            })
            .sum::<f64>()
            * s
    }
}
