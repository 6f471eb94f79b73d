//! Discrete position <-> momentum transforms with continuum normalization.
//!
//! `to_momentum` approximates
//! `psi~(p) = (2 pi hbar)^{-1/2} integral dx e^{-i p x / hbar} psi(x)`
//! on the grid's conjugate momentum lattice: an FFT with alternating-sign
//! pre/post twiddles (exact for the symmetric half-open grids built here,
//! where `p_min * dx / hbar = -pi`) plus the grid-origin phase, scaled by
//! `dx / sqrt(2 pi hbar)`. Parseval holds to rounding:
//! `sum |psi~|^2 dp = sum |psi|^2 dx`.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{Space, WaveSample};

/// Forward transform of a position-space sample.
pub fn to_momentum(w: &WaveSample) -> Result<WaveSample> {
    if w.space != Space::Position {
        return Err(Error::WrongSpace {
            expected: Space::Position,
            found: w.space,
        });
    }
    let n = w.grid.n_points();
    let hbar = w.grid.hbar();
    let mut buf: Vec<Complex64> = w
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { *v } else { -*v })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = w.grid.dx() / (2.0 * std::f64::consts::PI * hbar).sqrt();
    let x0 = w.grid.node(0, Space::Position);
    for (j, v) in buf.iter_mut().enumerate() {
        let p_j = w.grid.node(j, Space::Momentum);
        *v *= scale * Complex64::new(0.0, -p_j * x0 / hbar).exp();
    }
    Ok(WaveSample {
        grid: w.grid.clone(),
        values: buf,
        space: Space::Momentum,
        time: w.time,
    })
}

/// Inverse transform of a momentum-space sample.
pub fn to_position(w: &WaveSample) -> Result<WaveSample> {
    if w.space != Space::Momentum {
        return Err(Error::WrongSpace {
            expected: Space::Momentum,
            found: w.space,
        });
    }
    let n = w.grid.n_points();
    let hbar = w.grid.hbar();
    let x0 = w.grid.node(0, Space::Position);
    let mut buf: Vec<Complex64> = w
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let p_j = w.grid.node(j, Space::Momentum);
            *v * Complex64::new(0.0, p_j * x0 / hbar).exp()
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = w.grid.dp() / (2.0 * std::f64::consts::PI * hbar).sqrt();
    for (k, v) in buf.iter_mut().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *v *= sign * scale;
    }
    Ok(WaveSample {
        grid: w.grid.clone(),
        values: buf,
        space: Space::Position,
        time: w.time,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::sho;
    use crate::grid::build_grid;
    use crate::params::{validate_params, Mode, OscillatorParams};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn gaussian_sample(l: f64, n: usize) -> WaveSample {
        let g = build_grid(l, n, 1.0).unwrap();
        WaveSample::from_fn(g, Space::Position, 0.0, |x| {
            Complex64::new(PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)
        })
    }

    #[test]
    fn self_dual_gaussian() {
        let w = gaussian_sample(12.0, 1024);
        let wt = to_momentum(&w).unwrap();
        for (j, q) in wt.grid.nodes(Space::Momentum).enumerate() {
            let expected = PI.powf(-0.5) * (-q * q).exp();
            assert!(
                (wt.values[j].norm_sqr() - expected).abs() < 1e-12,
                "p = {q}"
            );
        }
    }

    #[test]
    fn shift_theorem_exact_on_lattice() {
        let w = gaussian_sample(12.0, 512);
        let dp = w.grid.dp();
        let p0 = 7.0 * dp;
        let shifted = WaveSample::from_fn(w.grid.clone(), Space::Position, 0.0, |x| {
            Complex64::new(PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)
                * Complex64::new(0.0, p0 * x).exp()
        });
        let base = to_momentum(&w).unwrap();
        let moved = to_momentum(&shifted).unwrap();
        let n = w.grid.n_points();
        for j in 0..n {
            let src = (j + n - 7) % n;
            assert!(
                (moved.values[j].norm_sqr() - base.values[src].norm_sqr()).abs() < 1e-12,
                "j = {j}"
            );
        }
    }

    #[test]
    fn coherent_state_density_matches_closed_momentum_form() {
        let p = validate_params(
            OscillatorParams {
                xbar: 1.0,
                ..Default::default()
            },
            Mode::Sho,
        )
        .unwrap();
        let g = build_grid(12.0, 2048, 1.0).unwrap();
        let t = PI / 3.0;
        let w = WaveSample::from_fn(g, Space::Position, t, |x| sho::coherent_state(x, t, &p));
        let wt = to_momentum(&w).unwrap();
        let mut max_err: f64 = 0.0;
        for (j, q) in wt.grid.nodes(Space::Momentum).enumerate() {
            let expected = sho::momentum_density(q, t, &p);
            max_err = max_err.max((wt.values[j].norm_sqr() - expected).abs());
        }
        assert!(max_err < 1e-7, "max err {max_err}");
    }

    #[test]
    fn offset_grid_origin_phase() {
        // asymmetric grid: the origin phase keeps the transform exact
        let g = crate::grid::Grid::from_bounds(-7.75, 11.75, 512, 1.0).unwrap();
        let c = 2.0;
        let w = WaveSample::from_fn(g, Space::Position, 0.0, |x| {
            Complex64::new(PI.powf(-0.25) * (-(x - c) * (x - c) / 2.0).exp(), 0.0)
        });
        let wt = to_momentum(&w).unwrap();
        for (j, q) in wt.grid.nodes(Space::Momentum).enumerate() {
            let expected = PI.powf(-0.5) * (-q * q).exp();
            assert!(
                (wt.values[j].norm_sqr() - expected).abs() < 1e-12,
                "p = {q}"
            );
        }
        assert!((w.norm_sq() - wt.norm_sq()).abs() < 1e-12);
        let back = to_position(&wt).unwrap();
        let rt: f64 = w
            .values
            .iter()
            .zip(back.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(rt < 1e-12);
    }

    #[test]
    fn wrong_space_rejected() {
        let w = gaussian_sample(10.0, 256);
        let wt = to_momentum(&w).unwrap();
        assert!(matches!(
            to_momentum(&wt),
            Err(Error::WrongSpace { .. })
        ));
        assert!(matches!(
            to_position(&w),
            Err(Error::WrongSpace { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn parseval_and_round_trip(seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = build_grid(10.0, 256, 1.0).unwrap();
            let w = WaveSample::from_fn(g, Space::Position, 0.0, |x| {
                let envelope = (-x * x / 6.0).exp();
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * envelope
            });
            let wt = to_momentum(&w).unwrap();
            let back = to_position(&wt).unwrap();

            let n_x = w.norm_sq();
            let n_p = wt.norm_sq();
            prop_assert!((n_x - n_p).abs() < 1e-10 * n_x.max(1.0));

            let max_abs = w
                .values
                .iter()
                .zip(back.values.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            prop_assert!(max_abs < 1e-10);
        }
    }
}
