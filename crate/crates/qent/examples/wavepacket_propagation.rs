// Direct kernel-convolution propagation: a stationary eigenstate picks up
// only a phase, a displaced packet follows the classical trajectory, and the
// damped kernel evolves the initial Gaussian unitarily into (nearly) the
// closed-form state.
//
//   cargo run --release -p qent --example wavepacket_propagation

use num_complex::Complex64;
use std::f64::consts::PI;

use qent::analytic::{dho, sho};
use qent::grid::{build_grid, Space, WaveSample};
use qent::numeric::propagate;
use qent::params::{validate_params, Mode, OscillatorParams};

fn main() -> Result<(), qent::Error> {
    let p = validate_params(
        OscillatorParams {
            xbar: 1.0,
            ..Default::default()
        },
        Mode::Sho,
    )?;
    let grid = build_grid(12.0, 1024, p.hbar())?;
    let t = PI / 3.0;

    let ground = WaveSample::from_fn(grid.clone(), Space::Position, 0.0, |x| {
        Complex64::new(sho::eigenstate(0, x, &p).unwrap(), 0.0)
    });
    let evolved = propagate(|x1, x0| sho::kernel(x1, x0, t, &p), &ground, t)?;
    let phase = Complex64::new(0.0, -t / 2.0).exp();
    let err: f64 = ground
        .values
        .iter()
        .zip(evolved.values.iter())
        .map(|(a, b)| (b - phase * a).norm())
        .fold(0.0, f64::max);
    println!("eigenstate stationarity: max |psi(t) - e^(-iwt/2) psi(0)| = {err:.3e}");

    let packet = WaveSample::from_fn(grid.clone(), Space::Position, 0.0, |x| {
        sho::coherent_state(x, 0.0, &p)
    });
    let moved = propagate(|x1, x0| sho::kernel(x1, x0, t, &p), &packet, t)?;
    let dens = moved.density_values();
    let peak = dens
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    println!(
        "packet peak after t = pi/3: x = {:.4} (classical: {:.4}), norm = {:.12}",
        grid.node(peak, Space::Position),
        t.cos(),
        moved.norm_sq()
    );

    let pd = validate_params(
        OscillatorParams {
            gamma: 0.1,
            ..Default::default()
        },
        Mode::Dho,
    )?;
    let w = pd.omega();
    let td = (PI / 3.0) / w;
    let psi0 = WaveSample::from_fn(grid.clone(), Space::Position, 0.0, |x| {
        Complex64::new(dho::initial_state(0, x, &pd).unwrap(), 0.0)
    });
    let prop = propagate(|x1, x0| dho::kernel_undriven(x1, x0, td, &pd), &psi0, td)?;
    println!("damped propagation norm (kernel route, unitary): {:.12}", prop.norm_sq());

    let closed = WaveSample::from_fn(grid, Space::Position, td, |x| {
        dho::wavefunction(0, x, td, &pd).unwrap()
    });
    println!(
        "closed-form state norm before renormalization:   {:.12} (deficit is 1/eta)",
        closed.norm_sq()
    );
    let a = prop.clone().normalized();
    let b = closed.normalized();
    let mid = a.values.len() / 2;
    let align = a.values[mid] / b.values[mid];
    let align = align / align.norm();
    let mismatch: f64 = a
        .values
        .iter()
        .zip(b.values.iter())
        .map(|(x, y)| (x - align * y).norm())
        .fold(0.0, f64::max);
    println!("kernel route vs closed form (renormalized, phase-aligned): {mismatch:.3e}");
    println!("  (the published width term deviates at O(gamma); see the validation notes)");
    Ok(())
}
