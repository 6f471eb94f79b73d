// Cross-route propagator checks: spectral-sum convergence toward the closed
// kernel, the finite-difference semiclassical prefactor, and composition
// residuals on the deformed contour (including the genuine violation for the
// damped kernel, whose problem is time-dependent).
//
//   cargo run --release -p qent --example kernel_checks

use std::f64::consts::PI;

use qent::analytic::{dho, sho};
use qent::grid::build_grid;
use qent::numeric::{kernel_compose, van_vleck_prefactor_fd, DEFAULT_FD_STEP};
use qent::params::{validate_params, Mode, OscillatorParams};

fn main() -> Result<(), qent::Error> {
    let p = validate_params(OscillatorParams::default(), Mode::Sho)?;
    let grid = build_grid(12.0, 2048, 1.0)?;

    println!("spectral sum vs closed kernel at wt = pi/3, damping 1e-3:");
    let t = PI / 3.0;
    for n_max in [80usize, 320, 1280, 2560] {
        let err = [(0.0, 0.0), (0.2, -0.1), (1.0, 0.5)]
            .iter()
            .map(|&(a, b)| {
                (sho::mehler_kernel(a, b, t, &p, n_max, 1e-3).unwrap()
                    - sho::kernel(b, a, t, &p).unwrap())
                .norm()
            })
            .fold(0.0, f64::max);
        println!("  n_max = {n_max:>5}: max error = {err:.3e}");
    }

    let f = van_vleck_prefactor_fd(
        |a, b, tt| sho::classical_action(a, b, tt, &p),
        0.4,
        -0.3,
        t,
        DEFAULT_FD_STEP,
        &p,
    )?;
    let k = sho::kernel(0.0, 0.0, t, &p)?;
    println!("semiclassical prefactor vs kernel: |F - K| = {:.3e}", (f - k).norm());

    let r = kernel_compose(|x1, x0, tt| sho::kernel_at(x1, x0, tt, &p), PI / 6.0, PI / 6.0, &grid)?;
    println!("composition residual, undamped:        {r:.3e}");

    let pf = validate_params(
        OscillatorParams {
            gamma: 1e-8,
            ..Default::default()
        },
        Mode::Dho,
    )?;
    let r = kernel_compose(|x1, x0, tt| dho::free_kernel_at(x1, x0, tt, &pf), 0.5, 0.5, &grid)?;
    println!("composition residual, damped free (gamma = 1e-8): {r:.3e}");

    let pd = validate_params(
        OscillatorParams {
            gamma: 0.2,
            ..Default::default()
        },
        Mode::Dho,
    )?;
    let td = (PI / 6.0) / pd.omega();
    let r = kernel_compose(
        |x1, x0, tt| dho::kernel_undriven_at(x1, x0, tt, &pd),
        td,
        td,
        &grid,
    )?;
    println!("composition residual, damped (gamma = 0.2):       {r:.3e}");
    println!("  (real: the damped problem is time-dependent, so elapsed-time");
    println!("   kernels do not compose; the residual vanishes with gamma)");
    Ok(())
}
