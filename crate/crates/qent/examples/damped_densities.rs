// The damped ground state's literal densities: their normalization deficit
// (the raw integral is 1/eta(t), not 1), the renormalized profiles, widths
// from the auxiliary bundle, and the small-damping limit.
//
//   cargo run --release -p qent --example damped_densities

use std::f64::consts::PI;

use qent::analytic::dho;
use qent::grid::build_grid;
use qent::params::{validate_params, Mode, OscillatorParams};

fn main() -> Result<(), qent::Error> {
    let grid = build_grid(12.0, 2048, 1.0)?;

    println!("literal density normalization (gamma = 1e-8, one eighth period):");
    let p = validate_params(
        OscillatorParams {
            gamma: 1e-8,
            ..Default::default()
        },
        Mode::Dho,
    )?;
    let t8 = (PI / 4.0) / p.omega();
    println!(
        "  raw integral = {:.10}   sin(pi/4) = {:.10}",
        dho::position_density_norm(t8, &p)?,
        (PI / 4.0f64).sin()
    );

    println!();
    println!("gamma = 0.5, omega0 = 2:");
    let p = validate_params(
        OscillatorParams {
            omega0: 2.0,
            gamma: 0.5,
            ..Default::default()
        },
        Mode::Dho,
    )?;
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "t", "raw norm", "1/eta", "renormed", "sigma_x^2", "1/(4A')"
    );
    for k in 1..=8 {
        let t = 0.35 * k as f64;
        let a = dho::aux(t, &p);
        if a.caustic {
            println!("{t:>6.2}  (caustic)");
            continue;
        }
        let pos = dho::position_density_profile(&grid, t, &p)?;
        println!(
            "{:>6.2} {:>12.8} {:>12.8} {:>12.8} {:>12.6e} {:>12.6e}",
            t,
            pos.raw_norm(),
            1.0 / a.eta_sq.sqrt(),
            pos.integral(),
            pos.variance(),
            1.0 / (4.0 * a.a_prime)
        );
    }

    println!();
    println!("momentum width against the bundle (sigma_p^2 = hbar^2 |A|^2 / A'):");
    for k in 1..=4 {
        let t = 0.5 * k as f64;
        let a = dho::aux(t, &p);
        if a.caustic {
            continue;
        }
        let mom = dho::momentum_density_profile(&grid, t, &p)?;
        println!(
            "  t = {t:.2}: variance = {:.8}, expected = {:.8}",
            mom.variance(),
            a.big_a.norm_sqr() / a.a_prime
        );
    }
    Ok(())
}
