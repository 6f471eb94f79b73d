// The discrete momentum transform against the closed-form momentum density
// of a displaced packet, plus Parseval and the packet's classical motion in
// phase space.
//
//   cargo run --release -p qent --example momentum_transform

use num_complex::Complex64;
use qent::analytic::sho;
use qent::grid::{build_grid, Space, WaveSample};
use qent::numeric::{to_momentum, to_position};
use qent::params::{validate_params, Mode, OscillatorParams};

fn main() -> Result<(), qent::Error> {
    let p = validate_params(
        OscillatorParams {
            xbar: 1.0,
            ..Default::default()
        },
        Mode::Sho,
    )?;
    let grid = build_grid(12.0, 2048, p.hbar())?;

    println!("{:>6} {:>13} {:>13} {:>13} {:>13}", "t", "max|d_fft-d|", "parseval", "<x>", "<p>");
    for k in 0..8 {
        let t = 0.45 * k as f64;
        let w = WaveSample::from_fn(grid.clone(), Space::Position, t, |x| {
            sho::coherent_state(x, t, &p)
        });
        let wt = to_momentum(&w)?;

        let mut max_err: f64 = 0.0;
        let mut mean_p = 0.0;
        for (j, q) in grid.nodes(Space::Momentum).enumerate() {
            let d = wt.values[j].norm_sqr();
            max_err = max_err.max((d - sho::momentum_density(q, t, &p)).abs());
            mean_p += q * d;
        }
        mean_p *= grid.dp();
        let mean_x: f64 = grid
            .nodes(Space::Position)
            .enumerate()
            .map(|(i, x)| x * w.values[i].norm_sqr())
            .sum::<f64>()
            * grid.dx();
        let parseval = (w.norm_sq() - wt.norm_sq()).abs();
        println!("{t:>6.2} {max_err:>13.3e} {parseval:>13.3e} {mean_x:>13.6} {mean_p:>13.6}");
    }
    println!("(expected classical motion: <x> = cos t, <p> = -sin t)");

    // round trip
    let t = 0.9;
    let w = WaveSample::from_fn(grid.clone(), Space::Position, t, |x| {
        sho::coherent_state(x, t, &p)
    });
    let back = to_position(&to_momentum(&w)?)?;
    let rt: f64 = w
        .values
        .iter()
        .zip(back.values.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("round trip max |psi - psi'| = {rt:.3e}");

    // translating the state in momentum by an exact lattice step
    let dp = grid.dp();
    let boosted = WaveSample::from_fn(grid.clone(), Space::Position, 0.0, |x| {
        sho::coherent_state(x, 0.0, &p) * Complex64::new(0.0, 5.0 * dp * x / p.hbar()).exp()
    });
    let bt = to_momentum(&boosted)?;
    let base = to_momentum(&WaveSample::from_fn(grid.clone(), Space::Position, 0.0, |x| {
        sho::coherent_state(x, 0.0, &p)
    }))?;
    let n = grid.n_points();
    let shift_err: f64 = (0..n)
        .map(|j| (bt.values[j].norm_sqr() - base.values[(j + n - 5) % n].norm_sqr()).abs())
        .fold(0.0, f64::max);
    println!("shift theorem (5 lattice steps): max density error = {shift_err:.3e}");
    Ok(())
}
