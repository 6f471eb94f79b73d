// Drive-dependent kernel coefficients by adaptive quadrature: exact zeros
// for the zero drive, the closed antiderivative for a constant drive, and a
// sinusoidal drive cross-checked against a dense Simpson reference.
//
//   cargo run --release -p qent --example driven_kernel_coefficients

use qent::analytic::dho;
use qent::params::{validate_params, DriveForce, Mode, OscillatorParams};

fn main() -> Result<(), qent::Error> {
    let p = validate_params(
        OscillatorParams {
            gamma: 0.3,
            ..Default::default()
        },
        Mode::Dho,
    )?;
    let w = p.omega();
    let t = 2.0;

    let zero = dho::drive_coefficients(t, &DriveForce::Zero, &p)?;
    println!("zero drive:      a = {:+.6}, b = {:+.6}, c = {:+.6}, d = e = f = {}", zero.a, zero.b, zero.c, zero.d);

    let undamped = validate_params(OscillatorParams::default(), Mode::Sho)?;
    let j0 = 1.3;
    let constant = dho::drive_coefficients(0.9, &DriveForce::from_fn(move |_| j0), &undamped)?;
    let expected = j0 * (1.0 - 0.9f64.cos()) / 0.9f64.sin();
    println!(
        "constant drive (undamped): d = {:.12}, antiderivative = {:.12}",
        constant.d, expected
    );

    let sine = dho::drive_coefficients(t, &DriveForce::from_fn(|s| s.sin()), &p)?;
    // dense Simpson reference for the first drive integral
    let n = 1_000_000usize;
    let h = t / n as f64;
    let f = |s: f64| s.sin() * (p.gamma() * s / 2.0).exp() * (w * s).sin();
    let mut dense = f(0.0) + f(t);
    for i in 1..n {
        dense += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    dense *= h / 3.0;
    let d_ref = (p.gamma() * t).exp() / (w * t).sin() * dense;
    println!("sinusoidal drive: d = {:.12}", sine.d);
    println!("dense reference:  d = {d_ref:.12}  (difference {:.3e})", (sine.d - d_ref).abs());
    println!("                  e = {:.12}, f = {:.12}", sine.e, sine.f);
    Ok(())
}
