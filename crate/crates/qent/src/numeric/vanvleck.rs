//! Semiclassical prefactor from the mixed second derivative of a classical
//! action, by central finite differences:
//! `sqrt( (i / 2 pi hbar) * d2 S / (dx0 dx1) )` on the principal branch.

use num_complex::Complex64;

use crate::error::Result;
use crate::params::Checked;

/// Default base step; the actual steps scale as `h (1 + |x|)` per axis.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

pub fn van_vleck_prefactor_fd<S>(
    action: S,
    x0: f64,
    x1: f64,
    t: f64,
    h: f64,
    p: &Checked,
) -> Result<Complex64>
where
    S: Fn(f64, f64, f64) -> Result<f64>,
{
    assert!(h > 0.0, "finite-difference step must be > 0");
    let h0 = h * (1.0 + x0.abs());
    let h1 = h * (1.0 + x1.abs());
    let mixed = (action(x0 + h0, x1 + h1, t)? - action(x0 + h0, x1 - h1, t)?
        - action(x0 - h0, x1 + h1, t)?
        + action(x0 - h0, x1 - h1, t)?)
        / (4.0 * h0 * h1);
    let arg = Complex64::i() / (2.0 * std::f64::consts::PI * p.hbar()) * mixed;
    Ok(arg.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::sho;
    use crate::params::{validate_params, Mode, OscillatorParams};
    use std::f64::consts::PI;

    fn unit_params() -> Checked {
        validate_params(OscillatorParams::default(), Mode::Sho).unwrap()
    }

    #[test]
    fn matches_kernel_prefactor() {
        let p = unit_params();
        for t in [0.4, PI / 3.0, 1.9] {
            let f = van_vleck_prefactor_fd(
                |a, b, tt| sho::classical_action(a, b, tt, &p),
                0.3,
                -0.2,
                t,
                DEFAULT_FD_STEP,
                &p,
            )
            .unwrap();
            let k = sho::kernel(0.0, 0.0, t, &p).unwrap();
            assert!((f.norm() - k.norm()).abs() < 1e-6, "t = {t}");
            assert!((f.arg() - k.arg()).abs() < 1e-6, "t = {t}");
        }
    }

    #[test]
    fn quadratic_action_gives_point_independent_prefactor() {
        let p = unit_params();
        let t = 0.8;
        let f1 = van_vleck_prefactor_fd(
            |a, b, tt| sho::classical_action(a, b, tt, &p),
            0.0,
            0.0,
            t,
            DEFAULT_FD_STEP,
            &p,
        )
        .unwrap();
        let f2 = van_vleck_prefactor_fd(
            |a, b, tt| sho::classical_action(a, b, tt, &p),
            1.7,
            -2.4,
            t,
            DEFAULT_FD_STEP,
            &p,
        )
        .unwrap();
        assert!((f1 - f2).norm() < 1e-8);
    }

    #[test]
    fn central_difference_is_second_order() {
        // non-quadratic test action with known mixed derivative
        let p = unit_params();
        let action = |a: f64, b: f64, _t: f64| -> Result<f64> { Ok((a * b).sin() + a * a * b) };
        let exact_mixed = |a: f64, b: f64| -> f64 {
            // d2/dadb [sin(ab) + a^2 b] = cos(ab) - ab sin(ab) + 2a
            (a * b).cos() - a * b * (a * b).sin() + 2.0 * a
        };
        let (x0, x1, t) = (0.7, 0.4, 1.0);
        let exact = (Complex64::i() / (2.0 * PI) * exact_mixed(x0, x1)).sqrt();
        let err_at = |h: f64| -> f64 {
            let f = van_vleck_prefactor_fd(action, x0, x1, t, h, &p).unwrap();
            (f - exact).norm()
        };
        let e1 = err_at(1e-2);
        let e2 = err_at(5e-3);
        let ratio = e1 / e2;
        assert!(
            (3.0..5.0).contains(&ratio),
            "halving h gave error ratio {ratio}, want about 4"
        );
    }
}
