// Damped-oscillator entropy trace: caustic gaps, normalization deficits of
// the literal densities, and the envelope verdicts for both columns.
//
//   cargo run --release -p qent --example dho_entropy_trace

use qent::entropy::{entropy_trace, envelope, TraceColumn, TraceMode};
use qent::grid::build_grid;
use qent::params::{validate_params, Mode, OscillatorParams};

fn main() -> Result<(), qent::Error> {
    let params = OscillatorParams {
        omega0: 2.0,
        gamma: 0.5,
        ..Default::default()
    };
    let p = validate_params(params, Mode::Dho)?;
    let grid = build_grid(12.0, 2048, p.hbar())?;
    println!(
        "gamma = {}, omega0 = {}, shifted omega = {:.6}",
        p.gamma(),
        p.params().omega0,
        p.omega()
    );

    let times: Vec<f64> = (1..=120).map(|k| k as f64 * 0.05).collect();
    let trace = entropy_trace(&times, &p, &grid, TraceMode::Both, 1e-2)?;

    println!("{:>6} {:>14} {:>14} {:>12} {:>12}", "t", "S_j numeric", "S_j closed", "deficit_x", "deficit_p");
    for row in trace.rows.iter().step_by(6) {
        match (row.s_joint_numeric, row.s_joint_closed) {
            (Some(n), Some(c)) => println!(
                "{:>6.2} {:>14.8} {:>14.8} {:>12.4e} {:>12.4e}",
                row.t,
                n,
                c,
                row.deficit_x.unwrap_or(f64::NAN),
                row.deficit_p.unwrap_or(f64::NAN)
            ),
            _ => println!("{:>6.2} {:>14} {:>14} {:>12} {:>12}", row.t, "-", "-", "-", "-"),
        }
    }

    for (column, label) in [(TraceColumn::Numeric, "numeric"), (TraceColumn::Closed, "closed")] {
        match envelope(&trace, column) {
            Ok(rep) => {
                println!(
                    "envelope[{label}]: {} maxima, non-decreasing = {}",
                    rep.maxima.len(),
                    rep.non_decreasing
                );
                if let Some((a, b)) = rep.first_violation {
                    println!("  first violation: ({:.3}, {:.6}) -> ({:.3}, {:.6})", a.0, a.1, b.0, b.1);
                }
            }
            Err(e) => println!("envelope[{label}]: {e}"),
        }
    }
    Ok(())
}
