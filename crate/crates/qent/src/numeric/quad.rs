//! Globally adaptive Gauss-Kronrod (7, 15) quadrature.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod-15 abscissae on [0, 1] (positive half; symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Gauss-7 weights for the odd Kronrod abscissae (indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: u64,
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (fp, fm) = if x == 0.0 {
            let v = f(mid);
            (v, 0.0)
        } else {
            (f(mid + half * x), f(mid - half * x))
        };
        let s = fp + fm;
        kronrod += wk * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        // a node hit a singularity: force subdivision around it
        return (0.0, f64::INFINITY);
    }
    (value, error)
}

const MAX_INTERVALS: usize = 4096;

/// Adaptive estimate of `integral of f over [a, b]`.
///
/// Bisects the worst interval until the summed error estimate drops below
/// `max(abs_tol, rel_tol * |value|)`, and reports [`Error::QuadratureFailure`]
/// if the interval budget runs out first. `a == b` yields an exact zero.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadratureResult> {
    assert!(a <= b, "integrate needs a <= b, got [{a}, {b}]");
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            est_error: 0.0,
            evaluations: 0,
        });
    }
    let mut evaluations = 0u64;
    let (v, e) = gk15(&f, a, b);
    evaluations += 15;
    let mut heap = BinaryHeap::new();
    heap.push(Interval {
        a,
        b,
        value: v,
        error: e,
    });
    let mut total_value = v;
    let mut total_error = e;
    while total_error > abs_tol.max(rel_tol * total_value.abs()) {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure {
                est_error: total_error,
                tol: abs_tol.max(rel_tol * total_value.abs()),
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval vanished at machine precision; keep its estimate
            return Err(Error::QuadratureFailure {
                est_error: total_error,
                tol: abs_tol.max(rel_tol * total_value.abs()),
            });
        }
        let (vl, el) = gk15(&f, worst.a, mid);
        let (vr, er) = gk15(&f, mid, worst.b);
        evaluations += 30;
        total_value += vl + vr - worst.value;
        heap.push(Interval {
            a: worst.a,
            b: mid,
            value: vl,
            error: el,
        });
        heap.push(Interval {
            a: mid,
            b: worst.b,
            value: vr,
            error: er,
        });
        if worst.error.is_finite() {
            total_error += el + er - worst.error;
        } else {
            // avoid inf - inf: rebuild the total from the heap
            total_error = heap.iter().map(|i| i.error).sum();
        }
    }
    Ok(QuadratureResult {
        value: total_value,
        est_error: total_error,
        evaluations,
    })
}
