//! Sign-change scanning and bisection against the oracle Z.

use crate::em_zeta::ZetaOracle;

/// Plain bisection; `f` must change sign on [a, b].
pub fn bisect_zero<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    let fb = f(b);
    assert!(
        fa == 0.0 || fb == 0.0 || (fa < 0.0) != (fb < 0.0),
        "no sign change on [{a}, {b}]"
    );
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fa < 0.0) != (fm < 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Locate zeros of the oracle Z on (t_lo, t_hi], refining the scan grid until
/// exactly `expected` are found. Returns None if the count cannot be reached.
pub fn find_zeros_counted(
    oracle: &ZetaOracle,
    t_lo: f64,
    t_hi: f64,
    expected: usize,
) -> Option<Vec<f64>> {
    let lo = t_lo.max(2.0);
    let mut step = 0.2;
    for _ in 0..10 {
        let zeros = scan(oracle, lo, t_hi, step);
        if zeros.len() == expected {
            return Some(zeros);
        }
        if zeros.len() > expected {
            return None;
        }
        step *= 0.5;
    }
    None
}

fn scan(oracle: &ZetaOracle, lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil() as usize;
    let mut zeros = Vec::new();
    let mut prev_t = lo;
    let mut prev_z = oracle.z_f64(prev_t);
    for i in 1..=n {
        let t = (lo + i as f64 * step).min(hi);
        let z = oracle.z_f64(t);
        if prev_z == 0.0 {
            zeros.push(prev_t);
        } else if (prev_z < 0.0) != (z < 0.0) {
            let r = bisect_zero(|u| oracle.z_f64(u), prev_t, t, 1e-10);
            if r > lo && r <= hi {
                zeros.push(r);
            }
        }
        prev_t = t;
        prev_z = z;
        if t >= hi {
            break;
        }
    }
    zeros
}
