//! Riemann-Siegel theta, Hardy's Z, and Z' on the critical line.
//!
//! theta runs in double-double internally: the value grows like t log t, and
//! the phases theta(t) - t log n that feed the main sum need absolute
//! accuracy ~1e-9 after reduction mod 2*pi, which plain f64 cannot carry past
//! t ~ 1e5. Z switches between Euler-Maclaurin (low t) and the Riemann-Siegel
//! expansion with correction terms C0..C4 (high t); the crossover sits where
//! the truncated correction series first meets the 1e-9 budget.

use crate::dd::Dd;
use crate::sum::Neumaier;
use crate::{Error, Result};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Evaluation request on the critical line.
#[derive(Clone, Copy, Debug)]
pub struct EvalPoint {
    pub t: f64,
    pub precision_budget: f64,
}

impl EvalPoint {
    pub fn new(t: f64, precision_budget: f64) -> Result<EvalPoint> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("t = {t} must be >= 0")));
        }
        if !(precision_budget > 0.0) {
            return Err(Error::Domain(format!(
                "precision budget {precision_budget} must be > 0"
            )));
        }
        Ok(EvalPoint {
            t,
            precision_budget,
        })
    }
}

// Branch points. Below THETA_ASYMPTOTIC_MIN the asymptotic series for theta
// has not reached 1e-12 yet; below RS_MIN the Riemann-Siegel correction
// series truncated at C3 exceeds ~3e-9 (the error after C_j scales like
// t^{-(2j+3)/4}, with an empirical constant ~2e-3 for j = 3).
const THETA_ASYMPTOTIC_MIN: f64 = 10.0;
const RS_MIN: f64 = 2500.0;

/// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi, continuous with
/// theta(0) = 0.
pub fn theta(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("theta: t = {t} must be >= 0")));
    }
    if t < THETA_ASYMPTOTIC_MIN {
        Ok(theta_lanczos(t))
    } else {
        Ok(theta_dd(t).to_f64())
    }
}

/// Asymptotic theta in double-double; requires t >= 10.
pub(crate) fn theta_dd(t: f64) -> Dd {
    debug_assert!(t >= THETA_ASYMPTOTIC_MIN);
    let td = Dd::from_f64(t);
    let half_t = td.mul_f64(0.5);
    let main = half_t
        .mul(td.div(Dd::TWO_PI).ln())
        .sub(half_t)
        .sub(Dd::FRAC_PI_4.mul_f64(0.5));
    // (1 - 2^{1-2n}) |B_{2n}| / (4n(2n-1)) t^{1-2n}; f64 is plenty for the
    // tail since the first term is already below 2.1e-3 at t = 10.
    const TAIL: [(f64, f64); 7] = [
        (1.0, 48.0),
        (7.0, 5760.0),
        (31.0, 80640.0),
        (127.0, 430080.0),
        (511.0, 1216512.0),
        (1414477.0, 1476034560.0),
        (57337.0, 17891328.0),
    ];
    let inv_t2 = 1.0 / (t * t);
    let mut tail = 0.0;
    let mut pw = 1.0 / t;
    for (num, den) in TAIL {
        tail += num / den * pw;
        pw *= inv_t2;
    }
    main.add_f64(tail)
}

/// Lanczos log-Gamma for the small-t branch of theta.
fn theta_lanczos(t: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    let z = Complex64::new(0.25, 0.5 * t);
    let mut a = Complex64::new(C[0], 0.0);
    for (k, ck) in C.iter().enumerate().skip(1) {
        a += ck / (z + (k as f64 - 1.0));
    }
    let w = z + (G - 0.5);
    let log_gamma = 0.5 * (2.0 * std::f64::consts::PI).ln() + (z - 0.5) * w.ln() - w + a.ln();
    log_gamma.im - 0.5 * t * std::f64::consts::PI.ln()
}

/// d theta / dt, adequate for Newton iterations on Gram points.
pub(crate) fn theta_deriv(t: f64) -> f64 {
    0.5 * (t / std::f64::consts::TAU).ln() + 1.0 / (48.0 * t * t)
}

/// n-th Gram point: the solution of theta(g_n) = n pi, n >= -1.
pub fn gram_point(n: i64) -> f64 {
    let target = n as f64 * std::f64::consts::PI;
    // Crude inverse of the main term through u log u - u, u = t/2pi, then
    // Newton on the real theta. theta is increasing past 2pi, so the
    // iteration is tame once t stays above ~7.
    let mut u = 2.0_f64.max(n.max(1) as f64);
    for _ in 0..40 {
        u = ((target / std::f64::consts::PI + 0.125 + u).max(1.9)) / u.ln().max(0.3);
        u = u.max(1.9);
    }
    let mut t = (std::f64::consts::TAU * u).max(10.5);
    for _ in 0..60 {
        let f = theta(t).expect("gram iterate stays positive") - target;
        let step = f / theta_deriv(t);
        t -= step;
        if t < 7.0 {
            t = 7.0;
        }
        if step.abs() < 1e-11 * t.max(1.0) {
            break;
        }
    }
    t
}

fn ln_dd_table() -> &'static [Dd] {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let cap = 8192usize;
        let mut v = Vec::with_capacity(cap + 1);
        v.push(Dd::ZERO);
        for n in 1..=cap {
            v.push(Dd::from_f64(n as f64).ln());
        }
        v
    })
}

/// Hardy's Z function. Absolute error <= 1e-8 for t <= 1e6.
pub fn hardy_z(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("hardy_z: t = {t} must be >= 0")));
    }
    if t >= 1e7 {
        return Err(Error::Domain(format!(
            "hardy_z: t = {t} beyond supported height 1e7"
        )));
    }
    if t < RS_MIN {
        Ok(z_euler_maclaurin(t))
    } else {
        Ok(z_riemann_siegel(t))
    }
}

/// Z'(t) by Richardson-extrapolated central differences. The step balances
/// the h^4 truncation against evaluation noise of ~1e-10 in Z.
pub fn hardy_z_prime(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!(
            "hardy_z_prime: t = {t} must be >= 0"
        )));
    }
    let h = (2e-4_f64).max(t * 1e-9);
    // Z is even; |t - h| keeps the argument in range near the origin.
    let diff = |h: f64| -> Result<f64> {
        Ok((hardy_z(t + h)? - hardy_z((t - h).abs())?) / (2.0 * h))
    };
    let d1 = diff(h)?;
    let d2 = diff(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

fn theta_phase(t: f64) -> (f64, f64) {
    if t < THETA_ASYMPTOTIC_MIN {
        theta_lanczos(t).sin_cos()
    } else {
        let r = theta_dd(t).mod_two_pi();
        (r.sin().to_f64(), r.cos().to_f64())
    }
}

/// Euler-Maclaurin zeta(1/2 + it) rotated onto the real axis.
fn z_euler_maclaurin(t: f64) -> f64 {
    let (zr, zi) = zeta_half_em(t);
    let (s, c) = theta_phase(t);
    c * zr - s * zi
}

// B_{2k}/(2k)! for the Euler-Maclaurin tail.
const BERN_OVER_FACT: [(f64, f64); 9] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
];

fn zeta_half_em(t: f64) -> (f64, f64) {
    // N = 0.6 t keeps the k-th Bernoulli term shrinking by (t/2piN)^2 ~ 0.07,
    // which lands the 9-term tail near 1e-12 across the whole branch.
    let n = ((0.6 * t).ceil() as usize).max(24);
    let table = ln_dd_table();
    let mut re = Neumaier::new();
    let mut im = Neumaier::new();
    for k in 1..n {
        let phase = table[k].mul_f64(t).mod_two_pi().to_f64();
        let (sp, cp) = phase.sin_cos();
        let m = 1.0 / (k as f64).sqrt();
        re.add(m * cp);
        im.add(-m * sp);
    }
    let nf = n as f64;
    let phase_n = table[n].mul_f64(t).mod_two_pi().to_f64();
    let (sn, cn) = phase_n.sin_cos();
    let zn = Complex64::new(cn, -sn) / nf.sqrt();
    let s = Complex64::new(0.5, t);
    let mut acc = Complex64::new(re.value(), im.value());
    acc += 0.5 * zn;
    acc += nf * zn / (s - 1.0);
    let mut rising = s;
    let mut pw = zn / nf;
    let inv_n2 = 1.0 / (nf * nf);
    let mut fact = 1.0_f64;
    for (k, (num, den)) in BERN_OVER_FACT.iter().enumerate() {
        let m = 2 * (k + 1) as u32;
        fact *= (m - 1) as f64 * m as f64;
        acc += num / den / fact * rising * pw;
        rising *= (s + (m as f64 - 1.0)) * (s + m as f64);
        pw *= inv_n2;
    }
    (acc.re, acc.im)
}

/// Riemann-Siegel main sum 2 sum_{n<=N} n^{-1/2} cos(theta - t log n),
/// exposed for remainder diagnostics.
pub fn rs_main_sum(t: f64) -> f64 {
    let a = Dd::from_f64(t).div(Dd::TWO_PI).sqrt();
    let n = a.to_f64().floor() as usize;
    let th = theta_dd(t);
    let table = ln_dd_table();
    let mut acc = Neumaier::new();
    for k in 1..=n {
        let phase = th.sub(table[k].mul_f64(t)).mod_two_pi().to_f64();
        acc.add(phase.cos() / (k as f64).sqrt());
    }
    2.0 * acc.value()
}

/// Riemann-Siegel remainder through C3, with each term's contribution.
pub fn rs_remainder_terms(t: f64) -> (f64, [f64; 4]) {
    let a_dd = Dd::from_f64(t).div(Dd::TWO_PI).sqrt();
    let a = a_dd.to_f64();
    let n = a.floor() as usize;
    let p = a_dd.sub_f64(n as f64).to_f64();
    let tables = c_tables();
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let scale = sign / a.sqrt();
    let mut terms = [0.0_f64; 4];
    let mut pw = 1.0;
    let mut total = 0.0;
    for (j, term) in terms.iter_mut().enumerate() {
        *term = scale * chebyshev_eval(&tables[j], p) * pw;
        total += *term;
        pw /= a;
    }
    (total, terms)
}

// C0..C3 as 64-node Chebyshev interpolants over p in [0, 1]. The functions
// are entire, so the series bottoms out near machine precision; this avoids
// a Cauchy-circle derivative pass on every Z evaluation.
const CHEB_NODES: usize = 64;

fn c_tables() -> &'static [[f64; CHEB_NODES]; 4] {
    static TABLES: OnceLock<[[f64; CHEB_NODES]; 4]> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut vals = [[0.0f64; CHEB_NODES]; 4];
        for i in 0..CHEB_NODES {
            let x = (1.0 + (std::f64::consts::PI * (i as f64 + 0.5) / CHEB_NODES as f64).cos())
                / 2.0;
            let derivs = psi::derivatives(x, 9);
            for j in 0..4 {
                vals[j][i] = psi::c_coefficient(j, &derivs);
            }
        }
        let mut tables = [[0.0f64; CHEB_NODES]; 4];
        for j in 0..4 {
            for (k, slot) in tables[j].iter_mut().enumerate() {
                let mut acc = 0.0;
                for (i, v) in vals[j].iter().enumerate() {
                    acc += v
                        * (std::f64::consts::PI * k as f64 * (i as f64 + 0.5)
                            / CHEB_NODES as f64)
                            .cos();
                }
                *slot = acc * 2.0 / CHEB_NODES as f64;
            }
        }
        tables
    })
}

fn chebyshev_eval(coeffs: &[f64; CHEB_NODES], p: f64) -> f64 {
    let u = 2.0 * p - 1.0;
    let (mut b1, mut b2) = (0.0f64, 0.0f64);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * u * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    u * b1 - b2 + 0.5 * coeffs[0]
}

fn z_riemann_siegel(t: f64) -> f64 {
    rs_main_sum(t) + rs_remainder_terms(t).0
}

pub mod psi {
    //! The entire function Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
    //! and its derivatives, which build the Riemann-Siegel correction terms.
    //!
    //! Derivatives come from the Cauchy integral over the unit circle around
    //! p, sampled on a half-offset grid. Near the (removable) zeros of the
    //! denominator the quotient is evaluated through the exact identity
    //! Psi(w) = sigma * sin(2 pi d (w + s - 1)) / sin(2 pi d), d = w - s,
    //! valid at every singular point s = (2k+1)/4; both cosines vanish there
    //! and the angle-addition rewrite is cancellation-free.

    use num_complex::Complex64;
    use std::f64::consts::PI;

    pub fn eval_complex(w: Complex64) -> Complex64 {
        let k = (2.0 * w.re - 0.5).round();
        let s = (2.0 * k + 1.0) / 4.0;
        let d = w - s;
        if d.norm_sqr() < 0.0225 {
            // signs of sin(2 pi s) and sin(2 pi (s^2 - s - 1/16)) by k mod 4
            const SIGMA: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
            let km = (k as i64).rem_euclid(4) as usize;
            let q = w + s - 1.0;
            if d.norm_sqr() == 0.0 {
                // removable point itself: sin(2 pi h)/sin(2 pi d) -> h/d = q
                return SIGMA[km] * q;
            }
            SIGMA[km] * csin(2.0 * PI * (d * q)) / csin(2.0 * PI * d)
        } else {
            ccos(2.0 * PI * (w * w - w - 0.0625)) / ccos(2.0 * PI * w)
        }
    }

    fn csin(z: Complex64) -> Complex64 {
        Complex64::new(z.re.sin() * z.im.cosh(), z.re.cos() * z.im.sinh())
    }

    fn ccos(z: Complex64) -> Complex64 {
        Complex64::new(z.re.cos() * z.im.cosh(), -z.re.sin() * z.im.sinh())
    }

    /// Psi^{(m)}(p) for m = 0..=m_max via the Cauchy integral on |w - p| = 1.
    pub fn derivatives(p: f64, m_max: usize) -> Vec<f64> {
        const M: usize = 128;
        let mut samples = [Complex64::new(0.0, 0.0); M];
        for (j, slot) in samples.iter_mut().enumerate() {
            let phi = 2.0 * PI * (j as f64 + 0.5) / M as f64;
            let w = Complex64::new(p + phi.cos(), phi.sin());
            *slot = eval_complex(w);
        }
        let mut out = Vec::with_capacity(m_max + 1);
        let mut fact = 1.0;
        for m in 0..=m_max {
            if m > 0 {
                fact *= m as f64;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &f) in samples.iter().enumerate() {
                let phi = 2.0 * PI * (j as f64 + 0.5) / M as f64;
                acc += f * Complex64::from_polar(1.0, -(m as f64) * phi);
            }
            out.push(fact * acc.re / M as f64);
        }
        out
    }

    /// C_j(p) as a linear combination of Psi derivatives, Haselgrove's
    /// normalization. The leading coefficient of C_j is
    /// (-1)^j / (j! 96^j pi^{2j}); the full set was verified numerically
    /// against the exact remainder from an Euler-Maclaurin evaluation on a
    /// ladder of heights with the fractional part of sqrt(t/2pi) held fixed.
    pub fn c_coefficient(j: usize, derivs: &[f64]) -> f64 {
        let p2 = PI * PI;
        let p4 = p2 * p2;
        let p6 = p4 * p2;
        match j {
            0 => derivs[0],
            1 => -derivs[3] / (96.0 * p2),
            2 => derivs[6] / (18432.0 * p4) + derivs[2] / (64.0 * p2),
            3 => {
                -derivs[9] / (5308416.0 * p6)
                    - derivs[5] / (3840.0 * p4)
                    - derivs[1] / (64.0 * p2)
            }
            _ => unreachable!("correction terms beyond C3 are not implemented"),
        }
    }
}
