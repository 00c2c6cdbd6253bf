//! Weyl sums, exact star discrepancy, Erdos-Turan bounds, the explicit
//! formula for sums of x^{i gamma}, and growth scans of those sums.

use crate::band_stats::{self, BandSpec};
use crate::dd::Dd;
use crate::sum::{ComplexSum, Neumaier};
use crate::zero_finder::ZeroTable;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// How an ordinate maps into [0, 1) before reduction mod one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleKind {
    /// gamma itself
    Unit,
    /// gamma log(T) / 2 pi, the mean-spacing-one rescaling
    LogTOver2Pi,
}

#[derive(Clone, Copy, Debug)]
pub struct SequenceScale {
    pub kind: ScaleKind,
    pub t: f64,
    // log(T)/2pi in double-double, fixed at construction
    coeff: Dd,
}

impl SequenceScale {
    pub fn unit() -> SequenceScale {
        SequenceScale {
            kind: ScaleKind::Unit,
            t: 0.0,
            coeff: Dd::ONE,
        }
    }

    pub fn log_t(t: f64) -> Result<SequenceScale> {
        if !(t >= 100.0) {
            return Err(Error::InvalidArgument(format!(
                "log-T scaling needs T >= 100, got {t}"
            )));
        }
        Ok(SequenceScale {
            kind: ScaleKind::LogTOver2Pi,
            t,
            coeff: Dd::from_f64(t).ln().div(Dd::TWO_PI),
        })
    }

    /// Fractional part of ell * s(gamma), carried through an exact product
    /// split so the phase survives the mod-1 reduction.
    pub fn fractional(&self, gamma: f64, ell: u32) -> f64 {
        let scaled = match self.kind {
            ScaleKind::Unit => Dd::from_f64(gamma).mul_f64(ell as f64),
            ScaleKind::LogTOver2Pi => self.coeff.mul_f64(gamma).mul_f64(ell as f64),
        };
        let frac = scaled.sub_f64(scaled.hi.floor());
        let mut f = frac.to_f64();
        if f < 0.0 {
            f += 1.0;
        }
        if f >= 1.0 {
            f -= 1.0;
        }
        f
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylEntry {
    pub ell: u32,
    pub modulus: f64,
}

/// Full equidistribution report for one scaling of the sequence.
#[derive(Clone, Debug, Serialize)]
pub struct EquidistReport {
    pub scale: ScaleKind,
    pub n_points: usize,
    pub l: u32,
    /// |S_ell| / N for ell = 1..=L
    pub weyl: Vec<WeylEntry>,
    pub d_star: f64,
    pub et_bound: f64,
}

/// S_ell = sum over the table of e(ell s(gamma)).
pub fn weyl_sum(table: &ZeroTable, ell: u32, scale: &SequenceScale) -> Complex64 {
    assert!(ell >= 1, "Weyl sums start at ell = 1; the x = 1 identity is weyl_sum_x1");
    let mut acc = ComplexSum::new();
    for gamma in table.gammas() {
        let phase = std::f64::consts::TAU * scale.fractional(gamma, ell);
        let (s, c) = phase.sin_cos();
        acc.add(c, s);
    }
    let (re, im) = acc.value();
    Complex64::new(re, im)
}

/// The x = 1 degeneration of sum x^{i gamma}: every term is exactly 1, so
/// the sum is exactly N. Computed literally, term by term.
pub fn weyl_sum_x1(table: &ZeroTable) -> f64 {
    let mut acc = Neumaier::new();
    for _gamma in table.gammas() {
        let one = 1.0_f64.powf(0.0); // 1^{i gamma} has modulus 1, phase 0
        acc.add(one);
    }
    acc.value()
}

/// Exact star discrepancy of points in [0, 1) via the sorted-sample formula.
pub fn star_discrepancy(points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Ok(0.0);
    }
    for &p in points {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "star discrepancy input {p} outside [0, 1)"
            )));
        }
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        d = d.max((i + 1) as f64 / n - x);
        d = d.max(x - i as f64 / n);
    }
    Ok(d)
}

/// Erdos-Turan bound normalized by N, from precomputed |S_ell| moduli
/// (index 0 holds ell = 1).
pub fn erdos_turan_from_moduli(moduli: &[f64], n_points: usize) -> f64 {
    let l = moduli.len();
    let mut bound = 1.0 / (l as f64 + 1.0);
    if n_points == 0 {
        return bound;
    }
    let mut acc = Neumaier::new();
    for (i, &m) in moduli.iter().enumerate() {
        acc.add(m / (i as f64 + 1.0));
    }
    bound += 3.0 * acc.value() / n_points as f64;
    bound
}

/// The Erdos-Turan discrepancy bound divided by N, comparable to d_star.
pub fn erdos_turan_bound(table: &ZeroTable, l: u32, scale: &SequenceScale) -> Result<f64> {
    if l < 1 {
        return Err(Error::InvalidArgument("Erdos-Turan needs L >= 1".into()));
    }
    let moduli: Vec<f64> = (1..=l)
        .map(|ell| weyl_sum(table, ell, scale).norm())
        .collect();
    Ok(erdos_turan_from_moduli(&moduli, table.len()))
}

/// Weyl moduli, exact star discrepancy, and the Erdos-Turan bound in one
/// report.
pub fn equidist_report(table: &ZeroTable, l: u32, scale: &SequenceScale) -> Result<EquidistReport> {
    if l < 1 {
        return Err(Error::InvalidArgument("report needs L >= 1".into()));
    }
    let n = table.len();
    let moduli: Vec<f64> = (1..=l)
        .map(|ell| weyl_sum(table, ell, scale).norm())
        .collect();
    let points: Vec<f64> = table.gammas().map(|g| scale.fractional(g, 1)).collect();
    let d_star = star_discrepancy(&points)?;
    let et_bound = erdos_turan_from_moduli(&moduli, n);
    Ok(EquidistReport {
        scale: scale.kind,
        n_points: n,
        l,
        weyl: moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| WeylEntry {
                ell: i as u32 + 1,
                modulus: if n == 0 { 0.0 } else { m / n as f64 },
            })
            .collect(),
        d_star,
        et_bound,
    })
}

/// Main term and error envelopes of the explicit formula at x.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExplicitPrediction {
    pub x: f64,
    /// -(T/2pi) Lambda(x)/sqrt(x); nonpositive
    pub main: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub lambda_x: f64,
    /// distance to the nearest prime power other than x itself
    pub near_dist: f64,
}

/// von Mangoldt Lambda extended to the reals: log p when x sits within
/// 1e-9 of a prime power p^k, else 0.
pub fn von_mangoldt(x: f64) -> f64 {
    if x < 2.0 - 1e-9 {
        return 0.0;
    }
    let (lambda, _) = prime_power_scan(x);
    lambda
}

/// Distance from x to the nearest prime power other than x itself.
pub fn nearest_prime_power_distance(x: f64) -> f64 {
    prime_power_scan(x).1
}

/// (Lambda(x), <x>) by enumerating prime powers in [x/2, 2x].
fn prime_power_scan(x: f64) -> (f64, f64) {
    let hi = (2.0 * x).max(4.0).ceil() as u64;
    let basis = crate::prime_poly::sieve(hi).expect("scan window within sieve cap");
    let lo = x / 2.0;
    let mut lambda = 0.0f64;
    let mut near = f64::INFINITY;
    for &p in basis.primes() {
        let pf = p as f64;
        let lp = pf.ln();
        let mut q = pf;
        while q <= hi as f64 {
            if q >= lo {
                let d = (x - q).abs();
                if d < 1e-9 {
                    lambda = lp;
                } else {
                    near = near.min(d);
                }
            }
            q *= pf;
        }
    }
    // window never empty for x >= 1 (Bertrand), but stay defensive
    if near == f64::INFINITY {
        near = (x - 2.0).abs().max(1e-300);
    }
    (lambda, near)
}

/// Landau-Gonek explicit formula: the observed sum over 0 < gamma <= T of
/// x^{i gamma} and its predicted main term with the three error envelopes.
/// For 0 < x < 1 the prediction is evaluated at 1/x per the reflection rule.
pub fn landau_gonek(table: &ZeroTable, x: f64) -> Result<(Complex64, ExplicitPrediction)> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("landau_gonek needs x > 0, got {x}")));
    }
    if x == 1.0 {
        return Err(Error::InvalidArgument(
            "x = 1 degenerates to N(T); use weyl_sum_x1".into(),
        ));
    }
    let t = table.t_max();
    let ln_x = Dd::from_f64(x).ln();
    let mut acc = ComplexSum::new();
    for gamma in table.gammas() {
        let phase = ln_x.mul_f64(gamma).mod_two_pi().to_f64();
        let (s, c) = phase.sin_cos();
        acc.add(c, s);
    }
    let (re, im) = acc.value();
    let observed = Complex64::new(re, im);

    // envelopes at y = x or 1/x per the lemma's reflection
    let y = if x > 1.0 { x } else { 1.0 / x };
    let (lambda, near) = prime_power_scan(y);
    let sqrt_y = y.sqrt();
    let main = -(t / std::f64::consts::TAU) * lambda / sqrt_y;
    let e1 = sqrt_y * (2.0 * y * t).ln() * (3.0 * y).ln().ln();
    let e2 = y.ln() * (t / sqrt_y).min(sqrt_y / near);
    let e3 = (2.0 * t).ln() * (t / sqrt_y).min(1.0 / (sqrt_y * y.ln()));
    Ok((
        observed,
        ExplicitPrediction {
            x,
            main,
            e1,
            e2,
            e3,
            lambda_x: lambda,
            near_dist: near,
        },
    ))
}

/// One row of a growth scan.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub x: f64,
    pub observed_mod: f64,
    pub bound: f64,
    pub exceeds: bool,
}

/// |sum x^{i gamma}| against the conjectured growth T x^{-1/2+eps} +
/// sqrt(T) x^eps with implicit constant 1; exceedances are flagged, not
/// fatal.
pub fn conjecture_scan(table: &ZeroTable, xs: &[f64], epsilon: f64) -> Result<Vec<ScanRow>> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "conjecture scan needs 0 < eps < 1/2, got {epsilon}"
        )));
    }
    let t = table.t_max();
    xs.iter()
        .map(|&x| {
            if !(x >= 2.0) {
                return Err(Error::InvalidArgument(format!(
                    "conjecture scan needs x >= 2, got {x}"
                )));
            }
            let (observed, _) = landau_gonek(table, x)?;
            let bound = t * x.powf(-0.5 + epsilon) + t.sqrt() * x.powf(epsilon);
            let observed_mod = observed.norm();
            Ok(ScanRow {
                x,
                observed_mod,
                bound,
                exceeds: observed_mod > bound,
            })
        })
        .collect()
}

/// Weyl sum restricted to ordinates whose normalized statistic lies in the
/// band; returns the sum and the in-band count.
pub fn restricted_weyl(
    table: &ZeroTable,
    band: &BandSpec,
    cutoff: f64,
    ell: u32,
    scale: &SequenceScale,
) -> Result<(Complex64, usize)> {
    let t = table.t_max();
    let mut acc = ComplexSum::new();
    let mut n_band = 0usize;
    for o in table.ordinates() {
        if o.gamma < cutoff || o.is_suspect() {
            continue;
        }
        let v = band_stats::normalized_value(o, band.normalization, t)?;
        if !band.contains(v) {
            continue;
        }
        n_band += 1;
        let phase = std::f64::consts::TAU * scale.fractional(o.gamma, ell);
        let (s, c) = phase.sin_cos();
        acc.add(c, s);
    }
    let (re, im) = acc.value();
    Ok((Complex64::new(re, im), n_band))
}
