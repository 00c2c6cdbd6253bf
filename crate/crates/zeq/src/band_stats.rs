//! The normalized log-derivative statistic and Gaussian band counts.
//!
//! Each ordinate carries v = log(|Z'(gamma)| / log q) / sqrt(log(log q)/2)
//! with q = gamma or q = T depending on the normalization; the central limit
//! behavior predicts a standard normal share of any band [a, b].

use crate::zero_finder::{Ordinate, ZeroTable};
use crate::{Error, Result};
use serde::Serialize;

/// Which height enters the normalizing logarithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    PerGamma,
    PerT,
}

/// Ordinates below this are excluded so log log stays bounded away from 0.
pub const DEFAULT_LOW_CUTOFF: f64 = 10.0;

/// A band [a, b] (closed; either edge may be infinite) plus the
/// normalization convention.
#[derive(Clone, Copy, Debug)]
pub struct BandSpec {
    pub a: f64,
    pub b: f64,
    pub normalization: Normalization,
}

impl BandSpec {
    pub fn new(a: f64, b: f64, normalization: Normalization) -> Result<BandSpec> {
        if !(a < b) {
            return Err(Error::InvalidArgument(format!(
                "band needs a < b, got [{a}, {b}]"
            )));
        }
        Ok(BandSpec {
            a,
            b,
            normalization,
        })
    }

    /// Warns when finite edges leave the regime where the Gaussian count has
    /// any support; purely advisory. Infinite edges never warn.
    pub fn regime_warning(&self, t_max: f64) -> Option<String> {
        let lll = t_max.max(20.0).ln().ln().max(1e-9).ln().max(1e-4);
        let bound = 10.0 * lll.sqrt();
        let finite_edges = [self.a, self.b].into_iter().filter(|e| e.is_finite());
        let worst = finite_edges.fold(0.0f64, |acc, e| acc.max(e.abs()));
        (worst > bound).then(|| {
            format!(
                "band edge {worst:.3} is beyond (log log log T)^(1/2) * 10 = {bound:.3}; \
                 the Gaussian prediction has no content out here"
            )
        })
    }

    pub fn contains(&self, v: f64) -> bool {
        self.a <= v && v <= self.b
    }
}

/// Band count against the Gaussian prediction.
#[derive(Clone, Debug, Serialize)]
pub struct BandReport {
    pub t_max: f64,
    #[serde(serialize_with = "ser_edge")]
    pub a: f64,
    #[serde(serialize_with = "ser_edge")]
    pub b: f64,
    pub normalization: Normalization,
    pub count: usize,
    pub prediction: f64,
    pub ks: f64,
    pub excluded: usize,
}

// JSON has no infinity literal; band edges serialize as strings there.
fn ser_edge<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// v = log(|Z'| / log q) / sqrt(log log q / 2), q per the normalization.
pub fn normalized_value(o: &Ordinate, normalization: Normalization, t: f64) -> Result<f64> {
    if o.gamma < DEFAULT_LOW_CUTOFF {
        return Err(Error::Domain(format!(
            "ordinate {} below low cutoff {DEFAULT_LOW_CUTOFF}",
            o.gamma
        )));
    }
    if normalization == Normalization::PerT && t < 10.0 {
        return Err(Error::Domain(format!("per-T normalization needs T >= 10, got {t}")));
    }
    if o.is_suspect() {
        return Err(Error::Domain(format!(
            "ordinate {} rejected: |Z'| = {:e} is suspiciously small",
            o.gamma, o.z_prime_abs
        )));
    }
    let q = match normalization {
        Normalization::PerGamma => o.gamma,
        Normalization::PerT => t,
    };
    Ok((o.z_prime_abs / q.ln()).ln() / (0.5 * q.ln().ln()).sqrt())
}

/// Standard normal mass of [a, b] via the complementary error function;
/// infinite edges allowed.
pub fn gaussian_mass(a: f64, b: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "gaussian_mass needs a < b, got [{a}, {b}]"
        )));
    }
    let tail = |x: f64| -> f64 {
        // P(X >= x)
        if x == f64::NEG_INFINITY {
            1.0
        } else if x == f64::INFINITY {
            0.0
        } else {
            0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
        }
    };
    Ok((tail(a) - tail(b)).clamp(0.0, 1.0))
}

/// Cumulative standard normal.
pub(crate) fn phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// All usable normalized values (gamma >= cutoff, not suspect), plus the
/// number excluded.
pub fn normalized_values(
    table: &ZeroTable,
    normalization: Normalization,
    t: f64,
    cutoff: f64,
) -> (Vec<f64>, usize) {
    let mut values = Vec::with_capacity(table.len());
    let mut excluded = 0usize;
    for o in table.ordinates() {
        if o.gamma < cutoff.max(DEFAULT_LOW_CUTOFF) || o.is_suspect() {
            excluded += 1;
            continue;
        }
        match normalized_value(o, normalization, t) {
            Ok(v) => values.push(v),
            Err(_) => excluded += 1,
        }
    }
    (values, excluded)
}

/// Kolmogorov-Smirnov distance between the sample and the standard normal.
pub fn ks_against_normal(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &v) in sorted.iter().enumerate() {
        let cdf = phi(v);
        d = d.max(((i + 1) as f64 / n - cdf).abs());
        d = d.max((cdf - i as f64 / n).abs());
    }
    d
}

/// Count ordinates whose normalized value lies in the band, against the
/// Gaussian prediction over the usable ordinates.
pub fn count_in_band(table: &ZeroTable, band: &BandSpec, cutoff: f64) -> Result<BandReport> {
    let t = table.t_max();
    if band.normalization == Normalization::PerT && t < 10.0 {
        return Err(Error::Domain(format!("per-T normalization needs T >= 10, got {t}")));
    }
    let (values, excluded) = normalized_values(table, band.normalization, t, cutoff);
    let count = values.iter().filter(|&&v| band.contains(v)).count();
    let prediction = values.len() as f64 * gaussian_mass(band.a, band.b)?;
    Ok(BandReport {
        t_max: t,
        a: band.a,
        b: band.b,
        normalization: band.normalization,
        count,
        prediction,
        ks: ks_against_normal(&values),
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zero_finder::Source;

    fn ordinate(gamma: f64, z_prime_abs: f64) -> Ordinate {
        Ordinate {
            index: 1,
            gamma,
            z_prime_abs,
            multiplicity: 1,
            source: Source::Computed,
        }
    }

    #[test]
    fn unit_ratio_maps_to_zero() {
        let o = ordinate(100.0, 100.0_f64.ln());
        assert_eq!(
            normalized_value(&o, Normalization::PerGamma, 100.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn per_gamma_equals_per_t_at_gamma_equals_t() {
        let o = ordinate(500.0, 3.7);
        let a = normalized_value(&o, Normalization::PerGamma, 0.0).unwrap();
        let b = normalized_value(&o, Normalization::PerT, 500.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn low_ordinates_and_suspects_are_rejected() {
        let low = ordinate(9.0, 1.0);
        assert!(normalized_value(&low, Normalization::PerGamma, 0.0).is_err());
        let suspect = ordinate(100.0, 1e-9);
        assert!(suspect.is_suspect());
        assert!(normalized_value(&suspect, Normalization::PerGamma, 0.0).is_err());
    }

    #[test]
    fn gaussian_mass_basics() {
        assert_eq!(
            gaussian_mass(f64::NEG_INFINITY, f64::INFINITY).unwrap(),
            1.0
        );
        assert!((gaussian_mass(0.0, f64::INFINITY).unwrap() - 0.5).abs() < 1e-15);
        assert!(gaussian_mass(1.0, 1.0).is_err());
    }

    #[test]
    fn gaussian_mass_matches_quadrature() {
        // independent check: composite Simpson on the density
        let (a, b) = (-1.96, 1.96);
        let n = 4000;
        let h = (b - a) / n as f64;
        let density =
            |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let mut acc = density(a) + density(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * density(a + i as f64 * h);
        }
        let simpson = acc * h / 3.0;
        let mass = gaussian_mass(a, b).unwrap();
        assert!((mass - simpson).abs() < 1e-12, "{mass} vs {simpson}");
        assert!((mass - 0.9500042).abs() < 1e-6);
    }

    #[test]
    fn gaussian_mass_is_additive() {
        for (a, b, c) in [(-1.5, 0.25, 2.0), (-0.1, 0.0, 0.1), (-8.0, 1.0, 9.0)] {
            let lhs = gaussian_mass(a, b).unwrap() + gaussian_mass(b, c).unwrap();
            let rhs = gaussian_mass(a, c).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn band_validation() {
        assert!(BandSpec::new(1.0, 1.0, Normalization::PerGamma).is_err());
        let wide = BandSpec::new(-50.0, 50.0, Normalization::PerGamma).unwrap();
        assert!(wide.regime_warning(1e4).is_some());
        let sane = BandSpec::new(-1.0, 1.0, Normalization::PerGamma).unwrap();
        assert!(sane.regime_warning(1e4).is_none());
    }

    #[test]
    fn ks_of_perfect_sample_is_small() {
        // quantile-spaced points have KS ~ 1/(2n)
        let n = 1000;
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let u = (i as f64 + 0.5) / n as f64;
                // crude normal quantile via bisection on phi
                let (mut lo, mut hi) = (-8.0, 8.0);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if phi(mid) < u {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect();
        let d = ks_against_normal(&values);
        assert!(d < 1.5 / n as f64, "ks = {d}");
    }
}
