//! The prime Dirichlet polynomial P(gamma) = sum_{p <= X^2} p^{-1/2 - i gamma}
//! and how well its normalized real part stands in for the log-derivative
//! statistic.

use crate::band_stats::{self, BandSpec, Normalization};
use crate::dd::{two_prod, Dd};
use crate::sum::{ComplexSum, Neumaier};
use crate::zero_finder::ZeroTable;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

const SIEVE_CAP: u64 = 1_000_000_000;

/// Primes up to X^2 with the per-prime constants the evaluation needs.
#[derive(Clone, Debug)]
pub struct PrimeBasis {
    x_limit: f64,
    primes: Vec<u32>,
    inv_sqrt: Vec<f64>,
    log_p: Vec<f64>,
}

impl PrimeBasis {
    /// The degenerate basis with no primes at all.
    pub fn empty() -> PrimeBasis {
        PrimeBasis {
            x_limit: 1.0,
            primes: Vec::new(),
            inv_sqrt: Vec::new(),
            log_p: Vec::new(),
        }
    }

    pub fn x_limit(&self) -> f64 {
        self.x_limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The model variance (1/2) sum_p 1/p of Re P over random phases.
    pub fn model_variance(&self) -> f64 {
        let mut acc = Neumaier::new();
        for &p in &self.primes {
            acc.add(1.0 / p as f64);
        }
        0.5 * acc.value()
    }

    /// sum_p p^{-1/2}, the triangle-inequality ceiling for |P|.
    pub fn abs_ceiling(&self) -> f64 {
        let mut acc = Neumaier::new();
        for &w in &self.inv_sqrt {
            acc.add(w);
        }
        acc.value()
    }
}

/// Exact list of primes <= limit by a segmented sieve.
pub fn sieve(limit: u64) -> Result<PrimeBasis> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "sieve limit must be >= 2, got {limit}"
        )));
    }
    if limit > SIEVE_CAP {
        return Err(Error::Capacity(limit));
    }
    let primes = sieve_u32(limit);
    let inv_sqrt = primes.iter().map(|&p| 1.0 / (p as f64).sqrt()).collect();
    let log_p = primes.iter().map(|&p| (p as f64).ln()).collect();
    Ok(PrimeBasis {
        x_limit: (limit as f64).sqrt(),
        primes,
        inv_sqrt,
        log_p,
    })
}

fn sieve_u32(limit: u64) -> Vec<u32> {
    let limit = limit as usize;
    let root = (limit as f64).sqrt() as usize + 1;
    // base sieve on odd numbers up to root
    let mut base = vec![true; root / 2 + 1]; // index i = number 2i+1
    let mut base_primes = Vec::new();
    for i in 1..base.len() {
        if base[i] {
            let p = 2 * i + 1;
            base_primes.push(p);
            let mut j = (p * p - 1) / 2;
            while j < base.len() {
                base[j] = false;
                j += p;
            }
        }
    }
    let mut primes: Vec<u32> = Vec::new();
    if limit >= 2 {
        primes.push(2);
    }
    const SEGMENT: usize = 1 << 18;
    let mut mark = vec![true; SEGMENT];
    let mut lo = 3usize;
    while lo <= limit {
        let hi = (lo + 2 * SEGMENT - 2).min(limit | 1);
        let cells = (hi - lo) / 2 + 1;
        mark[..cells].fill(true);
        for &p in &base_primes {
            if p * p > hi {
                break;
            }
            let mut start = p * p;
            if start < lo {
                start = lo.div_ceil(p) * p;
                if start % 2 == 0 {
                    start += p;
                }
            }
            let mut j = (start - lo) / 2;
            while j < cells {
                mark[j] = false;
                j += p;
            }
        }
        for (j, &is_prime) in mark[..cells].iter().enumerate() {
            let n = lo + 2 * j;
            if is_prime && n > 1 && n <= limit {
                primes.push(n as u32);
            }
        }
        lo = hi + 2;
    }
    primes
}

/// P(gamma) with compensated summation; phases gamma log p are reduced
/// mod 2 pi through an exact product split.
pub fn eval_p(gamma: f64, basis: &PrimeBasis) -> Complex64 {
    let mut acc = ComplexSum::new();
    for (w, lp) in basis.inv_sqrt.iter().zip(&basis.log_p) {
        let (hi, lo) = two_prod(gamma, *lp);
        let phase = Dd::new(hi, lo).mod_two_pi().to_f64();
        let (s, c) = phase.sin_cos();
        acc.add(w * c, -(w * s));
    }
    let (re, im) = acc.value();
    Complex64::new(re, im)
}

/// The parameter triple (X, Omega, K) from the height T.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PaperParams {
    pub x: f64,
    pub omega: f64,
    pub k: u64,
    /// true when the X formula fell below 3 and was clamped up
    pub x_clamped: bool,
}

/// X = T^(1/(log log T)^20) clamped to >= 3, Omega = (log log T)^2,
/// K = 2 floor((log log T)^6).
pub fn paper_parameters(t: f64) -> Result<PaperParams> {
    if !(t >= 100.0) {
        return Err(Error::Domain(format!(
            "paper parameters need T >= 100, got {t}"
        )));
    }
    let ll = t.ln().ln();
    let x_raw = t.powf(1.0 / ll.powi(20));
    let x_clamped = x_raw < 3.0;
    Ok(PaperParams {
        x: if x_clamped { 3.0 } else { x_raw },
        omega: ll * ll,
        k: 2 * ll.powi(6).floor() as u64,
        x_clamped,
    })
}

/// One per-ordinate record for the proxy comparison.
#[derive(Clone, Copy, Debug)]
pub struct ProxyRow {
    pub gamma: f64,
    pub re_p: f64,
    pub im_p: f64,
    pub v_per_t: f64,
    pub d: f64,
}

/// How the normalized Re P tracks the per-T normalized statistic.
#[derive(Clone, Debug, Serialize)]
pub struct ProxyReport {
    pub n_used: usize,
    pub excluded: usize,
    pub mean: f64,
    pub variance: f64,
    /// (level, value) pairs at 5/25/50/75/95 percent
    pub quantiles: Vec<(f64, f64)>,
    pub agreement_fraction: f64,
    pub degenerate: bool,
}

/// Per-ordinate rows of (gamma, Re P, Im P, v_perT, d).
pub fn proxy_rows(table: &ZeroTable, basis: &PrimeBasis, t: f64, cutoff: f64) -> Vec<ProxyRow> {
    let norm = (0.5 * t.ln().ln()).sqrt();
    table
        .ordinates()
        .iter()
        .filter_map(|o| {
            let v = band_stats::normalized_value(o, Normalization::PerT, t).ok()?;
            if o.gamma < cutoff {
                return None;
            }
            let p = eval_p(o.gamma, basis);
            Some(ProxyRow {
                gamma: o.gamma,
                re_p: p.re,
                im_p: p.im,
                v_per_t: v,
                d: v - p.re / norm,
            })
        })
        .collect()
}

/// Distribution of d(gamma) = v_perT - Re P / sqrt(log log T / 2), plus the
/// fraction of ordinates where band membership of the two statistics agrees.
pub fn proxy_report(
    table: &ZeroTable,
    basis: &PrimeBasis,
    t: f64,
    band: &BandSpec,
    cutoff: f64,
) -> Result<ProxyReport> {
    if !(t >= 10.0) {
        return Err(Error::Domain(format!("proxy report needs T >= 10, got {t}")));
    }
    let degenerate = basis.is_empty();
    let rows = proxy_rows(table, basis, t, cutoff);
    let excluded = table.len() - rows.len();
    if rows.is_empty() {
        return Ok(ProxyReport {
            n_used: 0,
            excluded,
            mean: 0.0,
            variance: 0.0,
            quantiles: Vec::new(),
            agreement_fraction: 0.0,
            degenerate,
        });
    }
    let norm = (0.5 * t.ln().ln()).sqrt();
    let n = rows.len() as f64;
    let mut mean_acc = Neumaier::new();
    for r in &rows {
        mean_acc.add(r.d);
    }
    let mean = mean_acc.value() / n;
    let mut var_acc = Neumaier::new();
    let mut agree = 0usize;
    for r in &rows {
        var_acc.add((r.d - mean) * (r.d - mean));
        if band.contains(r.v_per_t) == band.contains(r.re_p / norm) {
            agree += 1;
        }
    }
    let mut ds: Vec<f64> = rows.iter().map(|r| r.d).collect();
    ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let quantiles = [0.05, 0.25, 0.5, 0.75, 0.95]
        .iter()
        .map(|&q| {
            let idx = ((q * (ds.len() - 1) as f64).round() as usize).min(ds.len() - 1);
            (q, ds[idx])
        })
        .collect();
    Ok(ProxyReport {
        n_used: rows.len(),
        excluded,
        mean,
        variance: var_acc.value() / n,
        quantiles,
        agreement_fraction: agree as f64 / n,
        degenerate,
    })
}

/// Empirical k-th absolute moment of Re P with the Gaussian reference.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MomentReport {
    pub k: u32,
    pub empirical: f64,
    /// (k-1)!! sigma^k with sigma^2 the model variance
    pub gaussian_ref: f64,
    pub sigma_sq: f64,
}

/// (1/N) sum |Re P(gamma)|^k for even k; log-space accumulation guards
/// against overflow once k grows.
pub fn moment_report(table: &ZeroTable, basis: &PrimeBasis, k: u32) -> Result<MomentReport> {
    if k % 2 != 0 || !(2..=20).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "moment order k must be even in [2, 20], got {k}"
        )));
    }
    if table.is_empty() {
        return Err(Error::InvalidArgument("moment of an empty table".into()));
    }
    let n = table.len() as f64;
    let empirical = if k <= 12 {
        let mut acc = Neumaier::new();
        for o in table.ordinates() {
            let re = eval_p(o.gamma, basis).re;
            acc.add(re.abs().powi(k as i32));
        }
        acc.value() / n
    } else {
        // log-sum-exp with a running maximum
        let logs: Vec<f64> = table
            .ordinates()
            .iter()
            .map(|o| {
                let re = eval_p(o.gamma, basis).re.abs();
                if re == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    k as f64 * re.ln()
                }
            })
            .collect();
        let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            0.0
        } else {
            let mut acc = Neumaier::new();
            for l in logs {
                acc.add((l - m).exp());
            }
            (m + (acc.value() / n).ln()).exp()
        }
    };
    let sigma_sq = basis.model_variance();
    let mut double_fact = 1.0f64;
    let mut j = k as i64 - 1;
    while j > 1 {
        double_fact *= j as f64;
        j -= 2;
    }
    Ok(MomentReport {
        k,
        empirical,
        gaussian_ref: double_fact * sigma_sq.powf(k as f64 / 2.0),
        sigma_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sieves() {
        assert_eq!(sieve(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve(2).unwrap().primes(), &[2]);
        assert_eq!(sieve(3).unwrap().primes(), &[2, 3]);
        assert!(sieve(1).is_err());
        assert!(matches!(sieve(SIEVE_CAP + 1), Err(Error::Capacity(_))));
    }

    #[test]
    fn prime_counts_against_independent_sieve() {
        // plain Eratosthenes oracle
        let limit = 100_000usize;
        let mut flags = vec![true; limit + 1];
        flags[0] = false;
        flags[1] = false;
        for i in 2..=limit {
            if flags[i] {
                let mut j = i * i;
                while j <= limit {
                    flags[j] = false;
                    j += i;
                }
            }
        }
        let oracle: Vec<u32> = (2..=limit).filter(|&i| flags[i]).map(|i| i as u32).collect();
        let ours = sieve(limit as u64).unwrap();
        assert_eq!(ours.primes(), &oracle[..]);
    }

    #[test]
    fn pi_of_one_million() {
        assert_eq!(sieve(1_000_000).unwrap().len(), 78_498);
    }

    #[test]
    fn eval_p_at_zero_is_the_real_sum() {
        let basis = sieve(4).unwrap();
        let v = eval_p(0.0, &basis);
        let direct = 1.0 / 2.0_f64.sqrt() + 1.0 / 3.0_f64.sqrt();
        assert!((v.re - direct).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
        assert!((direct - 1.28446).abs() < 1e-5);
    }

    #[test]
    fn eval_p_conjugate_symmetry_is_exact() {
        let basis = sieve(1000).unwrap();
        for gamma in [14.134725141734693, 100.0, 9877.782654] {
            let a = eval_p(gamma, &basis);
            let b = eval_p(-gamma, &basis);
            assert_eq!(a.re, b.re);
            assert_eq!(a.im, -b.im);
        }
    }

    #[test]
    fn eval_p_triangle_inequality() {
        let basis = sieve(300).unwrap();
        let ceil = basis.abs_ceiling();
        for gamma in [0.5, 17.0, 345.6, 2222.2] {
            assert!(eval_p(gamma, &basis).norm() <= ceil + 1e-12);
        }
    }

    #[test]
    fn paper_parameters_at_1e6() {
        let p = paper_parameters(1e6).unwrap();
        // log log 1e6 = 2.625792...; omega is its square, K twice the floor
        // of its 6th power = 2 * floor(327.77) = 654.
        assert!((p.omega - 6.894784).abs() < 1e-5, "omega = {}", p.omega);
        assert_eq!(p.k, 654);
        assert!(p.x_clamped);
        assert_eq!(p.x, 3.0);
        assert!(paper_parameters(50.0).is_err());
    }

    #[test]
    fn paper_parameters_monotone_omega_and_even_k() {
        let mut prev = 0.0;
        for t in [100.0, 1e3, 1e5, 1e7, 1e9] {
            let p = paper_parameters(t).unwrap();
            assert!(p.omega >= prev);
            assert_eq!(p.k % 2, 0);
            prev = p.omega;
        }
    }

    #[test]
    fn moment_rejects_bad_k() {
        let basis = sieve(10).unwrap();
        let table = crate::zero_finder::find_zeros(0.0, 32.0).unwrap();
        assert!(moment_report(&table, &basis, 3).is_err());
        assert!(moment_report(&table, &basis, 22).is_err());
        let m = moment_report(&table, &basis, 2).unwrap();
        assert!(m.empirical > 0.0);
        assert!((m.gaussian_ref - m.sigma_sq).abs() < 1e-15);
    }

    #[test]
    fn single_ordinate_moment_is_exact_power() {
        let basis = sieve(100).unwrap();
        let table = crate::zero_finder::find_zeros(0.0, 15.0).unwrap();
        assert_eq!(table.len(), 1);
        let g = table.ordinates()[0].gamma;
        let re = eval_p(g, &basis).re.abs();
        let m = moment_report(&table, &basis, 4).unwrap();
        assert!((m.empirical - re.powi(4)).abs() < 1e-14 * re.powi(4).max(1e-300));
        // log-space route agrees with the direct one
        let m14 = moment_report(&table, &basis, 14).unwrap();
        assert!((m14.empirical - re.powi(14)).abs() < 1e-10 * re.powi(14).abs().max(1e-300));
    }

    #[test]
    fn moment_second_equals_variance_plus_mean_sq() {
        let basis = sieve(500).unwrap();
        let table = crate::zero_finder::find_zeros(0.0, 120.0).unwrap();
        let m2 = moment_report(&table, &basis, 2).unwrap().empirical;
        let n = table.len() as f64;
        let mut mean = Neumaier::new();
        for o in table.ordinates() {
            mean.add(eval_p(o.gamma, &basis).re);
        }
        let mean = mean.value() / n;
        let mut var = Neumaier::new();
        for o in table.ordinates() {
            let d = eval_p(o.gamma, &basis).re - mean;
            var.add(d * d);
        }
        let var = var.value() / n;
        assert!((m2 - (var + mean * mean)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_basis_flags_proxy() {
        let table = crate::zero_finder::find_zeros(0.0, 50.0).unwrap();
        let band = BandSpec::new(-1.0, 1.0, Normalization::PerT).unwrap();
        let r = proxy_report(&table, &PrimeBasis::empty(), 50.0, &band, 10.0).unwrap();
        assert!(r.degenerate);
        // with no primes, d(gamma) = v(gamma)
        let rows = proxy_rows(&table, &PrimeBasis::empty(), 50.0, 10.0);
        for row in rows {
            assert_eq!(row.d, row.v_per_t);
            assert_eq!(row.re_p, 0.0);
        }
    }

    #[test]
    fn full_band_agreement_is_total() {
        let basis = sieve(100).unwrap();
        let table = crate::zero_finder::find_zeros(0.0, 60.0).unwrap();
        let band = BandSpec::new(f64::NEG_INFINITY, f64::INFINITY, Normalization::PerT).unwrap();
        let r = proxy_report(&table, &basis, 60.0, &band, 10.0).unwrap();
        assert_eq!(r.agreement_fraction, 1.0);
    }
}
