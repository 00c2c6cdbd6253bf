//! Acceptance suite: one test per criterion, each printing a verdict line.
//!
//! Every threshold is pinned here, not deferred. Three checks are known to
//! come out red on a faithful implementation, with the measured numbers in
//! the failure text: the count estimate at T = 500 sits on an |S(T)| > 1/2
//! excursion, and the Gaussian centering of the log-derivative statistic
//! (criteria 5 and the variance window of 8) has not set in at T ~ 1e4,
//! where the distribution is Gaussian in shape but shifted by the explicit
//! formula's prime-power terms. The suite asserts the stated thresholds
//! anyway and lets the result stand.

use std::sync::OnceLock;
use std::time::Instant;
use zeq::band_stats::{self, BandSpec, Normalization};
use zeq::equidist::{self, SequenceScale};
use zeq::prime_poly;
use zeq::sign_approx::{self, MollifierConfig, SGN_ENVELOPE_CONSTANT};
use zeq::spacing;
use zeq::zero_finder::{self, ZeroTable};
use zeq_oracle::ZetaOracle;

fn table_10k() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| zero_finder::find_first_n(10_000).expect("first 1e4 zeros"))
}

fn verdict(num: u32, name: &str, pass: bool, details: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("acceptance criterion {num:02} ({name}): {tag} - {details}");
    assert!(pass, "criterion {num:02} ({name}): {details}");
}

#[test]
fn criterion_01_zero_correctness() {
    let started = Instant::now();
    // oracle first: an independent scan of the elevated-precision Z
    let oracle = ZetaOracle::new(246.0);
    let mut oracle_zeros = Vec::new();
    let mut prev_t = 10.0;
    let mut prev_z = oracle.z_f64(prev_t);
    let mut t = prev_t;
    while t < 245.0 && oracle_zeros.len() < 101 {
        t += 0.2;
        let z = oracle.z_f64(t);
        if (prev_z < 0.0) != (z < 0.0) {
            oracle_zeros.push(zeq_oracle::bisect_zero(
                |u| oracle.z_f64(u),
                prev_t,
                t,
                1e-10,
            ));
        }
        prev_t = t;
        prev_z = z;
    }
    let table = zero_finder::find_first_n(100).expect("first 100 zeros");
    assert!(oracle_zeros.len() >= 100, "oracle scan found too few zeros");
    let mut worst = 0.0f64;
    for (o, ours) in oracle_zeros.iter().zip(table.ordinates()) {
        worst = worst.max((o - ours.gamma).abs());
    }
    let elapsed = started.elapsed();
    let pass = worst <= 1e-6 && elapsed.as_secs_f64() < 10.0;
    verdict(
        1,
        "zero correctness",
        pass,
        &format!("max |gamma - oracle| = {worst:.2e}, runtime {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_completeness() {
    let mut pass = true;
    let mut details = Vec::new();
    for t in [100.0f64, 500.0, 1000.0] {
        let (found, expected) = match zero_finder::find_zeros(0.0, t) {
            Ok(table) => (table.len(), zero_finder::expected_count(t)),
            Err(zeq::Error::Incomplete {
                found, expected, ..
            }) => (found, expected),
            Err(e) => panic!("find_zeros(0, {t}) unexpected error: {e}"),
        };
        let main = zero_finder::count_zeros_main_term(t).unwrap();
        let count_ok = found == expected;
        let main_ok = (found as f64 - main).abs() <= 2.0 + t.ln();
        pass &= count_ok && main_ok;
        details.push(format!(
            "T={t}: found {found}, round(theta/pi+1) = {expected} ({}), |found - main| = {:.2} vs {:.2} ({})",
            if count_ok { "ok" } else { "MISMATCH" },
            (found as f64 - main).abs(),
            2.0 + t.ln(),
            if main_ok { "ok" } else { "over" },
        ));
    }
    verdict(2, "completeness", pass, &details.join("; "));
}

#[test]
fn criterion_03_weyl_identity() {
    let table = table_10k();
    let s = equidist::weyl_sum_x1(table);
    let pass = s == table.len() as f64;
    verdict(
        3,
        "x = 1 identity",
        pass,
        &format!("sum at x = 1 gives {s}, N = {}", table.len()),
    );
}

#[test]
fn criterion_04_equidistribution_trend() {
    let table = table_10k();
    let small = table.truncate_to_count(1000).unwrap();
    let unit = SequenceScale::unit();
    let big = equidist::equidist_report(table, 50, &unit).unwrap();
    let little = equidist::equidist_report(&small, 50, &unit).unwrap();
    let mut pass = little.d_star > big.d_star && big.d_star <= 0.05;
    let mut bound_ok = true;
    for l in [10u32, 50, 200] {
        for scale in [
            SequenceScale::unit(),
            SequenceScale::log_t(table.t_max()).unwrap(),
        ] {
            let r = equidist::equidist_report(table, l, &scale).unwrap();
            bound_ok &= r.d_star <= r.et_bound;
        }
    }
    pass &= bound_ok;
    verdict(
        4,
        "equidistribution trend",
        pass,
        &format!(
            "d*(1e3) = {:.5} > d*(1e4) = {:.5}, d*(1e4) <= 0.05, ET bound dominates: {bound_ok}",
            little.d_star, big.d_star
        ),
    );
}

#[test]
fn criterion_05_central_limit_at_desk_scale() {
    let table = table_10k();
    let band = BandSpec::new(0.0, f64::INFINITY, Normalization::PerT).unwrap();
    let report = band_stats::count_in_band(table, &band, 10.0).unwrap();
    let fraction = report.count as f64 / table.len() as f64;
    let ks_ok = report.ks <= 0.15;
    let frac_ok = (0.40..=0.60).contains(&fraction);
    // shape diagnostic for the failure text
    let (values, _) =
        band_stats::normalized_values(table, Normalization::PerT, table.t_max(), 10.0);
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt();
    let standardized: Vec<f64> = values.iter().map(|v| (v - mean) / sd).collect();
    let shape_ks = band_stats::ks_against_normal(&standardized);
    verdict(
        5,
        "central limit at desk scale",
        ks_ok && frac_ok,
        &format!(
            "KS = {:.4} (need <= 0.15), fraction [0,inf) = {fraction:.4} (need 0.40..0.60); \
             sample mean = {mean:.3}, sd = {sd:.3}, shape-only KS = {shape_ks:.4}: the \
             distribution is Gaussian in shape but its asymptotic centering has not set \
             in at this height",
            report.ks
        ),
    );
}

#[test]
fn criterion_06_explicit_formula() {
    let table = table_10k();
    let mut pass = true;
    let mut worst_ratio = 0.0f64;
    for x in [2.0, 3.0, 4.0, 5.0, 8.0, 9.0] {
        let (obs, pred) = equidist::landau_gonek(table, x).unwrap();
        let dev = ((obs.re - pred.main).powi(2) + obs.im.powi(2)).sqrt();
        let env = 3.0 * (pred.e1 + pred.e2 + pred.e3);
        worst_ratio = worst_ratio.max(dev / env);
        pass &= dev <= env;
    }
    let (obs4, _) = equidist::landau_gonek(table, 4.0).unwrap();
    let mut mags: Vec<f64> = (0..20)
        .map(|i| {
            let x = 3.5 + (i as f64 + 0.5) / 20.0;
            equidist::landau_gonek(table, x).unwrap().0.norm()
        })
        .collect();
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = 0.5 * (mags[9] + mags[10]);
    let spike = obs4.norm() / median;
    pass &= spike >= 5.0;
    verdict(
        6,
        "explicit formula",
        pass,
        &format!(
            "worst |obs - main| / 3(e1+e2+e3) = {worst_ratio:.3}, spike |obs(4)|/median = {spike:.1}"
        ),
    );
}

#[test]
fn criterion_07_mollifier() {
    // oddness on a 1e3-point grid
    let cfg = MollifierConfig::with_omega(3.0).unwrap();
    let mut worst_odd = 0.0f64;
    for i in 0..500 {
        let x = 5.0 * (i as f64 + 0.5) / 500.0;
        let plus = sign_approx::f_omega(x, &cfg).unwrap();
        let minus = sign_approx::f_omega(-x, &cfg).unwrap();
        worst_odd = worst_odd.max((plus + minus).abs());
    }
    let mut pass = worst_odd <= 1e-10;
    // envelope across Omega with the one calibrated constant
    let mut worst_env = 0.0f64;
    for omega in [1.0, 2.0, 4.0, 8.0] {
        let cfg = MollifierConfig::with_omega(omega).unwrap();
        for i in 0..240 {
            let lo = 1.0 / (10.0 * omega);
            let x = lo + (6.0 - lo) * (i as f64 + 0.5) / 240.0;
            for sx in [x, -x] {
                let f = sign_approx::f_omega(sx, &cfg).unwrap();
                let err = (sx.signum() - f).abs();
                let env = SGN_ENVELOPE_CONSTANT * sign_approx::envelope_term(sx, omega);
                worst_env = worst_env.max(err - env);
                pass &= err <= env + 1e-9;
            }
        }
    }
    // indicator with A = B vanishes identically
    let mut indicator_ok = true;
    for x in [-3.0, -0.5, 0.0, 0.5, 3.0] {
        let (v, _) = sign_approx::indicator_approx(x, 1.0, 1.0, &cfg).unwrap();
        indicator_ok &= v == 0.0;
    }
    pass &= indicator_ok;
    verdict(
        7,
        "mollifier",
        pass,
        &format!(
            "max |F(x) + F(-x)| = {worst_odd:.2e}, max envelope excess = {worst_env:.2e}, \
             indicator(A=B) equal 0: {indicator_ok}"
        ),
    );
}

#[test]
fn criterion_08_prime_polynomial() {
    let table = table_10k();
    // conjugate symmetry, exact
    let basis = prime_poly::sieve(1000).unwrap();
    let mut conj_ok = true;
    for idx in [0usize, 57, 500, 9999] {
        let g = table.ordinates()[idx].gamma;
        let a = prime_poly::eval_p(g, &basis);
        let b = prime_poly::eval_p(-g, &basis);
        conj_ok &= a.re == b.re && a.im == -b.im;
    }
    let mut pass = conj_ok;
    let mut details = vec![format!("conjugate symmetry exact: {conj_ok}")];
    for limit in [1000u64, 10_000] {
        let basis = prime_poly::sieve(limit).unwrap();
        let res: Vec<f64> = table
            .ordinates()
            .iter()
            .map(|o| prime_poly::eval_p(o.gamma, &basis).re)
            .collect();
        let n = res.len() as f64;
        let mean = res.iter().sum::<f64>() / n;
        let var = res.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>() / n;
        let model = basis.model_variance();
        let ratio = var / model;
        let ok = (0.75..=1.25).contains(&ratio);
        pass &= ok;
        details.push(format!(
            "X^2 = {limit}: Var(Re P)/model = {ratio:.3} (mean = {mean:.3}; the explicit \
             formula's prime-power terms shift the mean by O(1) at this height, which the \
             asymptotic variance model does not see)"
        ));
    }
    verdict(8, "prime polynomial", pass, &details.join("; "));
}

#[test]
fn criterion_09_spacing() {
    let table = table_10k();
    let gaps = spacing::normalized_gaps(table).unwrap();
    let mean = spacing::mean_normalized_gap(&gaps);
    let mut pass = (0.95..=1.05).contains(&mean);
    // monotone in lambda
    let mut prev = -1.0;
    let mut monotone = true;
    for i in 1..20 {
        let lambda = i as f64 / 20.0;
        let f = spacing::small_gap_fraction(table, lambda, 1.0).unwrap().fraction;
        monotone &= f >= prev;
        prev = f;
    }
    pass &= monotone;
    // telescoping, exactly, in double-double
    use zeq::dd::Dd;
    let mut acc = Dd::ZERO;
    for g in &gaps {
        acc = acc.add_f64(g.gap_raw);
    }
    let gammas: Vec<f64> = table.gammas().collect();
    let telescoped = acc
        .sub(Dd::from_f64(*gammas.last().unwrap()).sub_f64(gammas[0]))
        .to_f64();
    pass &= telescoped == 0.0;
    verdict(
        9,
        "spacing",
        pass,
        &format!(
            "mean normalized gap = {mean:.5}, monotone: {monotone}, telescoping residual = {telescoped:e}"
        ),
    );
}

#[test]
fn criterion_10_determinism() {
    use std::process::Command;
    let dir = std::env::temp_dir().join("zeq-acceptance-determinism");
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("zeros.csv");
    let bin = env!("CARGO_BIN_EXE_zeq");
    let run = |args: &[&str]| -> Vec<u8> {
        let out = Command::new(bin)
            .args(args)
            .env_remove("ZEQ_CACHE")
            .current_dir(&dir)
            .output()
            .expect("zeq runs");
        out.stdout
    };
    // build the cache once
    let first = run(&["zeros", "--tmax", "200", "--cache", cache.to_str().unwrap()]);
    assert!(!first.is_empty());
    let cache_str = cache.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["zeros", "--tmax", "200", "--cache", cache_str],
        vec!["clt", "--band", "full", "--normalization", "T", "--hist", "10", "--cache", cache_str],
        vec!["clt", "--a", "-1", "--b", "1", "--cache", cache_str],
        vec!["equidist", "--scale", "unit", "--ellmax", "20", "--cache", cache_str],
        vec!["equidist", "--scale", "logT", "--ellmax", "10", "--cache", cache_str],
        vec!["explicit", "--x", "2,4,9", "--epsilon", "0.25", "--cache", cache_str],
        vec!["spacing", "--lambdas", "0.1,0.4,0.8", "--cache", cache_str],
        vec!["approx", "--omega", "2", "--grid", "-3:3:41"],
    ];
    let mut pass = true;
    let mut bad = Vec::new();
    for args in &commands {
        let a = run(args);
        let b = run(args);
        if a != b || a.is_empty() {
            pass = false;
            bad.push(args.join(" "));
        }
    }
    verdict(
        10,
        "determinism",
        pass,
        &if bad.is_empty() {
            format!("{} command pairs byte-identical", commands.len())
        } else {
            format!("non-deterministic: {}", bad.join(" | "))
        },
    );
}
