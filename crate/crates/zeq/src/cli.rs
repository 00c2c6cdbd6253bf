//! Command-line surface: reproducible runs over a cached zero table.
//!
//! Reports go to stdout and are byte-deterministic for identical flags and
//! cache (fixed reduction orders, shortest round-trip float formatting);
//! progress and timing go to stderr. Exit codes: 0 success, 1 I/O or
//! validation failure, 2 completeness failure.

use crate::band_stats::{self, BandSpec, Normalization};
use crate::equidist::{self, ScaleKind, SequenceScale};
use crate::prime_poly;
use crate::sign_approx::{self, MollifierConfig};
use crate::spacing;
use crate::zero_finder::{self, ZeroTable};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
const CACHE_ENV: &str = "ZEQ_CACHE";
const CACHE_DEFAULT: &str = "zeq-zeros.csv";

#[derive(Parser, Debug)]
#[command(
    name = "zeq",
    version,
    about = "Zeta-zero ordinates and the statistics they carry"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build or extend the zero cache (or import external ordinates)
    Zeros(ZerosArgs),
    /// Band counts of the normalized log-derivative against the Gaussian
    Clt(CltArgs),
    /// Weyl sums, star discrepancy, and the Erdos-Turan bound
    Equidist(EquidistArgs),
    /// Explicit-formula sums over x with error envelopes and growth bounds
    Explicit(ExplicitArgs),
    /// Consecutive-gap statistics over a lambda grid
    Spacing(SpacingArgs),
    /// Per-ordinate prime-polynomial proxy rows for plotting
    Proxy(ProxyArgs),
    /// Mollified sign function error envelope over a grid
    Approx(ApproxArgs),
}

#[derive(Args, Debug)]
struct ZerosArgs {
    /// Upper height T; all zeros on (0, T]
    #[arg(long)]
    tmax: Option<f64>,
    /// First n zeros instead of a height cutoff
    #[arg(long)]
    count: Option<usize>,
    /// Import plain-text ordinates (one per line) instead of computing
    #[arg(long)]
    import: Option<PathBuf>,
    /// Cache file (default: $ZEQ_CACHE or ./zeq-zeros.csv)
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CltArgs {
    /// Band lower edge (may be -inf)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Band upper edge (may be inf)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// "full" for the whole line
    #[arg(long)]
    band: Option<String>,
    /// gamma or T
    #[arg(long, default_value = "gamma")]
    normalization: String,
    /// Emit a CSV histogram of the normalized values with this many bins
    #[arg(long)]
    hist: Option<usize>,
    /// Low-gamma cutoff for usable ordinates
    #[arg(long, default_value_t = band_stats::DEFAULT_LOW_CUTOFF)]
    cutoff: f64,
    /// Restrict to the first n cached zeros
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EquidistArgs {
    /// unit or logT
    #[arg(long, default_value = "unit")]
    scale: String,
    /// Number of Weyl frequencies L
    #[arg(long, default_value_t = 50)]
    ellmax: u32,
    /// Optional band restriction lower edge (per-gamma normalization)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Optional band restriction upper edge
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, default_value_t = band_stats::DEFAULT_LOW_CUTOFF)]
    cutoff: f64,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExplicitArgs {
    /// Comma-separated x values
    #[arg(long)]
    x: Option<String>,
    /// Grid lo:hi:n of x values
    #[arg(long, allow_hyphen_values = true)]
    xgrid: Option<String>,
    /// Epsilon in the conjectured growth bound
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SpacingArgs {
    /// Comma-separated lambda values in (0, 1)
    #[arg(long, default_value = "0.1,0.2,0.4,0.8")]
    lambdas: String,
    /// Exponent for the fraction/lambda^delta column
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ProxyArgs {
    /// Prime cutoff X^2 (primes p <= X^2 enter P)
    #[arg(long, default_value_t = 10_000)]
    xsq: u64,
    #[arg(long, default_value_t = band_stats::DEFAULT_LOW_CUTOFF)]
    cutoff: f64,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ApproxArgs {
    /// Mollifier resolution Omega > 0
    #[arg(long)]
    omega: f64,
    /// Grid lo:hi:n of x values
    #[arg(long, default_value = "-5:5:1000", allow_hyphen_values = true)]
    grid: String,
    /// Panel budget for the adaptive quadrature
    #[arg(long, default_value_t = 4096)]
    panels: usize,
}

/// Parse argv, run, and map errors onto the exit-code contract.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep help/version at success, everything else at 1
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("zeq: {e}");
            match e {
                Error::Incomplete { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Zeros(args) => cmd_zeros(args),
        Command::Clt(args) => cmd_clt(args),
        Command::Equidist(args) => cmd_equidist(args),
        Command::Explicit(args) => cmd_explicit(args),
        Command::Spacing(args) => cmd_spacing(args),
        Command::Proxy(args) => cmd_proxy(args),
        Command::Approx(args) => cmd_approx(args),
    }
}

fn resolve_cache(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(CACHE_DEFAULT))
}

fn load_table(cache: &Option<PathBuf>, count: Option<usize>) -> Result<ZeroTable> {
    let path = resolve_cache(cache);
    let table = zero_finder::load_cache(&path)?;
    match count {
        Some(n) if n < table.len() => table.truncate_to_count(n),
        Some(n) if n > table.len() => Err(Error::InvalidArgument(format!(
            "cache {} holds {} zeros, fewer than requested {n}",
            path.display(),
            table.len()
        ))),
        _ => Ok(table),
    }
}

#[derive(Serialize)]
struct Report<C: Serialize, P: Serialize> {
    version: &'static str,
    config: C,
    report: P,
}

fn emit_json<C: Serialize, P: Serialize>(config: C, payload: P) {
    let wrapped = Report {
        version: VERSION,
        config,
        report: payload,
    };
    let mut out = std::io::stdout().lock();
    serde_json::to_writer(&mut out, &wrapped).expect("stdout JSON");
    out.write_all(b"\n").expect("stdout");
}

fn csv_header(config_summary: &str) {
    println!("# zeq {VERSION} {config_summary}");
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "grid must be lo:hi:n, got {spec:?}"
        )));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad grid lo {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad grid hi {:?}", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad grid count {:?}", parts[2])))?;
    if n < 2 || !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "grid needs lo < hi and n >= 2, got {spec:?}"
        )));
    }
    Ok((0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect())
}

fn parse_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad list entry {s:?}")))
        })
        .collect()
}

#[derive(Serialize)]
struct ZerosConfig {
    tmax: Option<f64>,
    count: Option<usize>,
    import: Option<String>,
    cache: String,
}

#[derive(Serialize)]
struct ZerosSummary {
    count: usize,
    t_max: f64,
    complete: bool,
    source: String,
    from_cache: bool,
}

fn cmd_zeros(args: ZerosArgs) -> Result<i32> {
    let cache_path = resolve_cache(&args.cache);
    let started = Instant::now();
    if args.import.is_none() && args.tmax.is_none() && args.count.is_none() {
        return Err(Error::InvalidArgument(
            "zeros needs --tmax, --count, or --import with --tmax".into(),
        ));
    }
    let (table, from_cache) = if let Some(path) = &args.import {
        let t_max = args.tmax.ok_or_else(|| {
            Error::InvalidArgument("--import needs --tmax for the table height".into())
        })?;
        (zero_finder::import_zeros(path, t_max)?, false)
    } else if let Some(t_max) = args.tmax {
        match zero_finder::load_cache(&cache_path) {
            // exact same request: reuse whatever the last run established
            Ok(existing) if existing.t_max() == t_max => (existing, true),
            Ok(existing) if existing.complete() && existing.t_max() > t_max => {
                let kept = existing.gammas().filter(|&g| g <= t_max).count();
                (existing.truncate_to_count(kept.max(1))?, true)
            }
            _ => (zero_finder::find_zeros(0.0, t_max)?, false),
        }
    } else {
        let n = args.count.expect("checked above");
        match zero_finder::load_cache(&cache_path) {
            Ok(existing) if existing.complete() && existing.len() > n => {
                (existing.truncate_to_count(n)?, true)
            }
            Ok(existing) if existing.complete() && existing.len() == n => (existing, true),
            _ => (zero_finder::find_first_n(n)?, false),
        }
    };
    if !from_cache {
        zero_finder::save_cache(&table, &cache_path)?;
    }
    let source = table
        .ordinates()
        .first()
        .map(|o| o.source.to_string())
        .unwrap_or_else(|| "computed".into());
    let complete = table.complete();
    emit_json(
        ZerosConfig {
            tmax: args.tmax,
            count: args.count,
            import: args.import.map(|p| p.display().to_string()),
            cache: cache_path.display().to_string(),
        },
        ZerosSummary {
            count: table.len(),
            t_max: table.t_max(),
            complete,
            source,
            from_cache,
        },
    );
    eprintln!(
        "zeq zeros: {} ordinates (complete: {complete}) in {:.2?}",
        table.len(),
        started.elapsed()
    );
    Ok(if complete { 0 } else { 2 })
}

fn parse_normalization(s: &str) -> Result<Normalization> {
    match s {
        "gamma" => Ok(Normalization::PerGamma),
        "T" | "t" => Ok(Normalization::PerT),
        other => Err(Error::InvalidArgument(format!(
            "normalization must be gamma or T, got {other:?}"
        ))),
    }
}

#[derive(Serialize)]
struct CltConfig {
    a: f64,
    b: f64,
    normalization: Normalization,
    cutoff: f64,
    count: Option<usize>,
    hist: Option<usize>,
    cache: String,
}

fn cmd_clt(args: CltArgs) -> Result<i32> {
    let normalization = parse_normalization(&args.normalization)?;
    let (a, b) = match (args.band.as_deref(), args.a, args.b) {
        (Some("full"), None, None) => (f64::NEG_INFINITY, f64::INFINITY),
        (Some(other), _, _) if other != "full" => {
            return Err(Error::InvalidArgument(format!(
                "--band only accepts \"full\", got {other:?}"
            )));
        }
        (_, Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::InvalidArgument(
                "clt needs --a and --b, or --band full".into(),
            ));
        }
    };
    let table = load_table(&args.cache, args.count)?;
    let band = BandSpec::new(a, b, normalization)?;
    if let Some(w) = band.regime_warning(table.t_max()) {
        eprintln!("zeq clt: {w}");
    }
    let report = band_stats::count_in_band(&table, &band, args.cutoff)?;
    emit_json(
        CltConfig {
            a,
            b,
            normalization,
            cutoff: args.cutoff,
            count: args.count,
            hist: args.hist,
            cache: resolve_cache(&args.cache).display().to_string(),
        },
        &report,
    );
    if let Some(bins) = args.hist {
        if bins < 1 {
            return Err(Error::InvalidArgument("--hist needs at least 1 bin".into()));
        }
        let (values, _) =
            band_stats::normalized_values(&table, normalization, table.t_max(), args.cutoff);
        let (lo, hi) = (-5.0f64, 5.0f64);
        let mut counts = vec![0usize; bins];
        for v in values {
            let idx = (((v - lo) / (hi - lo) * bins as f64).floor() as i64)
                .clamp(0, bins as i64 - 1) as usize;
            counts[idx] += 1;
        }
        println!("bin_center,count");
        for (i, c) in counts.iter().enumerate() {
            let center = lo + (hi - lo) * (i as f64 + 0.5) / bins as f64;
            println!("{center},{c}");
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct EquidistConfig {
    scale: ScaleKind,
    l: u32,
    a: Option<f64>,
    b: Option<f64>,
    cutoff: f64,
    count: Option<usize>,
    cache: String,
}

#[derive(Serialize)]
struct RestrictedReport {
    scale: ScaleKind,
    l: u32,
    n_band: usize,
    weyl: Vec<equidist::WeylEntry>,
    d_star: f64,
    et_bound: f64,
}

fn cmd_equidist(args: EquidistArgs) -> Result<i32> {
    let table = load_table(&args.cache, args.count)?;
    let scale = match args.scale.as_str() {
        "unit" => SequenceScale::unit(),
        "logT" | "logt" => SequenceScale::log_t(table.t_max())?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "scale must be unit or logT, got {other:?}"
            )));
        }
    };
    let config = EquidistConfig {
        scale: scale.kind,
        l: args.ellmax,
        a: args.a,
        b: args.b,
        cutoff: args.cutoff,
        count: args.count,
        cache: resolve_cache(&args.cache).display().to_string(),
    };
    match (args.a, args.b) {
        (None, None) => {
            let report = equidist::equidist_report(&table, args.ellmax, &scale)?;
            emit_json(config, &report);
        }
        (Some(a), Some(b)) => {
            let band = BandSpec::new(a, b, Normalization::PerGamma)?;
            let mut moduli = Vec::with_capacity(args.ellmax as usize);
            let mut n_band = 0usize;
            for ell in 1..=args.ellmax {
                let (s, n) = equidist::restricted_weyl(&table, &band, args.cutoff, ell, &scale)?;
                moduli.push(s.norm());
                n_band = n;
            }
            let points: Vec<f64> = table
                .ordinates()
                .iter()
                .filter(|o| {
                    o.gamma >= args.cutoff
                        && !o.is_suspect()
                        && band_stats::normalized_value(o, band.normalization, table.t_max())
                            .map(|v| band.contains(v))
                            .unwrap_or(false)
                })
                .map(|o| scale.fractional(o.gamma, 1))
                .collect();
            let d_star = equidist::star_discrepancy(&points)?;
            let et_bound = equidist::erdos_turan_from_moduli(&moduli, n_band);
            emit_json(
                config,
                RestrictedReport {
                    scale: scale.kind,
                    l: args.ellmax,
                    n_band,
                    weyl: moduli
                        .iter()
                        .enumerate()
                        .map(|(i, &m)| equidist::WeylEntry {
                            ell: i as u32 + 1,
                            modulus: if n_band == 0 { 0.0 } else { m / n_band as f64 },
                        })
                        .collect(),
                    d_star,
                    et_bound,
                },
            );
        }
        _ => {
            return Err(Error::InvalidArgument(
                "band restriction needs both --a and --b".into(),
            ));
        }
    }
    Ok(0)
}

fn cmd_explicit(args: ExplicitArgs) -> Result<i32> {
    let xs = match (&args.x, &args.xgrid) {
        (Some(list), None) => parse_list(list)?,
        (None, Some(grid)) => parse_grid(grid)?,
        _ => {
            return Err(Error::InvalidArgument(
                "explicit needs exactly one of --x or --xgrid".into(),
            ));
        }
    };
    if xs.iter().any(|&x| x == 1.0) {
        return Err(Error::InvalidArgument(
            "x = 1 degenerates to N(T); drop it from the list".into(),
        ));
    }
    let table = load_table(&args.cache, args.count)?;
    let t = table.t_max();
    let count_desc = args
        .count
        .map(|n| n.to_string())
        .unwrap_or_else(|| "all".into());
    csv_header(&format!(
        "explicit epsilon={} count={count_desc} tmax={t}",
        args.epsilon
    ));
    println!("x,re_observed,im_observed,main,e1,e2,e3,bound,flag");
    for &x in &xs {
        let (obs, pred) = equidist::landau_gonek(&table, x)?;
        let bound = t * x.powf(-0.5 + args.epsilon) + t.sqrt() * x.powf(args.epsilon);
        let flag = u8::from(obs.norm() > bound);
        println!(
            "{x},{},{},{},{},{},{},{bound},{flag}",
            obs.re, obs.im, pred.main, pred.e1, pred.e2, pred.e3
        );
    }
    Ok(0)
}

fn cmd_spacing(args: SpacingArgs) -> Result<i32> {
    let lambdas = parse_list(&args.lambdas)?;
    let table = load_table(&args.cache, args.count)?;
    let gaps = spacing::normalized_gaps(&table)?;
    let count_desc = args
        .count
        .map(|n| n.to_string())
        .unwrap_or_else(|| "all".into());
    csv_header(&format!(
        "spacing delta={} count={count_desc} tmax={} mean_normalized_gap={}",
        args.delta,
        table.t_max(),
        spacing::mean_normalized_gap(&gaps)
    ));
    println!("lambda,fraction,fraction_over_lambda,fraction_over_lambda_delta");
    for &l in &lambdas {
        let f = spacing::small_gap_fraction(&table, l, args.delta)?;
        println!(
            "{l},{},{},{}",
            f.fraction, f.fraction_over_lambda, f.fraction_over_lambda_delta
        );
    }
    Ok(0)
}

fn cmd_proxy(args: ProxyArgs) -> Result<i32> {
    let table = load_table(&args.cache, args.count)?;
    let basis = prime_poly::sieve(args.xsq)?;
    let rows = prime_poly::proxy_rows(&table, &basis, table.t_max(), args.cutoff);
    csv_header(&format!(
        "proxy xsq={} cutoff={} tmax={} n_primes={} model_variance={}",
        args.xsq,
        args.cutoff,
        table.t_max(),
        basis.len(),
        basis.model_variance()
    ));
    println!("gamma,re_p,im_p,v_per_t,d");
    for r in &rows {
        println!("{},{},{},{},{}", r.gamma, r.re_p, r.im_p, r.v_per_t, r.d);
    }
    Ok(0)
}

fn cmd_approx(args: ApproxArgs) -> Result<i32> {
    let cfg = MollifierConfig::new(args.omega, args.panels)?;
    let grid = parse_grid(&args.grid)?;
    csv_header(&format!("approx omega={} panels={}", args.omega, args.panels));
    println!("x,f_omega,sgn_error,envelope");
    for &x in &grid {
        let f = sign_approx::f_omega(x, &cfg)?;
        let err = if x == 0.0 { f.abs() } else { (x.signum() - f).abs() };
        let env = sign_approx::envelope_term(x, cfg.omega);
        println!("{x},{f},{err},{env}");
    }
    Ok(0)
}
