//! End-to-end runs of the zeq binary: flags, cache behavior, exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_zeq")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("zeq-cli-tests").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("ZEQ_CACHE")
        .current_dir(dir)
        .output()
        .expect("zeq spawns")
}

#[test]
fn zeros_builds_then_reuses_cache() {
    // T = 50 sits on an S(T) excursion: all ten zeros are found but the
    // rounded estimate says nine, so the honest flag is false and the exit
    // code reports it. The cache must still be written and reused.
    let dir = tmp("cache-reuse");
    let first = run_in(&dir, &["zeros", "--tmax", "50", "--cache", "z.csv"]);
    assert_eq!(first.status.code(), Some(2));
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("\"count\":10"), "{text}");
    assert!(text.contains("\"complete\":false"));
    assert!(text.contains("\"from_cache\":false"));
    let again = run_in(&dir, &["zeros", "--tmax", "50", "--cache", "z.csv"]);
    let text2 = String::from_utf8(again.stdout).unwrap();
    assert!(text2.contains("\"from_cache\":true"), "{text2}");
    assert_eq!(again.status.code(), Some(2));

    // an excursion-free height reuses cleanly with exit 0
    let a = run_in(&dir, &["zeros", "--tmax", "60", "--cache", "z60.csv"]);
    assert_eq!(a.status.code(), Some(0));
    let b = run_in(&dir, &["zeros", "--tmax", "60", "--cache", "z60.csv"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(String::from_utf8(b.stdout).unwrap().contains("\"from_cache\":true"));
}

#[test]
fn zeros_reports_29_below_100() {
    let dir = tmp("count-100");
    let out = run_in(&dir, &["zeros", "--tmax", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"count\":29"), "{text}");
    assert!(text.contains("\"complete\":true"));
    // default cache path lands in the working directory
    assert!(dir.join("zeq-zeros.csv").exists());
}

#[test]
fn zeros_exits_2_on_count_mismatch() {
    // T = 500 sits on an |S| > 1/2 excursion: 269 real zeros, estimate 270
    let dir = tmp("excursion");
    let out = run_in(&dir, &["zeros", "--tmax", "500"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("found 269, expected 270"), "{err}");
}

#[test]
fn import_flow_validates() {
    let dir = tmp("import");
    std::fs::write(
        dir.join("zeros.txt"),
        "# two ordinates\n14.134725141734\n21.022039638771\n",
    )
    .unwrap();
    let out = run_in(
        &dir,
        &["zeros", "--import", "zeros.txt", "--tmax", "22", "--cache", "imported.csv"],
    );
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"source\":\"imported\""));
    assert!(text.contains("\"count\":2"));

    std::fs::write(dir.join("bad.txt"), "21.0\n14.1\n").unwrap();
    let out = run_in(
        &dir,
        &["zeros", "--import", "bad.txt", "--tmax", "22", "--cache", "bad.csv"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("not strictly increasing"));
}

#[test]
fn missing_cache_is_io_failure() {
    let dir = tmp("missing-cache");
    for args in [
        vec!["clt", "--band", "full"],
        vec!["equidist", "--scale", "unit", "--ellmax", "5"],
        vec!["explicit", "--x", "4"],
        vec!["spacing"],
    ] {
        let out = run_in(&dir, &args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
    }
}

#[test]
fn env_var_overrides_default_cache() {
    let dir = tmp("env-cache");
    let cache = dir.join("env-cache.csv");
    let out = Command::new(bin())
        .args(["zeros", "--tmax", "60"])
        .env("ZEQ_CACHE", &cache)
        .current_dir(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(cache.exists());
    let out = Command::new(bin())
        .args(["clt", "--band", "full"])
        .env("ZEQ_CACHE", &cache)
        .current_dir(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn explicit_rejects_x_equal_one() {
    let dir = tmp("explicit-one");
    run_in(&dir, &["zeros", "--tmax", "60"]);
    let out = run_in(&dir, &["explicit", "--x", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("x = 1"));
    // and a grid that includes prime powers emits flag column values
    let out = run_in(&dir, &["explicit", "--xgrid", "2:9:8", "--epsilon", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 10);
    assert!(text.lines().nth(1).unwrap().starts_with("x,re_observed"));
}

#[test]
fn approx_validates_omega() {
    let dir = tmp("approx");
    let out = run_in(&dir, &["approx", "--omega", "0", "--grid", "0:1:5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_in(&dir, &["approx", "--omega", "2", "--grid", "-1:1:9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    // envelope column dominates the sign error on every row
    for line in text.lines().skip(2) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[2] <= 0.85 * cols[3] + 1e-8, "{line}");
    }
}

#[test]
fn clt_hist_emits_requested_bins() {
    let dir = tmp("clt-hist");
    run_in(&dir, &["zeros", "--tmax", "120"]);
    let out = run_in(&dir, &["clt", "--band", "full", "--hist", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let json = lines.next().unwrap();
    assert!(json.starts_with('{'));
    assert_eq!(lines.next().unwrap(), "bin_center,count");
    assert_eq!(lines.count(), 40);
}

#[test]
fn spacing_row_per_lambda() {
    let dir = tmp("spacing-rows");
    run_in(&dir, &["zeros", "--tmax", "200"]);
    let out = run_in(&dir, &["spacing", "--lambdas", "0.1,0.2,0.4,0.8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    // comment header, column header, then one row per lambda
    assert_eq!(text.lines().count(), 6, "{text}");
    assert!(text.starts_with("# zeq "));
}

#[test]
fn equidist_reports_invariant_order() {
    let dir = tmp("equidist-inv");
    run_in(&dir, &["zeros", "--tmax", "200"]);
    let out = run_in(&dir, &["equidist", "--scale", "unit", "--ellmax", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON report");
    let d_star = v["report"]["d_star"].as_f64().unwrap();
    let et = v["report"]["et_bound"].as_f64().unwrap();
    assert!(d_star <= et);
    assert_eq!(v["version"].as_str().unwrap(), "0.1.0");
    // restricted variant
    let out = run_in(
        &dir,
        &["equidist", "--scale", "unit", "--ellmax", "20", "--a", "-1", "--b", "1"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["report"]["n_band"].as_u64().unwrap() > 0);
}
