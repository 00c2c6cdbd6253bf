//! C ABI over the zeq library: opaque zero-table handles, status codes, and
//! plain-double entry points for the critical-line and statistics kernels.
//!
//! Conventions: every fallible call returns a [`ZeqStatus`]; results land in
//! out-pointers, which must be non-null. Tables returned through
//! `ZeqZeroTable**` are owned by the caller and released with
//! [`zeq_table_free`]. All functions are panic-safe: a Rust panic is caught
//! at the boundary and surfaces as `ZEQ_STATUS_INTERNAL`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use zeq::band_stats::{self, BandSpec, Normalization};
use zeq::critical_line;
use zeq::equidist::{self, SequenceScale};
use zeq::sign_approx::{self, MollifierConfig};
use zeq::spacing;
use zeq::zero_finder::{self, ZeroTable};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    IoError = 4,
    /// zero count did not close against the Riemann-von Mangoldt estimate
    Incomplete = 5,
    ParseError = 6,
    Internal = 7,
}

fn status_of(e: &zeq::Error) -> ZeqStatus {
    use zeq::Error::*;
    match e {
        Domain(_) => ZeqStatus::DomainError,
        InvalidArgument(_) => ZeqStatus::InvalidArgument,
        Parse { .. } | Monotonicity { .. } | Format(_) => ZeqStatus::ParseError,
        Io { .. } => ZeqStatus::IoError,
        Incomplete { .. } => ZeqStatus::Incomplete,
        Capacity(_) => ZeqStatus::InvalidArgument,
        Quadrature { .. } => ZeqStatus::Internal,
    }
}

/// Opaque handle to an immutable table of zero ordinates.
pub struct ZeqZeroTable(ZeroTable);

fn guarded<F: FnOnce() -> ZeqStatus>(f: F) -> ZeqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => ZeqStatus::Internal,
    }
}

fn write_out<T>(out: *mut T, value: T) -> ZeqStatus {
    if out.is_null() {
        return ZeqStatus::NullPointer;
    }
    unsafe { *out = value };
    ZeqStatus::Ok
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn zeq_version() -> *const c_char {
    static VERSION: &CStr = c"0.1.0";
    VERSION.as_ptr()
}

/// Riemann-Siegel theta.
#[no_mangle]
pub extern "C" fn zeq_theta(t: f64, out: *mut f64) -> ZeqStatus {
    guarded(|| match critical_line::theta(t) {
        Ok(v) => write_out(out, v),
        Err(e) => status_of(&e),
    })
}

/// Hardy's Z function.
#[no_mangle]
pub extern "C" fn zeq_hardy_z(t: f64, out: *mut f64) -> ZeqStatus {
    guarded(|| match critical_line::hardy_z(t) {
        Ok(v) => write_out(out, v),
        Err(e) => status_of(&e),
    })
}

/// Derivative of Hardy's Z function.
#[no_mangle]
pub extern "C" fn zeq_hardy_z_prime(t: f64, out: *mut f64) -> ZeqStatus {
    guarded(|| match critical_line::hardy_z_prime(t) {
        Ok(v) => write_out(out, v),
        Err(e) => status_of(&e),
    })
}

/// Standard normal mass of [a, b].
#[no_mangle]
pub extern "C" fn zeq_gaussian_mass(a: f64, b: f64, out: *mut f64) -> ZeqStatus {
    guarded(|| match band_stats::gaussian_mass(a, b) {
        Ok(v) => write_out(out, v),
        Err(e) => status_of(&e),
    })
}

/// Mollified sign function F_Omega at x.
#[no_mangle]
pub extern "C" fn zeq_f_omega(x: f64, omega: f64, out: *mut f64) -> ZeqStatus {
    guarded(|| {
        let cfg = match MollifierConfig::with_omega(omega) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        match sign_approx::f_omega(x, &cfg) {
            Ok(v) => write_out(out, v),
            Err(e) => status_of(&e),
        }
    })
}

fn emit_table(table: ZeroTable, out: *mut *mut ZeqZeroTable) -> ZeqStatus {
    if out.is_null() {
        return ZeqStatus::NullPointer;
    }
    let boxed = Box::new(ZeqZeroTable(table));
    unsafe { *out = Box::into_raw(boxed) };
    ZeqStatus::Ok
}

/// Locate all zeros on (t_min, t_max].
#[no_mangle]
pub extern "C" fn zeq_table_find(
    t_min: f64,
    t_max: f64,
    out: *mut *mut ZeqZeroTable,
) -> ZeqStatus {
    guarded(|| match zero_finder::find_zeros(t_min, t_max) {
        Ok(t) => emit_table(t, out),
        Err(e) => status_of(&e),
    })
}

/// Locate the first n zeros.
#[no_mangle]
pub extern "C" fn zeq_table_first_n(n: usize, out: *mut *mut ZeqZeroTable) -> ZeqStatus {
    guarded(|| match zero_finder::find_first_n(n) {
        Ok(t) => emit_table(t, out),
        Err(e) => status_of(&e),
    })
}

unsafe fn path_from(ptr: *const c_char) -> Option<std::path::PathBuf> {
    if ptr.is_null() {
        return None;
    }
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().ok()?;
    Some(std::path::PathBuf::from(s))
}

/// Import plain-text ordinates (one per line, ascending).
///
/// # Safety
/// `path` must point at a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_import(
    path: *const c_char,
    t_max: f64,
    out: *mut *mut ZeqZeroTable,
) -> ZeqStatus {
    guarded(|| {
        let Some(path) = (unsafe { path_from(path) }) else {
            return ZeqStatus::NullPointer;
        };
        match zero_finder::import_zeros(&path, t_max) {
            Ok(t) => emit_table(t, out),
            Err(e) => status_of(&e),
        }
    })
}

/// Load a cache file written by `zeq_table_save` (or the CLI).
///
/// # Safety
/// `path` must point at a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_load(
    path: *const c_char,
    out: *mut *mut ZeqZeroTable,
) -> ZeqStatus {
    guarded(|| {
        let Some(path) = (unsafe { path_from(path) }) else {
            return ZeqStatus::NullPointer;
        };
        match zero_finder::load_cache(&path) {
            Ok(t) => emit_table(t, out),
            Err(e) => status_of(&e),
        }
    })
}

/// Write the table to a cache file.
///
/// # Safety
/// `table` must come from this library and be live; `path` must point at a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_save(
    table: *const ZeqZeroTable,
    path: *const c_char,
) -> ZeqStatus {
    guarded(|| {
        if table.is_null() {
            return ZeqStatus::NullPointer;
        }
        let Some(path) = (unsafe { path_from(path) }) else {
            return ZeqStatus::NullPointer;
        };
        match zero_finder::save_cache(&unsafe { &*table }.0, &path) {
            Ok(()) => ZeqStatus::Ok,
            Err(e) => status_of(&e),
        }
    })
}

/// Release a table handle. Null is a no-op.
///
/// # Safety
/// `table` must be a pointer previously returned by this library and not
/// already freed.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_free(table: *mut ZeqZeroTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Number of ordinates; 0 for a null handle.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_len(table: *const ZeqZeroTable) -> usize {
    if table.is_null() {
        0
    } else {
        unsafe { &*table }.0.len()
    }
}

/// Upper height of the table.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_t_max(table: *const ZeqZeroTable) -> f64 {
    if table.is_null() {
        f64::NAN
    } else {
        unsafe { &*table }.0.t_max()
    }
}

/// 1 when the count closed against the Riemann-von Mangoldt estimate.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_is_complete(table: *const ZeqZeroTable) -> i32 {
    if table.is_null() {
        0
    } else {
        i32::from(unsafe { &*table }.0.complete())
    }
}

/// The idx-th (0-based) ordinate.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_gamma(
    table: *const ZeqZeroTable,
    idx: usize,
    out: *mut f64,
) -> ZeqStatus {
    if table.is_null() {
        return ZeqStatus::NullPointer;
    }
    match unsafe { &*table }.0.ordinates().get(idx) {
        Some(o) => write_out(out, o.gamma),
        None => ZeqStatus::InvalidArgument,
    }
}

/// |Z'(gamma)| carried by the idx-th ordinate.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn zeq_table_z_prime_abs(
    table: *const ZeqZeroTable,
    idx: usize,
    out: *mut f64,
) -> ZeqStatus {
    if table.is_null() {
        return ZeqStatus::NullPointer;
    }
    match unsafe { &*table }.0.ordinates().get(idx) {
        Some(o) => write_out(out, o.z_prime_abs),
        None => ZeqStatus::InvalidArgument,
    }
}

/// Weyl sum over the table: scale_log_t = 0 takes e(ell gamma), 1 takes
/// e(ell gamma log(T)/2pi).
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn zeq_weyl_sum(
    table: *const ZeqZeroTable,
    ell: u32,
    scale_log_t: i32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ZeqStatus {
    guarded(|| {
        if table.is_null() {
            return ZeqStatus::NullPointer;
        }
        if ell == 0 {
            return ZeqStatus::InvalidArgument;
        }
        let t = unsafe { &*table }.0.t_max();
        let scale = if scale_log_t != 0 {
            match SequenceScale::log_t(t) {
                Ok(s) => s,
                Err(e) => return status_of(&e),
            }
        } else {
            SequenceScale::unit()
        };
        let s = equidist::weyl_sum(&unsafe { &*table }.0, ell, &scale);
        let rc = write_out(out_re, s.re);
        if rc != ZeqStatus::Ok {
            return rc;
        }
        write_out(out_im, s.im)
    })
}

/// Exact star discrepancy of `len` points in [0, 1).
///
/// # Safety
/// `points` must reference `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn zeq_star_discrepancy(
    points: *const f64,
    len: usize,
    out: *mut f64,
) -> ZeqStatus {
    guarded(|| {
        if points.is_null() && len > 0 {
            return ZeqStatus::NullPointer;
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            unsafe { std::slice::from_raw_parts(points, len) }
        };
        match equidist::star_discrepancy(slice) {
            Ok(v) => write_out(out, v),
            Err(e) => status_of(&e),
        }
    })
}

/// Landau-Gonek sum at x with the predicted main term and envelopes.
/// Outputs: observed (re, im), main, e1, e2, e3.
///
/// # Safety
/// `table` must be live or null; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn zeq_landau_gonek(
    table: *const ZeqZeroTable,
    x: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_main: *mut f64,
    out_e1: *mut f64,
    out_e2: *mut f64,
    out_e3: *mut f64,
) -> ZeqStatus {
    guarded(|| {
        if table.is_null() {
            return ZeqStatus::NullPointer;
        }
        match equidist::landau_gonek(&unsafe { &*table }.0, x) {
            Ok((obs, pred)) => {
                for (ptr, v) in [
                    (out_re, obs.re),
                    (out_im, obs.im),
                    (out_main, pred.main),
                    (out_e1, pred.e1),
                    (out_e2, pred.e2),
                    (out_e3, pred.e3),
                ] {
                    let rc = write_out(ptr, v);
                    if rc != ZeqStatus::Ok {
                        return rc;
                    }
                }
                ZeqStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Band count of the normalized log-derivative statistic:
/// normalization_per_t = 0 normalizes per gamma, 1 per T. Outputs the
/// in-band count, the Gaussian prediction, the KS distance, and how many
/// ordinates were excluded.
///
/// # Safety
/// `table` must be live or null; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn zeq_count_in_band(
    table: *const ZeqZeroTable,
    a: f64,
    b: f64,
    normalization_per_t: i32,
    cutoff: f64,
    out_count: *mut usize,
    out_prediction: *mut f64,
    out_ks: *mut f64,
    out_excluded: *mut usize,
) -> ZeqStatus {
    guarded(|| {
        if table.is_null() {
            return ZeqStatus::NullPointer;
        }
        let normalization = if normalization_per_t != 0 {
            Normalization::PerT
        } else {
            Normalization::PerGamma
        };
        let band = match BandSpec::new(a, b, normalization) {
            Ok(b) => b,
            Err(e) => return status_of(&e),
        };
        match band_stats::count_in_band(&unsafe { &*table }.0, &band, cutoff) {
            Ok(r) => {
                let rc = write_out(out_count, r.count);
                if rc != ZeqStatus::Ok {
                    return rc;
                }
                let rc = write_out(out_prediction, r.prediction);
                if rc != ZeqStatus::Ok {
                    return rc;
                }
                let rc = write_out(out_ks, r.ks);
                if rc != ZeqStatus::Ok {
                    return rc;
                }
                write_out(out_excluded, r.excluded)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Fraction of consecutive gaps at or below lambda / log T, with the
/// lambda-normalized ratio.
///
/// # Safety
/// `table` must be live or null; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn zeq_small_gap_fraction(
    table: *const ZeqZeroTable,
    lambda: f64,
    out_fraction: *mut f64,
    out_ratio: *mut f64,
) -> ZeqStatus {
    guarded(|| {
        if table.is_null() {
            return ZeqStatus::NullPointer;
        }
        match spacing::small_gap_fraction(&unsafe { &*table }.0, lambda, 1.0) {
            Ok(f) => {
                let rc = write_out(out_fraction, f.fraction);
                if rc != ZeqStatus::Ok {
                    return rc;
                }
                write_out(out_ratio, f.fraction_over_lambda)
            }
            Err(e) => status_of(&e),
        }
    })
}
