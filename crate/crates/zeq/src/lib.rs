//! Zeta-zero ordinates and the statistics they carry.
//!
//! The crate computes nontrivial zeros of the Riemann zeta function on the
//! critical line together with |Z'(gamma)|, then exercises the statements
//! that are computable at desk scale: Gaussian band counts of the normalized
//! log-derivative, uniform distribution mod one of full and band-restricted
//! zero sequences, star discrepancy against the Erdos-Turan bound, the
//! Landau-Gonek explicit formula with its error envelopes, growth scans of
//! the x^{i gamma} sums, the prime Dirichlet polynomial proxy, the mollified
//! sign approximation, and nearest-neighbor gap statistics.
//!
//! Everything is deterministic: fixed reduction orders, fixed formatting.

pub mod band_stats;
pub mod cli;
pub mod critical_line;
pub mod dd;
pub mod equidist;
pub mod prime_poly;
pub mod sign_approx;
pub mod spacing;
pub mod sum;
pub mod zero_finder;

use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("ordinates not strictly increasing at line {line}: {value}")]
    Monotonicity { line: usize, value: f64 },
    #[error("bad cache format: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(
        "zero count incomplete on ({t_lo}, {t_hi}]: found {found}, expected {expected}; \
         unresolved near Gram block [{block_lo}, {block_hi}]"
    )]
    Incomplete {
        t_lo: f64,
        t_hi: f64,
        found: usize,
        expected: usize,
        block_lo: f64,
        block_hi: f64,
    },
    #[error("sieve limit {0} above capacity")]
    Capacity(u64),
    #[error("quadrature did not converge: requested {requested:e}, achieved {achieved:e}")]
    Quadrature { requested: f64, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
