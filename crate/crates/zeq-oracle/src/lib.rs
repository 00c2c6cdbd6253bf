//! Independent high-precision oracles used only by tests.
//!
//! The production crate evaluates Z(t) through the Riemann-Siegel expansion
//! with an asymptotic theta. This crate takes the other road everywhere:
//! zeta(1/2+it) by Euler-Maclaurin summation carried in double-double
//! precision, and theta by Stirling's series for log Gamma with argument
//! shifting. Agreement between the two paths is what the conformance and
//! acceptance suites assert; nothing here is linked into the shipped library.

use zeq::dd::Dd;

mod bernoulli;
mod cdd;
mod em_zeta;
mod zeros;

pub use cdd::CDd;
pub use em_zeta::ZetaOracle;
pub use zeros::{bisect_zero, find_zeros_counted};

/// Deterministic xorshift generator for "random t" style test sweeps.
/// Seeded explicitly so every run exercises the same points.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> TestRng {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * u
    }
}

/// Convenience: parse a frozen decimal reference into f64 through Dd.
pub fn ref_f64(s: &str) -> f64 {
    Dd::parse(s).to_f64()
}
