//! Euler-Maclaurin evaluation of zeta(1/2 + it) and the Stirling-series
//! theta, both in double-double precision.

use crate::bernoulli::{b2k_dd, factorial_dd};
use crate::cdd::CDd;
use zeq::dd::Dd;

pub struct ZetaOracle {
    ln_n: Vec<Dd>,
    inv_sqrt_n: Vec<Dd>,
    ln_pi: Dd,
    fixed_terms: Option<usize>,
}

impl ZetaOracle {
    /// Oracle able to evaluate up to height `t_max`.
    pub fn new(t_max: f64) -> ZetaOracle {
        assert!(t_max >= 0.0 && t_max.is_finite());
        let cap = (3.0 * t_max).ceil() as usize + 42;
        ZetaOracle::build(cap, None)
    }

    /// Oracle with a fixed truncation point, for cross-checking that the
    /// result does not depend on where the main sum stops.
    pub fn with_terms(n_terms: usize) -> ZetaOracle {
        assert!(n_terms >= 40);
        ZetaOracle::build(n_terms + 2, Some(n_terms))
    }

    fn build(cap: usize, fixed_terms: Option<usize>) -> ZetaOracle {
        let mut ln_n = Vec::with_capacity(cap + 1);
        let mut inv_sqrt_n = Vec::with_capacity(cap + 1);
        ln_n.push(Dd::ZERO); // index 0 unused
        inv_sqrt_n.push(Dd::ZERO);
        for n in 1..=cap {
            let nd = Dd::from_f64(n as f64);
            ln_n.push(nd.ln());
            inv_sqrt_n.push(nd.sqrt().recip());
        }
        ZetaOracle {
            ln_n,
            inv_sqrt_n,
            ln_pi: Dd::PI.ln(),
            fixed_terms,
        }
    }

    fn terms_for(&self, t: f64) -> usize {
        let n = self
            .fixed_terms
            .unwrap_or(((3.0 * t).ceil() as usize).max(40));
        assert!(
            n < self.ln_n.len(),
            "oracle built for smaller heights (need {n} terms)"
        );
        n
    }

    /// zeta(1/2 + it) as (re, im).
    pub fn zeta_half_it(&self, t: f64) -> (Dd, Dd) {
        assert!(t >= 0.0);
        let n = self.terms_for(t);
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for k in 1..n {
            // k^{-1/2 - it} = k^{-1/2} (cos(t ln k) - i sin(t ln k))
            let (s, c) = self.ln_n[k].mul_f64(t).sin_cos();
            let m = self.inv_sqrt_n[k];
            re = re.add(m.mul(c));
            im = im.sub(m.mul(s));
        }
        let nf = n as f64;
        let (sn, cn) = self.ln_n[n].mul_f64(t).sin_cos();
        let zn = CDd::new(self.inv_sqrt_n[n].mul(cn), self.inv_sqrt_n[n].mul(sn).neg());
        let mut acc = CDd::new(re, im).add(zn.scale_f64(0.5));

        // integral term: N^{1-s}/(s-1) with s - 1 = -1/2 + it
        let s_minus_1 = CDd::from_f64(-0.5, t);
        acc = acc.add(zn.scale_f64(nf).div(s_minus_1));

        // Bernoulli tail: B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
        let s = CDd::from_f64(0.5, t);
        let n_inv2 = Dd::from_f64(nf).mul_f64(nf).recip();
        let mut rising = s; // (s)_1
        let mut npow = zn.scale(Dd::from_f64(nf).recip()); // N^{-s-1}
        let mut tail_scale = t.max(1.0) / nf; // coarse magnitude tracker
        for k in 1..=13usize {
            let coeff = b2k_dd(k).div(factorial_dd(2 * k as u32));
            acc = acc.add(npow.mul(rising).scale(coeff));
            // advance to (s)_{2k+1} and N^{-s-2k-1}
            let a = s.add(CDd::from_f64((2 * k - 1) as f64, 0.0));
            let b = s.add(CDd::from_f64((2 * k) as f64, 0.0));
            rising = rising.mul(a).mul(b);
            npow = npow.scale(n_inv2);
            tail_scale *= (t.max(1.0) / (std::f64::consts::TAU * nf)).powi(2);
        }
        assert!(tail_scale < 1e-24, "Euler-Maclaurin tail not converged");
        (acc.re, acc.im)
    }

    /// Riemann-Siegel theta via Stirling's series on log Gamma(1/4 + it/2),
    /// shifting the argument up until Stirling converges.
    pub fn theta(&self, t: f64) -> Dd {
        assert!(t >= 0.0);
        let half_t = Dd::from_f64(t).mul_f64(0.5);
        // shift so |z + m| >= 25
        let m = if t * t / 4.0 >= 625.0 {
            0usize
        } else {
            ((625.0 - t * t / 4.0).sqrt() - 0.25).ceil().max(0.0) as usize
        };
        let mut shift_im = Dd::ZERO;
        for j in 0..m {
            shift_im = shift_im.add(Dd::atan2(half_t, Dd::from_f64(0.25 + j as f64)));
        }
        let w = CDd::new(Dd::from_f64(0.25 + m as f64), half_t);
        let lw = w.ln();
        // Im[(w - 1/2) ln w] - Im w + sum_k B_{2k} / (2k(2k-1)) Im[w^{1-2k}]
        let wr_half = w.re.sub_f64(0.5);
        let mut im_lg = wr_half.mul(lw.im).add(w.im.mul(lw.re)).sub(w.im);
        let winv = w.recip();
        let winv2 = winv.mul(winv);
        let mut p = winv;
        for k in 1..=13usize {
            let denom = (2 * k * (2 * k - 1)) as f64;
            let coeff = b2k_dd(k).div_f64(denom);
            im_lg = im_lg.add(p.im.mul(coeff));
            p = p.mul(winv2);
        }
        im_lg.sub(shift_im).sub(half_t.mul(self.ln_pi))
    }

    /// Hardy Z together with the imaginary residual of e^{i theta} zeta,
    /// which should vanish and is a strong internal consistency check.
    pub fn z_with_residual(&self, t: f64) -> (Dd, f64) {
        let (zr, zi) = self.zeta_half_it(t);
        let (s, c) = self.theta(t).sin_cos();
        let re = c.mul(zr).sub(s.mul(zi));
        let im = s.mul(zr).add(c.mul(zi));
        (re, im.to_f64())
    }

    pub fn z(&self, t: f64) -> Dd {
        self.z_with_residual(t).0
    }

    pub fn z_f64(&self, t: f64) -> f64 {
        self.z(t).to_f64()
    }

    /// dZ/dt by Richardson-extrapolated central differences on the
    /// double-double evaluation; good to ~1e-12 relative away from
    /// derivative zeros.
    pub fn z_prime(&self, t: f64) -> f64 {
        let h = 1e-6;
        let d = |h: f64| {
            self.z(t + h)
                .sub(self.z((t - h).abs()))
                .div_f64(2.0 * h)
        };
        let d1 = d(h);
        let d2 = d(h / 2.0);
        d2.mul_f64(4.0 / 3.0).sub(d1.div_f64(3.0)).to_f64()
    }
}
