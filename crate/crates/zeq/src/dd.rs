//! Double-double arithmetic: an unevaluated sum `hi + lo` carrying roughly
//! 31 significant decimal digits.
//!
//! The phase combinations that drive the oscillatory sums in this crate,
//! theta(t) - t*log(n) reduced mod 2*pi, exceed what plain f64 can carry once
//! t is in the thousands, so the theta and phase paths run in this type.
//! Operations follow the error-free transformations of Dekker and Knuth as
//! organized in the QD library of Hida, Li and Bailey.

/// `s + e == a + b` exactly, with `s = fl(a + b)`.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let av = s - bv;
    (s, (a - av) + (b - bv))
}

/// Like [`two_sum`] but requires `|a| >= |b|`.
#[inline]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// `p + e == a * b` exactly.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };
    pub const TWO_PI: Dd = Dd {
        hi: 6.283185307179586,
        lo: 2.4492935982947064e-16,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: 1.5707963267948966,
        lo: 6.123233995736766e-17,
    };
    pub const FRAC_PI_4: Dd = Dd {
        hi: 0.7853981633974483,
        lo: 3.061616997868383e-17,
    };
    pub const LN_2: Dd = Dd {
        hi: 0.6931471805599453,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }

    #[inline]
    pub fn add_f64(self, rhs: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (s1, s2) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi: s1, lo: s2 }
    }

    #[inline]
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    #[inline]
    pub fn sub_f64(self, rhs: f64) -> Dd {
        self.add_f64(-rhs)
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (s1, s2) = quick_two_sum(p, e);
        Dd { hi: s1, lo: s2 }
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let (s1, s2) = quick_two_sum(p, e + self.lo * rhs);
        Dd { hi: s1, lo: s2 }
    }

    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Dd {
        self.div(Dd::from_f64(rhs))
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "dd sqrt of negative");
        let y = self.hi.sqrt();
        // One Newton step on y + (a - y^2) / (2y).
        let yd = Dd::from_f64(y);
        let r = self.sub(yd.mul(yd));
        yd.add(r.div_f64(2.0 * y))
    }

    /// Nearest-integer remainder `self - round(self / d) * d` for exact f64 `d.hi`
    /// multiples; used for phase reduction where `self` may be ~1e7.
    #[inline]
    fn reduce_by(self, d: Dd) -> (f64, Dd) {
        let k = (self.hi / d.hi).round();
        (k, self.sub(d.mul_f64(k)))
    }

    pub fn exp(self) -> Dd {
        // exp(x) = 2^m * exp(r), r = x - m ln2, then r scaled down by 512.
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -709.0 {
            return Dd::ZERO;
        }
        let (m, r) = self.reduce_by(Dd::LN_2);
        let r = r.div_f64(512.0);
        // Taylor for exp(r) - 1 with |r| <= ln2/1024.
        let mut term = r;
        let mut sum = r;
        for k in 2..=9 {
            term = term.mul(r).div_f64(k as f64);
            sum = sum.add(term);
        }
        // Undo scaling: (1+s) <- (1+s)^2 means s <- 2s + s^2, nine times.
        let mut s = sum;
        for _ in 0..9 {
            s = s.mul_f64(2.0).add(s.mul(s));
        }
        let e = s.add(Dd::ONE);
        let scale = libm::ldexp(1.0, m as i32);
        Dd {
            hi: e.hi * scale,
            lo: e.lo * scale,
        }
    }

    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0, "dd ln of non-positive");
        // Newton refinement of the f64 logarithm: with u = x*exp(-y0) - 1,
        // ln x = y0 + u - u^2/2 + O(u^3), and u is O(1e-16).
        let y0 = self.hi.ln();
        let u = self.mul(Dd::from_f64(-y0).exp()).sub(Dd::ONE);
        let corr = u.sub(u.mul(u).mul_f64(0.5));
        Dd::from_f64(y0).add(corr)
    }

    /// Remainder of `self` modulo 2*pi, in [-pi, pi].
    pub fn mod_two_pi(self) -> Dd {
        let (_, r) = self.reduce_by(Dd::TWO_PI);
        r
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        let (_, r) = self.reduce_by(Dd::TWO_PI);
        let j = (r.hi / Dd::FRAC_PI_2.hi).round();
        let r = r.sub(Dd::FRAC_PI_2.mul_f64(j));
        let (s, c) = sin_cos_taylor(r);
        match j as i64 {
            0 => (s, c),
            1 => (c, s.neg()),
            -1 => (c.neg(), s),
            _ => (s.neg(), c.neg()),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn atan(self) -> Dd {
        // One Newton step for tan(y) = x from the f64 seed.
        let y0 = self.hi.atan();
        let yd = Dd::from_f64(y0);
        let (s, c) = yd.sin_cos();
        yd.add(self.mul(c).sub(s).mul(c))
    }

    pub fn atan2(y: Dd, x: Dd) -> Dd {
        if y.hi == 0.0 && y.lo == 0.0 {
            return if x.hi >= 0.0 { Dd::ZERO } else { Dd::PI };
        }
        if x.hi == 0.0 && x.lo == 0.0 {
            let q = Dd::FRAC_PI_2;
            return if y.hi > 0.0 { q } else { q.neg() };
        }
        if y.abs().hi <= x.abs().hi {
            let base = y.div(x).atan();
            if x.hi > 0.0 {
                base
            } else if y.hi >= 0.0 {
                base.add(Dd::PI)
            } else {
                base.sub(Dd::PI)
            }
        } else {
            let base = x.div(y).atan();
            if y.hi > 0.0 {
                Dd::FRAC_PI_2.sub(base)
            } else {
                Dd::FRAC_PI_2.neg().sub(base)
            }
        }
    }

    /// Parse a plain decimal literal (optionally signed, with one '.') into a
    /// Dd. Intended for frozen reference constants in tests; digits beyond
    /// ~32 are absorbed into the low word.
    pub fn parse(s: &str) -> Dd {
        let s = s.trim();
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut acc = Dd::ZERO;
        let mut frac_digits: i32 = 0;
        let mut seen_dot = false;
        for ch in digits.chars() {
            match ch {
                '.' => seen_dot = true,
                '0'..='9' => {
                    acc = acc.mul_f64(10.0).add_f64((ch as u8 - b'0') as f64);
                    if seen_dot {
                        frac_digits += 1;
                    }
                }
                '_' => {}
                _ => panic!("Dd::parse: unexpected character {ch:?} in {s:?}"),
            }
        }
        let mut scale = Dd::ONE;
        for _ in 0..frac_digits {
            scale = scale.mul_f64(10.0);
        }
        let v = acc.div(scale);
        if neg {
            v.neg()
        } else {
            v
        }
    }
}

fn sin_cos_taylor(r: Dd) -> (Dd, Dd) {
    // |r| <= pi/4 + slack; alternating series to ~1e-33.
    let r2 = r.mul(r);
    let mut term = r;
    let mut s = r;
    let mut k = 1.0_f64;
    for _ in 0..13 {
        term = term.mul(r2).div_f64(-((k + 1.0) * (k + 2.0)));
        s = s.add(term);
        k += 2.0;
    }
    let mut term = Dd::ONE;
    let mut c = Dd::ONE;
    let mut k = 0.0_f64;
    for _ in 0..13 {
        term = term.mul(r2).div_f64(-((k + 1.0) * (k + 2.0)));
        c = c.add(term);
        k += 2.0;
    }
    (s, c)
}
