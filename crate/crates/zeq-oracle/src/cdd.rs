//! Complex arithmetic over double-doubles, just enough for Euler-Maclaurin
//! tails and Stirling's series.

use zeq::dd::Dd;

#[derive(Clone, Copy, Debug, Default)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn new(re: Dd, im: Dd) -> CDd {
        CDd { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> CDd {
        CDd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    pub fn add(self, o: CDd) -> CDd {
        CDd::new(self.re.add(o.re), self.im.add(o.im))
    }

    pub fn sub(self, o: CDd) -> CDd {
        CDd::new(self.re.sub(o.re), self.im.sub(o.im))
    }

    pub fn mul(self, o: CDd) -> CDd {
        CDd::new(
            self.re.mul(o.re).sub(self.im.mul(o.im)),
            self.re.mul(o.im).add(self.im.mul(o.re)),
        )
    }

    pub fn scale(self, k: Dd) -> CDd {
        CDd::new(self.re.mul(k), self.im.mul(k))
    }

    pub fn scale_f64(self, k: f64) -> CDd {
        CDd::new(self.re.mul_f64(k), self.im.mul_f64(k))
    }

    pub fn div(self, o: CDd) -> CDd {
        let norm = o.re.mul(o.re).add(o.im.mul(o.im));
        let num = self.mul(CDd::new(o.re, o.im.neg()));
        CDd::new(num.re.div(norm), num.im.div(norm))
    }

    pub fn recip(self) -> CDd {
        CDd::new(Dd::ONE, Dd::ZERO).div(self)
    }

    /// Principal logarithm.
    pub fn ln(self) -> CDd {
        let norm2 = self.re.mul(self.re).add(self.im.mul(self.im));
        CDd::new(norm2.ln().mul_f64(0.5), Dd::atan2(self.im, self.re))
    }

    pub fn abs2(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }
}
