//! Bernoulli numbers B_2..B_26 as exact numerator/denominator pairs.
//! Both parts are exactly representable in f64, so dividing them in Dd gives
//! the full double-double value.

use zeq::dd::Dd;

/// (numerator, denominator) of B_{2k} for k = 1..=13.
pub const B2K: [(f64, f64); 13] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
];

pub fn b2k_dd(k: usize) -> Dd {
    let (num, den) = B2K[k - 1];
    Dd::from_f64(num).div_f64(den)
}

/// n! in Dd; exact through 26! (fits well inside 106 bits).
pub fn factorial_dd(n: u32) -> Dd {
    let mut acc = Dd::ONE;
    for i in 2..=n {
        acc = acc.mul_f64(i as f64);
    }
    acc
}
