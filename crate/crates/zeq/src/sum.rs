//! Compensated summation for the oscillatory sums used throughout.
//!
//! Kahan summation with the Neumaier branch; the running compensation keeps
//! the accumulated error near one ulp of the true sum independent of length.

#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    s: f64,
    c: f64,
}

impl Neumaier {
    pub fn new() -> Neumaier {
        Neumaier::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.s + self.c
    }

    /// Merge another accumulator; used for the deterministic chunk reductions.
    pub fn merge(&mut self, other: Neumaier) {
        self.add(other.s);
        self.c += other.c;
    }
}

/// Complex accumulator built from two real ones.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum {
    pub re: Neumaier,
    pub im: Neumaier,
}

impl ComplexSum {
    pub fn new() -> ComplexSum {
        ComplexSum::default()
    }

    #[inline]
    pub fn add(&mut self, re: f64, im: f64) {
        self.re.add(re);
        self.im.add(im);
    }

    pub fn merge(&mut self, other: ComplexSum) {
        self.re.merge(other.re);
        self.im.merge(other.im);
    }

    pub fn value(&self) -> (f64, f64) {
        (self.re.value(), self.im.value())
    }
}

/// Deterministic pairwise tree merge of per-chunk partial sums. The chunk
/// boundaries are fixed by `chunk` alone, so the result is independent of
/// thread count and schedule.
pub fn tree_merge<T, F>(mut parts: Vec<T>, mut merge: F) -> T
where
    T: Default,
    F: FnMut(T, T) -> T,
{
    if parts.is_empty() {
        return T::default();
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge(a, b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.into_iter().next().unwrap()
}
