use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rat::Rat;

/// Closed rational interval `[lo, hi]` used for sign certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(r: Rat) -> Self {
        Interval { lo: r.clone(), hi: r }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` when the interval excludes zero or is exactly `[0,0]`.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn add_rat(&self, c: &Rat) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if v < &lo {
                lo = v.clone();
            }
            if v > &hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }
}

/// Horner evaluation of a polynomial with interval coefficients.
pub(crate) fn horner(coeffs: &[Interval], x: &Interval) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Horner evaluation of a rational polynomial on an interval.
pub(crate) fn horner_rat(coeffs: &[Rat], x: &Interval) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for c in coeffs.iter().rev() {
        acc = (&acc * x).add_rat(c);
    }
    acc
}
