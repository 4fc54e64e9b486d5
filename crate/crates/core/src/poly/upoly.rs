use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, sign_of, Rat};

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// order with no trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        UPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::from_coeffs(c.iter().map(|&v| Rat::from_integer(BigInt::from(v))).collect())
    }

    /// `x - r`.
    pub fn linear_root(r: &Rat) -> Self {
        UPoly::from_coeffs(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        sign_of(&self.eval(x))
    }

    /// Sign as `x -> +infinity`.
    pub fn sign_at_pos_inf(&self) -> i8 {
        sign_of(&self.lc())
    }

    /// Sign as `x -> -infinity`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        let s = sign_of(&self.lc());
        if self.deg() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (UPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); self.deg() - dd + 1];
        let inv = d.lc().recip();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics in debug builds if the division is not exact.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact univariate division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic square-free part.
    pub fn square_free(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        if self.deg() == 0 {
            return UPoly::one();
        }
        let g = UPoly::gcd(self, &self.derivative());
        self.div_exact(&g).monic()
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Integer coefficients with content one and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        ints
    }

    /// Same polynomial rescaled to integer coefficients with content one and
    /// positive leading coefficient.
    pub fn normalized(&self) -> UPoly {
        UPoly::from_coeffs(self.primitive_integer().into_iter().map(Rat::from_integer).collect())
    }

    /// Strict upper bound on the absolute value of every complex root.
    pub fn root_bound(&self) -> Rat {
        let lc = self.lc().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let v = c.abs() / &lc;
            if v > m {
                m = v;
            }
        }
        m + Rat::one()
    }

    /// Sturm sequence `p, p', -rem(...)`, each rescaled by a positive constant.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone()];
        if self.deg() == 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            let r = r.scale(&(-Rat::one() / r.lc().abs()));
            seq.push(r);
        }
        seq
    }

    /// Number of distinct real roots of a square-free polynomial in the
    /// half-open interval `(a, b]`, from its Sturm sequence.
    pub fn sturm_count(seq: &[UPoly], a: &Rat, b: &Rat) -> usize {
        let va = sign_variations(seq.iter().map(|p| p.sign_at(a)));
        let vb = sign_variations(seq.iter().map(|p| p.sign_at(b)));
        va.saturating_sub(vb)
    }

    /// Distinct real roots in `(a, b]` where either end may be infinite.
    pub fn sturm_count_ext(seq: &[UPoly], a: Option<&Rat>, b: Option<&Rat>) -> usize {
        let va = match a {
            Some(a) => sign_variations(seq.iter().map(|p| p.sign_at(a))),
            None => sign_variations(seq.iter().map(|p| p.sign_at_neg_inf())),
        };
        let vb = match b {
            Some(b) => sign_variations(seq.iter().map(|p| p.sign_at(b))),
            None => sign_variations(seq.iter().map(|p| p.sign_at_pos_inf())),
        };
        va.saturating_sub(vb)
    }
}

fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + o.coeff(i));
        }
        UPoly::from_coeffs(c)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - o.coeff(i));
        }
        UPoly::from_coeffs(c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(c)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{}", fmt_rat(&mag))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", fmt_rat(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat::{rat, rat_from_int};

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = UPoly::from_ints(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = UPoly::gcd(&a, &UPoly::from_ints(&[1, 2, 1]));
        assert_eq!(g, b);
        let (g, s, t) = UPoly::ext_gcd(&a, &UPoly::from_ints(&[2, 1]));
        assert_eq!(g, UPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &UPoly::from_ints(&[2, 1])), UPoly::one());
    }

    #[test]
    fn square_free_and_sturm() {
        let p = UPoly::from_ints(&[0, 0, 0, 1]); // x^3
        assert_eq!(p.square_free(), UPoly::x());
        let q = UPoly::from_ints(&[-2, 0, 1]);
        let seq = q.sturm_sequence();
        assert_eq!(UPoly::sturm_count(&seq, &rat_from_int(-2), &rat_from_int(2)), 2);
        assert_eq!(UPoly::sturm_count(&seq, &rat_from_int(0), &rat_from_int(2)), 1);
        assert_eq!(UPoly::sturm_count_ext(&seq, None, None), 2);
        assert_eq!(UPoly::sturm_count_ext(&seq, Some(&rat(3, 2)), None), 0);
    }

    #[test]
    fn primitive_form() {
        let p = UPoly::from_coeffs(vec![rat(-1, 2), rat(0, 1), rat(-3, 4)]);
        let ints = p.primitive_integer();
        assert_eq!(ints, vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::from_ints(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(UPoly::from_coeffs(vec![rat(1, 2), rat(-1, 1)]).to_string(), "-x + 1/2");
    }
}
