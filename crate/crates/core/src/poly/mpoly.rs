use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::parse::default_var_names;
use super::rat::{fmt_rat, Rat};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in ascending lexicographic order of their exponent vectors
/// (first variable most significant), so the last term is the lex-leading one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(arity, Rat::one())
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    pub fn from_int(arity: usize, c: i64) -> Self {
        Poly::constant(arity, Rat::from_integer(BigInt::from(c)))
    }

    /// The variable `x_i` in a ring of `arity` variables.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[i] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Monomial, c: Rat) -> Self {
        let arity = exps.len();
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Result<Self> {
        let mut p = Poly::zero(arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::Dimension {
                    expected: arity,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Lifts a univariate polynomial into variable `i`.
    pub fn from_upoly(arity: usize, i: usize, u: &UPoly) -> Self {
        let mut p = Poly::zero(arity);
        for (k, c) in u.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; arity];
                e[i] = k as u32;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.arity]))
        } else {
            None
        }
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Variables with positive degree.
    pub fn vars(&self) -> Vec<usize> {
        (0..self.arity).filter(|&i| self.degree_in(i) > 0).collect()
    }

    /// Largest variable index with positive degree.
    pub fn main_var(&self) -> Option<usize> {
        (0..self.arity).rev().find(|&i| self.degree_in(i) > 0)
    }

    /// Lex-leading coefficient.
    pub fn leading_coeff(&self) -> Rat {
        self.terms.values().next_back().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.arity {
            return Err(Error::Dimension {
                expected: self.arity,
                found: x.len(),
            });
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.arity {
            return Err(Error::IndexOutOfRange {
                index: i,
                arity: self.arity,
            });
        }
        let mut p = Poly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, c * Rat::from_integer(BigInt::from(e[i])));
            }
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.arity);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `x_i`, lowest degree first; each
    /// coefficient keeps the same arity and does not involve `x_i`.
    pub fn coeffs_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(self.arity); if self.is_zero() { 0 } else { d + 1 }];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(arity: usize, i: usize, coeffs: &[Poly]) -> Poly {
        let mut p = Poly::zero(arity);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = e.clone();
                e2[i] += k as u32;
                p.add_term(e2, a.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `x_i`.
    pub fn lc_in(&self, i: usize) -> Poly {
        self.coeffs_in(i).pop().unwrap_or_else(|| Poly::zero(self.arity))
    }

    /// Drops the leading term with respect to `x_i`.
    pub fn reductum_in(&self, i: usize) -> Poly {
        let d = self.degree_in(i);
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] != d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes the rational `v` for `x_i`; the arity is unchanged.
    pub fn substitute(&self, i: usize, v: &Rat) -> Poly {
        let mut p = Poly::zero(self.arity);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            p.add_term(e2, c * num_traits::pow(v.clone(), e[i] as usize));
        }
        p
    }

    /// Substitutes the polynomial `q` (same arity) for `x_i`.
    pub fn substitute_poly(&self, i: usize, q: &Poly) -> Poly {
        let cs = self.coeffs_in(i);
        let mut acc = Poly::zero(self.arity);
        for c in cs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Univariate view when only `x_i` occurs.
    pub fn to_upoly(&self, i: usize) -> Option<UPoly> {
        let mut c = vec![Rat::zero(); self.degree_in(i) as usize + 1];
        for (e, a) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            c[e[i] as usize] = a.clone();
        }
        Some(UPoly::from_coeffs(c))
    }

    /// Moves variable `j` to position `map[j]` in a ring of `arity` variables.
    pub fn remap(&self, arity: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.arity);
        let mut p = Poly::zero(arity);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; arity];
            for (j, &k) in e.iter().enumerate() {
                e2[map[j]] += k;
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Keeps the first `arity` variables; the dropped ones must not occur.
    pub fn truncate_arity(&self, arity: usize) -> Poly {
        Poly {
            arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!(e[arity..].iter().all(|&k| k == 0));
                    (e[..arity].to_vec(), c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (de, dc) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let inv = dc.recip();
        let mut r = self.clone();
        let mut q = Poly::zero(self.arity);
        while let Some((re, rc)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc * &inv;
            for (te, tc) in &d.terms {
                let e2: Monomial = te.iter().zip(&e).map(|(a, b)| a + b).collect();
                r.add_term(e2, -(tc * &c));
            }
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Pseudo-remainder of `self` by `b` with respect to `x_i`.
    pub fn prem(&self, b: &Poly, i: usize) -> Poly {
        let db = b.degree_in(i);
        let lb = b.lc_in(i);
        let mut r = self.clone();
        let mut steps = 0i64;
        let da = self.degree_in(i) as i64;
        while !r.is_zero() && r.degree_in(i) >= db {
            let dr = r.degree_in(i);
            let lr = r.lc_in(i);
            let mut e = vec![0; self.arity];
            e[i] = dr - db;
            let shift = Poly::monomial(e, Rat::one());
            r = &(&r * &lb) - &(&(&lr * &shift) * b);
            steps += 1;
        }
        let total = (da - db as i64 + 1).max(0);
        if total > steps {
            r = &r * &lb.pow((total - steps) as u32);
        }
        r
    }

    /// Rescales to integer coefficients with content one and a positive
    /// lex-leading coefficient. Zero stays zero.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let mut f = Rat::new(lcm, g);
        if self.leading_coeff().is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Gcd of the coefficients with respect to `x_i` (a polynomial free of `x_i`).
    pub fn content_in(&self, i: usize) -> Poly {
        let mut g = Poly::zero(self.arity);
        for c in self.coeffs_in(i) {
            if c.is_zero() {
                continue;
            }
            g = Poly::gcd(&g, &c);
            if g.is_constant() {
                return Poly::one(self.arity);
            }
        }
        g
    }

    pub fn primitive_part_in(&self, i: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(i);
        self.div_exact(&c).expect("content divides").normalized()
    }

    /// Greatest common divisor, normalized; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one(a.arity);
        }
        let v = match (a.main_var(), b.main_var()) {
            (Some(x), Some(y)) => x.max(y),
            _ => unreachable!(),
        };
        if a.degree_in(v) == 0 {
            return Poly::gcd(a, &b.content_in(v));
        }
        if b.degree_in(v) == 0 {
            return Poly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = Poly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).expect("content divides").normalized();
        let mut q = b.div_exact(&cb).expect("content divides").normalized();
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.prem(&q, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                q = Poly::one(a.arity);
                break;
            }
            p = q;
            q = r.primitive_part_in(v);
        }
        (&c * &q.primitive_part_in(v)).normalized()
    }

    /// Square-free part (normalized).
    pub fn square_free(&self) -> Poly {
        if self.is_constant() {
            return if self.is_zero() {
                self.clone()
            } else {
                Poly::one(self.arity)
            };
        }
        let mut g = self.clone();
        for i in self.vars() {
            g = Poly::gcd(&g, &self.derivative(i).expect("index in range"));
            if g.is_constant() {
                return self.normalized();
            }
        }
        self.div_exact(&g).expect("gcd divides").normalized()
    }

    /// Text form using the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut s = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (j, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(names[j].clone()),
                    _ => factors.push(format!("{}^{}", names[j], p)),
                }
            }
            if factors.is_empty() {
                s.push_str(&fmt_rat(&mag));
            } else {
                if !mag.is_one() {
                    s.push_str(&fmt_rat(&mag));
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        debug_assert_eq!(self.arity, o.arity);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        debug_assert_eq!(self.arity, o.arity);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        debug_assert_eq!(self.arity, o.arity);
        let mut p = Poly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.arity)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;
    use crate::poly::rat::rat;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn eval_examples() {
        let c = p("x^2 + y^2 - 1", 2);
        assert_eq!(c.eval(&[rat(1, 1), rat(0, 1)]).unwrap(), rat(0, 1));
        assert_eq!(Poly::zero(1).eval(&[rat(3, 2)]).unwrap(), rat(0, 1));
        assert_eq!(p("2*x - 3", 1).eval(&[rat(3, 2)]).unwrap(), rat(0, 1));
        assert!(matches!(c.eval(&[rat(1, 1)]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2 + y^2 - 1", 2).derivative(0).unwrap(), p("2*x", 2));
        assert_eq!(Poly::from_int(1, 5).derivative(0).unwrap(), Poly::zero(1));
        assert_eq!(p("x*y", 2).derivative(1).unwrap(), p("x", 2));
        assert!(p("x", 1).derivative(1).is_err());
    }

    #[test]
    fn gcd_and_division() {
        let a = p("(x - y)*(x + y + 1)", 2);
        let b = p("(x - y)*(x - 2)", 2);
        assert_eq!(Poly::gcd(&a, &b), p("x - y", 2));
        let q = a.div_exact(&p("x + y + 1", 2)).unwrap();
        assert_eq!(q, p("x - y", 2));
        assert!(a.div_exact(&p("x + 3", 2)).is_none());
        let sq = p("(x*y - 1)^2*(x + 1)", 2).square_free();
        assert_eq!(sq, p("(x*y - 1)*(x + 1)", 2).normalized());
        let c = p("2*x^2*y + 4*x*y", 2);
        assert_eq!(c.content_in(1), p("x^2 + 2*x", 2).normalized());
    }

    #[test]
    fn display_order() {
        assert_eq!(p("-1 + y^2 + x^2", 2).to_string(), "x^2 + y^2 - 1");
        assert_eq!(p("1/2*x*y - 3", 2).to_string(), "1/2*x*y - 3");
    }
}
