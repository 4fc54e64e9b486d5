use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{complexity_of, Rel, SaDescription, SignCond};
use crate::error::{Error, Result};
use crate::poly::rat::fmt_rat;
use crate::poly::{parse_rat, Monomial, Poly, Rat};

/// Largest `p` accepted by [`encode`] and [`decode`]: the selector has
/// `3^p` bits.
pub const MAX_ENCODE_ATOMS: usize = 10;

/// A point of the parameter space: `p` coefficient blocks of length
/// `N(n, q)` and a selector over subsets of `{-1, 0, 1}^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoint {
    pub n: usize,
    pub p: usize,
    pub q: u32,
    pub blocks: Vec<Vec<Rat>>,
    pub selector: BigUint,
}

/// `binomial(n + q, q)`.
pub fn monomial_count(n: usize, q: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=q as usize {
        acc = acc * BigUint::from(n + i) / BigUint::from(i);
    }
    acc
}

/// Exponent vectors of total degree at most `q` in ascending lexicographic
/// order (first variable most significant).
pub fn monomials(n: usize, q: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, q, &mut Vec::new(), &mut out);
    out
}

fn tuple_index(t: &[i8]) -> usize {
    t.iter().fold(0, |acc, &s| acc * 3 + (s + 1) as usize)
}

pub(crate) fn tuple_of(mut k: usize, p: usize) -> Vec<i8> {
    let mut t = vec![0i8; p];
    for i in (0..p).rev() {
        t[i] = (k % 3) as i8 - 1;
        k /= 3;
    }
    t
}

/// Encodes `d` at complexity `(p, q)`.
pub fn encode(d: &SaDescription, p: usize, q: u32) -> Result<ParamPoint> {
    let c = complexity_of(d);
    if c.p > p || c.q > q {
        return Err(Error::Capacity(format!(
            "description has complexity ({}, {}) which exceeds ({p}, {q})",
            c.p, c.q
        )));
    }
    if p > MAX_ENCODE_ATOMS {
        return Err(Error::Capacity(format!(
            "p = {p} exceeds the encoding limit {MAX_ENCODE_ATOMS}"
        )));
    }
    let mut polys = d.polys();
    while polys.len() < p {
        polys.push(Poly::zero(d.ambient));
    }
    let mons = monomials(d.ambient, q);
    let blocks: Vec<Vec<Rat>> = polys
        .iter()
        .map(|f| mons.iter().map(|m| f.coeff(m)).collect())
        .collect();
    let npoly = d.polys().len();
    let mut selector = BigUint::zero();
    for conj in &d.conjuncts {
        // allowed signs per block position
        let mut allowed: Vec<Vec<i8>> = vec![vec![-1, 0, 1]; p];
        let mut consistent = true;
        for a in conj {
            let i = polys[..npoly]
                .iter()
                .position(|f| f == &a.poly)
                .expect("atom polynomial listed");
            let s = a.rel.sign();
            if allowed[i].contains(&s) {
                allowed[i] = vec![s];
            } else {
                consistent = false;
            }
        }
        if !consistent {
            continue;
        }
        let mut cur = Vec::with_capacity(p);
        expand(&allowed, &mut cur, &mut |t| {
            selector.set_bit(tuple_index(t) as u64, true);
        });
    }
    Ok(ParamPoint {
        n: d.ambient,
        p,
        q,
        blocks,
        selector,
    })
}

fn expand(allowed: &[Vec<i8>], cur: &mut Vec<i8>, f: &mut impl FnMut(&[i8])) {
    if cur.len() == allowed.len() {
        f(cur);
        return;
    }
    for &s in &allowed[cur.len()] {
        cur.push(s);
        expand(allowed, cur, f);
        cur.pop();
    }
}

/// One conjunct per sign tuple selected by `a.selector`.
pub fn decode(a: &ParamPoint) -> Result<SaDescription> {
    if a.p > MAX_ENCODE_ATOMS {
        return Err(Error::Capacity(format!(
            "p = {} exceeds the encoding limit {MAX_ENCODE_ATOMS}",
            a.p
        )));
    }
    let tuples = 3usize.pow(a.p as u32);
    if a.selector.bits() > tuples as u64 {
        return Err(Error::Invalid(format!(
            "selector out of range: must be below 2^{tuples}"
        )));
    }
    if a.blocks.len() != a.p {
        return Err(Error::Dimension {
            expected: a.p,
            found: a.blocks.len(),
        });
    }
    let mons = monomials(a.n, a.q);
    let polys: Vec<Poly> = a
        .blocks
        .iter()
        .map(|b| {
            if b.len() != mons.len() {
                return Err(Error::Dimension {
                    expected: mons.len(),
                    found: b.len(),
                });
            }
            Poly::from_terms(a.n, mons.iter().cloned().zip(b.iter().cloned()))
        })
        .collect::<Result<_>>()?;
    let mut conjuncts = Vec::new();
    for k in 0..tuples {
        if a.selector.bit(k as u64) {
            let t = tuple_of(k, a.p);
            conjuncts.push(
                polys
                    .iter()
                    .zip(&t)
                    .map(|(f, &s)| SignCond::new(f.clone(), Rel::from_sign(s)))
                    .collect(),
            );
        }
    }
    if a.p == 0 {
        // the single empty tuple selects all of R^n
        if a.selector.bit(0) {
            return Ok(SaDescription::everything("S", a.n));
        }
        return Ok(SaDescription::empty("S", a.n));
    }
    SaDescription::new("S", a.n, conjuncts)
}

impl ParamPoint {
    /// Parses `param n p q l` followed by `p` lines of coefficients.
    pub fn parse(text: &str) -> Result<ParamPoint> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::syntax(1, 1, "empty parameter file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 5 || h[0] != "param" {
            return Err(Error::syntax(ln, 1, "expected `param n p q l`"));
        }
        let num = |s: &str, col: usize| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::syntax(ln, col, format!("expected a natural number, found `{s}`")))
        };
        let n = num(h[1], 2)?;
        let p = num(h[2], 3)?;
        let q = num(h[3], 4)? as u32;
        let selector: BigUint = h[4]
            .parse()
            .map_err(|_| Error::syntax(ln, 5, format!("bad selector `{}`", h[4])))?;
        let mut blocks = Vec::new();
        for (ln, l) in lines {
            let row: Vec<Rat> = l
                .split_whitespace()
                .enumerate()
                .map(|(i, t)| parse_rat(t).ok_or_else(|| Error::syntax(ln, i + 1, format!("bad rational `{t}`"))))
                .collect::<Result<_>>()?;
            blocks.push(row);
        }
        let a = ParamPoint {
            n,
            p,
            q,
            blocks,
            selector,
        };
        decode(&a)?;
        Ok(a)
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "param {} {} {} {}", self.n, self.p, self.q, self.selector)?;
        for b in &self.blocks {
            let row: Vec<String> = b.iter().map(fmt_rat).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::sa::parse_description;

    #[test]
    fn counts_and_order() {
        assert_eq!(monomial_count(2, 2), BigUint::from(6u32));
        assert_eq!(monomial_count(1, 3), BigUint::from(4u32));
        assert_eq!(monomial_count(3, 0), BigUint::from(1u32));
        assert_eq!(
            monomials(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![2, 0]]
        );
    }

    #[test]
    fn circle_encoding() {
        let c = parse_description("set S in R^2 := { x^2 + y^2 - 1 = 0 }").unwrap();
        let a = encode(&c, 1, 2).unwrap();
        let expect: Vec<Rat> = [-1, 0, 1, 0, 0, 1].iter().map(|&v| rat(v, 1)).collect();
        assert_eq!(a.blocks, vec![expect]);
        assert_eq!(a.selector, BigUint::from(2u32));
        let d = decode(&a).unwrap();
        for i in -5..=5 {
            for j in -5..=5 {
                let x = [rat(i, 5), rat(j, 5)];
                assert_eq!(d.member(&x).unwrap(), c.member(&x).unwrap());
            }
        }
        let text = a.to_string();
        assert_eq!(ParamPoint::parse(&text).unwrap(), a);
    }

    #[test]
    fn selector_examples() {
        let e = SaDescription::empty("E", 1);
        assert_eq!(encode(&e, 1, 1).unwrap().selector, BigUint::zero());
        let pos = parse_description("set P in R^1 := { x > 0 }").unwrap();
        assert_eq!(encode(&pos, 1, 1).unwrap().selector, BigUint::from(4u32));
        let mut all = encode(&pos, 2, 1).unwrap();
        all.selector = (BigUint::one() << 9u32) - BigUint::one();
        let d = decode(&all).unwrap();
        assert_eq!(d.conjuncts.len(), 9);
        assert!(d.member(&[rat(-3, 1)]).unwrap());
        all.selector = BigUint::one() << 9u32;
        assert!(decode(&all).is_err());
        let c = parse_description("set S in R^2 := { x^2 + y^2 - 1 = 0 }").unwrap();
        assert!(matches!(encode(&c, 1, 1), Err(Error::Capacity(_))));
    }
}
