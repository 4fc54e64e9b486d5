use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{FiberRoot, KPoly, NumberField};
use super::interval::{horner_rat, Interval};
use super::mpoly::Poly;
use super::rat::{sign_of, simplest_in_closed, simplest_in_open, to_decimal, to_f64, Rat};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// A real algebraic number: either an exact rational or the unique root of a
/// square-free polynomial inside an open isolating interval whose endpoints
/// have opposite signs.
#[derive(Clone, Debug)]
pub enum AlgReal {
    Exact(Rat),
    Root { poly: UPoly, lo: Rat, hi: Rat },
}

/// Rational roots are detected only when the leading coefficient of the
/// integer form has at most this many bits.
const RATIONAL_TEST_BITS: u64 = 512;

impl AlgReal {
    pub fn from_rat(r: Rat) -> Self {
        AlgReal::Exact(r)
    }

    pub fn from_int(v: i64) -> Self {
        AlgReal::Exact(Rat::from_integer(BigInt::from(v)))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgReal::Exact(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            AlgReal::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// Square-free defining polynomial (`x - r` for a rational).
    pub fn defining_poly(&self) -> UPoly {
        match self {
            AlgReal::Exact(r) => UPoly::linear_root(r),
            AlgReal::Root { poly, .. } => poly.clone(),
        }
    }

    /// Isolating interval (degenerate for a rational).
    pub fn interval(&self) -> Interval {
        match self {
            AlgReal::Exact(r) => Interval::point(r.clone()),
            AlgReal::Root { lo, hi, .. } => Interval::new(lo.clone(), hi.clone()),
        }
    }

    pub fn lower(&self) -> &Rat {
        match self {
            AlgReal::Exact(r) => r,
            AlgReal::Root { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rat {
        match self {
            AlgReal::Exact(r) => r,
            AlgReal::Root { hi, .. } => hi,
        }
    }

    /// One bisection step (may turn into an exact rational).
    pub fn bisect(&self) -> AlgReal {
        match self {
            AlgReal::Exact(_) => self.clone(),
            AlgReal::Root { poly, lo, hi } => {
                let mid = (lo + hi) / Rat::from_integer(BigInt::from(2));
                let s = poly.sign_at(&mid);
                if s == 0 {
                    AlgReal::Exact(mid)
                } else if s == poly.sign_at(lo) {
                    AlgReal::Root {
                        poly: poly.clone(),
                        lo: mid,
                        hi: hi.clone(),
                    }
                } else {
                    AlgReal::Root {
                        poly: poly.clone(),
                        lo: lo.clone(),
                        hi: mid,
                    }
                }
            }
        }
    }

    /// Refines until the isolating interval is no wider than `width`.
    pub fn refined(&self, width: &Rat) -> AlgReal {
        let mut a = self.clone();
        while let AlgReal::Root { lo, hi, .. } = &a {
            if &(hi - lo) <= width {
                break;
            }
            a = a.bisect();
        }
        a
    }

    /// Rational approximation within `width`.
    pub fn approx(&self, width: &Rat) -> Rat {
        match self.refined(width) {
            AlgReal::Exact(r) => r,
            AlgReal::Root { lo, hi, .. } => (lo + hi) / Rat::from_integer(BigInt::from(2)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.approx(&Rat::new(BigInt::one(), BigInt::one() << 60)))
    }

    /// Decimal approximation with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let w = Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits + 2));
        to_decimal(&self.approx(&w), digits)
    }

    pub fn neg(&self) -> AlgReal {
        match self {
            AlgReal::Exact(r) => AlgReal::Exact(-r),
            AlgReal::Root { poly, lo, hi } => {
                let p = poly.compose(&UPoly::from_ints(&[0, -1])).normalized();
                AlgReal::Root {
                    poly: p,
                    lo: -hi,
                    hi: -lo,
                }
            }
        }
    }

    /// Sign of a univariate polynomial at this number (exact).
    pub fn sign_of(&self, p: &UPoly) -> i8 {
        upoly_sign_at(p, self)
    }

    /// Exact comparison.
    pub fn compare(&self, other: &AlgReal) -> Ordering {
        match (self, other) {
            (AlgReal::Exact(a), AlgReal::Exact(b)) => a.cmp(b),
            (AlgReal::Exact(r), b @ AlgReal::Root { .. }) => cmp_rat_root(r, b),
            (a @ AlgReal::Root { .. }, AlgReal::Exact(r)) => cmp_rat_root(r, a).reverse(),
            (a, b) => cmp_roots(a, b),
        }
    }

    /// Text form: the rational itself, or `root(poly, lo, hi)`.
    pub fn describe(&self) -> String {
        match self {
            AlgReal::Exact(r) => super::rat::fmt_rat(r),
            AlgReal::Root { poly, lo, hi } => format!(
                "root({}, {}, {})",
                poly,
                super::rat::fmt_rat(lo),
                super::rat::fmt_rat(hi)
            ),
        }
    }
}

impl PartialEq for AlgReal {
    fn eq(&self, o: &Self) -> bool {
        self.compare(o) == Ordering::Equal
    }
}

impl Eq for AlgReal {}

impl PartialOrd for AlgReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.compare(o))
    }
}

impl Ord for AlgReal {
    fn cmp(&self, o: &Self) -> Ordering {
        self.compare(o)
    }
}

impl fmt::Display for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgReal::Exact(r) => write!(f, "{}", super::rat::fmt_rat(r)),
            AlgReal::Root { .. } => write!(f, "~{}", self.to_decimal(8)),
        }
    }
}

fn cmp_rat_root(r: &Rat, b: &AlgReal) -> Ordering {
    let AlgReal::Root { poly, lo, hi } = b else {
        unreachable!()
    };
    if r <= lo {
        return Ordering::Less;
    }
    if r >= hi {
        return Ordering::Greater;
    }
    let s = poly.sign_at(r);
    if s == 0 {
        Ordering::Equal
    } else if s == poly.sign_at(lo) {
        // the root lies in (r, hi)
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn cmp_roots(a: &AlgReal, b: &AlgReal) -> Ordering {
    let (AlgReal::Root { poly: pa, .. }, AlgReal::Root { poly: pb, .. }) = (a, b) else {
        unreachable!()
    };
    let disjoint = |a: &AlgReal, b: &AlgReal| -> Option<Ordering> {
        if a.upper() <= b.lower() {
            Some(Ordering::Less)
        } else if b.upper() <= a.lower() {
            Some(Ordering::Greater)
        } else {
            None
        }
    };
    if let Some(o) = disjoint(a, b) {
        return o;
    }
    if pa == pb {
        // same polynomial, overlapping isolating intervals of a square-free
        // polynomial: decide by refining both until disjoint or until the
        // intersection contains the only root of either interval
        let lo = a.lower().max(b.lower()).clone();
        let hi = a.upper().min(b.upper()).clone();
        let seq = pa.sturm_sequence();
        if UPoly::sturm_count(&seq, &lo, &hi) > 0 && pa.sign_at(&hi) != 0 {
            return Ordering::Equal;
        }
    } else {
        let g = UPoly::gcd(pa, pb);
        if g.deg() >= 1 {
            let lo = a.lower().max(b.lower()).clone();
            let hi = a.upper().min(b.upper()).clone();
            let seq = g.sturm_sequence();
            if UPoly::sturm_count(&seq, &lo, &hi) > 0 {
                return Ordering::Equal;
            }
        }
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        a = a.bisect();
        b = b.bisect();
        match (&a, &b) {
            (AlgReal::Exact(_), _) | (_, AlgReal::Exact(_)) => return a.compare(&b),
            _ => {}
        }
        if let Some(o) = disjoint(&a, &b) {
            return o;
        }
    }
}

/// Exact sign of `p` at the algebraic number `a`.
pub(crate) fn upoly_sign_at(p: &UPoly, a: &AlgReal) -> i8 {
    match a {
        AlgReal::Exact(r) => p.sign_at(r),
        AlgReal::Root { poly, lo, hi } => {
            if p.is_constant() {
                return sign_of(&p.coeff(0));
            }
            let iv = Interval::new(lo.clone(), hi.clone());
            if let Some(s) = horner_rat(p.coeffs(), &iv).sign() {
                return s;
            }
            let p = p.rem(poly);
            if p.is_constant() {
                return sign_of(&p.coeff(0));
            }
            let g = UPoly::gcd(&p, poly);
            if g.deg() >= 1 {
                // g divides the square-free defining polynomial, so its only
                // possible root in the interval is `a` itself, and it is simple
                let sl = g.sign_at(lo);
                let sh = g.sign_at(hi);
                if sl != 0 && sh != 0 && sl != sh {
                    return 0;
                }
            }
            let mut a = a.clone();
            loop {
                a = a.bisect();
                match &a {
                    AlgReal::Exact(r) => return p.sign_at(r),
                    AlgReal::Root { lo, hi, .. } => {
                        let iv = Interval::new(lo.clone(), hi.clone());
                        if let Some(s) = horner_rat(p.coeffs(), &iv).sign() {
                            return s;
                        }
                    }
                }
            }
        }
    }
}

/// Real roots of `p` in increasing order, one per distinct root.
pub fn isolate_roots(p: &UPoly) -> Result<Vec<AlgReal>> {
    if p.is_zero() {
        return Err(Error::Degenerate("root isolation of the zero polynomial".into()));
    }
    let sf = p.square_free().normalized();
    if sf.deg() == 0 {
        return Ok(vec![]);
    }
    if sf.deg() == 1 {
        let r = -sf.coeff(0) / sf.coeff(1);
        return Ok(vec![AlgReal::Exact(r)]);
    }
    let seq = sf.sturm_sequence();
    let bound = sf.root_bound();
    let mut b = Rat::one();
    while b < bound {
        b *= Rat::from_integer(BigInt::from(2));
    }
    let mut out = Vec::new();
    isolate_rec(&sf, &seq, -b.clone(), b, &mut out);
    let ints = sf.primitive_integer();
    let lc = ints.last().cloned().unwrap_or_else(BigInt::one);
    let out = out
        .into_iter()
        .map(|a| extract_rational(a.refined(&Rat::one()), &lc))
        .collect();
    Ok(out)
}

fn isolate_rec(p: &UPoly, seq: &[UPoly], lo: Rat, hi: Rat, out: &mut Vec<AlgReal>) {
    let count = UPoly::sturm_count(seq, &lo, &hi);
    if count == 0 {
        return;
    }
    if count == 1 {
        if p.sign_at(&hi) == 0 {
            out.push(AlgReal::Exact(hi));
            return;
        }
        if p.sign_at(&lo) != 0 {
            out.push(AlgReal::Root {
                poly: p.clone(),
                lo,
                hi,
            });
            return;
        }
    }
    let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
    isolate_rec(p, seq, lo, mid.clone(), out);
    isolate_rec(p, seq, mid, hi, out);
}

/// A rational root `u/v` of an integer polynomial with leading coefficient
/// `L` has `v | L`; two such rationals differ by at least `1/L^2`, so after
/// refining below that width the simplest rational in the interval is the
/// only candidate.
fn extract_rational(a: AlgReal, lc: &BigInt) -> AlgReal {
    if lc.bits() > RATIONAL_TEST_BITS {
        return a;
    }
    let l2 = Rat::from_integer(lc * lc);
    let w = l2.recip();
    let a = match a {
        AlgReal::Root { .. } => a.refined(&w),
        e => return e,
    };
    match &a {
        AlgReal::Root { poly, lo, hi } => {
            if hi - lo >= w {
                return a;
            }
            let c = simplest_in_closed(lo, hi);
            if poly.sign_at(&c) == 0 {
                AlgReal::Exact(c)
            } else {
                a
            }
        }
        AlgReal::Exact(_) => a,
    }
}

/// Simplest rational strictly between `a` and `b` (either may be infinite);
/// requires `a < b`.
pub fn rational_between(a: Option<&AlgReal>, b: Option<&AlgReal>) -> Rat {
    match (a, b) {
        (None, None) => Rat::zero(),
        (Some(a), None) => {
            let up = match a {
                AlgReal::Exact(r) => r.clone(),
                AlgReal::Root { hi, .. } => hi.clone(),
            };
            simplest_in_open(&up, None)
        }
        (None, Some(b)) => {
            let low = match b {
                AlgReal::Exact(r) => r.clone(),
                AlgReal::Root { lo, .. } => lo.clone(),
            };
            -simplest_in_open(&-low, None)
        }
        (Some(a), Some(b)) => {
            let (mut a, mut b) = (a.clone(), b.clone());
            loop {
                if a.upper() < b.lower() {
                    return simplest_in_open(a.upper(), Some(b.lower()));
                }
                a = a.bisect();
                b = b.bisect();
            }
        }
    }
}

/// Exact sign of `p` at the real algebraic point `x`.
///
/// Rational coordinates are substituted directly; the algebraic ones are
/// gathered into a single number field by primitive elements, and the last
/// one is treated as a root of a polynomial over that field.
pub fn sign_at(p: &Poly, x: &[AlgReal]) -> Result<i8> {
    if x.len() != p.arity() {
        return Err(Error::Dimension {
            expected: p.arity(),
            found: x.len(),
        });
    }
    let mut q = p.clone();
    for (i, xi) in x.iter().enumerate() {
        if let AlgReal::Exact(r) = xi {
            q = q.substitute(i, r);
        }
    }
    let alg: Vec<usize> = q.vars();
    if alg.is_empty() {
        return Ok(sign_of(&q.constant_value().unwrap_or_else(Rat::zero)));
    }
    if alg.len() == 1 {
        let u = q.to_upoly(alg[0]).expect("single variable");
        return Ok(upoly_sign_at(&u, &x[alg[0]]));
    }
    let last = *alg.last().expect("nonempty");
    let mut field = NumberField::rational();
    let mut elems: Vec<UPoly> = Vec::new();
    for &i in &alg[..alg.len() - 1] {
        let root = FiberRoot::over_rationals(&x[i]);
        let (f2, gimg, b) = field.extend(&root)?;
        elems = elems.iter().map(|e| f2.compose(e, &gimg)).collect();
        elems.push(b);
        field = f2;
    }
    let mut subst: Vec<Option<UPoly>> = vec![None; p.arity()];
    for (k, &i) in alg[..alg.len() - 1].iter().enumerate() {
        subst[i] = Some(elems[k].clone());
    }
    let h = KPoly::from_poly(&field, &q, &subst, last);
    let root = FiberRoot::over_rationals(&x[last]);
    Ok(h.sign_at_root(&field, &root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat::{rat, rat_from_int};

    #[test]
    fn isolation_examples() {
        let r = isolate_roots(&UPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].lower() >= &rat_from_int(-2) && r[0].upper() <= &rat_from_int(-1));
        assert!(r[1].lower() >= &rat_from_int(1) && r[1].upper() <= &rat_from_int(2));
        assert!(isolate_roots(&UPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
        let z = isolate_roots(&UPoly::from_ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(z, vec![AlgReal::from_int(0)]);
        assert!(isolate_roots(&UPoly::zero()).is_err());
    }

    #[test]
    fn rational_roots_become_exact() {
        // (3x - 1)(x^2 - 2)
        let p = &UPoly::from_ints(&[-1, 3]) * &UPoly::from_ints(&[-2, 0, 1]);
        let r = isolate_roots(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[1].as_rat(), Some(&rat(1, 3)));
        assert!(!r[0].is_rational() && !r[2].is_rational());
    }

    #[test]
    fn comparison() {
        let s2 = isolate_roots(&UPoly::from_ints(&[-2, 0, 1])).unwrap()[1].clone();
        let s2b = isolate_roots(&UPoly::from_ints(&[0, -2, 0, 1])).unwrap()[2].clone();
        assert_eq!(s2, s2b);
        let s3 = isolate_roots(&UPoly::from_ints(&[-3, 0, 1])).unwrap()[1].clone();
        assert!(s2 < s3);
        assert!(AlgReal::from_rat(rat(141, 100)) < s2);
        assert!(AlgReal::from_rat(rat(142, 100)) > s2);
        let m = rational_between(Some(&s2), Some(&s3));
        assert!(AlgReal::from_rat(m.clone()) > s2 && AlgReal::from_rat(m) < s3);
    }

    #[test]
    fn sign_examples() {
        let s2 = isolate_roots(&UPoly::from_ints(&[-2, 0, 1])).unwrap()[1].clone();
        let circle = crate::poly::parse_poly("x^2 + y^2 - 1", 2).unwrap();
        assert_eq!(sign_at(&circle, &[s2.clone(), AlgReal::from_int(0)]).unwrap(), 1);
        let q = crate::poly::parse_poly("x^2 - 2", 1).unwrap();
        assert_eq!(sign_at(&q, &[s2.clone()]).unwrap(), 0);
        let l = crate::poly::parse_poly("x", 1).unwrap();
        assert_eq!(sign_at(&l, &[AlgReal::from_rat(rat(-1, 2))]).unwrap(), -1);
        // sqrt2 * sqrt3 - sqrt6 = 0
        let s3 = isolate_roots(&UPoly::from_ints(&[-3, 0, 1])).unwrap()[1].clone();
        let s6 = isolate_roots(&UPoly::from_ints(&[-6, 0, 1])).unwrap()[1].clone();
        let f = crate::poly::parse_poly("x*y - z", 3).unwrap();
        assert_eq!(sign_at(&f, &[s2.clone(), s3.clone(), s6.clone()]).unwrap(), 0);
        let g = crate::poly::parse_poly("x*y - z + 1/1000000", 3).unwrap();
        assert_eq!(sign_at(&g, &[s2, s3, s6]).unwrap(), 1);
    }
}
