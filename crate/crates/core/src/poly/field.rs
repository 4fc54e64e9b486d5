use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::algreal::{isolate_roots, upoly_sign_at, AlgReal};
use super::interval::{horner, horner_rat, Interval};
use super::mpoly::Poly;
use super::rat::{sign_of, Rat};
use super::resultant::{resultant, subresultant_coeffs};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// The real field `Q(g)` generated by one real algebraic number `g`.
///
/// Elements are univariate polynomials in the generator. The modulus is the
/// square-free defining polynomial of `g`, not necessarily irreducible, so
/// zero tests go through a gcd with the modulus and a sign-change check on
/// the isolating interval of `g`.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: UPoly,
    gen: AlgReal,
}

impl NumberField {
    /// The rationals, presented as `Q(0)`.
    pub fn rational() -> Self {
        NumberField {
            modulus: UPoly::x(),
            gen: AlgReal::from_int(0),
        }
    }

    pub fn from_alg(a: &AlgReal) -> Self {
        match a {
            AlgReal::Exact(r) => NumberField {
                modulus: UPoly::linear_root(r),
                gen: a.clone(),
            },
            AlgReal::Root { poly, .. } => {
                let w = Rat::new(BigInt::one(), BigInt::one() << 30);
                NumberField {
                    modulus: poly.clone(),
                    gen: a.refined(&w),
                }
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.gen.is_rational()
    }

    pub fn generator(&self) -> &AlgReal {
        &self.gen
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn reduce(&self, e: &UPoly) -> UPoly {
        match &self.gen {
            AlgReal::Exact(r) => UPoly::constant(e.eval(r)),
            _ => {
                if e.deg() < self.modulus.deg() {
                    e.clone()
                } else {
                    e.rem(&self.modulus)
                }
            }
        }
    }

    pub fn constant(&self, c: Rat) -> UPoly {
        UPoly::constant(c)
    }

    /// The generator as an element.
    pub fn gen_elem(&self) -> UPoly {
        self.reduce(&UPoly::x())
    }

    pub fn add(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a + b
    }

    pub fn sub(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a - b
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.reduce(&(a * b))
    }

    pub fn sign(&self, e: &UPoly) -> i8 {
        if e.is_constant() {
            return sign_of(&e.coeff(0));
        }
        upoly_sign_at(&self.reduce(e), &self.gen)
    }

    pub fn is_zero(&self, e: &UPoly) -> bool {
        self.sign(e) == 0
    }

    pub fn inverse(&self, e: &UPoly) -> Result<UPoly> {
        let e = self.reduce(e);
        if e.is_constant() {
            let c = e.coeff(0);
            if c.is_zero() {
                return Err(Error::Degenerate("inverse of zero".into()));
            }
            return Ok(UPoly::constant(c.recip()));
        }
        if self.sign(&e) == 0 {
            return Err(Error::Degenerate("inverse of zero".into()));
        }
        let g = UPoly::gcd(&e, &self.modulus);
        let m = self.modulus.div_exact(&g);
        let (one, s, _) = UPoly::ext_gcd(&e, &m);
        debug_assert!(one.deg() == 0);
        Ok(self.reduce(&s))
    }

    /// Evaluates `e` (a polynomial in some other generator) at the element `img`.
    pub fn compose(&self, e: &UPoly, img: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in e.coeffs().iter().rev() {
            acc = &self.mul(&acc, img) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Interval enclosure of `e` given an enclosure of the generator.
    pub(crate) fn enclose(e: &UPoly, gen: &Interval) -> Interval {
        horner_rat(e.coeffs(), gen)
    }

    /// Divides out the factors of the modulus shared by every coefficient of
    /// `g` (none of which vanishes at the generator when `g` is nonzero).
    fn modulus_for(&self, g: &KPoly) -> UPoly {
        let mut c = self.modulus.clone();
        for e in &g.coeffs {
            c = UPoly::gcd(&c, e);
            if c.deg() == 0 {
                break;
            }
        }
        if c.deg() == 0 {
            self.modulus.clone()
        } else {
            self.modulus.div_exact(&c)
        }
    }

    /// Primitive element for `K(b)` where `b` is a real root of a polynomial
    /// over this field `K`. Returns the new field, the image of the old
    /// generator and the image of `b`, both as elements of the new field.
    pub fn extend(&self, root: &FiberRoot) -> Result<(NumberField, UPoly, UPoly)> {
        if let AlgReal::Exact(r) = &root.value {
            return Ok((self.clone(), self.gen_elem(), UPoly::constant(r.clone())));
        }
        if let AlgReal::Exact(r) = &self.gen {
            let f = NumberField::from_alg(&root.value);
            let b = f.gen_elem();
            return Ok((f, UPoly::constant(r.clone()), b));
        }
        let m = self.modulus_for(&root.poly);
        if m.deg() <= 1 {
            let r = -m.coeff(0) / m.coeff(1);
            let f = NumberField::from_alg(&root.value);
            let b = f.gen_elem();
            return Ok((f, UPoly::constant(r), b));
        }
        let mt = Poly::from_upoly(2, 0, &m);
        let g = root.poly.lift();
        for step in 1..=64i64 {
            let k = if step % 2 == 1 { (step + 1) / 2 } else { -(step / 2) };
            let kr = Rat::from_integer(BigInt::from(k));
            // H(t, z) = G(t, z - k t) reduced modulo m(t)
            let shift = &Poly::var(2, 1) - &Poly::var(2, 0).scale(&kr);
            let h = g.substitute_poly(1, &shift).prem(&mt, 0);
            if h.degree_in(0) == 0 {
                continue;
            }
            let r = resultant(&mt, &h, 0)?;
            let Some(ru) = r.to_upoly(1) else {
                continue;
            };
            if ru.is_zero() {
                continue;
            }
            let r_sf = ru.square_free().normalized();
            let delta = self.locate_sum(&root.value, &kr, &r_sf)?;
            let f = NumberField::from_alg(&delta);
            let s = subresultant_coeffs(&mt, &h, 0, 1);
            let s10 = s[0].to_upoly(1).expect("univariate in z");
            let s11 = s[1].to_upoly(1).expect("univariate in z");
            if f.sign(&s11) == 0 {
                continue;
            }
            let inv = f.inverse(&s11)?;
            let gimg = f.reduce(&-&f.mul(&s10, &inv));
            let b = f.reduce(&(&f.gen_elem() - &gimg.scale(&kr)));
            return Ok((f, gimg, b));
        }
        Err(Error::Degenerate("no primitive element found".into()))
    }

    /// The root of `r` equal to `b + k g`.
    fn locate_sum(&self, b: &AlgReal, k: &Rat, r: &UPoly) -> Result<AlgReal> {
        let mut cands = isolate_roots(r)?;
        let mut b = b.clone();
        let mut g = self.gen.clone();
        loop {
            let gi = g.interval().scale(k);
            let lo = b.lower() + &gi.lo;
            let hi = b.upper() + &gi.hi;
            let hits: Vec<usize> = (0..cands.len())
                .filter(|&i| cands[i].upper() >= &lo && cands[i].lower() <= &hi)
                .collect();
            if hits.len() == 1 {
                return Ok(cands.swap_remove(hits[0]));
            }
            if hits.is_empty() {
                return Err(Error::Degenerate("primitive element lost its root".into()));
            }
            for i in hits {
                cands[i] = cands[i].bisect();
            }
            b = b.bisect();
            g = g.bisect();
        }
    }
}

/// Univariate polynomial in `y` whose coefficients lie in a [`NumberField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly {
    coeffs: Vec<UPoly>,
}

/// A real root of a polynomial over a number field `K`. `value` is the same
/// real number as an algebraic number over the rationals.
#[derive(Clone, Debug)]
pub struct FiberRoot {
    pub value: AlgReal,
    pub poly: KPoly,
}

impl FiberRoot {
    /// View an algebraic number as a root of its own rational polynomial.
    pub fn over_rationals(a: &AlgReal) -> Self {
        FiberRoot {
            value: a.clone(),
            poly: KPoly::from_rational(&a.defining_poly()),
        }
    }
}

impl KPoly {
    pub fn from_coeffs(coeffs: Vec<UPoly>) -> Self {
        KPoly { coeffs }
    }

    pub fn from_rational(u: &UPoly) -> Self {
        KPoly {
            coeffs: u.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect(),
        }
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    /// Substitutes field elements for the variables marked in `subst` and
    /// views the result as a polynomial in `x_var`. Unmarked variables other
    /// than `x_var` must not occur in `q`.
    pub fn from_poly(field: &NumberField, q: &Poly, subst: &[Option<UPoly>], var: usize) -> Self {
        let d = q.degree_in(var) as usize;
        let mut coeffs = vec![UPoly::zero(); if q.is_zero() { 0 } else { d + 1 }];
        let mut powers: Vec<Vec<UPoly>> = vec![vec![]; q.arity()];
        for (e, c) in q.terms() {
            let mut t = UPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 || i == var {
                    continue;
                }
                let s = subst[i].as_ref().expect("variable has a substitution");
                let pw = &mut powers[i];
                if pw.is_empty() {
                    pw.push(UPoly::one());
                }
                while pw.len() <= k as usize {
                    let next = field.mul(pw.last().expect("nonempty"), s);
                    pw.push(next);
                }
                t = field.mul(&t, &pw[k as usize]);
            }
            let slot = &mut coeffs[e[var] as usize];
            *slot = &*slot + &t;
        }
        KPoly::from_coeffs(coeffs).trimmed(field)
    }

    /// Drops leading coefficients that vanish in the field.
    pub fn trimmed(mut self, field: &NumberField) -> Self {
        for c in self.coeffs.iter_mut() {
            *c = field.reduce(c);
        }
        while let Some(c) = self.coeffs.last() {
            if field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree after trimming (0 for constants and zero).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> KPoly {
        KPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rat::from_integer(BigInt::from(i))))
                .collect(),
        }
    }

    pub fn eval_rat(&self, field: &NumberField, y: &Rat) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(y) + c;
        }
        field.reduce(&acc)
    }

    pub fn sign_at_rat(&self, field: &NumberField, y: &Rat) -> i8 {
        field.sign(&self.eval_rat(field, y))
    }

    fn monic(&self, field: &NumberField) -> Result<KPoly> {
        let inv = field.inverse(self.coeffs.last().expect("nonzero"))?;
        Ok(KPoly {
            coeffs: self.coeffs.iter().map(|c| field.mul(c, &inv)).collect(),
        })
    }

    /// Remainder of `self` by a trimmed nonzero `d`.
    fn rem(&self, d: &KPoly, field: &NumberField) -> Result<KPoly> {
        let (_, r) = self.div_rem(d, field)?;
        Ok(r)
    }

    pub fn div_rem(&self, d: &KPoly, field: &NumberField) -> Result<(KPoly, KPoly)> {
        let d = d.clone().trimmed(field);
        if d.is_zero() {
            return Err(Error::Degenerate("division by zero polynomial".into()));
        }
        let inv = field.inverse(d.coeffs.last().expect("nonzero"))?;
        let mut r = self.clone().trimmed(field);
        let dd = d.degree();
        if r.coeffs.len() <= dd {
            return Ok((KPoly { coeffs: vec![] }, r));
        }
        let mut q = vec![UPoly::zero(); r.coeffs.len() - dd];
        for i in (0..q.len()).rev() {
            let c = field.mul(&r.coeffs[i + dd], &inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r.coeffs[i + j] = &r.coeffs[i + j] - &field.mul(&c, dc);
            }
            q[i] = c;
        }
        r.coeffs.truncate(dd);
        Ok((KPoly { coeffs: q }.trimmed(field), r.trimmed(field)))
    }

    /// Monic gcd over the field.
    pub fn gcd(a: &KPoly, b: &KPoly, field: &NumberField) -> Result<KPoly> {
        let mut a = a.clone().trimmed(field);
        let mut b = b.clone().trimmed(field);
        while !b.is_zero() {
            let r = a.rem(&b, field)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        a.monic(field)
    }

    /// Monic square-free part over the field.
    pub fn square_free(&self, field: &NumberField) -> Result<KPoly> {
        let a = self.clone().trimmed(field);
        if a.degree() == 0 {
            return Ok(a);
        }
        let g = KPoly::gcd(&a, &a.derivative(), field)?;
        let (q, _) = a.div_rem(&g, field)?;
        q.monic(field)
    }

    /// The polynomial `G(t, y)` in `Q[t, y]` with `G(gen, y) = self`.
    pub fn lift(&self) -> Poly {
        let mut g = Poly::zero(2);
        for (k, c) in self.coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    g = &g + &Poly::monomial(vec![j as u32, k as u32], a.clone());
                }
            }
        }
        g
    }

    fn to_rational(&self, field: &NumberField) -> UPoly {
        let r = field.generator().as_rat().expect("rational field").clone();
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c.eval(&r)).collect())
    }

    /// Real roots in increasing order.
    pub fn real_roots(&self, field: &NumberField) -> Result<Vec<FiberRoot>> {
        let g = self.clone().trimmed(field);
        if g.degree() == 0 {
            return Ok(vec![]);
        }
        if field.is_rational() {
            let u = g.to_rational(field);
            let sf = u.square_free();
            return Ok(isolate_roots(&sf)?
                .into_iter()
                .map(|value| FiberRoot {
                    value,
                    poly: KPoly::from_rational(&sf),
                })
                .collect());
        }
        let g = g.square_free(field)?;
        let m = field.modulus_for(&g);
        if m.deg() <= 1 {
            let r = -m.coeff(0) / m.coeff(1);
            let f = NumberField::from_alg(&AlgReal::Exact(r));
            let u = g.to_rational(&f);
            let sf = u.square_free();
            return Ok(isolate_roots(&sf)?
                .into_iter()
                .map(|value| FiberRoot {
                    value,
                    poly: KPoly::from_rational(&sf),
                })
                .collect());
        }
        let norm = resultant(&Poly::from_upoly(2, 0, &m), &g.lift(), 0)?
            .to_upoly(1)
            .expect("norm is univariate");
        if norm.is_zero() {
            return Err(Error::Degenerate("vanishing norm".into()));
        }
        let mut out = Vec::new();
        for rho in isolate_roots(&norm)? {
            let hit = match &rho {
                AlgReal::Exact(r) => g.sign_at_rat(field, r) == 0,
                AlgReal::Root { lo, hi, .. } => {
                    // the interval holds one root of the norm and no other
                    // root of g; g is square-free so a root is a sign change
                    let sl = g.sign_at_rat(field, lo);
                    let sh = g.sign_at_rat(field, hi);
                    sl * sh < 0
                }
            };
            if hit {
                out.push(FiberRoot {
                    value: rho,
                    poly: g.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Interval enclosure of the value at `(gen, y)`.
    fn enclose(&self, gen: &Interval, y: &Interval) -> Interval {
        let cs: Vec<Interval> = self.coeffs.iter().map(|c| NumberField::enclose(c, gen)).collect();
        horner(&cs, y)
    }

    /// Exact sign at a root of another polynomial over the same field.
    pub fn sign_at_root(&self, field: &NumberField, root: &FiberRoot) -> i8 {
        if let AlgReal::Exact(r) = &root.value {
            return self.sign_at_rat(field, r);
        }
        let h = self.clone().trimmed(field);
        if h.degree() == 0 {
            return h.coeffs.first().map(|c| field.sign(c)).unwrap_or(0);
        }
        if let Ok(d) = KPoly::gcd(&h, &root.poly, field) {
            if d.degree() >= 1 {
                let (lo, hi) = (root.value.lower(), root.value.upper());
                let sl = d.sign_at_rat(field, lo);
                let sh = d.sign_at_rat(field, hi);
                if sl * sh < 0 {
                    return 0;
                }
            }
        }
        let mut g = field.generator().clone();
        let mut y = root.value.clone();
        loop {
            if let AlgReal::Exact(r) = &y {
                return h.sign_at_rat(field, r);
            }
            if let Some(s) = h.enclose(&g.interval(), &y.interval()).sign() {
                return s;
            }
            g = g.bisect();
            y = y.bisect();
        }
    }
}
