//! Semialgebraic set descriptions, their complexity and the parameter-space
//! encoding.

mod dsl;
mod encode;

pub use dsl::{parse_description, parse_descriptions};
pub(crate) use encode::tuple_of;
pub use encode::{decode, encode, monomial_count, monomials, ParamPoint, MAX_ENCODE_ATOMS};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};

/// Relation of an atom `f rel 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    Lt,
    Eq,
    Gt,
}

impl Rel {
    pub fn holds(self, sign: i8) -> bool {
        match self {
            Rel::Lt => sign < 0,
            Rel::Eq => sign == 0,
            Rel::Gt => sign > 0,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Rel::Lt => -1,
            Rel::Eq => 0,
            Rel::Gt => 1,
        }
    }

    pub fn from_sign(s: i8) -> Rel {
        match s {
            s if s < 0 => Rel::Lt,
            0 => Rel::Eq,
            _ => Rel::Gt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Eq => "=",
            Rel::Gt => ">",
        }
    }
}

/// Atomic sign condition `poly rel 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignCond {
    pub poly: Poly,
    pub rel: Rel,
}

impl SignCond {
    pub fn new(poly: Poly, rel: Rel) -> Self {
        SignCond { poly, rel }
    }
}

/// Finite union of conjunctions of sign conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaDescription {
    pub name: String,
    pub ambient: usize,
    pub conjuncts: Vec<Vec<SignCond>>,
}

/// `(p, q)`: number of atoms and maximal degree of a given description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complexity {
    pub p: usize,
    pub q: u32,
}

impl SaDescription {
    pub fn new(name: impl Into<String>, ambient: usize, conjuncts: Vec<Vec<SignCond>>) -> Result<Self> {
        for c in conjuncts.iter().flatten() {
            if c.poly.arity() != ambient {
                return Err(Error::Dimension {
                    expected: ambient,
                    found: c.poly.arity(),
                });
            }
        }
        if conjuncts.iter().any(|c| c.is_empty()) {
            return Err(Error::Invalid("empty conjunct".into()));
        }
        Ok(SaDescription {
            name: name.into(),
            ambient,
            conjuncts,
        })
    }

    pub fn empty(name: impl Into<String>, ambient: usize) -> Self {
        SaDescription {
            name: name.into(),
            ambient,
            conjuncts: vec![],
        }
    }

    /// All of `R^n`, written as the single atom `0 = 0`.
    pub fn everything(name: impl Into<String>, ambient: usize) -> Self {
        SaDescription {
            name: name.into(),
            ambient,
            conjuncts: vec![vec![SignCond::new(Poly::zero(ambient), Rel::Eq)]],
        }
    }

    pub fn is_syntactically_empty(&self) -> bool {
        self.conjuncts.is_empty()
    }

    /// Distinct atom polynomials in order of first appearance.
    pub fn polys(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for c in self.conjuncts.iter().flatten() {
            if !out.contains(&c.poly) {
                out.push(c.poly.clone());
            }
        }
        out
    }

    pub fn member(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: x.len(),
            });
        }
        for conj in &self.conjuncts {
            let mut ok = true;
            for a in conj {
                let v = a.poly.eval(x)?;
                if !a.rel.holds(crate::poly::rat::sign_of(&v)) {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Truth of the description given the sign of every atom polynomial.
    pub fn holds_with(&self, sign_of: impl Fn(&Poly) -> i8) -> bool {
        self.conjuncts
            .iter()
            .any(|conj| conj.iter().all(|a| a.rel.holds(sign_of(&a.poly))))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Union of two descriptions over the same ambient space.
    pub fn union(&self, other: &SaDescription) -> Result<SaDescription> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut c = self.conjuncts.clone();
        c.extend(other.conjuncts.iter().cloned());
        Ok(SaDescription {
            name: self.name.clone(),
            ambient: self.ambient,
            conjuncts: c,
        })
    }

    /// Intersection, distributed back into disjunctive form.
    pub fn intersect(&self, other: &SaDescription) -> Result<SaDescription> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut c = Vec::new();
        for a in &self.conjuncts {
            for b in &other.conjuncts {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                c.push(v);
            }
        }
        Ok(SaDescription {
            name: self.name.clone(),
            ambient: self.ambient,
            conjuncts: c,
        })
    }
}

pub fn complexity_of(d: &SaDescription) -> Complexity {
    let p = d.conjuncts.iter().map(|c| c.len()).sum();
    let q = d.conjuncts.iter().flatten().map(|a| a.poly.degree()).max().unwrap_or(0);
    Complexity { p, q }
}

impl fmt::Display for SaDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "set {} in R^{} := ", self.name, self.ambient)?;
        if self.conjuncts.is_empty() {
            return write!(f, "empty");
        }
        for (i, c) in self.conjuncts.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let atoms: Vec<String> = c.iter().map(|a| format!("{} {} 0", a.poly, a.rel.symbol())).collect();
            write!(f, "{{ {} }}", atoms.join(", "))?;
        }
        Ok(())
    }
}
