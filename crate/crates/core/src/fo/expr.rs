use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};

/// Polynomial over named variables. `vars` is sorted and lists exactly the
/// variables that occur, so structural equality is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    vars: Vec<String>,
    poly: Poly,
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr {
            vars: vec![name.to_string()],
            poly: Poly::var(1, 0),
        }
    }

    pub fn constant(c: Rat) -> Expr {
        Expr {
            vars: vec![],
            poly: Poly::constant(0, c),
        }
    }

    pub fn int(v: i64) -> Expr {
        Expr {
            vars: vec![],
            poly: Poly::from_int(0, v),
        }
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    /// Builds from a polynomial whose variable `i` is named `names[i]`.
    pub fn from_poly(poly: &Poly, names: &[String]) -> Expr {
        assert_eq!(poly.arity(), names.len());
        let mut used: Vec<(String, usize)> = poly.vars().into_iter().map(|i| (names[i].clone(), i)).collect();
        used.sort();
        used.dedup_by(|a, b| a.0 == b.0);
        let vars: Vec<String> = used.iter().map(|(n, _)| n.clone()).collect();
        let map: Vec<usize> = names
            .iter()
            .map(|n| vars.iter().position(|v| v == n).unwrap_or(0))
            .collect();
        let arity = vars.len();
        let poly = if arity == 0 {
            Poly::constant(0, poly.constant_value().unwrap_or_else(|| Rat::from_integer(0.into())))
        } else {
            poly.remap(arity, &map)
        };
        Expr { vars, poly }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.vars.is_empty() {
            self.poly.constant_value()
        } else {
            None
        }
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    fn lift_to(&self, vars: &[String]) -> Poly {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable present"))
            .collect();
        self.poly.remap(vars.len(), &map)
    }

    fn binary(&self, o: &Expr, f: impl Fn(&Poly, &Poly) -> Poly) -> Expr {
        let mut vars = self.vars.clone();
        vars.extend(o.vars.iter().cloned());
        vars.sort();
        vars.dedup();
        let p = f(&self.lift_to(&vars), &o.lift_to(&vars));
        Expr::from_poly(&p, &vars)
    }

    pub fn pow(&self, k: u32) -> Expr {
        Expr::from_poly(&self.poly.pow(k), &self.vars)
    }

    pub fn scale(&self, c: &Rat) -> Expr {
        Expr::from_poly(&self.poly.scale(c), &self.vars)
    }

    /// Polynomial over the given variable order.
    pub fn to_poly(&self, order: &[String]) -> Result<Poly> {
        for v in &self.vars {
            if !order.contains(v) {
                return Err(Error::UnboundVariable(v.clone()));
            }
        }
        Ok(self.lift_to(order))
    }

    pub fn eval(&self, env: &BTreeMap<String, Rat>) -> Result<Rat> {
        let x: Vec<Rat> = self
            .vars
            .iter()
            .map(|v| env.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.clone())))
            .collect::<Result<_>>()?;
        self.poly.eval(&x)
    }

    /// Simultaneous substitution of expressions for variables.
    pub fn substitute(&self, map: &BTreeMap<String, Expr>) -> Expr {
        if !self.vars.iter().any(|v| map.contains_key(v)) {
            return self.clone();
        }
        let images: Vec<Expr> = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| Expr::var(v)))
            .collect();
        compose(&self.poly, &images)
    }

    pub fn rename(&self, from: &str, to: &str) -> Expr {
        let mut m = BTreeMap::new();
        m.insert(from.to_string(), Expr::var(to));
        self.substitute(&m)
    }
}

/// `p(args[0], ..., args[n-1])`.
pub fn compose(p: &Poly, args: &[Expr]) -> Expr {
    assert_eq!(p.arity(), args.len());
    let mut acc = Expr::zero();
    let mut powers: Vec<Vec<Expr>> = vec![vec![Expr::int(1)]; args.len()];
    for (e, c) in p.terms() {
        let mut t = Expr::constant(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = &powers[i][powers[i].len() - 1] * &args[i];
                powers[i].push(next);
            }
            t = &t * &powers[i][k as usize];
        }
        acc = &acc + &t;
    }
    acc
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, o: &Expr) -> Expr {
        self.binary(o, |a, b| a + b)
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, o: &Expr) -> Expr {
        self.binary(o, |a, b| a - b)
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, o: &Expr) -> Expr {
        self.binary(o, |a, b| a * b)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            vars: self.vars.clone(),
            poly: -&self.poly,
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.poly.to_string_with(&self.vars))
    }
}
