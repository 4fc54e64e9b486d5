use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fo::expr::{compose, Expr};
use crate::poly::{Poly, Rat};
use crate::sa::{decode, monomials, tuple_of, ParamPoint, Rel, SaDescription};

/// First-order formula over the reals. `And(vec![])` is true, `Or(vec![])` is false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `expr rel 0`
    Atom(Expr, Rel),
    /// Membership of a point in a set parameter.
    Member {
        set: String,
        args: Vec<Expr>,
    },
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    ForAll(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn tru() -> Formula {
        Formula::And(vec![])
    }

    pub fn fls() -> Formula {
        Formula::Or(vec![])
    }

    pub fn atom(lhs: &Expr, rel: Rel, rhs: &Expr) -> Formula {
        Formula::Atom(lhs - rhs, rel)
    }

    pub fn lt(a: &Expr, b: &Expr) -> Formula {
        Formula::atom(a, Rel::Lt, b)
    }

    pub fn gt(a: &Expr, b: &Expr) -> Formula {
        Formula::atom(a, Rel::Gt, b)
    }

    pub fn eq(a: &Expr, b: &Expr) -> Formula {
        Formula::atom(a, Rel::Eq, b)
    }

    pub fn le(a: &Expr, b: &Expr) -> Formula {
        Formula::not(Formula::gt(a, b))
    }

    pub fn ge(a: &Expr, b: &Expr) -> Formula {
        Formula::not(Formula::lt(a, b))
    }

    pub fn member(set: &str, args: Vec<Expr>) -> Formula {
        Formula::Member {
            set: set.to_string(),
            args,
        }
    }

    /// Conjunction with nested conjunctions flattened and a single operand unwrapped.
    pub fn and(parts: Vec<Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::And(v) => out.extend(v),
                p => out.push(p),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::And(out)
        }
    }

    pub fn or(parts: Vec<Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::Or(v) => out.extend(v),
                p => out.push(p),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::Or(out)
        }
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(vec![Formula::not(a), b])
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(vec![Formula::implies(a.clone(), b.clone()), Formula::implies(b, a)])
    }

    pub fn exists(vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::Exists(vars, Box::new(body))
        }
    }

    pub fn forall(vars: Vec<String>, body: Formula) -> Formula {
        if vars.is_empty() {
            body
        } else {
            Formula::ForAll(vars, Box::new(body))
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Formula::And(v) if v.is_empty())
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Formula::Or(v) if v.is_empty())
    }

    /// Free real variables together with free set parameter names.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = self.free_real_vars();
        out.extend(self.set_params());
        out
    }

    pub fn free_real_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |e: &Expr, bound: &Vec<String>| {
            for v in e.vars() {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            Formula::Atom(e, _) => add(e, bound),
            Formula::Member { args, .. } => {
                for a in args {
                    add(a, bound)
                }
            }
            Formula::And(v) | Formula::Or(v) => {
                for f in v {
                    f.collect_free(bound, out)
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Exists(vs, f) | Formula::ForAll(vs, f) => {
                let n = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(n);
            }
        }
    }

    /// Names of set parameters used in membership atoms.
    pub fn set_params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Member { set, .. } = f {
                out.insert(set.clone());
            }
        });
        out
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(e, _) => out.extend(e.vars().iter().cloned()),
            Formula::Member { args, .. } => {
                for a in args {
                    out.extend(a.vars().iter().cloned())
                }
            }
            Formula::Exists(vs, _) | Formula::ForAll(vs, _) => out.extend(vs.iter().cloned()),
            _ => {}
        });
        out
    }

    pub fn visit(&self, g: &mut impl FnMut(&Formula)) {
        g(self);
        match self {
            Formula::And(v) | Formula::Or(v) => {
                for f in v {
                    f.visit(g)
                }
            }
            Formula::Not(f) | Formula::Exists(_, f) | Formula::ForAll(_, f) => f.visit(g),
            _ => {}
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut qf = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::Exists(..) | Formula::ForAll(..)) {
                qf = false
            }
        });
        qf
    }

    pub fn atom_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Atom(..) | Formula::Member { .. }) {
                n += 1
            }
        });
        n
    }

    /// Substitutes expressions for free occurrences of variables.
    pub fn substitute(&self, map: &BTreeMap<String, Expr>) -> Formula {
        match self {
            Formula::Atom(e, r) => Formula::Atom(e.substitute(map), *r),
            Formula::Member { set, args } => Formula::Member {
                set: set.clone(),
                args: args.iter().map(|a| a.substitute(map)).collect(),
            },
            Formula::And(v) => Formula::And(v.iter().map(|f| f.substitute(map)).collect()),
            Formula::Or(v) => Formula::Or(v.iter().map(|f| f.substitute(map)).collect()),
            Formula::Not(f) => Formula::Not(Box::new(f.substitute(map))),
            Formula::Exists(vs, f) | Formula::ForAll(vs, f) => {
                let mut inner = map.clone();
                for v in vs {
                    inner.remove(v);
                }
                let body = Box::new(f.substitute(&inner));
                match self {
                    Formula::Exists(..) => Formula::Exists(vs.clone(), body),
                    _ => Formula::ForAll(vs.clone(), body),
                }
            }
        }
    }

    /// Renames bound variables so that no binding shadows an enclosing binding
    /// or a free variable, and no quantifier binds the same name twice.
    pub fn normalize(&self) -> Formula {
        let mut taken: BTreeSet<String> = self.free_real_vars();
        let mut counter = BTreeMap::new();
        self.normalize_in(&mut Vec::new(), &mut taken, &mut counter)
    }

    fn normalize_in(
        &self,
        scope: &mut Vec<String>,
        taken: &mut BTreeSet<String>,
        counter: &mut BTreeMap<String, usize>,
    ) -> Formula {
        match self {
            Formula::And(v) => Formula::And(v.iter().map(|f| f.normalize_in(scope, taken, counter)).collect()),
            Formula::Or(v) => Formula::Or(v.iter().map(|f| f.normalize_in(scope, taken, counter)).collect()),
            Formula::Not(f) => Formula::Not(Box::new(f.normalize_in(scope, taken, counter))),
            Formula::Exists(vs, f) | Formula::ForAll(vs, f) => {
                let mut map = BTreeMap::new();
                let mut names = Vec::new();
                for v in vs {
                    let clash = scope.contains(v) || names.contains(v) || taken.contains(v);
                    let name = if clash {
                        let mut k = *counter.get(v).unwrap_or(&0);
                        let fresh = loop {
                            k += 1;
                            let c = format!("{v}_{k}");
                            if !taken.contains(&c) && !scope.contains(&c) && !names.contains(&c) {
                                break c;
                            }
                        };
                        counter.insert(v.clone(), k);
                        map.insert(v.clone(), Expr::var(&fresh));
                        fresh
                    } else {
                        map.remove(v);
                        v.clone()
                    };
                    names.push(name);
                }
                let body = if map.is_empty() {
                    (**f).clone()
                } else {
                    f.substitute(&map)
                };
                let n = scope.len();
                scope.extend(names.iter().cloned());
                let body = Box::new(body.normalize_in(scope, taken, counter));
                scope.truncate(n);
                match self {
                    Formula::Exists(..) => Formula::Exists(names, body),
                    _ => Formula::ForAll(names, body),
                }
            }
            f => f.clone(),
        }
    }

    /// Evaluates a quantifier-free formula at a rational point.
    pub fn eval_qf(&self, env: &BTreeMap<String, Rat>) -> Result<bool> {
        Ok(match self {
            Formula::Atom(e, r) => r.holds(crate::poly::sign_of(&e.eval(env)?)),
            Formula::Member { set, .. } => {
                return Err(Error::Unsupported(format!("set parameter {set} is not instantiated")))
            }
            Formula::And(v) => {
                for f in v {
                    if !f.eval_qf(env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(v) => {
                for f in v {
                    if f.eval_qf(env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Not(f) => !f.eval_qf(env)?,
            Formula::Exists(..) | Formula::ForAll(..) => {
                return Err(Error::Unsupported("quantified formula in eval_qf".into()))
            }
        })
    }

    /// Replaces every membership in `set` by the description evaluated at the arguments.
    pub fn instantiate(&self, set: &str, desc: &SaDescription) -> Result<Formula> {
        self.map_members(set, desc.ambient, &|args| description_formula(desc, args))
    }

    /// Like `instantiate`, but through the parameter encoding: the result has
    /// one disjunct per sign tuple, each gated by a constant atom, so its shape
    /// depends only on the complexity `(n, p, q)`.
    pub fn instantiate_param(&self, set: &str, a: &ParamPoint) -> Result<Formula> {
        decode(a)?;
        let mons = monomials(a.n, a.q);
        let polys: Vec<Poly> = a
            .blocks
            .iter()
            .map(|b| Poly::from_terms(a.n, mons.iter().cloned().zip(b.iter().cloned())))
            .collect::<Result<_>>()?;
        self.map_members(set, a.n, &|args| {
            let k = 3usize.pow(a.p as u32);
            Formula::Or(
                (0..k)
                    .map(|i| {
                        let gate = Expr::int(if a.selector.bit(i as u64) { 0 } else { 1 });
                        let mut conj = vec![Formula::Atom(gate, Rel::Eq)];
                        for (f, s) in polys.iter().zip(tuple_of(i, a.p)) {
                            conj.push(Formula::Atom(compose(f, args), Rel::from_sign(s)));
                        }
                        Formula::And(conj)
                    })
                    .collect(),
            )
        })
    }

    fn map_members(&self, set: &str, n: usize, g: &dyn Fn(&[Expr]) -> Formula) -> Result<Formula> {
        Ok(match self {
            Formula::Member { set: s, args } if s == set => {
                if args.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        found: args.len(),
                    });
                }
                g(args)
            }
            Formula::And(v) => Formula::And(v.iter().map(|f| f.map_members(set, n, g)).collect::<Result<_>>()?),
            Formula::Or(v) => Formula::Or(v.iter().map(|f| f.map_members(set, n, g)).collect::<Result<_>>()?),
            Formula::Not(f) => Formula::Not(Box::new(f.map_members(set, n, g)?)),
            Formula::Exists(vs, f) => Formula::Exists(vs.clone(), Box::new(f.map_members(set, n, g)?)),
            Formula::ForAll(vs, f) => Formula::ForAll(vs.clone(), Box::new(f.map_members(set, n, g)?)),
            f => f.clone(),
        })
    }

    /// Tree shape with atoms and memberships replaced by a placeholder.
    pub fn skeleton(&self) -> String {
        match self {
            Formula::Atom(..) | Formula::Member { .. } => "_".into(),
            Formula::And(v) => format!(
                "(and{})",
                v.iter().map(|f| format!(" {}", f.skeleton())).collect::<String>()
            ),
            Formula::Or(v) => format!(
                "(or{})",
                v.iter().map(|f| format!(" {}", f.skeleton())).collect::<String>()
            ),
            Formula::Not(f) => format!("(not {})", f.skeleton()),
            Formula::Exists(vs, f) => format!("(exists {} {})", vs.len(), f.skeleton()),
            Formula::ForAll(vs, f) => format!("(forall {} {})", vs.len(), f.skeleton()),
        }
    }
}

/// DNF of a description evaluated at the given argument expressions.
pub fn description_formula(desc: &SaDescription, args: &[Expr]) -> Formula {
    Formula::Or(
        desc.conjuncts
            .iter()
            .map(|c| Formula::And(c.iter().map(|c| Formula::Atom(compose(&c.poly, args), c.rel)).collect()))
            .collect(),
    )
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::fo::sexpr::to_sexpr(self))
    }
}
