use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fo::expr::Expr;
use crate::fo::formula::Formula;
use crate::sa::SaDescription;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schema {
    Submanifold,
    Boundary,
    Homeomorphism,
    Collapse,
}

/// A set parameter, either left symbolic or replaced by a concrete description.
#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Symbol(String),
    Set(SaDescription),
}

impl Binding {
    pub fn symbol(name: &str) -> Binding {
        Binding::Symbol(name.to_string())
    }

    fn name<'a>(&'a self, placeholder: &'a str) -> &'a str {
        match self {
            Binding::Symbol(s) => s,
            Binding::Set(_) => placeholder,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PredicateInstance {
    pub schema: Schema,
    pub n: usize,
    pub m: usize,
    pub r: u32,
    /// Nash threshold `l`: a `C^l` map of the given kind is Nash.
    pub nash: Option<u32>,
    pub bindings: BTreeMap<String, Binding>,
}

impl PredicateInstance {
    pub fn submanifold(n: usize, m: usize, r: u32, s: Binding) -> Self {
        let mut bindings = BTreeMap::new();
        bindings.insert("S".to_string(), s);
        PredicateInstance {
            schema: Schema::Submanifold,
            n,
            m,
            r,
            nash: None,
            bindings,
        }
    }

    pub fn boundary(n: usize, m: usize, r: u32, s: Binding) -> Self {
        PredicateInstance {
            schema: Schema::Boundary,
            ..PredicateInstance::submanifold(n, m, r, s)
        }
    }

    fn smoothness(&self) -> Result<u32> {
        if self.m > self.n {
            return Err(Error::Invalid(format!(
                "dimension {} exceeds ambient {}",
                self.m, self.n
            )));
        }
        let r = match self.nash {
            Some(l) if l >= 2 => {
                return Err(Error::Unsupported(format!(
                    "Nash threshold l = {l}: only C^0 and C^1 schemas exist"
                )))
            }
            Some(l) => l,
            None => self.r,
        };
        if r > 1 {
            return Err(Error::Unsupported(format!(
                "smoothness r = {r}: only r = 0 and r = 1 are supported"
            )));
        }
        Ok(r)
    }

    fn binding(&self, key: &str) -> Result<&Binding> {
        self.bindings
            .get(key)
            .ok_or_else(|| Error::Invalid(format!("parameter {key} is not bound")))
    }
}

fn v(name: &str) -> Expr {
    Expr::var(name)
}

fn point(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn exprs(names: &[String]) -> Vec<Expr> {
    names.iter().map(|n| v(n)).collect()
}

fn pick<T: Clone>(xs: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| xs[i].clone()).collect()
}

fn pick_names(xs: &[String], idx: &[usize]) -> Vec<String> {
    pick(xs, idx)
}

fn sq_dist(a: &[Expr], b: &[Expr]) -> Expr {
    a.iter().zip(b).fold(Expr::zero(), |acc, (p, q)| {
        let d = p - q;
        &acc + &(&d * &d)
    })
}

/// Open ball of radius `r` (a variable or expression assumed positive).
/// In one dimension it is written as two linear atoms.
fn ball(p: &[Expr], c: &[Expr], r: &Expr) -> Formula {
    match p.len() {
        0 => Formula::tru(),
        1 => Formula::And(vec![
            Formula::gt(&(&(&p[0] - &c[0]) + r), &Expr::zero()),
            Formula::gt(&(&(&c[0] + r) - &p[0]), &Expr::zero()),
        ]),
        _ => Formula::lt(&sq_dist(p, c), &(r * r)),
    }
}

fn same(a: &[Expr], b: &[Expr]) -> Formula {
    Formula::and(a.iter().zip(b).map(|(p, q)| Formula::eq(p, q)).collect())
}

fn positive(name: &str) -> Formula {
    Formula::gt(&v(name), &Expr::zero())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn complement(n: usize, idx: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !idx.contains(i)).collect()
}

/// Places base and fiber values back into coordinate order.
fn assemble(n: usize, base_idx: &[usize], base: &[Expr], fiber_idx: &[usize], fiber: &[Expr]) -> Vec<Expr> {
    let mut out = vec![Expr::zero(); n];
    for (&i, e) in base_idx.iter().zip(base) {
        out[i] = e.clone();
    }
    for (&i, e) in fiber_idx.iter().zip(fiber) {
        out[i] = e.clone();
    }
    out
}

type Pred<'a> = Box<dyn Fn(&[Expr]) -> Formula + 'a>;

/// Local coordinates on the base used by the derivative clause. `Collar`
/// replaces the last base coordinate `s` by `s - xi(rest)`; `xi` is either a
/// constant or given implicitly by a relation `rel(rest, s0)`.
enum Coords<'a> {
    Identity,
    CollarConst(Expr),
    CollarImplicit(Box<dyn Fn(&[Expr], &Expr) -> Formula + 'a>),
}

/// `set` restricted to `dom x fbox` is the graph of a `C^r` map on `dom`.
struct Graph<'a> {
    set: &'a str,
    n: usize,
    base_idx: Vec<usize>,
    fiber_idx: Vec<usize>,
    dom: Pred<'a>,
    fbox: Pred<'a>,
    coords: Coords<'a>,
}

impl Graph<'_> {
    fn mem(&self, base: &[Expr], fiber: &[Expr]) -> Formula {
        Formula::member(self.set, assemble(self.n, &self.base_idx, base, &self.fiber_idx, fiber))
    }

    fn split(&self, names: &[String]) -> (Vec<String>, Vec<String>) {
        (pick_names(names, &self.base_idx), pick_names(names, &self.fiber_idx))
    }

    fn in_graph(&self, b: &[Expr], f: &[Expr]) -> Formula {
        Formula::and(vec![(self.dom)(b), (self.fbox)(f), self.mem(b, f)])
    }

    fn total(&self) -> Formula {
        let (ub, uf) = self.split(&point("u", self.n));
        let (b, f) = (exprs(&ub), exprs(&uf));
        Formula::forall(
            ub,
            Formula::implies(
                (self.dom)(&b),
                Formula::exists(uf, Formula::and(vec![(self.fbox)(&f), self.mem(&b, &f)])),
            ),
        )
    }

    fn unique(&self) -> Formula {
        let (ub, uf) = self.split(&point("u", self.n));
        let (_, wf) = self.split(&point("w", self.n));
        let (b, f, g) = (exprs(&ub), exprs(&uf), exprs(&wf));
        let mut vars = ub;
        vars.extend(uf);
        vars.extend(wf);
        Formula::forall(
            vars,
            Formula::implies(
                Formula::and(vec![self.in_graph(&b, &f), (self.fbox)(&g), self.mem(&b, &g)]),
                same(&f, &g),
            ),
        )
    }

    fn continuity(&self) -> Formula {
        let u = point("u", self.n);
        let w = point("w", self.n);
        let (ub, uf) = self.split(&u);
        let (wb, wf) = self.split(&w);
        let (b, f, b2, f2) = (exprs(&ub), exprs(&uf), exprs(&wb), exprs(&wf));
        let inner = Formula::forall(
            w,
            Formula::implies(
                Formula::and(vec![self.in_graph(&b2, &f2), ball(&b2, &b, &v("d"))]),
                ball(&f2, &f, &v("e")),
            ),
        );
        Formula::forall(
            u,
            Formula::implies(
                self.in_graph(&b, &f),
                Formula::forall(
                    vec!["e".into()],
                    Formula::implies(
                        positive("e"),
                        Formula::exists(vec!["d".into()], Formula::and(vec![positive("d"), inner])),
                    ),
                ),
            ),
        )
    }

    /// Local coordinates of a base point, with witness variables and their constraint.
    fn local(&self, b: &[Expr], tag: &str) -> (Vec<Expr>, Vec<String>, Formula) {
        let k = b.len();
        match &self.coords {
            Coords::Identity => (b.to_vec(), vec![], Formula::tru()),
            Coords::CollarConst(xi) => {
                let mut c = b.to_vec();
                c[k - 1] = &b[k - 1] - xi;
                (c, vec![], Formula::tru())
            }
            Coords::CollarImplicit(rel) => {
                let s0 = format!("s{tag}");
                let mut c = b.to_vec();
                c[k - 1] = &b[k - 1] - &v(&s0);
                let cond = rel(&b[..k - 1], &v(&s0));
                (c, vec![s0], cond)
            }
        }
    }

    /// Strict differentiability at every graph point, in local coordinates.
    fn differentiability(&self) -> Formula {
        let u = point("u", self.n);
        let p = point("p", self.n);
        let w = point("w", self.n);
        let (ub, uf) = self.split(&u);
        let (pb, pf) = self.split(&p);
        let (wb, wf) = self.split(&w);
        let (b0, f0) = (exprs(&ub), exprs(&uf));
        let (b1, f1, b2, f2) = (exprs(&pb), exprs(&pf), exprs(&wb), exprs(&wf));
        let (c1, wit1, cond1) = self.local(&b1, "p");
        let (c2, wit2, cond2) = self.local(&b2, "w");
        let fl = self.fiber_idx.len();
        let bl = self.base_idx.len();
        let a: Vec<Vec<String>> = (0..fl)
            .map(|j| (0..bl).map(|k| format!("a{}_{}", j + 1, k + 1)).collect())
            .collect();
        let dc: Vec<Expr> = c2.iter().zip(&c1).map(|(x, y)| x - y).collect();
        let mut err = Expr::zero();
        for j in 0..fl {
            let mut r = &f2[j] - &f1[j];
            for (k, d) in dc.iter().enumerate() {
                r = &r - &(&v(&a[j][k]) * d);
            }
            err = &err + &(&r * &r);
        }
        let norm = dc.iter().fold(Expr::zero(), |acc, d| &acc + &(d * d));
        let e2 = &v("e") * &v("e");
        let estimate = Formula::le(&err, &(&e2 * &norm));
        let mut vars = p.clone();
        vars.extend(w.clone());
        vars.extend(wit1);
        vars.extend(wit2);
        let hyp = Formula::and(vec![
            self.in_graph(&b1, &f1),
            self.in_graph(&b2, &f2),
            cond1,
            cond2,
            ball(&b1, &b0, &v("d")),
            ball(&b2, &b0, &v("d")),
        ]);
        let inner = Formula::forall(vars, Formula::implies(hyp, estimate));
        let eps_delta = Formula::forall(
            vec!["e".into()],
            Formula::implies(
                positive("e"),
                Formula::exists(vec!["d".into()], Formula::and(vec![positive("d"), inner])),
            ),
        );
        Formula::forall(
            u,
            Formula::implies(self.in_graph(&b0, &f0), Formula::exists(a.concat(), eps_delta)),
        )
    }

    fn clauses(&self, r: u32) -> Formula {
        let reg = if r == 0 {
            self.continuity()
        } else {
            self.differentiability()
        };
        Formula::and(vec![self.total(), self.unique(), reg])
    }
}

/// `S` is locally the graph of a `C^r` function over the coordinates `base` at `x`.
fn phi(set: &str, n: usize, m: usize, r: u32, x: &[Expr], base: &[usize]) -> Formula {
    let u = point("u", n);
    let ue = exprs(&u);
    if m == n {
        return Formula::exists(
            vec!["eps".into()],
            Formula::and(vec![
                positive("eps"),
                Formula::forall(
                    u,
                    Formula::implies(ball(&ue, x, &v("eps")), Formula::member(set, ue.clone())),
                ),
            ]),
        );
    }
    if m == 0 {
        return Formula::exists(
            vec!["eps".into()],
            Formula::and(vec![
                positive("eps"),
                Formula::forall(
                    u,
                    Formula::implies(
                        Formula::and(vec![ball(&ue, x, &v("eps")), Formula::member(set, ue.clone())]),
                        same(&ue, x),
                    ),
                ),
            ]),
        );
    }
    let fiber = complement(n, base);
    let (y, z) = (pick(x, base), pick(x, &fiber));
    let g = Graph {
        set,
        n,
        base_idx: base.to_vec(),
        fiber_idx: fiber,
        dom: Box::new(move |b| ball(b, &y, &v("eps"))),
        fbox: Box::new(move |f| ball(f, &z, &v("eta"))),
        coords: Coords::Identity,
    };
    Formula::exists(
        vec!["eps".into(), "eta".into()],
        Formula::and(vec![positive("eps"), positive("eta"), g.clauses(r)]),
    )
}

/// Boundary point condition at `x` in `T` for the coordinate split
/// `rest` (m-1 coordinates), `k` and the remaining fiber coordinates.
fn psi(s: &str, t: &str, n: usize, m: usize, r: u32, x: &[Expr], rest: &[usize], k: usize) -> Formula {
    let mut tb = rest.to_vec();
    tb.push(k);
    let fiber = complement(n, &tb);
    let (y, z, xk) = (pick(x, rest), pick(x, &fiber), x[k].clone());
    let eps = v("eps");
    let eta = v("eta");
    let interval = {
        let xk = xk.clone();
        move |s: &Expr| ball(std::slice::from_ref(s), std::slice::from_ref(&xk), &v("del"))
    };

    // clause 1: T is locally a graph over `rest`
    let clause1 = if m == 1 {
        let u = point("u", n);
        let ue = exprs(&u);
        let mem = Formula::member(t, ue.clone());
        let moving: Vec<String> = pick_names(&u, &tb).into_iter().chain(pick_names(&u, &fiber)).collect();
        Formula::forall(
            moving,
            Formula::implies(
                Formula::and(vec![interval(&ue[k]), ball(&pick(&ue, &fiber), &z, &eta), mem]),
                same(&ue, x),
            ),
        )
    } else {
        let mut tf = vec![k];
        tf.extend(fiber.iter().copied());
        let (y1, z1, i1) = (y.clone(), z.clone(), interval.clone());
        let g = Graph {
            set: t,
            n,
            base_idx: rest.to_vec(),
            fiber_idx: tf,
            dom: Box::new(move |b| ball(b, &y1, &v("eps"))),
            fbox: Box::new(move |f| Formula::and(vec![i1(&f[0]), ball(&f[1..], &z1, &v("eta"))])),
            coords: Coords::Identity,
        };
        g.clauses(r)
    };

    // xi(rest) = s0, the first component of the local graph of T
    let xi_rel = |b: &[Expr], s0: &Expr| -> Formula {
        let o = point("o", fiber.len());
        let oe = exprs(&o);
        Formula::exists(
            o,
            Formula::and(vec![
                interval(s0),
                ball(&oe, &z, &v("eta")),
                Formula::member(
                    t,
                    assemble(n, &tb, &[b, std::slice::from_ref(s0)].concat(), &fiber, &oe),
                ),
            ]),
        )
    };
    let side = |b: &[Expr], s: &Expr, over: bool| -> Formula {
        let cmp = |s: &Expr, s0: &Expr| if over { Formula::ge(s, s0) } else { Formula::le(s, s0) };
        if m == 1 {
            cmp(s, &xk)
        } else {
            Formula::exists(
                vec!["s0".into()],
                Formula::and(vec![xi_rel(b, &v("s0")), cmp(s, &v("s0"))]),
            )
        }
    };

    let clause2 = |over: bool| -> Formula {
        let u = point("u", n);
        let ue = exprs(&u);
        let (ub, uf) = (pick(&ue, &tb), pick(&ue, &fiber));
        let region = Formula::and(vec![ball(&ub[..m - 1], &y, &eps), interval(&ub[m - 1])]);
        let sd = side(&ub[..m - 1], &ub[m - 1], over);
        if fiber.is_empty() {
            return Formula::forall(
                u,
                Formula::implies(region, Formula::iff(Formula::member(s, ue.clone()), sd)),
            );
        }
        let exact = Formula::forall(
            u.clone(),
            Formula::implies(
                Formula::and(vec![region, ball(&uf, &z, &eta), Formula::member(s, ue.clone())]),
                sd,
            ),
        );
        let (y2, z2, i2) = (y.clone(), z.clone(), interval.clone());
        let coords = if m == 1 {
            Coords::CollarConst(xk.clone())
        } else {
            Coords::CollarImplicit(Box::new(xi_rel))
        };
        let g = Graph {
            set: s,
            n,
            base_idx: tb.clone(),
            fiber_idx: fiber.clone(),
            dom: Box::new(move |b| {
                Formula::and(vec![
                    ball(&b[..m - 1], &y2, &v("eps")),
                    i2(&b[m - 1]),
                    side(&b[..m - 1], &b[m - 1], over),
                ])
            }),
            fbox: Box::new(move |f| ball(f, &z2, &v("eta"))),
            coords,
        };
        Formula::and(vec![g.clauses(r), exact])
    };

    let mut radii = Vec::new();
    if m > 1 {
        radii.push("eps".to_string());
    }
    radii.push("del".to_string());
    if !fiber.is_empty() {
        radii.push("eta".to_string());
    }
    let mut body: Vec<Formula> = radii.iter().map(|r| positive(r)).collect();
    body.push(clause1);
    body.push(Formula::or(vec![clause2(true), clause2(false)]));
    Formula::exists(radii, Formula::and(body))
}

fn instantiate(f: Formula, pairs: &[(&Binding, &str, usize)]) -> Result<Formula> {
    let mut f = f;
    for (b, placeholder, dim) in pairs {
        if let Binding::Set(d) = b {
            if d.ambient != *dim {
                return Err(Error::Dimension {
                    expected: *dim,
                    found: d.ambient,
                });
            }
            f = f.instantiate(placeholder, d)?;
        }
    }
    Ok(f.normalize())
}

/// `forall x in S, OR over m-subsets I of Phi_I(x)`.
pub fn compile_submanifold(inst: &PredicateInstance) -> Result<Formula> {
    let r = inst.smoothness()?;
    let sb = inst.binding("S")?;
    let s = sb.name("S");
    let (n, m) = (inst.n, inst.m);
    let x = point("x", n);
    let xe = exprs(&x);
    let f = Formula::forall(
        x,
        Formula::implies(
            Formula::member(s, xe.clone()),
            Formula::or(subsets(n, m).iter().map(|i| phi(s, n, m, r, &xe, i)).collect()),
        ),
    );
    instantiate(f, &[(sb, "S", n)])
}

/// `S` is an m-dimensional `C^r` manifold with boundary `T`.
pub fn compile_boundary(inst: &PredicateInstance, t: &Binding) -> Result<Formula> {
    let r = inst.smoothness()?;
    let sb = inst.binding("S")?;
    let (n, m) = (inst.n, inst.m);
    if m == 0 {
        return Err(Error::Invalid("a boundary needs dimension at least 1".into()));
    }
    let s = sb.name("S");
    let tn = t.name("T");
    if s == tn {
        return Err(Error::Invalid("S and T need distinct names".into()));
    }
    let x = point("x", n);
    let xe = exprs(&x);
    let interior = Formula::forall(
        x.clone(),
        Formula::implies(
            Formula::and(vec![
                Formula::member(s, xe.clone()),
                Formula::not(Formula::member(tn, xe.clone())),
            ]),
            Formula::or(subsets(n, m).iter().map(|i| phi(s, n, m, r, &xe, i)).collect()),
        ),
    );
    let mut alts = Vec::new();
    for rest in subsets(n, m - 1) {
        for k in complement(n, &rest) {
            alts.push(psi(s, tn, n, m, r, &xe, &rest, k));
        }
    }
    let edge = Formula::forall(x, Formula::implies(Formula::member(tn, xe), Formula::or(alts)));
    instantiate(Formula::and(vec![interior, edge]), &[(sb, "S", n), (t, "T", n)])
}

fn continuity_clause(g: &str, x: &[String], y: &[String], p: &[String], q: &[String], swap: bool) -> Formula {
    let (xe, ye, pe, qe) = (exprs(x), exprs(y), exprs(p), exprs(q));
    let pair = |a: &[Expr], b: &[Expr]| Formula::member(g, [a, b].concat());
    let (src0, dst0, src1, dst1) = if swap {
        (&ye, &xe, &qe, &pe)
    } else {
        (&xe, &ye, &pe, &qe)
    };
    let inner = Formula::forall(
        [p, q].concat(),
        Formula::implies(
            Formula::and(vec![pair(&pe, &qe), ball(src1, src0, &v("d"))]),
            ball(dst1, dst0, &v("e")),
        ),
    );
    Formula::forall(
        [x, y].concat(),
        Formula::implies(
            pair(&xe, &ye),
            Formula::forall(
                vec!["e".into()],
                Formula::implies(
                    positive("e"),
                    Formula::exists(vec!["d".into()], Formula::and(vec![positive("d"), inner])),
                ),
            ),
        ),
    )
}

/// Named clauses of `lambda(a, b, c)`: the set with graph `c` is a homeomorphism `a -> b`.
pub fn homeomorphism_clauses(a: &Binding, b: &Binding, c: &Binding, n: usize) -> Result<Vec<(String, Formula)>> {
    let (an, bn, cn) = (a.name("X"), b.name("Y"), c.name("G"));
    let (x, y, p, q) = (point("x", n), point("y", n), point("p", n), point("q", n));
    let (xe, ye, pe, qe) = (exprs(&x), exprs(&y), exprs(&p), exprs(&q));
    let g = |s: &[Expr], t: &[Expr]| Formula::member(cn, [s, t].concat());
    let xy = [x.clone(), y.clone()].concat();
    let raw = vec![
        (
            "graph_in_product",
            Formula::forall(
                xy.clone(),
                Formula::implies(
                    g(&xe, &ye),
                    Formula::and(vec![Formula::member(an, xe.clone()), Formula::member(bn, ye.clone())]),
                ),
            ),
        ),
        (
            "total",
            Formula::forall(
                x.clone(),
                Formula::implies(Formula::member(an, xe.clone()), Formula::exists(y.clone(), g(&xe, &ye))),
            ),
        ),
        (
            "functional",
            Formula::forall(
                [x.clone(), y.clone(), q.clone()].concat(),
                Formula::implies(Formula::and(vec![g(&xe, &ye), g(&xe, &qe)]), same(&ye, &qe)),
            ),
        ),
        (
            "injective",
            Formula::forall(
                [x.clone(), p.clone(), y.clone()].concat(),
                Formula::implies(Formula::and(vec![g(&xe, &ye), g(&pe, &ye)]), same(&xe, &pe)),
            ),
        ),
        (
            "onto",
            Formula::forall(
                y.clone(),
                Formula::implies(Formula::member(bn, ye.clone()), Formula::exists(x.clone(), g(&xe, &ye))),
            ),
        ),
        ("continuous", continuity_clause(cn, &x, &y, &p, &q, false)),
        ("inverse_continuous", continuity_clause(cn, &x, &y, &p, &q, true)),
    ];
    raw.into_iter()
        .map(|(name, f)| {
            Ok((
                name.to_string(),
                instantiate(f, &[(a, "X", n), (b, "Y", n), (c, "G", 2 * n)])?,
            ))
        })
        .collect()
}

/// `lambda(a, b, c)` as a single formula.
pub fn compile_homeomorphism(a: &Binding, b: &Binding, c: &Binding, n: usize) -> Result<Formula> {
    Ok(Formula::and(
        homeomorphism_clauses(a, b, c, n)?.into_iter().map(|(_, f)| f).collect(),
    ))
}

fn cube(s: &[Expr]) -> Formula {
    Formula::and(
        s.iter()
            .flat_map(|e| [Formula::ge(e, &Expr::zero()), Formula::le(e, &Expr::int(1))])
            .collect(),
    )
}

/// Named clauses of `beta(X, Y, c)`: `X` collapses onto `Y` through the map
/// `f: I^n -> X` with graph `c`, where `X` and `Y` live in `R^ambient`.
pub fn collapse_clauses(
    x: &Binding,
    y: &Binding,
    c: &Binding,
    n: usize,
    ambient: usize,
) -> Result<Vec<(String, Formula)>> {
    if n == 0 {
        return Err(Error::Invalid("the cube of a collapse has dimension at least 1".into()));
    }
    let (xn, yn, cn) = (x.name("X"), y.name("Y"), c.name("G"));
    let (s, t) = (point("s", n), point("t", n));
    let (p, q) = (point("p", ambient), point("q", ambient));
    let (se, te, pe, qe) = (exprs(&s), exprs(&t), exprs(&p), exprs(&q));
    let g = |a: &[Expr], b: &[Expr]| Formula::member(cn, [a, b].concat());
    let sp = [s.clone(), p.clone()].concat();
    let zero = Expr::zero();
    let off_base = |e: &[Expr]| Formula::gt(&e[0], &zero);
    let raw = vec![
        (
            "graph_domain",
            Formula::forall(sp.clone(), Formula::implies(g(&se, &pe), cube(&se))),
        ),
        (
            "total",
            Formula::forall(
                s.clone(),
                Formula::implies(cube(&se), Formula::exists(p.clone(), g(&se, &pe))),
            ),
        ),
        (
            "functional",
            Formula::forall(
                [s.clone(), p.clone(), q.clone()].concat(),
                Formula::implies(Formula::and(vec![g(&se, &pe), g(&se, &qe)]), same(&pe, &qe)),
            ),
        ),
        (
            "image_in_x",
            Formula::forall(
                sp.clone(),
                Formula::implies(g(&se, &pe), Formula::member(xn, pe.clone())),
            ),
        ),
        (
            "injective_off_base",
            Formula::forall(
                [s.clone(), t.clone(), p.clone()].concat(),
                Formula::implies(
                    Formula::and(vec![g(&se, &pe), g(&te, &pe), off_base(&se), off_base(&te)]),
                    same(&se, &te),
                ),
            ),
        ),
        (
            "base_in_y",
            Formula::forall(
                sp.clone(),
                Formula::implies(
                    Formula::and(vec![g(&se, &pe), Formula::eq(&se[0], &zero)]),
                    Formula::member(yn, pe.clone()),
                ),
            ),
        ),
        (
            "off_base_avoids_y",
            Formula::forall(
                sp.clone(),
                Formula::implies(
                    Formula::and(vec![g(&se, &pe), off_base(&se)]),
                    Formula::not(Formula::member(yn, pe.clone())),
                ),
            ),
        ),
        (
            "y_in_x",
            Formula::forall(
                p.clone(),
                Formula::implies(Formula::member(yn, pe.clone()), Formula::member(xn, pe.clone())),
            ),
        ),
        (
            "x_covered",
            Formula::forall(
                p.clone(),
                Formula::implies(
                    Formula::member(xn, pe.clone()),
                    Formula::or(vec![
                        Formula::member(yn, pe.clone()),
                        Formula::exists(s.clone(), g(&se, &pe)),
                    ]),
                ),
            ),
        ),
        ("continuous", map_continuity(cn, &s, &p, &t, &q, None)),
        (
            "inverse_continuous_off_base",
            map_continuity(cn, &s, &p, &t, &q, Some(())),
        ),
    ];
    raw.into_iter()
        .map(|(name, f)| {
            Ok((
                name.to_string(),
                instantiate(f, &[(x, "X", ambient), (y, "Y", ambient), (c, "G", n + ambient)])?,
            ))
        })
        .collect()
}

/// Continuity of the map with graph `g` from `s`-space to `p`-space, or with
/// `inverse` set, of its inverse restricted to the image of `(0,1] x I^(n-1)`.
fn map_continuity(g: &str, s: &[String], p: &[String], t: &[String], q: &[String], inverse: Option<()>) -> Formula {
    let (se, pe, te, qe) = (exprs(s), exprs(p), exprs(t), exprs(q));
    let pair = |a: &[Expr], b: &[Expr]| Formula::member(g, [a, b].concat());
    let zero = Expr::zero();
    let (hyp0, hyp1, near, target) = match inverse {
        None => (
            pair(&se, &pe),
            pair(&te, &qe),
            ball(&te, &se, &v("d")),
            ball(&qe, &pe, &v("e")),
        ),
        Some(()) => (
            Formula::and(vec![pair(&se, &pe), Formula::gt(&se[0], &zero)]),
            Formula::and(vec![pair(&te, &qe), Formula::gt(&te[0], &zero)]),
            ball(&qe, &pe, &v("d")),
            ball(&te, &se, &v("e")),
        ),
    };
    let inner = Formula::forall(
        [t, q].concat(),
        Formula::implies(Formula::and(vec![hyp1, near]), target),
    );
    Formula::forall(
        [s, p].concat(),
        Formula::implies(
            hyp0,
            Formula::forall(
                vec!["e".into()],
                Formula::implies(
                    positive("e"),
                    Formula::exists(vec!["d".into()], Formula::and(vec![positive("d"), inner])),
                ),
            ),
        ),
    )
}

/// `beta(X, Y, c)` as a single formula.
pub fn compile_collapse(x: &Binding, y: &Binding, c: &Binding, n: usize, ambient: usize) -> Result<Formula> {
    Ok(Formula::and(
        collapse_clauses(x, y, c, n, ambient)?
            .into_iter()
            .map(|(_, f)| f)
            .collect(),
    ))
}
