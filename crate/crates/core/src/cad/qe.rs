use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::cad::tree::{decompose, CadTree, MAX_CAD_DEGREE};
use crate::error::{Error, Result};
use crate::fo::Formula;
use crate::poly::{sign_of, Poly};

/// Largest number of distinct real variables in a sentence handed to the CAD.
pub const MAX_QE_VARS: usize = 3;

/// Capacity limits for [`decide_with`]; both are capped by the hard limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QeLimits {
    pub max_vars: usize,
    pub max_degree: u32,
}

impl Default for QeLimits {
    fn default() -> Self {
        QeLimits {
            max_vars: MAX_QE_VARS,
            max_degree: MAX_CAD_DEGREE,
        }
    }
}

/// Truth value of a closed sentence over the reals.
///
/// Closed subformulas are decided on their own, so the variable limit applies
/// to each of them separately.
pub fn decide(sentence: &Formula) -> Result<bool> {
    decide_with(sentence, QeLimits::default())
}

/// [`decide`] under tighter limits.
pub fn decide_with(sentence: &Formula, limits: QeLimits) -> Result<bool> {
    if limits.max_vars > MAX_QE_VARS || limits.max_degree > MAX_CAD_DEGREE {
        return Err(Error::Invalid(format!(
            "limits above the hard caps of {MAX_QE_VARS} variables and degree {MAX_CAD_DEGREE}"
        )));
    }
    if let Some(s) = sentence.set_params().into_iter().next() {
        return Err(Error::Unsupported(format!("set parameter {s} is not instantiated")));
    }
    if let Some(v) = sentence.free_real_vars().into_iter().next() {
        return Err(Error::UnboundVariable(v));
    }
    decide_closed(&sentence.normalize(), limits)
}

fn decide_closed(f: &Formula, limits: QeLimits) -> Result<bool> {
    match f {
        Formula::And(v) => {
            for g in v {
                if !decide_closed(g, limits)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(v) => {
            for g in v {
                if decide_closed(g, limits)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Not(g) => Ok(!decide_closed(g, limits)?),
        Formula::Atom(e, r) => Ok(r.holds(sign_of(&e.constant_value().expect("closed atom")))),
        Formula::Member { set, .. } => Err(Error::Unsupported(format!("set parameter {set} is not instantiated"))),
        Formula::Exists(..) | Formula::ForAll(..) => {
            let g = fold_closed(f, true, limits)?;
            if let Some(b) = constant(&g) {
                return Ok(b);
            }
            decide_quantified(&g, limits)
        }
    }
}

fn constant(f: &Formula) -> Option<bool> {
    if f.is_true() {
        Some(true)
    } else if f.is_false() {
        Some(false)
    } else {
        None
    }
}

/// Replaces closed proper subformulas by their truth values.
fn fold_closed(f: &Formula, top: bool, limits: QeLimits) -> Result<Formula> {
    if !top && f.free_real_vars().is_empty() && !f.is_true() && !f.is_false() {
        return Ok(if decide_closed(f, limits)? {
            Formula::tru()
        } else {
            Formula::fls()
        });
    }
    Ok(match f {
        Formula::And(v) => Formula::And(v.iter().map(|g| fold_closed(g, false, limits)).collect::<Result<_>>()?),
        Formula::Or(v) => Formula::Or(v.iter().map(|g| fold_closed(g, false, limits)).collect::<Result<_>>()?),
        Formula::Not(g) => Formula::not(fold_closed(g, false, limits)?),
        Formula::Exists(vs, g) => Formula::Exists(vs.clone(), Box::new(fold_closed(g, false, limits)?)),
        Formula::ForAll(vs, g) => Formula::ForAll(vs.clone(), Box::new(fold_closed(g, false, limits)?)),
        g => g.clone(),
    })
}

/// Variable order: outer quantifiers first, ties by first appearance.
fn variable_order(f: &Formula) -> Result<Vec<String>> {
    let mut first: Vec<String> = Vec::new();
    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    fn walk(f: &Formula, scope: &mut Vec<String>, first: &mut Vec<String>, edges: &mut BTreeSet<(String, String)>) {
        match f {
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|g| walk(g, scope, first, edges)),
            Formula::Not(g) => walk(g, scope, first, edges),
            Formula::Exists(vs, g) | Formula::ForAll(vs, g) => {
                let n = scope.len();
                for v in vs {
                    if !first.contains(v) {
                        first.push(v.clone());
                    }
                    for s in scope.iter() {
                        edges.insert((s.clone(), v.clone()));
                    }
                    scope.push(v.clone());
                }
                walk(g, scope, first, edges);
                scope.truncate(n);
            }
            _ => {}
        }
    }
    walk(f, &mut Vec::new(), &mut first, &mut edges);
    let mut order = Vec::new();
    let mut left = first.clone();
    while !left.is_empty() {
        let pick = left
            .iter()
            .position(|v| !edges.iter().any(|(a, b)| b == v && left.contains(a) && a != v))
            .ok_or_else(|| Error::Unsupported("the quantifier nesting admits no common variable order".into()))?;
        order.push(left.remove(pick));
    }
    Ok(order)
}

fn decide_quantified(f: &Formula, limits: QeLimits) -> Result<bool> {
    let order = variable_order(f)?;
    let mut atoms: Vec<Poly> = Vec::new();
    let mut degree = 0;
    f.visit(&mut |g| {
        if let Formula::Atom(e, _) = g {
            degree = degree.max(e.degree());
        }
    });
    if order.len() > limits.max_vars || degree > limits.max_degree {
        return Err(Error::Capacity(format!(
            "sentence has {} real variables ({}) and degree {degree}; the limits are {} variables and degree {}",
            order.len(),
            order.join(", "),
            limits.max_vars,
            limits.max_degree
        )));
    }
    let mut index: HashMap<Poly, usize> = HashMap::new();
    collect_atoms(f, &order, &mut atoms, &mut index)?;
    let tree = decompose(&atoms, order.len())?;
    let level: BTreeMap<String, usize> = order.iter().enumerate().map(|(i, v)| (v.clone(), i + 1)).collect();
    let mut ev = Evaluator {
        tree: &tree,
        index,
        order,
        level,
        cache: HashMap::new(),
    };
    ev.eval(f, 0)
}

fn collect_atoms(f: &Formula, order: &[String], atoms: &mut Vec<Poly>, index: &mut HashMap<Poly, usize>) -> Result<()> {
    let mut err = None;
    f.visit(&mut |g| {
        if let Formula::Atom(e, _) = g {
            match e.to_poly(order) {
                Ok(p) => {
                    if !index.contains_key(&p) {
                        index.insert(p.clone(), atoms.len());
                        atoms.push(p);
                    }
                }
                Err(x) => err = Some(x),
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

struct Evaluator<'a> {
    tree: &'a CadTree,
    index: HashMap<Poly, usize>,
    order: Vec<String>,
    level: BTreeMap<String, usize>,
    cache: HashMap<(usize, usize), i8>,
}

impl Evaluator<'_> {
    fn sign(&mut self, node: usize, p: &Poly) -> i8 {
        let i = self.index[p];
        // evaluate where the polynomial lives, so that results are shared
        let need = p.main_var().map(|v| v + 1).unwrap_or(0);
        let mut at = node;
        while self.tree.nodes[at].level > need {
            at = self.tree.nodes[at].parent.expect("non-root");
        }
        if let Some(&s) = self.cache.get(&(at, i)) {
            return s;
        }
        let s = self.tree.sign_at_node(at, p);
        self.cache.insert((at, i), s);
        s
    }

    fn eval(&mut self, f: &Formula, node: usize) -> Result<bool> {
        match f {
            Formula::Atom(e, r) => {
                let p = e.to_poly(&self.order)?;
                Ok(r.holds(self.sign(node, &p)))
            }
            Formula::And(v) => {
                for g in v {
                    if !self.eval(g, node)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(v) => {
                for g in v {
                    if self.eval(g, node)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Not(g) => Ok(!self.eval(g, node)?),
            Formula::Member { set, .. } => Err(Error::Unsupported(format!("set parameter {set} is not instantiated"))),
            Formula::Exists(vs, g) | Formula::ForAll(vs, g) => {
                let exists = matches!(f, Formula::Exists(..));
                self.quantify(exists, vs, g, node)
            }
        }
    }

    fn quantify(&mut self, exists: bool, vs: &[String], body: &Formula, node: usize) -> Result<bool> {
        let Some((v, rest)) = vs.split_first() else {
            return self.eval(body, node);
        };
        let target = self.level[v];
        let mut at = node;
        while self.tree.nodes[at].level + 1 < target {
            at = self.tree.nodes[at].children[0];
        }
        if self.tree.nodes[at].level + 1 != target {
            return Err(Error::Inconsistency(format!("variable {v} is bound out of order")));
        }
        let children = self.tree.nodes[at].children.clone();
        for c in children {
            let t = self.quantify(exists, rest, body, c)?;
            if t == exists {
                return Ok(exists);
            }
        }
        Ok(!exists)
    }
}
