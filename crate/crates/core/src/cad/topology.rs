use std::collections::HashMap;

use crate::cad::tree::{CadTree, CellKind};
use crate::error::{Error, Result};
use crate::poly::{isolate_roots, rational_between, AlgReal, Poly, Rat, UPoly};

/// Closure and boundedness of the leaf cells of a decomposition of `R^1` or `R^2`.
#[derive(Clone, Debug)]
pub struct CellTopology {
    /// For each cell, the other cells meeting its closure (all of lower dimension).
    pub closure: Vec<Vec<usize>>,
    pub bounded: Vec<bool>,
}

impl CellTopology {
    /// Cells `a`, `b` are adjacent when one meets the closure of the other.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.closure[a].contains(&b) || self.closure[b].contains(&a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Limit {
    NegInf,
    Root(usize),
    PosInf,
}

pub fn topology(tree: &CadTree) -> Result<CellTopology> {
    let n = tree.ambient();
    let count = tree.len();
    let leaf_of: HashMap<usize, usize> = tree.leaves.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut closure = vec![Vec::new(); count];
    let mut bounded = vec![true; count];
    match n {
        0 => {}
        1 => {
            for i in 0..count {
                if i % 2 == 0 {
                    if i > 0 {
                        closure[i].push(i - 1);
                    }
                    if i + 1 < count {
                        closure[i].push(i + 1);
                    }
                    if i == 0 || i + 1 == count {
                        bounded[i] = false;
                    }
                }
            }
        }
        2 => {
            let xs = &tree.nodes[0].children;
            for (j, &xid) in xs.iter().enumerate() {
                let stack: Vec<usize> = tree.nodes[xid].children.iter().map(|c| leaf_of[c]).collect();
                let m = stack.len() / 2;
                // within the stack
                for (p, &leaf) in stack.iter().enumerate() {
                    if p % 2 == 0 {
                        if p > 0 {
                            closure[leaf].push(stack[p - 1]);
                        }
                        if p + 1 < stack.len() {
                            closure[leaf].push(stack[p + 1]);
                        }
                    }
                }
                let x_sector = tree.nodes[xid].kind == Some(CellKind::Sector);
                if !x_sector {
                    bounded[stack[0]] = false;
                    bounded[stack[2 * m]] = false;
                    continue;
                }
                if j == 0 || j + 1 == xs.len() {
                    for &leaf in &stack {
                        bounded[leaf] = false;
                    }
                }
                let mut finite = vec![true; m];
                for nb in [j.checked_sub(1), Some(j + 1).filter(|&k| k < xs.len())]
                    .into_iter()
                    .flatten()
                {
                    let nid = xs[nb];
                    let nstack: Vec<usize> = tree.nodes[nid].children.iter().map(|c| leaf_of[c]).collect();
                    let limits = side_limits(tree, xid, nid, m)?;
                    let last = nstack.len() as i64 - 1;
                    let pos = |l: Limit| match l {
                        Limit::NegInf => -1i64,
                        Limit::Root(r) => 2 * r as i64 + 1,
                        Limit::PosInf => last + 1,
                    };
                    for (k, &l) in limits.iter().enumerate() {
                        match l {
                            Limit::Root(r) => closure[stack[2 * k + 1]].push(nstack[2 * r + 1]),
                            _ => finite[k] = false,
                        }
                    }
                    for band in 0..=m {
                        let lo = if band == 0 { Limit::NegInf } else { limits[band - 1] };
                        let hi = if band == m { Limit::PosInf } else { limits[band] };
                        let (a, b) = (pos(lo).max(0), pos(hi).min(last));
                        for c in a..=b {
                            closure[stack[2 * band]].push(nstack[c as usize]);
                        }
                    }
                }
                for k in 0..m {
                    if !finite[k] {
                        bounded[stack[2 * k + 1]] = false;
                    }
                }
                for band in 0..=m {
                    if band == 0 || band == m || !finite[band - 1] || !finite[band] {
                        bounded[stack[2 * band]] = false;
                    }
                }
            }
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "cell adjacency is computed only in dimension at most 2, not {n}"
            )))
        }
    }
    for c in closure.iter_mut() {
        c.sort_unstable();
        c.dedup();
    }
    Ok(CellTopology { closure, bounded })
}

/// Limits of the section functions over the x-sector `xid` at its endpoint
/// `nid`, as positions among the roots over `nid`.
fn side_limits(tree: &CadTree, xid: usize, nid: usize, m: usize) -> Result<Vec<Limit>> {
    if m == 0 {
        return Ok(vec![]);
    }
    let a = tree.nodes[nid].sample[0].clone();
    let left = a < tree.nodes[xid].sample[0];
    let seps: Vec<Rat> = tree.nodes[nid]
        .children
        .iter()
        .filter(|&&c| tree.nodes[c].kind == Some(CellKind::Sector))
        .map(|&c| {
            tree.nodes[c].sample[1]
                .as_rat()
                .expect("sector samples are rational")
                .clone()
        })
        .collect();
    let polys = &tree.projection()[1];
    // the other end of the x-sector bounds the search
    let xs = &tree.nodes[0].children;
    let j = xs.iter().position(|&c| c == xid).expect("child");
    let far = if left {
        xs.get(j + 1)
    } else {
        j.checked_sub(1).map(|k| &xs[k])
    };
    let mut bound: Option<AlgReal> = far.map(|&f| tree.nodes[f].sample[0].clone());
    for p in polys {
        for s in &seps {
            let q = p.substitute(1, s);
            let Some(u) = q.to_upoly(0) else { continue };
            if u.is_zero() || u.deg() == 0 {
                continue;
            }
            for r in isolate_roots(&u.square_free())? {
                let beyond = if left { r > a } else { r < a };
                let closer = match &bound {
                    None => true,
                    Some(b) => {
                        if left {
                            r < *b
                        } else {
                            r > *b
                        }
                    }
                };
                if beyond && closer {
                    bound = Some(r);
                }
            }
        }
    }
    let xstar = if left {
        rational_between(Some(&a), bound.as_ref())
    } else {
        rational_between(bound.as_ref(), Some(&a))
    };
    let mut roots: Vec<AlgReal> = Vec::new();
    for p in polys {
        let q: Poly = p.substitute(0, &xstar);
        let Some(u): Option<UPoly> = q.to_upoly(1) else {
            continue;
        };
        if u.is_zero() || u.deg() == 0 {
            continue;
        }
        for r in isolate_roots(&u.square_free())? {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    if roots.len() != m {
        return Err(Error::Inconsistency(format!(
            "stack over x = {} has {} sections, expected {m}",
            xstar,
            roots.len()
        )));
    }
    Ok(roots
        .iter()
        .map(|r| {
            let below = seps.iter().filter(|s| AlgReal::from_rat((*s).clone()) < *r).count();
            if below == 0 {
                Limit::NegInf
            } else if below == seps.len() {
                Limit::PosInf
            } else {
                Limit::Root(below - 1)
            }
        })
        .collect())
}
