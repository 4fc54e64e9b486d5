use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cad::project::projection_sets;
use crate::error::{Error, Result};
use crate::poly::{isolate_roots, rational_between, sign_at, AlgReal, FiberRoot, KPoly, NumberField, Poly, UPoly};

pub const MAX_CAD_DIM: usize = 3;
/// Largest total degree of an input polynomial.
pub const MAX_CAD_DEGREE: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Sector,
    Section,
}

/// A leaf cell of a decomposition of `R^n`.
#[derive(Clone, Debug)]
pub struct CadCell {
    /// 1-based positions in the successive stacks; odd entries are sectors.
    pub index: Vec<usize>,
    pub kinds: Vec<CellKind>,
    pub sample: Vec<AlgReal>,
    /// Sign of each input polynomial on the cell, in input order.
    pub signs: Vec<i8>,
    pub dim: usize,
}

/// Exact data needed to evaluate polynomials at a node's sample point.
#[derive(Clone, Debug)]
struct Ctx {
    /// Field holding every coordinate but the last.
    field: NumberField,
    images: Vec<UPoly>,
    last: Option<FiberRoot>,
}

impl Ctx {
    fn root() -> Ctx {
        Ctx {
            field: NumberField::rational(),
            images: vec![],
            last: None,
        }
    }

    /// Field holding every coordinate, for lifting.
    fn full(&self) -> Result<(NumberField, Vec<UPoly>)> {
        match &self.last {
            None => Ok((self.field.clone(), self.images.clone())),
            Some(root) => match &root.value {
                AlgReal::Exact(r) => {
                    let mut im = self.images.clone();
                    im.push(UPoly::constant(r.clone()));
                    Ok((self.field.clone(), im))
                }
                _ => {
                    let (f, gimg, b) = self.field.extend(root)?;
                    let mut im: Vec<UPoly> = self.images.iter().map(|e| f.compose(e, &gimg)).collect();
                    im.push(b);
                    Ok((f, im))
                }
            },
        }
    }

    /// Sign at the sample of a polynomial in the first `level` variables.
    fn sign(&self, p: &Poly, level: usize) -> i8 {
        if level == 0 || p.is_constant() {
            return p.constant_value().map(|c| crate::poly::sign_of(&c)).unwrap_or(0);
        }
        let mut subst: Vec<Option<UPoly>> = vec![None; p.arity()];
        for (i, e) in self.images.iter().enumerate() {
            subst[i] = Some(e.clone());
        }
        let h = KPoly::from_poly(&self.field, p, &subst, level - 1);
        h.sign_at_root(&self.field, self.last.as_ref().expect("level >= 1"))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub level: usize,
    pub parent: Option<usize>,
    pub kind: Option<CellKind>,
    pub index: Vec<usize>,
    pub sample: Vec<AlgReal>,
    pub children: Vec<usize>,
    ctx: Ctx,
}

/// Cylindrical algebraic decomposition of `R^n`, `n <= 3`.
#[derive(Clone, Debug)]
pub struct CadTree {
    n: usize,
    inputs: Vec<Poly>,
    levels: Vec<Vec<Poly>>,
    pub(crate) nodes: Vec<Node>,
    /// Node ids of the leaves in cylindrical (lexicographic) order.
    pub(crate) leaves: Vec<usize>,
    cells: Vec<CadCell>,
}

/// Sign-invariant decomposition for the given polynomials, all of arity `n`.
pub fn decompose(polys: &[Poly], n: usize) -> Result<CadTree> {
    if n > MAX_CAD_DIM {
        return Err(Error::Unsupported(format!(
            "decomposition of R^{n}: dimensions above {MAX_CAD_DIM} are out of scope"
        )));
    }
    for p in polys {
        if p.arity() != n {
            return Err(Error::Dimension {
                expected: n,
                found: p.arity(),
            });
        }
        if p.degree() > MAX_CAD_DEGREE {
            return Err(Error::Capacity(format!(
                "polynomial {p} has degree {} above the limit {MAX_CAD_DEGREE}",
                p.degree()
            )));
        }
    }
    let levels = projection_sets(polys, n);
    let mut nodes = vec![Node {
        level: 0,
        parent: None,
        kind: None,
        index: vec![],
        sample: vec![],
        children: vec![],
        ctx: Ctx::root(),
    }];
    let mut frontier = vec![0usize];
    for level in 0..n {
        let stacks: Vec<Lifted> = frontier
            .par_iter()
            .map(|&id| lift(&nodes[id].ctx, &levels[level], level))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (&pid, (field, images, stack)) in frontier.iter().zip(stacks) {
            for (i, (kind, root)) in stack.into_iter().enumerate() {
                let id = nodes.len();
                let parent = &nodes[pid];
                let mut index = parent.index.clone();
                index.push(i + 1);
                let mut sample = parent.sample.clone();
                sample.push(root.value.clone());
                nodes.push(Node {
                    level: level + 1,
                    parent: Some(pid),
                    kind: Some(kind),
                    index,
                    sample,
                    children: vec![],
                    ctx: Ctx {
                        field: field.clone(),
                        images: images.clone(),
                        last: Some(root),
                    },
                });
                nodes[pid].children.push(id);
                next.push(id);
            }
        }
        frontier = next;
    }
    let leaves = frontier;
    let cells: Vec<CadCell> = leaves
        .par_iter()
        .map(|&id| {
            let node = &nodes[id];
            let mut kinds = Vec::with_capacity(n);
            let mut cur = id;
            while let Some(k) = nodes[cur].kind {
                kinds.push(k);
                cur = nodes[cur].parent.expect("non-root");
            }
            kinds.reverse();
            let signs = polys.iter().map(|p| node.ctx.sign(p, n)).collect();
            CadCell {
                index: node.index.clone(),
                dim: kinds.iter().filter(|k| **k == CellKind::Sector).count(),
                kinds,
                sample: node.sample.clone(),
                signs,
            }
        })
        .collect();
    let tree = CadTree {
        n,
        inputs: polys.to_vec(),
        levels,
        nodes,
        leaves,
        cells,
    };
    Ok(tree)
}

/// Roots over the node's sample of the level polynomials, as an alternating
/// sector/section stack.
type Lifted = (NumberField, Vec<UPoly>, Vec<(CellKind, FiberRoot)>);

fn lift(ctx: &Ctx, polys: &[Poly], level: usize) -> Result<Lifted> {
    let (field, images) = ctx.full()?;
    let mut roots: Vec<FiberRoot> = Vec::new();
    for p in polys {
        let mut subst: Vec<Option<UPoly>> = vec![None; p.arity()];
        for (i, e) in images.iter().enumerate() {
            subst[i] = Some(e.clone());
        }
        let h = KPoly::from_poly(&field, p, &subst, level);
        if h.degree() == 0 {
            continue;
        }
        for r in h.real_roots(&field)? {
            if !roots.iter().any(|s| s.value == r.value) {
                roots.push(r);
            }
        }
    }
    roots.sort_by(|a, b| a.value.cmp(&b.value));
    let sector = |lo: Option<&AlgReal>, hi: Option<&AlgReal>| {
        let r = rational_between(lo, hi);
        (
            CellKind::Sector,
            FiberRoot {
                value: AlgReal::from_rat(r.clone()),
                poly: KPoly::from_rational(&UPoly::linear_root(&r)),
            },
        )
    };
    let mut stack = Vec::with_capacity(2 * roots.len() + 1);
    let mut prev: Option<AlgReal> = None;
    for r in roots {
        stack.push(sector(prev.as_ref(), Some(&r.value)));
        prev = Some(r.value.clone());
        stack.push((CellKind::Section, r));
    }
    stack.push(sector(prev.as_ref(), None));
    Ok((field, images, stack))
}

impl CadTree {
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn inputs(&self) -> &[Poly] {
        &self.inputs
    }

    /// Projection factors, indexed by main variable.
    pub fn projection(&self) -> &[Vec<Poly>] {
        &self.levels
    }

    pub fn cells(&self) -> &[CadCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Sign of an arbitrary polynomial of arity `n` on leaf cell `i`.
    pub fn sign_on_cell(&self, i: usize, p: &Poly) -> i8 {
        self.nodes[self.leaves[i]].ctx.sign(p, self.n)
    }

    /// Sign of `p` (in the first `node.level` variables) at a node.
    pub(crate) fn sign_at_node(&self, id: usize, p: &Poly) -> i8 {
        let node = &self.nodes[id];
        node.ctx.sign(p, node.level)
    }

    /// Cross-checks every stored sign against the independent evaluator.
    pub fn verify(&self) -> Result<()> {
        for c in &self.cells {
            for (p, &s) in self.inputs.iter().zip(&c.signs) {
                let t = sign_at(p, &c.sample)?;
                if t != s {
                    return Err(Error::Inconsistency(format!(
                        "cell {:?}: stored sign {s} of {p} but sample gives {t}",
                        c.index
                    )));
                }
            }
        }
        Ok(())
    }

    /// Leaf index of the cell containing a rational point.
    pub fn locate(&self, x: &[crate::poly::Rat]) -> Result<usize> {
        if x.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut id = 0;
        for (k, xk) in x.iter().enumerate() {
            // roots of the level polynomials on the fiber through the point
            let mut roots: Vec<AlgReal> = Vec::new();
            for p in &self.levels[k] {
                let mut q = p.clone();
                for (i, xi) in x[..k].iter().enumerate() {
                    q = q.substitute(i, xi);
                }
                let u = q.to_upoly(k).expect("only x_k remains");
                if u.deg() == 0 {
                    continue;
                }
                for r in isolate_roots(&u.square_free())? {
                    if !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
            let t = AlgReal::from_rat(xk.clone());
            let below = roots.iter().filter(|r| **r < t).count();
            let pos = if roots.contains(&t) { 2 * below + 1 } else { 2 * below };
            id = *self.nodes[id]
                .children
                .get(pos)
                .ok_or_else(|| Error::Inconsistency("stack shape differs from the fiber".into()))?;
        }
        Ok(self.leaves.iter().position(|&l| l == id).expect("leaf"))
    }
}

/// One cell as a plain record: kinds, decimal sample, exact sample, signs, dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub index: Vec<usize>,
    pub kinds: Vec<CellKind>,
    pub sample: Vec<String>,
    pub sample_exact: Vec<String>,
    pub signs: Vec<i8>,
    pub dim: usize,
}

impl CadCell {
    pub fn record(&self) -> CellRecord {
        CellRecord {
            index: self.index.clone(),
            kinds: self.kinds.clone(),
            sample: self.sample.iter().map(|a| a.to_decimal(6)).collect(),
            sample_exact: self.sample.iter().map(|a| a.describe()).collect(),
            signs: self.signs.clone(),
            dim: self.dim,
        }
    }
}
