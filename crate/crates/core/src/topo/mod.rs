//! Direct geometric verdicts for small sets: curve manifold classification,
//! gradient regularity, compactness, homeomorphism and cobordism checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cad::{decide, decompose_for, membership, set_cells, topology, CadTree, CellTopology};
use crate::error::{Error, Result};
use crate::fo::{homeomorphism_clauses, Binding};
use crate::poly::{sign_at, AlgReal, Poly, Rat};
use crate::sa::{Rel, SaDescription, SignCond};

/// Outcome of [`check_curve_manifold`].
#[derive(Clone, Debug)]
pub enum ManifoldVerdict {
    ManifoldNoBoundary,
    /// Boundary points, in cell order.
    ManifoldWithBoundary(Vec<Vec<AlgReal>>),
    NotManifold(Vec<AlgReal>),
    Unsupported(String),
}

impl ManifoldVerdict {
    pub fn is_manifold(&self) -> bool {
        matches!(
            self,
            ManifoldVerdict::ManifoldNoBoundary | ManifoldVerdict::ManifoldWithBoundary(_)
        )
    }

    pub fn boundary(&self) -> &[Vec<AlgReal>] {
        match self {
            ManifoldVerdict::ManifoldWithBoundary(b) => b,
            _ => &[],
        }
    }

    pub fn record(&self) -> VerdictRecord {
        let (verdict, points, reason) = match self {
            ManifoldVerdict::ManifoldNoBoundary => ("manifold", vec![], None),
            ManifoldVerdict::ManifoldWithBoundary(b) => (
                "manifold-with-boundary",
                b.iter().map(|p| point_record(p)).collect(),
                None,
            ),
            ManifoldVerdict::NotManifold(w) => ("not-manifold", vec![point_record(w)], None),
            ManifoldVerdict::Unsupported(r) => ("unsupported", vec![], Some(r.clone())),
        };
        VerdictRecord {
            verdict: verdict.into(),
            points,
            reason,
        }
    }
}

impl fmt::Display for ManifoldVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldVerdict::ManifoldNoBoundary => write!(f, "manifold"),
            ManifoldVerdict::ManifoldWithBoundary(b) => {
                write!(f, "manifold-with-boundary")?;
                for p in b {
                    write!(f, " {}", fmt_point(p))?;
                }
                Ok(())
            }
            ManifoldVerdict::NotManifold(w) => write!(f, "not-manifold witness {}", fmt_point(w)),
            ManifoldVerdict::Unsupported(r) => write!(f, "unsupported: {r}"),
        }
    }
}

/// Machine-readable form of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub verdict: String,
    pub points: Vec<PointRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// A point as exact defining data plus decimal approximations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub exact: Vec<String>,
    pub approx: Vec<String>,
}

pub fn point_record(p: &[AlgReal]) -> PointRecord {
    PointRecord {
        exact: p.iter().map(|c| c.describe()).collect(),
        approx: p.iter().map(|c| c.to_decimal(6)).collect(),
    }
}

/// `(x, y)` with decimal coordinates, followed by exact data for irrational ones.
pub fn fmt_point(p: &[AlgReal]) -> String {
    let dec: Vec<String> = p.iter().map(|c| c.to_decimal(6)).collect();
    let mut s = format!("({})", dec.join(", "));
    if p.iter().any(|c| !c.is_rational()) {
        let ex: Vec<String> = p.iter().map(|c| c.describe()).collect();
        s.push_str(&format!("[{}]", ex.join("; ")));
    }
    s
}

/// Pass or fail with a witness point.
#[derive(Clone, Debug)]
pub enum Regularity {
    Pass,
    Fail(Vec<AlgReal>),
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::Pass => write!(f, "regular"),
            Regularity::Fail(w) => write!(f, "singular witness {}", fmt_point(w)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compactness {
    pub closed: bool,
    pub bounded: bool,
}

impl Compactness {
    pub fn compact(&self) -> bool {
        self.closed && self.bounded
    }
}

impl fmt::Display for Compactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            if self.closed { "closed" } else { "not-closed" },
            if self.bounded { "bounded" } else { "unbounded" }
        )
    }
}

/// Accept, or reject with a reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Accept,
    Reject(String),
}

impl Check {
    pub fn accepted(&self) -> bool {
        *self == Check::Accept
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Accept => write!(f, "accept"),
            Check::Reject(r) => write!(f, "reject: {r}"),
        }
    }
}

fn check_plane(d: &SaDescription) -> Result<()> {
    if d.ambient == 0 || d.ambient > 2 {
        return Err(Error::Unsupported(format!(
            "curve checks run in R^1 or R^2, not R^{}",
            d.ambient
        )));
    }
    Ok(())
}

/// Closure lists made transitive.
fn full_closure(top: &CellTopology) -> Vec<Vec<usize>> {
    let mut cl = top.closure.clone();
    loop {
        let mut changed = false;
        for i in 0..cl.len() {
            let mut add = Vec::new();
            for &j in &cl[i] {
                for &k in &cl[j] {
                    if !cl[i].contains(&k) && !add.contains(&k) {
                        add.push(k);
                    }
                }
            }
            if !add.is_empty() {
                cl[i].extend(add);
                cl[i].sort_unstable();
                changed = true;
            }
        }
        if !changed {
            return cl;
        }
    }
}

/// Cell-level classification: boundary cells, a singular cell, or too large.
enum Local {
    Manifold(Vec<usize>),
    Singular(usize),
    TooBig,
}

fn classify(tree: &CadTree, inside: &[bool], top: &CellTopology) -> Local {
    let cells = tree.cells();
    if cells.iter().zip(inside).any(|(c, &b)| b && c.dim >= 2) {
        return Local::TooBig;
    }
    let curve = cells.iter().zip(inside).any(|(c, &b)| b && c.dim == 1);
    let mut boundary = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        if c.dim != 0 || !inside[i] {
            continue;
        }
        let count = (0..cells.len())
            .filter(|&j| inside[j] && cells[j].dim == 1 && top.closure[j].contains(&i))
            .count();
        match count {
            0 if curve => return Local::Singular(i),
            0 | 2 => {}
            1 => boundary.push(i),
            _ => return Local::Singular(i),
        }
    }
    Local::Manifold(boundary)
}

/// Classifies a set of dimension at most one in `R^1` or `R^2` by counting
/// the half-branches of the set at each point cell of a decomposition.
pub fn check_curve_manifold(d: &SaDescription) -> Result<ManifoldVerdict> {
    check_plane(d)?;
    let tree = decompose_for(&[d])?;
    let inside = membership(&tree, d)?;
    let top = topology(&tree)?;
    Ok(match classify(&tree, &inside, &top) {
        Local::TooBig => ManifoldVerdict::Unsupported("the set has two-dimensional cells".into()),
        Local::Singular(i) => ManifoldVerdict::NotManifold(tree.cells()[i].sample.clone()),
        Local::Manifold(b) if b.is_empty() => ManifoldVerdict::ManifoldNoBoundary,
        Local::Manifold(b) => {
            ManifoldVerdict::ManifoldWithBoundary(b.into_iter().map(|i| tree.cells()[i].sample.clone()).collect())
        }
    })
}

/// `Some(true)` when `s` is a manifold whose boundary is exactly the set `t`,
/// `Some(false)` when it is a manifold with another boundary, `None` when it
/// is not a manifold.
pub fn boundary_equals(s: &SaDescription, t: &SaDescription) -> Result<Option<bool>> {
    check_plane(s)?;
    let tree = decompose_for(&[s, t])?;
    let inside = membership(&tree, s)?;
    let top = topology(&tree)?;
    match classify(&tree, &inside, &top) {
        Local::TooBig => Err(Error::Unsupported("the set has two-dimensional cells".into())),
        Local::Singular(_) => Ok(None),
        Local::Manifold(b) => {
            let tin = membership(&tree, t)?;
            Ok(Some((0..tin.len()).all(|i| tin[i] == b.contains(&i))))
        }
    }
}

fn gradient_set(f: &Poly) -> Result<SaDescription> {
    let mut conj = vec![SignCond::new(f.clone(), Rel::Eq)];
    for i in 0..f.arity() {
        conj.push(SignCond::new(f.derivative(i)?, Rel::Eq));
    }
    SaDescription::new("singular", f.arity(), vec![conj])
}

/// Passes when the gradient of `f` does not vanish on `d`, which must lie in `{f = 0}`.
pub fn regularity_check(f: &Poly, d: &SaDescription) -> Result<Regularity> {
    if f.arity() != d.ambient {
        return Err(Error::Dimension {
            expected: d.ambient,
            found: f.arity(),
        });
    }
    let zero = SaDescription::new("zero", d.ambient, vec![vec![SignCond::new(f.clone(), Rel::Eq)]])?;
    if !crate::cad::is_subset(d, &zero)? {
        return Err(Error::Inconsistency(format!(
            "{} is not contained in the zero set of {f}",
            d.name
        )));
    }
    let e = gradient_set(f)?.intersect(d)?;
    let tree = decompose_for(&[&e])?;
    let cells = set_cells(&tree, &e)?;
    Ok(match cells.iter().min_by_key(|c| c.dim) {
        None => Regularity::Pass,
        Some(c) => Regularity::Fail(c.sample.clone()),
    })
}

/// Closedness and boundedness of a set in `R^n`, `n <= 2`.
pub fn compactness_check(d: &SaDescription) -> Result<Compactness> {
    if d.ambient > 2 {
        return Err(Error::Unsupported(format!(
            "compactness is checked only in dimension at most 2, not {}",
            d.ambient
        )));
    }
    let tree = decompose_for(&[d])?;
    let inside = membership(&tree, d)?;
    let top = topology(&tree)?;
    let cl = full_closure(&top);
    let closed = (0..inside.len())
        .filter(|&i| inside[i])
        .all(|i| cl[i].iter().all(|&j| inside[j]));
    let bounded = (0..inside.len()).filter(|&i| inside[i]).all(|i| top.bounded[i]);
    Ok(Compactness { closed, bounded })
}

/// The graph with its two factors exchanged.
pub fn transpose(g: &SaDescription) -> Result<SaDescription> {
    if g.ambient % 2 != 0 {
        return Err(Error::Invalid(format!(
            "a graph lives in an even dimension, not {}",
            g.ambient
        )));
    }
    let n = g.ambient / 2;
    let map: Vec<usize> = (0..g.ambient).map(|i| (i + n) % g.ambient).collect();
    let conjuncts = g
        .conjuncts
        .iter()
        .map(|c| {
            c.iter()
                .map(|a| SignCond::new(a.poly.remap(g.ambient, &map), a.rel))
                .collect()
        })
        .collect();
    SaDescription::new(g.name.clone(), g.ambient, conjuncts)
}

/// Verifies that `g` is the graph of a homeomorphism `x -> y`.
///
/// For `n = 1` every clause is decided exactly; continuity is replaced by
/// closedness of the graph, which suffices for compact `x` and `y`. For
/// `n >= 2` the graph is probed over the sample points of `x` and `y`; a
/// failed probe rejects, otherwise the result is `Unsupported`.
pub fn verify_homeo(x: &SaDescription, y: &SaDescription, g: &SaDescription) -> Result<Check> {
    let n = x.ambient;
    if n == 0 {
        return Err(Error::Invalid("homeomorphisms of R^0 are not checked".into()));
    }
    for (d, want) in [(y, n), (g, 2 * n)] {
        if d.ambient != want {
            return Err(Error::Dimension {
                expected: want,
                found: d.ambient,
            });
        }
    }
    if n >= 2 {
        if let Some(reason) = probe(x, y, g)? {
            return Ok(Check::Reject(reason));
        }
        if let Some(reason) = probe(y, x, &transpose(g)?)? {
            return Ok(Check::Reject(format!("inverse: {reason}")));
        }
        return Err(Error::Unsupported(format!(
            "homeomorphisms in R^{n} are only falsified, and no probe failed"
        )));
    }
    for (label, d) in [("domain", x), ("target", y)] {
        if !compactness_check(d)?.compact() {
            return Ok(Check::Reject(format!("{label} is not compact")));
        }
    }
    let clauses = homeomorphism_clauses(
        &Binding::Set(x.clone()),
        &Binding::Set(y.clone()),
        &Binding::Set(g.clone()),
        n,
    )?;
    for (name, f) in clauses {
        if name.contains("continuous") {
            continue;
        }
        if !decide(&f)? {
            return Ok(Check::Reject(name));
        }
    }
    if !compactness_check(g)?.closed {
        return Ok(Check::Reject("graph not closed".into()));
    }
    Ok(Check::Accept)
}

/// Restricts `g` to the fiber over the rational point `a`, as a set in `R^n`.
fn fiber(g: &SaDescription, a: &[Rat]) -> Result<SaDescription> {
    let n = a.len();
    let mut map = vec![0; 2 * n];
    for (j, m) in map.iter_mut().enumerate().skip(n) {
        *m = j - n;
    }
    let conjuncts = g
        .conjuncts
        .iter()
        .map(|c| {
            c.iter()
                .map(|s| {
                    let mut p = s.poly.clone();
                    for (i, v) in a.iter().enumerate() {
                        p = p.substitute(i, v);
                    }
                    SignCond::new(p.remap(n, &map), s.rel)
                })
                .collect()
        })
        .collect();
    SaDescription::new("fiber", n, conjuncts)
}

/// Checks totality, functionality and the target at rational sample points of `x`.
fn probe(x: &SaDescription, y: &SaDescription, g: &SaDescription) -> Result<Option<String>> {
    let tree = decompose_for(&[x])?;
    for c in set_cells(&tree, x)? {
        let Some(a) = c
            .sample
            .iter()
            .map(|v| v.as_rat().cloned())
            .collect::<Option<Vec<Rat>>>()
        else {
            continue;
        };
        let fib = fiber(g, &a)?;
        let ft = decompose_for(&[&fib])?;
        let pts = set_cells(&ft, &fib)?;
        let at = fmt_point(&c.sample);
        match pts.as_slice() {
            [] => return Ok(Some(format!("total: no image at {at}"))),
            [p] if p.dim == 0 => {
                let mut ok = false;
                for conj in &y.conjuncts {
                    let mut all = true;
                    for s in conj {
                        if !s.rel.holds(sign_at(&s.poly, &p.sample)?) {
                            all = false;
                            break;
                        }
                    }
                    if all {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Ok(Some(format!("graph_in_product: image of {at} leaves the target")));
                }
            }
            _ => return Ok(Some(format!("functional: several images at {at}"))),
        }
    }
    Ok(None)
}

/// Checks that `m` is a compact curve with boundary exactly `m0 ∪ m1` and
/// `m0 ∩ m1 = ∅`. Empty ends are allowed.
pub fn check_cobordism(m: &SaDescription, m0: &SaDescription, m1: &SaDescription) -> Result<Check> {
    check_plane(m)?;
    if !compactness_check(m)?.compact() {
        return Ok(Check::Reject("M is not compact".into()));
    }
    let tree = decompose_for(&[m, m0, m1])?;
    let inside = membership(&tree, m)?;
    if !tree.cells().iter().zip(&inside).any(|(c, &b)| b && c.dim == 1) {
        return Ok(Check::Reject("M is not a curve".into()));
    }
    let top = topology(&tree)?;
    let boundary = match classify(&tree, &inside, &top) {
        Local::TooBig => return Ok(Check::Reject("M is not a curve".into())),
        Local::Singular(i) => {
            return Ok(Check::Reject(format!(
                "M is not a manifold at {}",
                fmt_point(&tree.cells()[i].sample)
            )))
        }
        Local::Manifold(b) => b,
    };
    let (a, b) = (membership(&tree, m0)?, membership(&tree, m1)?);
    if let Some(i) = (0..a.len()).find(|&i| a[i] && b[i]) {
        return Ok(Check::Reject(format!(
            "M0 and M1 meet at {}",
            fmt_point(&tree.cells()[i].sample)
        )));
    }
    for i in 0..a.len() {
        let ends = a[i] || b[i];
        if ends != boundary.contains(&i) {
            let what = if ends {
                "is not a boundary point of M"
            } else {
                "is a boundary point of M outside M0 ∪ M1"
            };
            return Ok(Check::Reject(format!(
                "boundary mismatch: {} {what}",
                fmt_point(&tree.cells()[i].sample)
            )));
        }
    }
    Ok(Check::Accept)
}
