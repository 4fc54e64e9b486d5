use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::pl::certificate::HomotopyCertificate;
use crate::pl::complex::{euler_of, free_pairs, CollapseStep, Simplex, SimplicialComplex, StepKind};

/// Largest state budget accepted by [`collapse_search`].
pub const MAX_SEARCH_BUDGET: usize = 10_000_000;

/// Why a search stopped without a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    /// The state budget ran out.
    Budget,
    /// Every reachable state was explored.
    Complete,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Certificate(HomotopyCertificate),
    Exhausted(Exhaustion),
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// States expanded, the root included.
    pub expanded: usize,
}

fn facet_key(s: &BTreeSet<Simplex>) -> Vec<Simplex> {
    let mut subs: HashSet<Simplex> = HashSet::new();
    for t in s.iter().filter(|t| t.len() >= 2) {
        for i in 0..t.len() {
            let mut f = t.clone();
            f.remove(i);
            subs.insert(f);
        }
    }
    s.iter().filter(|f| !subs.contains(*f)).cloned().collect()
}

struct Dfs<'a> {
    fixed: &'a BTreeSet<Simplex>,
    target: &'a BTreeSet<Simplex>,
    budget: usize,
    expanded: usize,
    out_of_budget: bool,
    visited: HashSet<Vec<Simplex>>,
    path: Vec<(Simplex, Simplex)>,
}

impl Dfs<'_> {
    fn run(&mut self, state: &BTreeSet<Simplex>) -> bool {
        if state == self.target {
            return true;
        }
        if !self.visited.insert(facet_key(state)) {
            return false;
        }
        if self.expanded >= self.budget {
            self.out_of_budget = true;
            return false;
        }
        self.expanded += 1;
        for (s, t) in free_pairs(state) {
            if self.fixed.contains(&s) || self.fixed.contains(&t) {
                continue;
            }
            let mut next = state.clone();
            next.remove(&s);
            next.remove(&t);
            self.path.push((s, t));
            if self.run(&next) {
                return true;
            }
            self.path.pop();
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Depth-first search for a sequence of elementary collapses of `k` onto the
/// subcomplex `y`, never removing a simplex of `y`.
///
/// Free pairs are tried in lexicographic order of the free face; states are
/// memoised by their sorted facets and `budget` bounds the expanded states.
pub fn collapse_search(k: &SimplicialComplex, y: &SimplicialComplex, budget: usize) -> Result<SearchResult> {
    if budget > MAX_SEARCH_BUDGET {
        return Err(Error::Capacity(format!(
            "budget {budget} exceeds {MAX_SEARCH_BUDGET} states"
        )));
    }
    if !y.is_subcomplex_of(k) {
        return Err(Error::Invalid("the target is not a subcomplex".into()));
    }
    let fixed: BTreeSet<Simplex> = y
        .labelled()
        .iter()
        .map(|s| k.index(s).expect("subcomplex labels"))
        .collect();
    let exhausted = |expanded| SearchResult {
        outcome: SearchOutcome::Exhausted(Exhaustion::Complete),
        expanded,
    };
    // collapses keep the Euler characteristic and remove simplices in pairs
    if euler_of(k.simplices()) != euler_of(&fixed) || (k.len() - fixed.len()) % 2 == 1 {
        return Ok(exhausted(0));
    }
    let mut dfs = Dfs {
        fixed: &fixed,
        target: &fixed,
        budget,
        expanded: 0,
        out_of_budget: false,
        visited: HashSet::new(),
        path: Vec::new(),
    };
    if dfs.run(k.simplices()) {
        let steps = dfs
            .path
            .iter()
            .map(|(s, t)| CollapseStep {
                kind: StepKind::Collapse,
                sigma: k.label_simplex(s),
                tau: k.label_simplex(t),
            })
            .collect();
        return Ok(SearchResult {
            outcome: SearchOutcome::Certificate(HomotopyCertificate {
                base: k.clone(),
                fixed: y.clone(),
                target: y.clone(),
                steps,
            }),
            expanded: dfs.expanded,
        });
    }
    if dfs.out_of_budget {
        return Ok(SearchResult {
            outcome: SearchOutcome::Exhausted(Exhaustion::Budget),
            expanded: dfs.expanded,
        });
    }
    Ok(exhausted(dfs.expanded))
}

/// Collapses greedily, always taking the first free pair outside `y`, until
/// none is left. Returns the steps and the final complex.
pub fn greedy_collapse(k: &SimplicialComplex, y: &SimplicialComplex) -> Result<(Vec<CollapseStep>, SimplicialComplex)> {
    if !y.is_subcomplex_of(k) {
        return Err(Error::Invalid("the target is not a subcomplex".into()));
    }
    let mut cur = k.clone();
    let mut steps = Vec::new();
    loop {
        let next = cur
            .free_faces()
            .into_iter()
            .find(|(s, t)| !y.contains(s) && !y.contains(t));
        let Some((sigma, tau)) = next else {
            return Ok((steps, cur));
        };
        let step = CollapseStep {
            kind: StepKind::Collapse,
            sigma,
            tau,
        };
        cur = cur.apply_collapse(&step)?;
        steps.push(step);
    }
}
