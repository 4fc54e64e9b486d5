use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A simplex as sorted vertex indices into the owning complex's label table.
pub type Simplex = Vec<u32>;

/// Finite abstract simplicial complex over string-labelled vertices.
///
/// The label table is sorted; vertex indices follow label order. Labels may
/// outlive their vertex after a collapse, so equality compares the complexes
/// through their labelled simplices.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: BTreeSet<Simplex>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labelled() == other.labelled()
    }
}

impl Eq for SimplicialComplex {}

/// Kind of an elementary move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Collapse,
    Expansion,
}

/// Elementary collapse or expansion of the pair `sigma < tau`, by vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CollapseStep {
    pub kind: StepKind,
    pub sigma: Vec<String>,
    pub tau: Vec<String>,
}

impl CollapseStep {
    pub fn collapse(sigma: &[&str], tau: &[&str]) -> Self {
        Self::new(StepKind::Collapse, sigma, tau)
    }

    pub fn expansion(sigma: &[&str], tau: &[&str]) -> Self {
        Self::new(StepKind::Expansion, sigma, tau)
    }

    fn new(kind: StepKind, sigma: &[&str], tau: &[&str]) -> Self {
        let norm = |s: &[&str]| {
            let mut v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            v.sort();
            v.dedup();
            v
        };
        CollapseStep {
            kind,
            sigma: norm(sigma),
            tau: norm(tau),
        }
    }

    /// Parses `C sigma tau` or `E sigma tau`.
    pub fn parse(line: &str) -> Result<Self> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [k, s, t] = toks.as_slice() else {
            return Err(Error::Invalid(format!(
                "expected `C sigma tau` or `E sigma tau`, got `{line}`"
            )));
        };
        let kind = match *k {
            "C" | "c" => StepKind::Collapse,
            "E" | "e" => StepKind::Expansion,
            _ => return Err(Error::Invalid(format!("unknown step kind `{k}`"))),
        };
        let mut sigma = parse_simplex(s)?;
        let mut tau = parse_simplex(t)?;
        sigma.sort();
        tau.sort();
        Ok(CollapseStep { kind, sigma, tau })
    }
}

impl fmt::Display for CollapseStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            StepKind::Collapse => "C",
            StepKind::Expansion => "E",
        };
        write!(f, "{k} {} {}", fmt_simplex(&self.sigma), fmt_simplex(&self.tau))
    }
}

/// Vertex labels of one facet token: comma separated, or one character each.
pub fn parse_simplex(tok: &str) -> Result<Vec<String>> {
    let labels: Vec<String> = if tok.contains(',') {
        tok.split(',').map(|s| s.to_string()).collect()
    } else {
        tok.chars().map(|c| c.to_string()).collect()
    };
    if labels.is_empty() || labels.iter().any(|l| l.is_empty()) {
        return Err(Error::Invalid(format!("empty vertex label in `{tok}`")));
    }
    if let Some(l) = labels
        .iter()
        .find(|l| !l.chars().all(|c| c.is_alphanumeric() || c == '_'))
    {
        return Err(Error::Invalid(format!("vertex label `{l}` is not alphanumeric")));
    }
    let mut seen = BTreeSet::new();
    for l in &labels {
        if !seen.insert(l) {
            return Err(Error::Invalid(format!("duplicate vertex `{l}` in facet `{tok}`")));
        }
    }
    Ok(labels)
}

/// Inverse of [`parse_simplex`] for sorted labels.
pub fn fmt_simplex(s: &[String]) -> String {
    if s.iter().all(|l| l.chars().count() == 1) {
        s.concat()
    } else {
        s.join(",")
    }
}

/// All nonempty subsets of a sorted simplex.
pub(crate) fn faces_of(s: &[u32]) -> impl Iterator<Item = Simplex> + '_ {
    (1u64..(1u64 << s.len())).map(move |mask| {
        s.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Free pairs `(sigma, tau)` of a set of simplices, sorted by `sigma`.
pub(crate) fn free_pairs(simplices: &BTreeSet<Simplex>) -> Vec<(Simplex, Simplex)> {
    let mut cofaces: BTreeMap<Simplex, (usize, Simplex)> = BTreeMap::new();
    for t in simplices.iter().filter(|t| t.len() >= 2) {
        for i in 0..t.len() {
            let mut s = t.clone();
            s.remove(i);
            let e = cofaces.entry(s).or_insert((0, Vec::new()));
            e.0 += 1;
            e.1 = t.clone();
        }
    }
    cofaces
        .into_iter()
        .filter(|(_, (c, _))| *c == 1)
        .map(|(s, (_, t))| (s, t))
        .collect()
}

pub(crate) fn euler_of(simplices: &BTreeSet<Simplex>) -> i64 {
    simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
}

impl SimplicialComplex {
    /// The empty complex.
    pub fn new() -> Self {
        Self::default()
    }

    /// Face closure of the given facets.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut labels: Vec<String> = facets.iter().flatten().map(|s| s.as_ref().to_string()).collect();
        labels.sort();
        labels.dedup();
        let mut k = SimplicialComplex {
            labels,
            simplices: BTreeSet::new(),
        };
        for f in facets {
            if f.is_empty() {
                return Err(Error::Invalid("empty facet".into()));
            }
            let s = k.index_strs(f)?;
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid("duplicate vertex in a facet".into()));
            }
            k.simplices.extend(faces_of(&s));
        }
        Ok(k)
    }

    /// Parses whitespace separated facet tokens; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                facets.push(parse_simplex(tok)?);
            }
        }
        Self::from_facets(&facets)
    }

    fn index_strs<S: AsRef<str>>(&self, s: &[S]) -> Result<Simplex> {
        let mut v = s
            .iter()
            .map(|l| {
                self.labels
                    .binary_search_by(|x| x.as_str().cmp(l.as_ref()))
                    .map(|i| i as u32)
                    .map_err(|_| Error::Invalid(format!("unknown vertex `{}`", l.as_ref())))
            })
            .collect::<Result<Simplex>>()?;
        v.sort_unstable();
        Ok(v)
    }

    /// Index form of a labelled simplex, if every label is known.
    pub fn index(&self, s: &[String]) -> Option<Simplex> {
        self.index_strs(s).ok()
    }

    pub fn label_simplex(&self, s: &[u32]) -> Vec<String> {
        s.iter().map(|&v| self.labels[v as usize].clone()).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &[String]) -> bool {
        self.index(s).is_some_and(|i| self.simplices.contains(&i))
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.iter().map(|s| s.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_of(&self.simplices)
    }

    /// Labelled simplices, sorted.
    pub fn labelled(&self) -> BTreeSet<Vec<String>> {
        self.simplices.iter().map(|s| self.label_simplex(s)).collect()
    }

    /// Maximal simplices, labelled and sorted.
    pub fn facets(&self) -> Vec<Vec<String>> {
        let free = self.facet_indices();
        let mut out: Vec<Vec<String>> = free.iter().map(|s| self.label_simplex(s)).collect();
        out.sort();
        out
    }

    pub(crate) fn facet_indices(&self) -> Vec<Simplex> {
        let mut subs: BTreeSet<Simplex> = BTreeSet::new();
        for t in self.simplices.iter().filter(|t| t.len() >= 2) {
            for i in 0..t.len() {
                let mut s = t.clone();
                s.remove(i);
                subs.insert(s);
            }
        }
        self.simplices.iter().filter(|s| !subs.contains(*s)).cloned().collect()
    }

    /// `self` is a subcomplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.labelled().is_subset(&other.labelled())
    }

    /// Free pairs `(sigma, tau)`: `tau` is the only simplex properly containing `sigma`.
    pub fn free_faces(&self) -> Vec<(Vec<String>, Vec<String>)> {
        let mut out: Vec<_> = free_pairs(&self.simplices)
            .into_iter()
            .map(|(s, t)| (self.label_simplex(&s), self.label_simplex(&t)))
            .collect();
        out.sort();
        out
    }

    fn check_pair(&self, step: &CollapseStep) -> Result<()> {
        if step.tau.len() != step.sigma.len() + 1 || !step.sigma.iter().all(|v| step.tau.contains(v)) {
            return Err(Error::InvalidStep(format!(
                "{} is not a facet of {}",
                fmt_simplex(&step.sigma),
                fmt_simplex(&step.tau)
            )));
        }
        Ok(())
    }

    /// Removes the free pair of a collapse step.
    pub fn apply_collapse(&self, step: &CollapseStep) -> Result<SimplicialComplex> {
        if step.kind != StepKind::Collapse {
            return Err(Error::InvalidStep("an expansion was given as a collapse".into()));
        }
        self.check_pair(step)?;
        let name = |s: &[String]| fmt_simplex(s);
        let tau = self
            .index(&step.tau)
            .filter(|t| self.simplices.contains(t))
            .ok_or_else(|| Error::InvalidStep(format!("{} is absent", name(&step.tau))))?;
        let sigma = self
            .index(&step.sigma)
            .filter(|s| self.simplices.contains(s))
            .ok_or_else(|| Error::InvalidStep(format!("{} is absent", name(&step.sigma))))?;
        let others = self
            .simplices
            .iter()
            .filter(|r| r.len() > sigma.len() && **r != tau && sigma.iter().all(|v| r.contains(v)))
            .count();
        if others > 0 {
            return Err(Error::InvalidStep(format!(
                "{} is not free: it has {} other coface(s)",
                name(&step.sigma),
                others
            )));
        }
        let mut k = self.clone();
        k.simplices.remove(&tau);
        k.simplices.remove(&sigma);
        Ok(k)
    }

    /// Adds the pair of an expansion step; `sigma` may bring a new vertex.
    pub fn apply_expansion(&self, step: &CollapseStep) -> Result<SimplicialComplex> {
        if step.kind != StepKind::Expansion {
            return Err(Error::InvalidStep("a collapse was given as an expansion".into()));
        }
        self.check_pair(step)?;
        for s in [&step.sigma, &step.tau] {
            if self.contains(s) {
                return Err(Error::InvalidStep(format!("{} is already present", fmt_simplex(s))));
            }
        }
        for i in 0..step.tau.len() {
            let mut f = step.tau.clone();
            f.remove(i);
            if f != step.sigma && !self.contains(&f) {
                return Err(Error::InvalidStep(format!(
                    "face {} of {} is absent",
                    fmt_simplex(&f),
                    fmt_simplex(&step.tau)
                )));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(step.tau.iter().cloned());
        labels.sort();
        labels.dedup();
        let mut k = SimplicialComplex {
            labels,
            simplices: BTreeSet::new(),
        };
        let old = self.labelled();
        k.simplices = old
            .iter()
            .chain([&step.sigma, &step.tau])
            .map(|s| k.index_strs(s))
            .collect::<Result<_>>()?;
        Ok(k)
    }

    /// Applies either kind of step.
    pub fn apply(&self, step: &CollapseStep) -> Result<SimplicialComplex> {
        match step.kind {
            StepKind::Collapse => self.apply_collapse(step),
            StepKind::Expansion => self.apply_expansion(step),
        }
    }

    /// Cone over the complex with the new apex `apex`.
    pub fn cone(&self, apex: &str) -> Result<SimplicialComplex> {
        if self.labels.iter().any(|l| l == apex) {
            return Err(Error::Invalid(format!("apex `{apex}` is already a vertex")));
        }
        let mut facets: Vec<Vec<String>> = self.facets();
        for f in facets.iter_mut() {
            f.push(apex.to_string());
        }
        facets.push(vec![apex.to_string()]);
        SimplicialComplex::from_facets(&facets)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets().iter().map(|s| fmt_simplex(s)).collect();
        write!(f, "{}", facets.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let k = SimplicialComplex::parse("abc").unwrap();
        assert_eq!(k.len(), 7);
        let h = SimplicialComplex::parse("ab ac bc").unwrap();
        assert_eq!(h.len(), 6);
        let a = SimplicialComplex::parse("a a").unwrap();
        assert_eq!(a.len(), 1);
        assert!(SimplicialComplex::parse("aba").is_err());
        assert!(SimplicialComplex::parse("a,,b").is_err());
        let m = SimplicialComplex::parse("v1,v2 v2,v3 # path").unwrap();
        assert_eq!(m.f_vector(), vec![3, 2]);
        assert_eq!(m.to_string(), "v1,v2 v2,v3");
    }

    #[test]
    fn free_faces_of_the_triangle() {
        let k = SimplicialComplex::parse("abc").unwrap();
        let names: Vec<String> = k
            .free_faces()
            .iter()
            .map(|(s, t)| format!("{}<{}", fmt_simplex(s), fmt_simplex(t)))
            .collect();
        assert_eq!(names, ["ab<abc", "ac<abc", "bc<abc"]);
        assert!(SimplicialComplex::parse("ab ac bc").unwrap().free_faces().is_empty());
    }

    #[test]
    fn collapses_and_expansions() {
        let k = SimplicialComplex::parse("abc").unwrap();
        let k1 = k.apply_collapse(&CollapseStep::parse("C ab abc").unwrap()).unwrap();
        assert_eq!(k1.to_string(), "ac bc");
        let k2 = k1.apply_collapse(&CollapseStep::parse("C b bc").unwrap()).unwrap();
        assert_eq!(k2.to_string(), "ac");
        let h = SimplicialComplex::parse("ab ac bc").unwrap();
        assert!(matches!(
            h.apply_collapse(&CollapseStep::parse("C ab abc").unwrap()),
            Err(Error::InvalidStep(_))
        ));
        let back = k1.apply_expansion(&CollapseStep::parse("E ab abc").unwrap()).unwrap();
        assert_eq!(back, k);
        let grown = k2.apply_expansion(&CollapseStep::parse("E d ad").unwrap()).unwrap();
        assert_eq!(grown.to_string(), "ac ad");
        assert!(k2.apply_expansion(&CollapseStep::parse("E b bd").unwrap()).is_err());
        assert!(k.apply_collapse(&CollapseStep::parse("C a abc").unwrap()).is_err());
    }
}
