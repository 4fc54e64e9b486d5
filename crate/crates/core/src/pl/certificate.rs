use std::fmt;

use crate::error::{Error, Result};
use crate::pl::complex::{fmt_simplex, CollapseStep, SimplicialComplex, StepKind};

/// Collapses and expansions of `base` relative to the fixed subcomplex,
/// ending at `target`.
///
/// Text form:
///
/// ```text
/// base: abc
/// fixed: a
/// target: a
/// C ab abc
/// C b bc
/// C c ac
/// ```
///
/// `fixed:` may be left empty or omitted; `#` starts a comment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCertificate {
    pub base: SimplicialComplex,
    pub fixed: SimplicialComplex,
    pub target: SimplicialComplex,
    pub steps: Vec<CollapseStep>,
}

/// Result of replaying a certificate; `index` is the 0-based failing step,
/// or the number of steps when only the final complex is wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Accept,
    Reject { index: usize, reason: String },
}

impl Verification {
    pub fn accepted(&self) -> bool {
        *self == Verification::Accept
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verification::Accept => write!(f, "accept"),
            Verification::Reject { index, reason } => write!(f, "reject at step {index}: {reason}"),
        }
    }
}

impl HomotopyCertificate {
    pub fn parse(text: &str) -> Result<Self> {
        let (mut base, mut fixed, mut target) = (None, None, None);
        let mut steps = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let header = ["base:", "fixed:", "target:"].into_iter().find(|h| line.starts_with(h));
            match header {
                Some(h) => {
                    let k = SimplicialComplex::parse(&line[h.len()..])?;
                    let slot = match h {
                        "base:" => &mut base,
                        "fixed:" => &mut fixed,
                        _ => &mut target,
                    };
                    if slot.replace(k).is_some() {
                        return Err(Error::Invalid(format!("line {}: repeated `{h}`", no + 1)));
                    }
                }
                None => {
                    steps.push(CollapseStep::parse(line).map_err(|e| Error::Invalid(format!("line {}: {e}", no + 1)))?)
                }
            }
        }
        Ok(HomotopyCertificate {
            base: base.ok_or_else(|| Error::Invalid("missing `base:` line".into()))?,
            fixed: fixed.unwrap_or_default(),
            target: target.ok_or_else(|| Error::Invalid("missing `target:` line".into()))?,
            steps,
        })
    }
}

impl fmt::Display for HomotopyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base: {}", self.base)?;
        writeln!(f, "fixed: {}", self.fixed)?;
        writeln!(f, "target: {}", self.target)?;
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Replays the steps, checking each move and that no simplex of the fixed
/// subcomplex is removed, then compares the result with the target.
pub fn verify_certificate(cert: &HomotopyCertificate) -> Verification {
    if !cert.fixed.is_subcomplex_of(&cert.base) {
        return Verification::Reject {
            index: 0,
            reason: "the fixed subcomplex is not contained in the base".into(),
        };
    }
    let mut cur = cert.base.clone();
    for (index, step) in cert.steps.iter().enumerate() {
        if step.kind == StepKind::Collapse {
            if let Some(s) = [&step.sigma, &step.tau].into_iter().find(|s| cert.fixed.contains(s)) {
                return Verification::Reject {
                    index,
                    reason: format!("removes {} of the fixed subcomplex", fmt_simplex(s)),
                };
            }
        }
        match cur.apply(step) {
            Ok(k) => cur = k,
            Err(e) => {
                return Verification::Reject {
                    index,
                    reason: e.to_string(),
                }
            }
        }
    }
    if cur != cert.target {
        return Verification::Reject {
            index: cert.steps.len(),
            reason: format!("final complex `{cur}` differs from the target `{}`", cert.target),
        };
    }
    Verification::Accept
}
