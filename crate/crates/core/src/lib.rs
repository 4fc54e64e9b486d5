//! Workbench for semialgebraic geometry over real closed fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: exact rationals, sparse multivariate polynomials, real
//!   algebraic numbers and the subresultant machinery used by the CAD kernel.
//! * [`sa`]: semialgebraic set descriptions, their complexity and the
//!   encoding into the parameter spaces `A(n,p,q)`.
//! * [`fo`]: first-order formulas over the ordered-ring language and the
//!   compilers that emit the geometric sentence schemas.
//! * [`cad`]: cylindrical algebraic decomposition for ambient dimension at
//!   most three, quantifier elimination and derived set queries.
//! * [`topo`]: direct geometric verdicts (manifold classification,
//!   regularity, compactness, homeomorphism and cobordism checks).
//! * [`pl`]: finite simplicial complexes, collapses, collapse search,
//!   certificate verification and the collar map.

pub mod cad;
pub mod error;
pub mod fo;
pub mod pl;
pub mod poly;
pub mod sa;
pub mod topo;

pub use error::{Error, Result};
