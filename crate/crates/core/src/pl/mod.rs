//! Finite simplicial complexes, elementary collapses and expansions,
//! collapse search, certificate replay and the collar map.
//!
//! Complex files list one facet per whitespace separated token. A token is
//! either a run of one-character labels (`abc`) or comma separated labels
//! (`v1,v2,v3`).

mod certificate;
mod classic;
mod collar;
mod complex;
mod search;

pub use certificate::{verify_certificate, HomotopyCertificate, Verification};
pub use classic::{bing_house, bing_squares, dunce_hat, simplex, simplex_boundary, DUNCE_HAT};
pub use collar::{barycenter, collar_cone_map, is_barycentric, CollarPoint};
pub use complex::{fmt_simplex, parse_simplex, CollapseStep, Simplex, SimplicialComplex, StepKind};
pub use search::{collapse_search, greedy_collapse, Exhaustion, SearchOutcome, SearchResult, MAX_SEARCH_BUDGET};

/// Parses a complex file.
pub fn parse_complex(text: &str) -> crate::error::Result<SimplicialComplex> {
    SimplicialComplex::parse(text)
}

/// Free pairs `(sigma, tau)` of `k`.
pub fn free_faces(k: &SimplicialComplex) -> Vec<(Vec<String>, Vec<String>)> {
    k.free_faces()
}
