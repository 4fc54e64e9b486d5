//! Cylindrical algebraic decomposition in dimension at most 3, quantifier
//! elimination for small sentences, and set queries built on both.

mod project;
mod qe;
mod query;
mod topology;
mod tree;

pub use qe::{decide, decide_with, QeLimits, MAX_QE_VARS};
pub use query::{
    components_of, connected_components, decompose_for, dimension, is_empty, is_subset, membership, set_cells,
    sets_equal,
};
pub use topology::{topology, CellTopology};
pub use tree::{decompose, CadCell, CadTree, CellKind, CellRecord, MAX_CAD_DEGREE, MAX_CAD_DIM};
