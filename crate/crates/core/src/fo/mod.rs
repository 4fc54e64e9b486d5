//! First-order formulas over the ordered field of reals and the sentence
//! schemas for manifolds, boundaries, homeomorphisms and collapses.

mod expr;
mod formula;
mod infix;
mod schema;
mod sexpr;

pub use expr::{compose, Expr};
pub use formula::{description_formula, Formula};
pub use infix::parse_infix;
pub use schema::{
    collapse_clauses, compile_boundary, compile_collapse, compile_homeomorphism, compile_submanifold,
    homeomorphism_clauses, Binding, PredicateInstance, Schema,
};
pub use sexpr::{expr_sexpr, parse_sexpr, to_sexpr};

/// Alias of `to_sexpr`.
pub fn serialize(f: &Formula) -> String {
    to_sexpr(f)
}

/// Alias of `parse_sexpr`.
pub fn parse_formula(text: &str) -> crate::error::Result<Formula> {
    parse_sexpr(text)
}
