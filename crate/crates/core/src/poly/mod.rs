//! Exact arithmetic: rationals, sparse multivariate polynomials, real
//! algebraic numbers and resultants.

pub(crate) mod algreal;
pub(crate) mod field;
pub(crate) mod interval;
pub(crate) mod mpoly;
pub(crate) mod parse;
pub(crate) mod rat;
pub(crate) mod resultant;
pub(crate) mod upoly;

pub use algreal::{isolate_roots, rational_between, sign_at, AlgReal};
pub use field::{FiberRoot, KPoly, NumberField};
pub use interval::Interval;
pub use mpoly::{Monomial, Poly};
pub use parse::{default_var_names, parse_poly, parse_poly_with};
pub(crate) use rat::{fmt_rat, is_one, sign_of};
pub use rat::{parse_rat, rat, rat_from_int, simplest_in_closed, simplest_in_open, Rat};
pub use resultant::{discriminant, principal_subresultant, resultant, subresultant_coeffs, sylvester_determinant};
pub use upoly::UPoly;
