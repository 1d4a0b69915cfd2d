//! Exact arithmetic: fields, multivariate polynomials, Groebner bases.

mod eval;
mod field;
mod functional;
mod groebner;
mod order;
mod parse;
mod poly;

pub use eval::Evaluator;
pub use field::{default_modulus, is_irreducible, is_prime, Field, FieldElement, MAX_EXTENSION_SIZE};
pub use functional::{functional_normal_form, interpolate};
pub use groebner::{
    elimination, groebner_basis, ideal_contains, ideals_equal, intersect, reduce_mod, saturate,
    IdealBasis,
};
pub(crate) use groebner::fresh_name;
pub use order::{Monomial, MonomialOrder, OrderKind};
pub use poly::{MultiPoly, Ring, Term};
