//! Algebraic cellular automata over finite fields and the rationals.

pub mod algebra;
pub mod automata;
pub mod budget;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod limits;

pub use budget::Budget;
pub use error::{Error, Result};
