//! Cellular automata over `Z^d` with algebraic alphabets and polynomial local rules.

mod ca;
mod pattern;
mod periodic;

pub use ca::{
    block_var, ca_apply, ca_change_group, ca_compose, ca_make, ca_make_text, ca_minimal_memory,
    ca_truncation, depends_on_cell, product_ring, product_set, CellularAutomaton, GroupChange,
};
pub use pattern::{parse_element, rational, Pattern};
pub use periodic::{
    ca_periodic_map, surjunctivity_check, LatticeVerdict, PeriodicConfiguration, SurjunctivityReport,
};

#[cfg(test)]
mod tests;
