//! Command-line workbench for algebraic cellular automata: the `.aca` spec format,
//! a catalog of worked examples, and line-oriented reports.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod report;
pub mod selftest;
pub mod spec;

pub use cli::run;
