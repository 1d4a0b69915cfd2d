//! Affine algebraic sets, constructible sets and regular maps.

mod algebraic;
mod constructible;
mod map;
mod text;

pub use algebraic::{
    all_points, enumerate_points, format_points, vanishing_ideal_of_points, zero_set, AlgebraicSet, Point,
};
pub use constructible::{
    constructible_op, open_dense_core, ConstructibleSet, LocallyClosedPiece, OpResult, SetOp,
};
pub use map::{
    image_closure, image_points, injectivity_report, map_compose, InjectivityReport, LevelReport,
    RegularMap, Verification,
};
pub use text::{parse_list, split_top_level};
