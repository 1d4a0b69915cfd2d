//! Projective sequences, universal elements and the searches built on them:
//! preimages through fiber sequences, inverse rules, and the real quadratic
//! automaton whose image is dense but not closed.

mod closed_image;
mod real;
mod reversibility;
mod sequence;

pub use closed_image::{closed_image_search, fiber_sequence, restriction_map, ClosedImageReport, ClosedImageResult};
pub use real::{
    real_counterexample_thresholds, real_quadratic, thresholds_diverge, window_preimage_chain,
};
pub use reversibility::{reversibility_search, LevelDiagnostic, LevelOutcome, ReversibilityReport, ReversibilityResult};
pub use sequence::{
    ml_lift, universal_closure, universal_elements, Level, LevelSet, LiftReport, LiftResult, LimitThread,
    ProjectiveSequence, UniversalClosure, UniversalSet,
};

use crate::automata::CellularAutomaton;
use crate::lattice::{interior, GroupElement, Window};

/// `E_n`: the bounding box of `M ∪ {0}` grown by `n` in every direction.
pub fn exhaustion(tau: &CellularAutomaton, n: usize) -> Window {
    let d = tau.dim();
    let base = tau.memory().union(&Window::new(d, [GroupElement::zero(d)]).expect("single cell"));
    let (lo, hi) = base.bounds().expect("nonempty");
    let k = n as i64;
    let lo: Vec<i64> = lo.iter().map(|a| a - k).collect();
    let hi: Vec<i64> = hi.iter().map(|a| a + k).collect();
    Window::boxed(&lo, &hi)
}

/// `F = interior(E, M)`, the cells whose output is determined on `E`.
pub(crate) fn inner(tau: &CellularAutomaton, e: &Window) -> Window {
    interior(e, tau.memory())
}
