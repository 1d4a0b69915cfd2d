use std::fmt::Write as _;

use crate::algebra::{groebner_basis, IdealBasis, MonomialOrder, MultiPoly, OrderKind};
use crate::automata::{ca_apply, ca_truncation, product_set, CellularAutomaton, Pattern};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{AlgebraicSet, ConstructibleSet, Point, RegularMap, Verification};
use crate::lattice::{GroupElement, Window};

use super::sequence::{ml_lift, Level, LevelSet, LiftReport, LiftResult, ProjectiveSequence};
use super::exhaustion;

/// Restriction `A^{E_{n+1}} -> A^{E_n}`.
pub fn restriction_map(alphabet: &AlgebraicSet, big: &Window, small: &Window) -> Result<RegularMap> {
    let m = alphabet.ambient();
    let source = product_set(alphabet, big.len());
    let target = product_set(alphabet, small.len());
    let ring = source.ring();
    let mut comps = Vec::with_capacity(small.len() * m);
    for g in small.elements() {
        let c = big
            .index_of(g)
            .ok_or_else(|| Error::InvalidParameter(format!("cell {g} missing from the larger window")))?;
        comps.extend((0..m).map(|j| ring.var(c * m + j)));
    }
    Ok(RegularMap::trusted(source, target, comps, Verification::Symbolic))
}

/// Generators of `τ_n^{-1}(y|F_n)` in the ring of `A^{E_n}`.
fn fiber_gens(tau: &CellularAutomaton, e: &Window, y: &dyn Fn(&GroupElement) -> Point) -> Result<(Window, Vec<MultiPoly>)> {
    let trunc = ca_truncation(tau, e)?;
    let f = super::inner(tau, e);
    let ring = trunc.source().ring().clone();
    let m = tau.m();
    let mut gens = Vec::with_capacity(f.len() * m);
    for (i, g) in f.elements().iter().enumerate() {
        let v = y(g);
        if v.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: v.len() });
        }
        for j in 0..m {
            gens.push(trunc.components()[i * m + j].sub(&ring.constant(v[j].clone())));
        }
    }
    Ok((f, gens))
}

/// The fibers of `y` over the window exhaustion, with restriction transitions.
pub fn fiber_sequence(tau: &CellularAutomaton, y: impl Fn(&GroupElement) -> Point + Send + Sync + Clone + 'static) -> ProjectiveSequence {
    let t1 = tau.clone();
    let t2 = tau.clone();
    ProjectiveSequence::new(
        move |n| {
            let e = exhaustion(&t1, n);
            let (_, gens) = fiber_gens(&t1, &e, &y)?;
            let ambient = product_set(t1.alphabet(), e.len());
            let closed = AlgebraicSet::new(ambient.ring(), gens)?;
            Ok(Level {
                ambient,
                set: LevelSet::Constructible(ConstructibleSet::from_closed(closed)),
            })
        },
        move |n| restriction_map(t2.alphabet(), &exhaustion(&t2, n + 1), &exhaustion(&t2, n)),
    )
}

#[derive(Clone, Debug)]
pub enum ClosedImageResult {
    /// `x` on `E_depth` with `τ(x) = y` on `F_depth`, checked by evaluation.
    Preimage { pattern: Pattern, checked_on: Window },
    /// `X_level` is empty: no configuration maps to `y` on `F_level`.
    Obstruction { level: usize },
    /// Infinite field: every fiber ideal up to `depth` is proper. Not a proof that
    /// `y` lies in the image.
    SymbolicEvidence { depth: usize, witness: Option<Pattern> },
}

#[derive(Clone, Debug)]
pub struct ClosedImageReport {
    pub lift: Option<LiftReport>,
    pub result: ClosedImageResult,
}

impl ClosedImageReport {
    pub fn to_text(&self, field: &crate::algebra::Field) -> String {
        let mut out = String::new();
        if let Some(l) = &self.lift {
            out.push_str(&l.to_text());
        }
        match &self.result {
            ClosedImageResult::Preimage { pattern, checked_on } => {
                let _ = writeln!(out, "status=preimage");
                let _ = writeln!(out, "checked_on={checked_on}");
                let _ = writeln!(out, "pattern:");
                out.push_str(&pattern.to_text(field));
            }
            ClosedImageResult::Obstruction { level } => {
                let _ = writeln!(out, "status=obstruction");
                let _ = writeln!(out, "empty_fiber_level={level}");
            }
            ClosedImageResult::SymbolicEvidence { depth, witness } => {
                let _ = writeln!(out, "status=symbolic evidence only");
                let _ = writeln!(out, "proper_fiber_ideals_up_to={depth}");
                if let Some(w) = witness {
                    let _ = writeln!(out, "witness:");
                    out.push_str(&w.to_text(field));
                }
            }
        }
        out
    }
}

/// Searches for a preimage of `y` through the fibers over the window exhaustion.
pub fn closed_image_search(
    tau: &CellularAutomaton,
    y: impl Fn(&GroupElement) -> Point + Send + Sync + Clone + 'static,
    depth: usize,
    budget: &Budget,
) -> Result<ClosedImageReport> {
    if !tau.field().is_finite() {
        return symbolic_search(tau, &y, depth, budget);
    }
    let seq = fiber_sequence(tau, y.clone());
    let lift = ml_lift(&seq, depth, budget)?;
    let result = match &lift.result {
        LiftResult::Obstruction { level } => ClosedImageResult::Obstruction { level: *level },
        LiftResult::Thread(t) => {
            let e = exhaustion(tau, depth);
            let pattern = unflatten(&e, tau.m(), &t.points[depth]);
            let checked_on = check_preimage(tau, &pattern, &y)?;
            ClosedImageResult::Preimage { pattern, checked_on }
        }
    };
    Ok(ClosedImageReport {
        lift: Some(lift),
        result,
    })
}

pub(crate) fn unflatten(window: &Window, m: usize, flat: &[crate::algebra::FieldElement]) -> Pattern {
    let values = flat.chunks(m).map(|c| c.to_vec()).collect();
    Pattern::new(window.clone(), values).expect("one block per cell")
}

fn check_preimage(tau: &CellularAutomaton, x: &Pattern, y: &dyn Fn(&GroupElement) -> Point) -> Result<Window> {
    let img = ca_apply(tau, x)?;
    for (g, v) in img.window().elements().iter().zip(img.values()) {
        if *v != y(g) {
            return Err(Error::Validation(format!("lifted pattern misses the target at {g}")));
        }
    }
    Ok(img.window().clone())
}

fn symbolic_search(
    tau: &CellularAutomaton,
    y: &dyn Fn(&GroupElement) -> Point,
    depth: usize,
    budget: &Budget,
) -> Result<ClosedImageReport> {
    let mut last = None;
    for n in 0..=depth {
        let e = exhaustion(tau, n);
        let (_, mut gens) = fiber_gens(tau, &e, y)?;
        let ambient = product_set(tau.alphabet(), e.len());
        gens.extend(ambient.gens().iter().cloned());
        let ring = ambient.ring().clone();
        // later cells first, so recursions forward in the window become triangular
        let order = MonomialOrder::new(OrderKind::Lex, (0..ring.nvars()).rev().collect())?;
        let gb = groebner_basis(&IdealBasis::new(ring, gens)?, &order, budget)?;
        if gb.is_unit() {
            return Ok(ClosedImageReport {
                lift: None,
                result: ClosedImageResult::Obstruction { level: n },
            });
        }
        last = Some((e, gb));
    }
    let (e, gb) = last.expect("depth loop runs at least once");
    let witness = triangular_point(&gb)
        .map(|flat| unflatten(&e, tau.m(), &flat))
        .filter(|p| p.validate(tau.alphabet()).is_ok() && check_preimage(tau, p, y).is_ok());
    Ok(ClosedImageReport {
        lift: None,
        result: ClosedImageResult::SymbolicEvidence { depth, witness },
    })
}

/// Solves a lex basis whose leading terms are distinct variables to the first power,
/// setting free variables to zero. Lower-priority variables are fixed first.
fn triangular_point(gb: &IdealBasis) -> Option<Vec<crate::algebra::FieldElement>> {
    let ring = gb.ring();
    let field = ring.field();
    let n = ring.nvars();
    let mut solver: Vec<Option<&MultiPoly>> = vec![None; n];
    for g in gb.gens() {
        let lm = g.leading_monomial()?;
        if lm.degree() != 1 {
            return None;
        }
        let v = lm.0.iter().position(|&e| e == 1)?;
        solver[v] = Some(g);
    }
    let mut point = vec![field.zero(); n];
    for &v in ring.order().perm().iter().rev() {
        if let Some(g) = solver[v] {
            let c = g.leading_coeff()?.clone();
            let rest = g.tail().eval_unchecked(&point);
            point[v] = field.neg(&field.div(&rest, &c)?);
        }
    }
    Some(point)
}
