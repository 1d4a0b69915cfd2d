use std::collections::HashMap;
use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{
    functional_normal_form, groebner_basis, interpolate, reduce_mod, FieldElement, IdealBasis, MonomialOrder, MultiPoly,
    Ring,
};
use crate::automata::{
    ca_apply, ca_compose, ca_make, ca_minimal_memory, ca_truncation, product_ring, product_set, surjunctivity_check,
    CellularAutomaton, Pattern,
};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::{sublattices_up_to, GroupElement, Sublattice, Window};

use super::{exhaustion, inner};

/// Largest table (inputs on `E_n`, or interpolation nodes on `F_n`) built exhaustively.
const TABLE_LIMIT: u64 = 1 << 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelOutcome {
    /// The center cell is a function of the image on `F_n`.
    Determined,
    /// Two inputs agree on `F_n` after `τ_n` but differ at the center.
    Ambiguous,
    /// Neither shown within the budget.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct LevelDiagnostic {
    pub n: usize,
    pub e_cells: usize,
    pub f_cells: usize,
    pub mode: &'static str,
    pub outcome: LevelOutcome,
}

#[derive(Clone, Debug)]
pub enum ReversibilityResult {
    /// Inverse automaton, found at `level` and restated on its minimal memory.
    Inverse { automaton: CellularAutomaton, level: usize },
    /// Distinct inputs with the same image. With a lattice, both are restrictions of
    /// periodic configurations with equal images, so `τ` is not injective.
    Witness { pair: (Pattern, Pattern), lattice: Option<Sublattice> },
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ReversibilityReport {
    pub levels: Vec<LevelDiagnostic>,
    pub result: ReversibilityResult,
}

impl ReversibilityReport {
    pub fn inverse(&self) -> Option<&CellularAutomaton> {
        match &self.result {
            ReversibilityResult::Inverse { automaton, .. } => Some(automaton),
            _ => None,
        }
    }

    pub fn to_text(&self, tau: &CellularAutomaton) -> String {
        let field = tau.field();
        let mut out = String::new();
        for l in &self.levels {
            let _ = writeln!(
                out,
                "level {}: E={} F={} mode={} outcome={}",
                l.n,
                l.e_cells,
                l.f_cells,
                l.mode,
                match l.outcome {
                    LevelOutcome::Determined => "determined",
                    LevelOutcome::Ambiguous => "ambiguous",
                    LevelOutcome::Unknown => "unknown",
                }
            );
        }
        match &self.result {
            ReversibilityResult::Inverse { automaton, level } => {
                let _ = writeln!(out, "status=inverse");
                let _ = writeln!(out, "level={level}");
                let _ = writeln!(out, "memory={}", automaton.memory());
                for (j, p) in automaton.rule_polys().iter().enumerate() {
                    let _ = writeln!(out, "rule[{}]={p}", j + 1);
                }
            }
            ReversibilityResult::Witness { pair, lattice } => {
                match lattice {
                    Some(h) => {
                        let _ = writeln!(out, "status=not injective");
                        let _ = writeln!(out, "period_lattice={h}");
                    }
                    None => {
                        let _ = writeln!(out, "status=witness candidate");
                    }
                }
                let _ = writeln!(out, "first:");
                out.push_str(&pair.0.to_text(field));
                let _ = writeln!(out, "second:");
                out.push_str(&pair.1.to_text(field));
            }
            ReversibilityResult::Inconclusive => {
                let _ = writeln!(out, "status=inconclusive");
            }
        }
        out
    }
}

enum Attempt {
    Inverse(Vec<MultiPoly>),
    Ambiguous(Option<(Pattern, Pattern)>),
    Unknown,
}

/// Looks for the smallest `n <= depth_max` at which the center of every preimage is a
/// polynomial function of the image on `F_n`, and returns the inverse automaton with
/// that rule. Failing that, searches small period lattices for a collision.
pub fn reversibility_search(tau: &CellularAutomaton, depth_max: usize, budget: &Budget) -> Result<ReversibilityReport> {
    let field = tau.field();
    let q = field.size().ok_or(Error::InfiniteField)?;
    let alphabet_points = tau.alphabet().enumerate_points(budget)?;
    let mut levels = Vec::new();
    let mut candidate = None;
    for n in 0..=depth_max {
        let e = exhaustion(tau, n);
        let f = inner(tau, &e);
        let inputs = (alphabet_points.len() as u64).checked_pow(e.len() as u32);
        let nodes = q.checked_pow((tau.m() * f.len()) as u32);
        let small = matches!((inputs, nodes), (Some(a), Some(b)) if a <= TABLE_LIMIT && b <= TABLE_LIMIT);
        let (mode, attempt) = if small {
            ("table", by_table(tau, &e, &f, &alphabet_points)?)
        } else {
            by_groebner(tau, &e, &f, q, budget)?
        };
        let outcome = match &attempt {
            Attempt::Inverse(_) => LevelOutcome::Determined,
            Attempt::Ambiguous(_) => LevelOutcome::Ambiguous,
            Attempt::Unknown => LevelOutcome::Unknown,
        };
        levels.push(LevelDiagnostic {
            n,
            e_cells: e.len(),
            f_cells: f.len(),
            mode,
            outcome,
        });
        match attempt {
            Attempt::Inverse(polys) => {
                let nu = ca_make(tau.alphabet(), &f, polys, budget)?;
                let (_, automaton) = ca_minimal_memory(&nu, budget)?;
                verify_inverse(tau, &automaton, &alphabet_points)?;
                return Ok(ReversibilityReport {
                    levels,
                    result: ReversibilityResult::Inverse { automaton, level: n },
                });
            }
            Attempt::Ambiguous(Some(pair)) => candidate = Some(pair),
            _ => {}
        }
    }
    let window = exhaustion(tau, depth_max);
    if let Some((h, a, b)) = periodic_collision(tau, budget)? {
        return Ok(ReversibilityReport {
            levels,
            result: ReversibilityResult::Witness {
                pair: (a.to_pattern(&window), b.to_pattern(&window)),
                lattice: Some(h),
            },
        });
    }
    let result = match candidate {
        Some(pair) => ReversibilityResult::Witness { pair, lattice: None },
        None => ReversibilityResult::Inconclusive,
    };
    Ok(ReversibilityReport { levels, result })
}

fn code(a: &FieldElement) -> u64 {
    a.as_finite().expect("finite field element")
}

fn by_table(tau: &CellularAutomaton, e: &Window, f: &Window, alphabet: &[Point]) -> Result<Attempt> {
    let m = tau.m();
    let field = tau.field();
    let q = field.size().unwrap();
    let a = alphabet.len();
    let center = e.index_of(&GroupElement::zero(tau.dim())).expect("E_n contains 0");
    let cells: Vec<Vec<usize>> = f
        .elements()
        .iter()
        .map(|g| tau.memory().elements().iter().map(|s| e.index_of(&(g + s)).unwrap()).collect())
        .collect();
    let mut seen: HashMap<Vec<FieldElement>, (usize, Vec<usize>)> = HashMap::new();
    let mut digits = vec![0usize; e.len()];
    loop {
        let mut image = Vec::with_capacity(f.len() * m);
        for cs in &cells {
            let input: Vec<&Point> = cs.iter().map(|&c| &alphabet[digits[c]]).collect();
            image.extend(tau.local(&input));
        }
        match seen.get(&image) {
            Some((c, other)) if *c != digits[center] => {
                let pat = |ds: &[usize]| Pattern::new(e.clone(), ds.iter().map(|&d| alphabet[d].clone()).collect());
                return Ok(Attempt::Ambiguous(Some((pat(other)?, pat(&digits)?))));
            }
            Some(_) => {}
            None => {
                seen.insert(image, (digits[center], digits.clone()));
            }
        }
        // odometer, last cell fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return interpolate_inverse(tau, f, &seen, alphabet, q).map(Attempt::Inverse);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < a {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn interpolate_inverse(
    tau: &CellularAutomaton,
    f: &Window,
    seen: &HashMap<Vec<FieldElement>, (usize, Vec<usize>)>,
    alphabet: &[Point],
    q: u64,
) -> Result<Vec<MultiPoly>> {
    let m = tau.m();
    let field = tau.field();
    let vars = m * f.len();
    let size = q.pow(vars as u32) as usize;
    let ring = product_ring(field, m, f.len());
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let mut table = vec![field.zero(); size];
        for (image, (c, _)) in seen {
            let idx = image.iter().fold(0u64, |acc, x| acc * q + code(x)) as usize;
            table[idx] = alphabet[*c][j].clone();
        }
        out.push(interpolate(&ring, &table)?);
    }
    Ok(out)
}

fn by_groebner(
    tau: &CellularAutomaton,
    e: &Window,
    f: &Window,
    q: u64,
    budget: &Budget,
) -> Result<(&'static str, Attempt)> {
    let mut mode = "groebner";
    for with_field_equations in [false, true] {
        match groebner_attempt(tau, e, f, q, with_field_equations, budget) {
            Ok(a @ Attempt::Inverse(_)) => return Ok((mode, a)),
            Ok(a) if with_field_equations => return Ok((mode, a)),
            Ok(_) => {}
            Err(err) if err.is_budget() => {}
            Err(err) => return Err(err),
        }
        mode = "groebner+field";
    }
    Ok((mode, Attempt::Unknown))
}

/// Lex basis of the graph of `τ_n` with input variables first; the center is
/// determined exactly when its normal form involves only output variables.
/// Input variables are ordered by coordinate then cell, both descending, so a
/// triangular rule already has distinct variables as leading terms.
fn groebner_attempt(
    tau: &CellularAutomaton,
    e: &Window,
    f: &Window,
    q: u64,
    with_field_equations: bool,
    budget: &Budget,
) -> Result<Attempt> {
    let m = tau.m();
    let field = tau.field();
    let mut vars = Vec::with_capacity(m * (e.len() + f.len()));
    let mut u_pos = vec![0usize; m * e.len()];
    for j in (1..=m).rev() {
        for c in (0..e.len()).rev() {
            u_pos[c * m + j - 1] = vars.len();
            vars.push(format!("u[{c}][{j}]"));
        }
    }
    let y0 = vars.len();
    for c in 0..f.len() {
        for j in 1..=m {
            vars.push(format!("y[{c}][{j}]"));
        }
    }
    let ring = Ring::new(field.clone(), &vars);
    let order = MonomialOrder::lex(vars.len());
    let umap: Vec<Option<usize>> = u_pos.iter().map(|&p| Some(p)).collect();

    let trunc = ca_truncation(tau, e)?;
    let mut gens: Vec<MultiPoly> = trunc
        .components()
        .iter()
        .enumerate()
        .map(|(i, p)| ring.var(y0 + i).sub(&p.remap(&ring, &umap)))
        .collect();
    for g in product_set(tau.alphabet(), e.len()).gens() {
        gens.push(g.remap(&ring, &umap));
    }
    if with_field_equations {
        for v in 0..vars.len() {
            let x = ring.var(v);
            gens.push(x.pow(q).sub(&x));
        }
    }
    let gb = groebner_basis(&IdealBasis::new(ring.clone(), gens)?, &order, budget)?;
    if gb.is_unit() {
        return Err(Error::Validation("the alphabet has no points".into()));
    }
    let center = e.index_of(&GroupElement::zero(tau.dim())).expect("E_n contains 0");
    let target = product_ring(field, m, f.len());
    let ymap: Vec<Option<usize>> = (0..vars.len()).map(|v| v.checked_sub(y0)).collect();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let nf = reduce_mod(&gb.ring().var(u_pos[center * m + j]), &gb)?;
        if (0..y0).any(|v| nf.uses_var(v)) {
            return Ok(Attempt::Ambiguous(None));
        }
        out.push(functional_normal_form(&nf.remap(&target, &ymap), q)?);
    }
    Ok(Attempt::Inverse(out))
}

fn periodic_collision(
    tau: &CellularAutomaton,
    budget: &Budget,
) -> Result<Option<(Sublattice, crate::automata::PeriodicConfiguration, crate::automata::PeriodicConfiguration)>> {
    let lattices: Vec<Sublattice> = match tau.dim() {
        1 => (1..=4).map(|k| Sublattice::scaled(1, k)).collect::<Result<_>>()?,
        2 => sublattices_up_to(2, 2)?,
        d => vec![Sublattice::scaled(d, 1)?],
    };
    for h in lattices {
        let report = match surjunctivity_check(tau, std::slice::from_ref(&h), 1, budget) {
            Ok(r) => r,
            Err(e) if e.is_budget() => continue,
            Err(e) => return Err(e),
        };
        if let Some((a, b)) = report.lattices[0].collision(tau.m()) {
            return Ok(Some((h, a, b)));
        }
    }
    Ok(None)
}

/// Both composites are the identity: symbolically when the alphabet is a full
/// space, and by round trips on random patterns in every case.
fn verify_inverse(tau: &CellularAutomaton, inv: &CellularAutomaton, alphabet: &[Point]) -> Result<()> {
    let q = tau.field().size().unwrap();
    if tau.alphabet().is_full() {
        for comp in [ca_compose(inv, tau)?, ca_compose(tau, inv)?] {
            let zero = comp
                .memory()
                .index_of(&GroupElement::zero(tau.dim()))
                .ok_or_else(|| Error::Validation("composite memory misses the origin".into()))?;
            let ring = comp.rule_polys()[0].ring().clone();
            for (j, p) in comp.rule_polys().iter().enumerate() {
                if functional_normal_form(p, q)? != ring.var(zero * tau.m() + j) {
                    return Err(Error::Validation(format!("composite coordinate {} is {p}", j + 1)));
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let d = tau.dim();
    let reach = inv.memory().union(tau.memory()).union(&Window::new(d, [GroupElement::zero(d)])?);
    let (lo, hi) = reach.bounds().unwrap();
    let span: Vec<i64> = lo.iter().zip(&hi).map(|(a, b)| b - a).collect();
    let lo: Vec<i64> = lo.iter().zip(&span).map(|(a, s)| a - s - 1).collect();
    let hi: Vec<i64> = hi.iter().zip(&span).map(|(a, s)| a + s + 1).collect();
    let window = Window::boxed(&lo, &hi);
    for _ in 0..100 {
        let x = Pattern::from_fn(window.clone(), |_| alphabet[rng.gen_range(0..alphabet.len())].clone());
        for (first, second) in [(tau, inv), (inv, tau)] {
            let back = ca_apply(second, &ca_apply(first, &x)?)?;
            if back.is_empty() || x.restrict(back.window())? != back {
                return Err(Error::Validation("inverse fails a round trip".into()));
            }
        }
    }
    Ok(())
}
