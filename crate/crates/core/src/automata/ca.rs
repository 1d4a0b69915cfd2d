use crate::algebra::{functional_normal_form, Evaluator, Field, MultiPoly, Ring};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{AlgebraicSet, Point, RegularMap, Verification};
use crate::lattice::{interior, GroupElement, Sublattice, Window};

use super::pattern::Pattern;

/// Name of coordinate `coord` (1-based) of cell `cell` in a product ring.
pub fn block_var(cell: usize, coord: usize) -> String {
    format!("x[{cell}][{coord}]")
}

/// The ring of `A^n`: variables `x[c][j]` for `c < n`, `1 <= j <= m`, cell-major.
pub fn product_ring(field: &Field, m: usize, cells: usize) -> Ring {
    let vars: Vec<String> = (0..cells)
        .flat_map(|c| (1..=m).map(move |j| block_var(c, j)))
        .collect();
    Ring::new(field.clone(), &vars)
}

/// `A^n` with the alphabet's equations on each block.
pub fn product_set(alphabet: &AlgebraicSet, cells: usize) -> AlgebraicSet {
    let m = alphabet.ambient();
    let ring = product_ring(alphabet.field(), m, cells);
    let mut gens = Vec::new();
    for c in 0..cells {
        let map: Vec<Option<usize>> = (0..m).map(|j| Some(c * m + j)).collect();
        for g in alphabet.gens() {
            gens.push(g.remap(&ring, &map));
        }
    }
    AlgebraicSet::new(&ring, gens).expect("generators built over the product ring")
}

/// Moves a polynomial over `A^{src}` to `A^{dst}` sending cell `c` to `cells[c]`.
fn rewire(p: &MultiPoly, m: usize, cells: &[usize], target: &Ring) -> MultiPoly {
    let map: Vec<Option<usize>> = (0..cells.len() * m)
        .map(|v| Some(cells[v / m] * m + v % m))
        .collect();
    p.remap(target, &map)
}

/// An algebraic cellular automaton over `Z^d`: `τ(x)(g) = μ((x(g + s))_{s ∈ M})`.
#[derive(Clone, Debug)]
pub struct CellularAutomaton {
    dim: usize,
    alphabet: AlgebraicSet,
    memory: Window,
    rule: RegularMap,
    evaluators: Vec<Evaluator>,
}

/// Validates the rule as a regular map `A^M -> A` and wraps it.
pub fn ca_make(
    alphabet: &AlgebraicSet,
    memory: &Window,
    rule_polys: Vec<MultiPoly>,
    budget: &Budget,
) -> Result<CellularAutomaton> {
    let source = product_set(alphabet, memory.len());
    let rule_polys = rule_polys
        .into_iter()
        .map(|p| p.to_ring(source.ring()))
        .collect::<Result<Vec<_>>>()?;
    let rule = RegularMap::new(source, alphabet.clone(), rule_polys, budget)?;
    Ok(CellularAutomaton::from_rule(memory.dim(), memory.clone(), rule))
}

/// As [`ca_make`], parsing the rule polynomials.
pub fn ca_make_text(
    alphabet: &AlgebraicSet,
    memory: &Window,
    rule: &[&str],
    budget: &Budget,
) -> Result<CellularAutomaton> {
    let ring = product_ring(alphabet.field(), alphabet.ambient(), memory.len());
    let polys = rule.iter().map(|r| ring.parse(r)).collect::<Result<Vec<_>>>()?;
    ca_make(alphabet, memory, polys, budget)
}

impl CellularAutomaton {
    fn from_rule(dim: usize, memory: Window, rule: RegularMap) -> Self {
        let evaluators = rule.evaluators();
        CellularAutomaton {
            dim,
            alphabet: rule.target().clone(),
            memory,
            rule,
            evaluators,
        }
    }

    /// Rule polynomials given over the product ring of `memory`, already known to be regular.
    fn assemble(&self, dim: usize, memory: Window, polys: Vec<MultiPoly>, verification: Verification) -> Self {
        let source = product_set(&self.alphabet, memory.len());
        let rule = RegularMap::trusted(source, self.alphabet.clone(), polys, verification);
        CellularAutomaton::from_rule(dim, memory, rule)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &AlgebraicSet {
        &self.alphabet
    }

    pub fn field(&self) -> &Field {
        self.alphabet.field()
    }

    /// Coordinates per cell.
    pub fn m(&self) -> usize {
        self.alphabet.ambient()
    }

    pub fn memory(&self) -> &Window {
        &self.memory
    }

    pub fn rule(&self) -> &RegularMap {
        &self.rule
    }

    pub fn rule_polys(&self) -> &[MultiPoly] {
        self.rule.components()
    }

    /// `μ` at the concatenation of the given cell values (memory order).
    pub fn local(&self, cells: &[&Point]) -> Point {
        let flat: Vec<_> = cells.iter().flat_map(|p| p.iter().cloned()).collect();
        self.evaluators.iter().map(|e| e.eval(&flat)).collect()
    }

    /// The rule with every coordinate reduced by the field equations.
    pub fn functional_rule(&self) -> Result<Vec<MultiPoly>> {
        let q = self.field().size().ok_or(Error::InfiniteField)?;
        self.rule_polys().iter().map(|p| functional_normal_form(p, q)).collect()
    }

    /// The same automaton with a larger memory set `M' ⊇ M` (the rule ignores the new cells).
    pub fn with_memory(&self, larger: &Window) -> Result<CellularAutomaton> {
        if !self.memory.is_subset(larger) {
            return Err(Error::InvalidParameter("new memory set must contain the old one".into()));
        }
        let cells: Vec<usize> = self
            .memory
            .elements()
            .iter()
            .map(|s| larger.index_of(s).unwrap())
            .collect();
        let ring = product_ring(self.field(), self.m(), larger.len());
        let polys = self.rule_polys().iter().map(|p| rewire(p, self.m(), &cells, &ring)).collect();
        Ok(self.assemble(self.dim, larger.clone(), polys, self.rule.verification()))
    }
}

/// Applies the automaton to a finite pattern; the output lives on `interior(E, M)`.
pub fn ca_apply(tau: &CellularAutomaton, p: &Pattern) -> Result<Pattern> {
    if p.window().dim() != tau.dim {
        return Err(Error::DimensionMismatch {
            expected: tau.dim,
            got: p.window().dim(),
        });
    }
    let f = interior(p.window(), tau.memory());
    let mut values = Vec::with_capacity(f.len());
    for g in f.elements() {
        let cells: Vec<&Point> = tau
            .memory()
            .elements()
            .iter()
            .map(|s| p.get(&(g + s)).unwrap())
            .collect();
        values.push(tau.local(&cells));
    }
    Pattern::new(f, values)
}

/// The regular map `A^E -> A^F`, `F = interior(E, M)`, induced by the automaton.
pub fn ca_truncation(tau: &CellularAutomaton, e: &Window) -> Result<RegularMap> {
    let m = tau.m();
    let f = interior(e, tau.memory());
    let source = product_set(tau.alphabet(), e.len());
    let target = product_set(tau.alphabet(), f.len());
    let mut comps = Vec::with_capacity(f.len() * m);
    for g in f.elements() {
        let cells: Vec<usize> = tau
            .memory()
            .elements()
            .iter()
            .map(|s| e.index_of(&(g + s)).unwrap())
            .collect();
        for p in tau.rule_polys() {
            comps.push(rewire(p, m, &cells, source.ring()));
        }
    }
    Ok(RegularMap::trusted(source, target, comps, tau.rule.verification()))
}

/// `σ ∘ τ` with memory `S + T` and rule `κ(y) = ν(s ↦ μ(y_s))`, `y_s(t) = y(s + t)`.
pub fn ca_compose(sigma: &CellularAutomaton, tau: &CellularAutomaton) -> Result<CellularAutomaton> {
    if sigma.alphabet() != tau.alphabet() || sigma.dim != tau.dim {
        return Err(Error::InvalidParameter(
            "composition needs the same alphabet and dimension".into(),
        ));
    }
    let m = tau.m();
    let st = sigma.memory().sumset(tau.memory());
    let ring = product_ring(tau.field(), m, st.len());
    let mut images = Vec::with_capacity(sigma.memory().len() * m);
    for s in sigma.memory().elements() {
        let cells: Vec<usize> = tau
            .memory()
            .elements()
            .iter()
            .map(|t| st.index_of(&(s + t)).unwrap())
            .collect();
        for mu in tau.rule_polys() {
            images.push(rewire(mu, m, &cells, &ring));
        }
    }
    let polys = sigma
        .rule_polys()
        .iter()
        .map(|nu| nu.substitute_into(&images, &ring))
        .collect::<Result<Vec<_>>>()?;
    let v = sigma.rule.verification().min(tau.rule.verification());
    Ok(tau.assemble(tau.dim, st, polys, v))
}

/// Whether the rule depends on memory cell `cell`, by exhaustive search over
/// alphabet points: two inputs differing only at that cell with different outputs.
pub fn depends_on_cell(tau: &CellularAutomaton, cell: usize, budget: &Budget) -> Result<bool> {
    let pts = tau.alphabet().enumerate_points(budget)?;
    let n = tau.memory().len();
    let total = (pts.len() as u64)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::budget("depends_on_cell", "input space too large"))?;
    if total.saturating_mul(pts.len() as u64) > budget.points {
        return Err(Error::budget(
            "depends_on_cell",
            format!("{} inputs exceed the point budget", total),
        ));
    }
    let mut idx = vec![0usize; n];
    loop {
        // Vary the chosen cell across all alphabet points with the rest fixed.
        if idx[cell] == 0 {
            let mut first: Option<Point> = None;
            for a in 0..pts.len() {
                idx[cell] = a;
                let cells: Vec<&Point> = idx.iter().map(|&i| &pts[i]).collect();
                let out = tau.local(&cells);
                match &first {
                    None => first = Some(out),
                    Some(f) if *f != out => return Ok(true),
                    _ => {}
                }
            }
            idx[cell] = 0;
        }
        // Odometer over the other cells.
        let mut k = 0;
        loop {
            if k == n {
                return Ok(false);
            }
            if k == cell {
                k += 1;
                continue;
            }
            idx[k] += 1;
            if idx[k] < pts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The minimal memory set and the automaton restated on it.
pub fn ca_minimal_memory(tau: &CellularAutomaton, budget: &Budget) -> Result<(Window, CellularAutomaton)> {
    let m = tau.m();
    let n = tau.memory().len();
    let field = tau.field();
    let block_used = |polys: &[MultiPoly], c: usize| polys.iter().any(|p| (0..m).any(|j| p.uses_var(c * m + j)));

    let (keep, filler): (Vec<bool>, Point) = if !field.is_finite() {
        let polys = tau.rule_polys();
        ((0..n).map(|c| block_used(polys, c)).collect(), vec![field.zero(); m])
    } else if tau.alphabet().is_full() {
        let polys = tau.functional_rule()?;
        ((0..n).map(|c| block_used(&polys, c)).collect(), vec![field.zero(); m])
    } else {
        let keep = (0..n)
            .map(|c| depends_on_cell(tau, c, budget))
            .collect::<Result<Vec<_>>>()?;
        let filler = tau
            .alphabet()
            .enumerate_points(budget)?
            .into_iter()
            .next()
            .unwrap_or_else(|| vec![field.zero(); m]);
        (keep, filler)
    };

    let kept: Vec<GroupElement> = tau
        .memory()
        .elements()
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(g, _)| g.clone())
        .collect();
    let m0 = Window::new(tau.dim, kept)?;
    let ring = product_ring(field, m, m0.len());
    let mut images = Vec::with_capacity(n * m);
    let mut next = 0;
    for &k in &keep {
        for j in 0..m {
            images.push(if k {
                ring.var(next * m + j)
            } else {
                ring.constant(filler[j].clone())
            });
        }
        if k {
            next += 1;
        }
    }
    let polys = tau
        .rule_polys()
        .iter()
        .map(|p| p.substitute_into(&images, &ring))
        .collect::<Result<Vec<_>>>()?;
    let reduced = tau.assemble(tau.dim, m0.clone(), polys, tau.rule.verification());
    Ok((m0, reduced))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupChange {
    Restrict,
    Induce,
}

/// Restriction to a sublattice `H ⊇ M` (memory in `H`-coordinates), or induction
/// from `Z^r` to `Z^d` along the basis of a rank-`r` sublattice `H`.
pub fn ca_change_group(tau: &CellularAutomaton, h: &Sublattice, direction: GroupChange) -> Result<CellularAutomaton> {
    let new_cells: Vec<GroupElement> = match direction {
        GroupChange::Restrict => {
            if tau.dim != h.dim() {
                return Err(Error::DimensionMismatch {
                    expected: h.dim(),
                    got: tau.dim,
                });
            }
            tau.memory()
                .elements()
                .iter()
                .map(|s| {
                    h.solve(s)
                        .map(GroupElement)
                        .ok_or_else(|| Error::NotInSublattice(format!("memory element {s} is not in {h}")))
                })
                .collect::<Result<_>>()?
        }
        GroupChange::Induce => {
            if tau.dim != h.rank() {
                return Err(Error::DimensionMismatch {
                    expected: h.rank(),
                    got: tau.dim,
                });
            }
            tau.memory().elements().iter().map(|s| h.embed(&s.0)).collect()
        }
    };
    let dim = match direction {
        GroupChange::Restrict => h.rank(),
        GroupChange::Induce => h.dim(),
    };
    let memory = Window::new(dim, new_cells.iter().cloned())?;
    let cells: Vec<usize> = new_cells.iter().map(|g| memory.index_of(g).unwrap()).collect();
    let ring = product_ring(tau.field(), tau.m(), memory.len());
    let polys = tau.rule_polys().iter().map(|p| rewire(p, tau.m(), &cells, &ring)).collect();
    Ok(tau.assemble(dim, memory, polys, tau.rule.verification()))
}
