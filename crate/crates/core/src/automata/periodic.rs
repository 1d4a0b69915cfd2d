use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{injectivity_report, InjectivityReport, Point, RegularMap};
use crate::lattice::{coset_data, CosetData, GroupElement, Sublattice, Window};

use super::ca::{product_ring, product_set, CellularAutomaton};
use super::pattern::Pattern;

/// An `H`-periodic configuration, stored by its values on the coset representatives.
#[derive(Clone, Debug)]
pub struct PeriodicConfiguration {
    cosets: CosetData,
    values: Vec<Point>,
}

impl PeriodicConfiguration {
    pub fn new(h: &Sublattice, values: Vec<Point>) -> Result<Self> {
        let cosets = coset_data(h)?;
        if cosets.representatives().len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: cosets.representatives().len(),
                got: values.len(),
            });
        }
        Ok(PeriodicConfiguration { cosets, values })
    }

    /// Values of a point of `A^{H\G}` in the block layout of [`ca_periodic_map`].
    pub fn from_flat(h: &Sublattice, m: usize, flat: &[crate::algebra::FieldElement]) -> Result<Self> {
        let values = flat.chunks(m.max(1)).map(|c| c.to_vec()).collect();
        PeriodicConfiguration::new(h, values)
    }

    pub fn lattice(&self) -> &Sublattice {
        self.cosets.lattice()
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn value_at(&self, g: &GroupElement) -> &Point {
        &self.values[self.cosets.project(g)]
    }

    /// The configuration seen through a finite window.
    pub fn to_pattern(&self, window: &Window) -> Pattern {
        Pattern::from_fn(window.clone(), |g| self.value_at(g).clone())
    }
}

/// `τ̃_H`: the self-map of `A^{H\G}` conjugate to `τ` on `Fix(H)`.
pub fn ca_periodic_map(tau: &CellularAutomaton, h: &Sublattice) -> Result<RegularMap> {
    let cd = coset_data(h)?;
    let reps = cd.representatives();
    let m = tau.m();
    let set = product_set(tau.alphabet(), reps.len());
    let ring = product_ring(tau.field(), m, reps.len());
    let mut comps = Vec::with_capacity(reps.len() * m);
    for r in reps.elements() {
        let cells: Vec<usize> = tau.memory().elements().iter().map(|s| cd.project(&(r + s))).collect();
        let map: Vec<Option<usize>> = (0..cells.len() * m)
            .map(|v| Some(cells[v / m] * m + v % m))
            .collect();
        for p in tau.rule_polys() {
            comps.push(p.remap(&ring, &map));
        }
    }
    Ok(RegularMap::trusted(set.clone(), set, comps, tau.rule().verification()))
}

#[derive(Clone, Debug)]
pub struct LatticeVerdict {
    pub lattice: Sublattice,
    pub report: InjectivityReport,
}

impl LatticeVerdict {
    /// A pair of distinct `H`-periodic configurations with the same image, if found.
    pub fn collision(&self, m: usize) -> Option<(PeriodicConfiguration, PeriodicConfiguration)> {
        let level = self.report.levels.iter().find(|l| l.k == 1)?;
        let (a, b) = level.collision.as_ref()?;
        Some((
            PeriodicConfiguration::from_flat(&self.lattice, m, a).ok()?,
            PeriodicConfiguration::from_flat(&self.lattice, m, b).ok()?,
        ))
    }
}

#[derive(Clone, Debug)]
pub struct SurjunctivityReport {
    pub lattices: Vec<LatticeVerdict>,
}

impl SurjunctivityReport {
    /// On every lattice and level, injectivity came with surjectivity.
    pub fn consistent(&self) -> bool {
        self.lattices.iter().all(|l| l.report.consistent())
    }

    pub fn all_bijective(&self) -> bool {
        self.lattices.iter().all(|l| l.report.bijective())
    }

    /// Lattices on which `τ̃_H` fails to be injective; each certifies that `τ` is not.
    pub fn non_injective(&self) -> Vec<&LatticeVerdict> {
        self.lattices.iter().filter(|l| !l.report.injective()).collect()
    }
}

/// Runs the injectivity report on `τ̃_H` for each lattice.
pub fn surjunctivity_check(
    tau: &CellularAutomaton,
    lattices: &[Sublattice],
    tower_max_k: u32,
    budget: &Budget,
) -> Result<SurjunctivityReport> {
    let mut out = Vec::with_capacity(lattices.len());
    for h in lattices {
        let map = ca_periodic_map(tau, h)?;
        let report = injectivity_report(&map, tower_max_k, budget)?;
        out.push(LatticeVerdict {
            lattice: h.clone(),
            report,
        });
    }
    Ok(SurjunctivityReport { lattices: out })
}
