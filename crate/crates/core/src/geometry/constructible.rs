use super::algebraic::AlgebraicSet;
use crate::algebra::{intersect, saturate, FieldElement, IdealBasis, MultiPoly, Ring};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// `{a : every generator vanishes at a, neq(a) != 0}`. `neq = 1` is a closed piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocallyClosedPiece {
    pub closed: AlgebraicSet,
    pub neq: MultiPoly,
}

impl LocallyClosedPiece {
    pub fn closed(set: AlgebraicSet) -> Self {
        let neq = set.ring().one();
        LocallyClosedPiece { closed: set, neq }
    }

    pub fn contains(&self, point: &[FieldElement]) -> Result<bool> {
        let f = self.closed.field();
        Ok(self.closed.contains(point)? && !f.is_zero(&self.neq.eval(point)?))
    }

    /// Empty over the algebraic closure: `1 ∈ I : Q^∞`.
    pub fn is_empty(&self, budget: &Budget) -> Result<bool> {
        if self.neq.is_zero() {
            return Ok(true);
        }
        Ok(self.closure_ideal(budget)?.is_unit())
    }

    /// `I : Q^∞`, whose zero set is the Zariski closure of the piece.
    pub fn closure_ideal(&self, budget: &Budget) -> Result<IdealBasis> {
        if self.neq.is_constant() && !self.neq.is_zero() {
            return self.closed.groebner(budget);
        }
        saturate(self.closed.ideal(), &self.neq, budget)
    }
}

/// Finite union of locally closed pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleSet {
    ring: Ring,
    pieces: Vec<LocallyClosedPiece>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Complement,
    Closure,
}

/// Result of [`constructible_op`]: closure yields a closed set, the rest a constructible one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpResult {
    Constructible(ConstructibleSet),
    Closed(AlgebraicSet),
}

impl ConstructibleSet {
    pub fn new(ring: &Ring, pieces: Vec<LocallyClosedPiece>) -> Result<Self> {
        for p in &pieces {
            if p.closed.ring() != ring || p.neq.ring() != ring {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    got: p.closed.ambient(),
                });
            }
        }
        Ok(ConstructibleSet {
            ring: ring.clone(),
            pieces,
        })
    }

    pub fn empty(ring: &Ring) -> Self {
        ConstructibleSet {
            ring: ring.clone(),
            pieces: Vec::new(),
        }
    }

    pub fn from_closed(set: AlgebraicSet) -> Self {
        ConstructibleSet {
            ring: set.ring().clone(),
            pieces: vec![LocallyClosedPiece::closed(set)],
        }
    }

    /// The special open set `{q != 0}`.
    pub fn open(q: MultiPoly) -> Self {
        let ring = q.ring().clone();
        ConstructibleSet {
            pieces: vec![LocallyClosedPiece {
                closed: AlgebraicSet::full(&ring),
                neq: q,
            }],
            ring,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ring.nvars()
    }

    pub fn pieces(&self) -> &[LocallyClosedPiece] {
        &self.pieces
    }

    pub fn contains(&self, point: &[FieldElement]) -> Result<bool> {
        for p in &self.pieces {
            if p.contains(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Empty over the algebraic closure.
    pub fn is_empty(&self, budget: &Budget) -> Result<bool> {
        for p in &self.pieces {
            if !p.is_empty(budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_same(&self, other: &ConstructibleSet) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                got: other.ambient(),
            });
        }
        Ok(())
    }

    /// Drops pieces that are empty over the algebraic closure.
    pub fn pruned(self, budget: &Budget) -> Result<Self> {
        let mut pieces = Vec::new();
        for p in self.pieces {
            if !p.is_empty(budget)? && !pieces.contains(&p) {
                pieces.push(p);
            }
        }
        Ok(ConstructibleSet {
            ring: self.ring,
            pieces,
        })
    }

    pub fn union(&self, other: &ConstructibleSet) -> Result<Self> {
        self.check_same(other)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(ConstructibleSet {
            ring: self.ring.clone(),
            pieces,
        })
    }

    pub fn intersect(&self, other: &ConstructibleSet, budget: &Budget) -> Result<Self> {
        self.check_same(other)?;
        let mut pieces = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                let mut gens = a.closed.gens().to_vec();
                gens.extend(b.closed.gens().iter().cloned());
                pieces.push(LocallyClosedPiece {
                    closed: AlgebraicSet::new(&self.ring, gens)?,
                    neq: a.neq.mul(&b.neq),
                });
            }
        }
        ConstructibleSet {
            ring: self.ring.clone(),
            pieces,
        }
        .pruned(budget)
    }

    /// De Morgan over pieces: the complement of `Zer(I) ∩ {Q != 0}` is
    /// `⋃_g {g != 0} ∪ Zer(Q)`.
    pub fn complement(&self, budget: &Budget) -> Result<Self> {
        let mut acc = ConstructibleSet::from_closed(AlgebraicSet::full(&self.ring));
        for p in &self.pieces {
            let mut parts: Vec<LocallyClosedPiece> = p
                .closed
                .gens()
                .iter()
                .map(|g| LocallyClosedPiece {
                    closed: AlgebraicSet::full(&self.ring),
                    neq: g.clone(),
                })
                .collect();
            if !(p.neq.is_constant() && !p.neq.is_zero()) {
                parts.push(LocallyClosedPiece::closed(AlgebraicSet::new(
                    &self.ring,
                    vec![p.neq.clone()],
                )?));
            }
            let comp = ConstructibleSet {
                ring: self.ring.clone(),
                pieces: parts,
            };
            acc = acc.intersect(&comp, budget)?;
        }
        acc.pruned(budget)
    }

    /// Zariski closure, the intersection of the pieces' saturated ideals.
    pub fn closure(&self, budget: &Budget) -> Result<AlgebraicSet> {
        let mut acc: Option<IdealBasis> = None;
        for p in &self.pieces {
            let sat = p.closure_ideal(budget)?;
            if sat.is_unit() {
                continue;
            }
            acc = Some(match acc {
                None => sat,
                Some(prev) => intersect(&prev, &sat, budget)?,
            });
        }
        match acc {
            None => Ok(AlgebraicSet::empty(&self.ring)),
            Some(ideal) => {
                let ideal = ideal.clone_into_ring(&self.ring)?;
                Ok(AlgebraicSet::from_ideal(ideal))
            }
        }
    }
}

pub fn constructible_op(
    kind: SetOp,
    c: &ConstructibleSet,
    d: Option<&ConstructibleSet>,
    budget: &Budget,
) -> Result<OpResult> {
    let need = || d.ok_or_else(|| Error::InvalidParameter("binary operation needs a second set".into()));
    Ok(match kind {
        SetOp::Union => OpResult::Constructible(c.union(need()?)?),
        SetOp::Intersect => OpResult::Constructible(c.intersect(need()?, budget)?),
        SetOp::Complement => OpResult::Constructible(c.complement(budget)?),
        SetOp::Closure => OpResult::Closed(c.closure(budget)?),
    })
}

/// A subset `U ⊆ C`, open and dense in the closure `Z` of `C`, computed as
/// `Z \ cl(Z \ C)`.
pub fn open_dense_core(c: &ConstructibleSet, budget: &Budget) -> Result<ConstructibleSet> {
    if c.is_empty(budget)? {
        return Err(Error::Empty("constructible set has no consistent piece".into()));
    }
    let z = ConstructibleSet::from_closed(c.closure(budget)?);
    let boundary = z.intersect(&c.complement(budget)?, budget)?;
    let bad = ConstructibleSet::from_closed(boundary.closure(budget)?);
    z.intersect(&bad.complement(budget)?, budget)
}
