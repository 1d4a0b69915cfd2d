use std::collections::{BTreeMap, BTreeSet};

use super::algebraic::{AlgebraicSet, Point};
use crate::algebra::{
    elimination, fresh_name, ideals_equal, reduce_mod, Evaluator, Field, FieldElement, IdealBasis,
    MultiPoly, Ring,
};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// How a map's containment `f(source) ⊆ target` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verification {
    /// Could not be established (symbolic check failed and no enumeration ran).
    Unverified,
    /// Every source point over the finite ground field maps into the target.
    Enumerated,
    /// Every target generator composed with the map lies in the source ideal.
    Symbolic,
}

/// A polynomial map `source -> target` given by one component per target coordinate.
#[derive(Clone, Debug)]
pub struct RegularMap {
    source: AlgebraicSet,
    target: AlgebraicSet,
    components: Vec<MultiPoly>,
    verification: Verification,
}

impl RegularMap {
    /// Builds and validates the map. A source point mapping outside the target is
    /// an error; a map that can be neither proved nor enumerated is kept as unverified.
    pub fn new(
        source: AlgebraicSet,
        target: AlgebraicSet,
        components: Vec<MultiPoly>,
        budget: &Budget,
    ) -> Result<Self> {
        if components.len() != target.ambient() {
            return Err(Error::DimensionMismatch {
                expected: target.ambient(),
                got: components.len(),
            });
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(format!(
                "source over {}, target over {}",
                source.field(),
                target.field()
            )));
        }
        for c in &components {
            if c.ring() != source.ring() {
                return Err(Error::FieldMismatch(format!("component {c} is not over the source ring")));
            }
        }
        let mut map = RegularMap {
            source,
            target,
            components,
            verification: Verification::Unverified,
        };
        map.verification = map.validate(budget)?;
        Ok(map)
    }

    /// Wraps components whose containment is already known.
    pub(crate) fn trusted(
        source: AlgebraicSet,
        target: AlgebraicSet,
        components: Vec<MultiPoly>,
        verification: Verification,
    ) -> Self {
        RegularMap {
            source,
            target,
            components,
            verification,
        }
    }

    fn validate(&self, budget: &Budget) -> Result<Verification> {
        if self.target.is_full() {
            return Ok(Verification::Symbolic);
        }
        if let Ok(true) = self.symbolic_check(budget) {
            return Ok(Verification::Symbolic);
        }
        if !self.source.field().is_finite() {
            return Ok(Verification::Unverified);
        }
        let points = match self.source.enumerate_points(budget) {
            Ok(p) => p,
            Err(e) if e.is_budget() => return Ok(Verification::Unverified),
            Err(e) => return Err(e),
        };
        for p in &points {
            let img = self.apply(p);
            if !self.target.contains(&img)? {
                let f = self.source.field();
                let show = |v: &[_]| v.iter().map(|a| f.format(a)).collect::<Vec<_>>().join(",");
                return Err(Error::Validation(format!(
                    "source point ({}) maps to ({}) outside the target",
                    show(p),
                    show(&img)
                )));
            }
        }
        Ok(Verification::Enumerated)
    }

    fn symbolic_check(&self, budget: &Budget) -> Result<bool> {
        let gb = self.source.groebner(budget)?;
        for g in self.target.gens() {
            let pulled = g.substitute_into(&self.components, self.source.ring())?;
            if !reduce_mod(&pulled, &gb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn identity(set: &AlgebraicSet) -> Self {
        let ring = set.ring();
        RegularMap {
            source: set.clone(),
            target: set.clone(),
            components: (0..ring.nvars()).map(|i| ring.var(i)).collect(),
            verification: Verification::Symbolic,
        }
    }

    pub fn source(&self) -> &AlgebraicSet {
        &self.source
    }

    pub fn target(&self) -> &AlgebraicSet {
        &self.target
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn verification(&self) -> Verification {
        self.verification
    }

    pub fn is_verified(&self) -> bool {
        self.verification != Verification::Unverified
    }

    pub fn field(&self) -> &Field {
        self.source.field()
    }

    /// Image of a point, without checking source membership.
    pub fn apply(&self, point: &[FieldElement]) -> Point {
        self.components.iter().map(|c| c.eval_unchecked(point)).collect()
    }

    /// Evaluators for repeated application.
    pub fn evaluators(&self) -> Vec<Evaluator> {
        self.components.iter().map(Evaluator::new).collect()
    }

    /// The same map over an extension field sharing the prime subfield.
    pub fn over_field(&self, field: &Field) -> Result<RegularMap> {
        let source = self.source.over_field(field)?;
        let target = self.target.over_field(field)?;
        let components = self
            .components
            .iter()
            .map(|c| c.change_field(source.ring()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RegularMap {
            source,
            target,
            components,
            verification: self.verification,
        })
    }
}

fn same_set(a: &AlgebraicSet, b: &AlgebraicSet, budget: &Budget) -> Result<bool> {
    if a.ring() != b.ring() {
        return Ok(false);
    }
    if a.gens() == b.gens() {
        return Ok(true);
    }
    ideals_equal(a.ideal(), b.ideal(), budget)
}

/// `g ∘ f`.
pub fn map_compose(g: &RegularMap, f: &RegularMap, budget: &Budget) -> Result<RegularMap> {
    if !same_set(f.target(), g.source(), budget)? {
        return Err(Error::ChainMismatch(
            "target of the inner map differs from the source of the outer map".into(),
        ));
    }
    let components = g
        .components
        .iter()
        .map(|c| c.substitute_into(&f.components, f.source.ring()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularMap {
        source: f.source.clone(),
        target: g.target.clone(),
        components,
        verification: f.verification.min(g.verification),
    })
}

/// Zariski closure of `f(source)`: eliminate the source variables from the graph ideal.
pub fn image_closure(f: &RegularMap, budget: &Budget) -> Result<AlgebraicSet> {
    let src = f.source.ring();
    let tgt = f.target.ring();
    // Graph ring: source variables then fresh names for the target coordinates.
    let mut graph_vars = src.vars().to_vec();
    let mut probe = src.clone();
    let mut fresh = Vec::new();
    for v in tgt.vars() {
        let name = fresh_name(&probe, v);
        fresh.push(name.clone());
        graph_vars.push(name.clone());
        probe = probe.extended(&[name]);
    }
    let graph = Ring::new(src.field().clone(), &graph_vars);
    let mut gens = Vec::new();
    for g in f.source.gens() {
        gens.push(g.to_ring(&graph)?);
    }
    for (j, c) in f.components.iter().enumerate() {
        let a = graph.var(src.nvars() + j);
        gens.push(a.sub(&c.to_ring(&graph)?));
    }
    let keep: Vec<&str> = fresh.iter().map(|s| s.as_str()).collect();
    let elim = elimination(&IdealBasis::new(graph, gens)?, &keep, budget)?;
    let map: Vec<Option<usize>> = (0..elim.ring().nvars()).map(Some).collect();
    let out_ring = Ring::new(tgt.field().clone(), tgt.vars());
    let gens = elim.gens().iter().map(|g| g.remap(&out_ring, &map)).collect();
    AlgebraicSet::new(&out_ring, gens)?.in_ring(tgt)
}

/// Sorted, duplicate-free image of the source points over a finite field.
pub fn image_points(f: &RegularMap, budget: &Budget) -> Result<Vec<Point>> {
    let points = f.source.enumerate_points(budget)?;
    let evs = f.evaluators();
    let image: BTreeSet<Point> = points
        .iter()
        .map(|p| evs.iter().map(|e| e.eval(p)).collect())
        .collect();
    Ok(image.into_iter().collect())
}

/// Injectivity and surjectivity of a self-map on the points over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub k: u32,
    pub field: Field,
    pub points: usize,
    pub image_size: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Two distinct points with the same image, when not injective.
    pub collision: Option<(Point, Point)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub levels: Vec<LevelReport>,
}

impl InjectivityReport {
    /// Injective on every tested level.
    pub fn injective(&self) -> bool {
        self.levels.iter().all(|l| l.injective)
    }

    pub fn bijective(&self) -> bool {
        self.levels.iter().all(|l| l.injective && l.surjective)
    }

    /// Every level where the map is injective also has it surjective.
    pub fn consistent(&self) -> bool {
        self.levels.iter().all(|l| !l.injective || l.surjective)
    }
}

/// Tests a self-map on the points over `F_{p^k}` for `k = 1..=tower_max_k`.
pub fn injectivity_report(f: &RegularMap, tower_max_k: u32, budget: &Budget) -> Result<InjectivityReport> {
    if !same_set(f.source(), f.target(), budget)? {
        return Err(Error::ChainMismatch("injectivity report needs a self-map".into()));
    }
    let base = f.field();
    if !base.is_prime_field() {
        return Err(Error::InvalidField(format!(
            "injectivity report needs a prime base field, got {base}"
        )));
    }
    let p = base.characteristic();
    let mut levels = Vec::new();
    for k in 1..=tower_max_k {
        let field = Field::tower(p, k)?;
        let g = if k == 1 { f.clone() } else { f.over_field(&field)? };
        levels.push(level_report(&g, k, budget)?);
    }
    Ok(InjectivityReport { levels })
}

fn level_report(f: &RegularMap, k: u32, budget: &Budget) -> Result<LevelReport> {
    let points = f.source.enumerate_points(budget)?;
    let evs = f.evaluators();
    let mut seen: BTreeMap<Point, usize> = BTreeMap::new();
    let mut collision = None;
    for (i, p) in points.iter().enumerate() {
        let img: Point = evs.iter().map(|e| e.eval(p)).collect();
        match seen.get(&img) {
            Some(&j) => {
                if collision.is_none() {
                    collision = Some((points[j].clone(), p.clone()));
                }
            }
            None => {
                seen.insert(img, i);
            }
        }
    }
    let image_size = seen.len();
    let injective = collision.is_none();
    let surjective = image_size == points.len() && seen.keys().all(|y| points.binary_search(y).is_ok());
    Ok(LevelReport {
        k,
        field: f.field().clone(),
        points: points.len(),
        image_size,
        injective,
        surjective,
        collision,
    })
}
