use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::algebra::{ideals_equal, Field, IdealBasis};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{
    format_points, image_closure, map_compose, vanishing_ideal_of_points, AlgebraicSet, ConstructibleSet, Point,
    RegularMap,
};

/// The subset `X_n` of a level, either listed or described.
#[derive(Clone, Debug)]
pub enum LevelSet {
    Points(Vec<Point>),
    Constructible(ConstructibleSet),
}

#[derive(Clone, Debug)]
pub struct Level {
    pub ambient: AlgebraicSet,
    pub set: LevelSet,
}

impl Level {
    /// The whole ambient set.
    pub fn full(ambient: AlgebraicSet) -> Self {
        let set = LevelSet::Constructible(ConstructibleSet::from_closed(ambient.clone()));
        Level { ambient, set }
    }

    /// Sorted, deduplicated points of `X_n`. Finite fields only.
    pub fn points(&self, budget: &Budget) -> Result<Vec<Point>> {
        let mut out = match &self.set {
            LevelSet::Points(p) => p.clone(),
            LevelSet::Constructible(c) => {
                let mut acc = Vec::new();
                for piece in c.pieces() {
                    let inner = AlgebraicSet::new(self.ambient.ring(), {
                        let mut g = self.ambient.gens().to_vec();
                        g.extend(piece.closed.gens().iter().cloned());
                        g
                    })?;
                    for p in inner.enumerate_points(budget)? {
                        if !piece.neq.field().is_zero(&piece.neq.eval_unchecked(&p)) {
                            acc.push(p);
                        }
                    }
                }
                acc
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Zariski closure of `X_n` inside the ambient set.
    pub fn closure(&self, budget: &Budget) -> Result<AlgebraicSet> {
        let ring = self.ambient.ring();
        let inner = match &self.set {
            LevelSet::Points(p) => AlgebraicSet::from_ideal(vanishing_ideal_of_points(p, ring)?),
            LevelSet::Constructible(c) => c.closure(budget)?,
        };
        let mut gens = self.ambient.gens().to_vec();
        gens.extend(inner.gens().iter().cloned());
        AlgebraicSet::new(ring, gens)
    }
}

type LevelGen = Arc<dyn Fn(usize) -> Result<Level> + Send + Sync>;
type MapGen = Arc<dyn Fn(usize) -> Result<RegularMap> + Send + Sync>;

/// Levels `X_n ⊆ A_n` with transitions `g_n: A_{n+1} -> A_n`, generated on demand.
#[derive(Clone)]
pub struct ProjectiveSequence {
    levels: LevelGen,
    maps: MapGen,
    depth: Option<usize>,
}

impl fmt::Debug for ProjectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectiveSequence").field("depth", &self.depth).finish_non_exhaustive()
    }
}

impl ProjectiveSequence {
    pub fn new(
        levels: impl Fn(usize) -> Result<Level> + Send + Sync + 'static,
        maps: impl Fn(usize) -> Result<RegularMap> + Send + Sync + 'static,
    ) -> Self {
        ProjectiveSequence {
            levels: Arc::new(levels),
            maps: Arc::new(maps),
            depth: None,
        }
    }

    /// A sequence that stops at `levels.len() - 1`; `maps[n]` goes from level `n + 1` to `n`.
    pub fn finite(levels: Vec<Level>, maps: Vec<RegularMap>) -> Result<Self> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(Error::DimensionMismatch {
                expected: levels.len().saturating_sub(1),
                got: maps.len(),
            });
        }
        for (n, g) in maps.iter().enumerate() {
            if g.source().ring() != levels[n + 1].ambient.ring() || g.target().ring() != levels[n].ambient.ring() {
                return Err(Error::ChainMismatch(format!("transition {n} does not join levels {} and {n}", n + 1)));
            }
        }
        let depth = levels.len() - 1;
        let levels = Arc::new(levels);
        let maps = Arc::new(maps);
        let out_of_range = move |n: usize| Error::InvalidParameter(format!("sequence has depth {depth}, level {n} requested"));
        Ok(ProjectiveSequence {
            levels: Arc::new(move |n| levels.get(n).cloned().ok_or_else(|| out_of_range(n))),
            maps: Arc::new(move |n| maps.get(n).cloned().ok_or_else(|| out_of_range(n + 1))),
            depth: Some(depth),
        })
    }

    /// `X_n = A` and `g_n = f` for a self-map `f: A -> A`.
    pub fn iterate(f: RegularMap) -> Self {
        let level = Level::full(f.source().clone());
        ProjectiveSequence::new(move |_| Ok(level.clone()), move |_| Ok(f.clone()))
    }

    /// The same set at every level with identity transitions.
    pub fn constant(level: Level) -> Self {
        let id = RegularMap::identity(&level.ambient);
        ProjectiveSequence::new(move |_| Ok(level.clone()), move |_| Ok(id.clone()))
    }

    /// `C_n = F_q \ {a_0, ..., a_n}` (elements in code order) with inclusions.
    /// Every level below `q - 1` is nonempty but the intersection is empty.
    pub fn shrinking(field: &Field) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::InfiniteField);
        }
        let line = AlgebraicSet::full(&crate::algebra::Ring::affine(field.clone(), 1));
        let elems: Vec<Point> = field.elements().map(|a| vec![a]).collect();
        let id = RegularMap::identity(&line);
        Ok(ProjectiveSequence::new(
            move |n| {
                Ok(Level {
                    ambient: line.clone(),
                    set: LevelSet::Points(elems.iter().skip(n + 1).cloned().collect()),
                })
            },
            move |_| Ok(id.clone()),
        ))
    }

    pub fn depth(&self) -> Option<usize> {
        self.depth
    }

    pub fn level(&self, n: usize) -> Result<Level> {
        (self.levels)(n)
    }

    /// `g_n: A_{n+1} -> A_n`.
    pub fn transition(&self, n: usize) -> Result<RegularMap> {
        (self.maps)(n)
    }

    /// `f_{nm} = g_n ∘ ... ∘ g_{m-1}` as a single map; `f_{nn}` is the identity.
    pub fn composite(&self, n: usize, m: usize, budget: &Budget) -> Result<RegularMap> {
        if m < n {
            return Err(Error::InvalidParameter(format!("f_{{{n}{m}}} needs n <= m")));
        }
        let mut acc = RegularMap::identity(&self.level(n)?.ambient);
        for k in n..m {
            acc = map_compose(&acc, &self.transition(k)?, budget)?;
        }
        Ok(acc)
    }

    /// Image of points of level `m` in level `n`, applying one transition at a time.
    pub fn push_down(&self, points: &[Point], m: usize, n: usize) -> Result<Vec<Point>> {
        let mut cur = points.to_vec();
        for k in (n..m).rev() {
            let g = self.transition(k)?;
            cur = cur.iter().map(|p| g.apply(p)).collect();
            cur.sort();
            cur.dedup();
        }
        Ok(cur)
    }

    /// Enumerates `X_0, ..., X_depth`, checking `g_n(X_{n+1}) ⊆ X_n`.
    pub fn materialize(&self, depth: usize, budget: &Budget) -> Result<Vec<Vec<Point>>> {
        let mut out: Vec<Vec<Point>> = Vec::with_capacity(depth + 1);
        for n in 0..=depth {
            let pts = self.level(n)?.points(budget)?;
            if n > 0 {
                let g = self.transition(n - 1)?;
                for p in &pts {
                    let img = g.apply(p);
                    if out[n - 1].binary_search(&img).is_err() {
                        let f = g.field();
                        return Err(Error::Validation(format!(
                            "transition {} sends {} outside level {}",
                            n - 1,
                            format_points(f, std::slice::from_ref(p)),
                            n - 1
                        )));
                    }
                }
            }
            out.push(pts);
        }
        Ok(out)
    }
}

/// `∩_{n<=m<=horizon} f_{nm}(X_m)` with the size of each partial intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalSet {
    pub n: usize,
    pub horizon: usize,
    pub points: Vec<Point>,
    /// `sizes[i]` is the size after intersecting up to `m = n + i`.
    pub sizes: Vec<usize>,
}

impl UniversalSet {
    /// First `m` from which the partial intersections no longer change.
    pub fn stable_from(&self) -> Option<usize> {
        let last = *self.sizes.last()?;
        let i = self.sizes.iter().position(|&s| s == last)?;
        (i + 1 < self.sizes.len()).then_some(self.n + i + 1)
    }

    pub fn stabilized(&self) -> bool {
        self.stable_from().is_some()
    }

    /// First `m` at which the intersection became empty.
    pub fn emptied_at(&self) -> Option<usize> {
        self.sizes.iter().position(|&s| s == 0).map(|i| self.n + i)
    }
}

/// Universal elements of level `n` seen up to `horizon`, over a finite field.
pub fn universal_elements(seq: &ProjectiveSequence, n: usize, horizon: usize, budget: &Budget) -> Result<UniversalSet> {
    if horizon < n {
        return Err(Error::InvalidParameter("horizon below the level".into()));
    }
    let levels = seq.materialize(horizon, budget)?;
    let mut cur = levels[n].clone();
    let mut sizes = vec![cur.len()];
    for (m, level) in levels.iter().enumerate().skip(n + 1) {
        let img = seq.push_down(level, m, n)?;
        cur.retain(|p| img.binary_search(p).is_ok());
        sizes.push(cur.len());
    }
    Ok(UniversalSet {
        n,
        horizon,
        points: cur,
        sizes,
    })
}

/// The descending chain `∩_{n<=k<=m} cl f_{nk}(X_k)`. Over infinite fields this is
/// evidence only: closures can stabilize while the universal set itself is empty.
#[derive(Clone, Debug)]
pub struct UniversalClosure {
    pub n: usize,
    pub horizon: usize,
    pub set: AlgebraicSet,
    /// Index `m` of each strict drop in the chain.
    pub drops: Vec<usize>,
    pub stable_from: Option<usize>,
}

pub fn universal_closure(
    seq: &ProjectiveSequence,
    n: usize,
    horizon: usize,
    budget: &Budget,
) -> Result<UniversalClosure> {
    if horizon < n {
        return Err(Error::InvalidParameter("horizon below the level".into()));
    }
    let base = seq.level(n)?;
    let ring = base.ambient.ring().clone();
    let mut cur: IdealBasis = base.closure(budget)?.groebner(budget)?;
    let mut drops = Vec::new();
    let mut last_change = n;
    let mut f = RegularMap::identity(&base.ambient);
    for m in n + 1..=horizon {
        f = map_compose(&f, &seq.transition(m - 1)?, budget)?;
        let src = seq.level(m)?.closure(budget)?;
        let restricted = RegularMap::trusted(src, f.target().clone(), f.components().to_vec(), f.verification());
        let img = image_closure(&restricted, budget)?;
        let mut gens = cur.gens().to_vec();
        gens.extend(img.gens().iter().cloned());
        let next = IdealBasis::new(ring.clone(), gens)?.groebner(budget)?;
        if !ideals_equal(&cur, &next, budget)? {
            drops.push(m);
            last_change = m;
        }
        cur = next;
    }
    Ok(UniversalClosure {
        n,
        horizon,
        set: AlgebraicSet::from_ideal(cur),
        drops,
        stable_from: (last_change < horizon).then_some(last_change + 1),
    })
}

/// `(x_0, ..., x_N)` with `x_n = g_n(x_{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitThread {
    pub points: Vec<Point>,
}

impl LimitThread {
    pub fn depth(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    /// Rechecks compatibility of every consecutive pair by evaluation.
    pub fn is_compatible(&self, seq: &ProjectiveSequence) -> Result<bool> {
        for n in 0..self.depth() {
            if seq.transition(n)?.apply(&self.points[n + 1]) != self.points[n] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftResult {
    Thread(LimitThread),
    /// No thread reaches the requested depth; `level` is the first empty universal set.
    Obstruction { level: usize },
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub field: Field,
    pub level_sizes: Vec<usize>,
    /// `|f_{n,depth}(X_depth)|` for each `n`.
    pub universal_sizes: Vec<usize>,
    pub result: LiftResult,
}

impl LiftReport {
    pub fn thread(&self) -> Option<&LimitThread> {
        match &self.result {
            LiftResult::Thread(t) => Some(t),
            LiftResult::Obstruction { .. } => None,
        }
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "level_sizes={}", join(&self.level_sizes));
        let _ = writeln!(out, "universal_sizes={}", join(&self.universal_sizes));
        match &self.result {
            LiftResult::Thread(t) => {
                let _ = writeln!(out, "result=thread");
                for (n, p) in t.points.iter().enumerate() {
                    let _ = write!(out, "x[{n}]={}", format_points(&self.field, std::slice::from_ref(p)));
                }
            }
            LiftResult::Obstruction { level } => {
                let _ = writeln!(out, "result=obstruction");
                let _ = writeln!(out, "empty_level={level}");
            }
        }
        out
    }
}

/// Builds a thread `x_0, ..., x_depth` by choosing, level by level, the least point of
/// `f_{n,depth}(X_depth)` lying over the previous choice.
pub fn ml_lift(seq: &ProjectiveSequence, depth: usize, budget: &Budget) -> Result<LiftReport> {
    let field = seq.level(0)?.ambient.field().clone();
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let mut levels: Vec<Vec<Point>> = Vec::with_capacity(depth + 1);
    let mut level_sizes = Vec::with_capacity(depth + 1);
    let mut universal_sizes = Vec::new();
    for n in 0..=depth {
        // materialize one level at a time so an early empty level stops the work
        let pts = seq.level(n)?.points(budget)?;
        if n > 0 {
            let g = seq.transition(n - 1)?;
            if pts.iter().any(|p| levels[n - 1].binary_search(&g.apply(p)).is_err()) {
                return Err(Error::Validation(format!("transition {} leaves level {}", n - 1, n - 1)));
            }
        }
        level_sizes.push(pts.len());
        if pts.is_empty() {
            return Ok(LiftReport {
                field,
                level_sizes,
                universal_sizes,
                result: LiftResult::Obstruction { level: n },
            });
        }
        levels.push(pts);
    }
    let mut universal: Vec<Vec<Point>> = vec![Vec::new(); depth + 1];
    universal[depth] = levels[depth].clone();
    for n in (0..depth).rev() {
        universal[n] = seq.push_down(&universal[n + 1], n + 1, n)?;
    }
    universal_sizes = universal.iter().map(|u| u.len()).collect();
    let mut thread = vec![universal[0][0].clone()];
    for n in 0..depth {
        let g = seq.transition(n)?;
        let next = universal[n + 1]
            .iter()
            .find(|p| g.apply(p) == thread[n])
            .cloned()
            .expect("universal sets surject onto each other");
        thread.push(next);
    }
    Ok(LiftReport {
        field,
        level_sizes,
        universal_sizes,
        result: LiftResult::Thread(LimitThread { points: thread }),
    })
}
