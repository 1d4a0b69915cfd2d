use std::collections::HashSet;

use crate::algebra::{Evaluator, Field, FieldElement, IdealBasis, Monomial, MultiPoly, Ring};
use crate::budget::Budget;
use crate::error::{Error, Result};

pub type Point = Vec<FieldElement>;

/// `Zer(S)` for a finite generator list `S` in the ring's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicSet {
    ideal: IdealBasis,
}

impl AlgebraicSet {
    pub fn new(ring: &Ring, gens: Vec<MultiPoly>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut uniq = Vec::new();
        for g in gens {
            if *g.ring() != *ring {
                return Err(Error::FieldMismatch(format!("generator {g} is not over {ring:?}")));
            }
            if seen.insert(g.to_string()) {
                uniq.push(g);
            }
        }
        Ok(AlgebraicSet {
            ideal: IdealBasis::new(ring.clone(), uniq)?,
        })
    }

    pub fn from_ideal(ideal: IdealBasis) -> Self {
        AlgebraicSet { ideal }
    }

    /// The whole affine space of the ring.
    pub fn full(ring: &Ring) -> Self {
        AlgebraicSet {
            ideal: IdealBasis::new(ring.clone(), Vec::new()).unwrap(),
        }
    }

    pub fn empty(ring: &Ring) -> Self {
        AlgebraicSet {
            ideal: IdealBasis::new(ring.clone(), vec![ring.one()]).unwrap(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn field(&self) -> &Field {
        self.ring().field()
    }

    pub fn ambient(&self) -> usize {
        self.ring().nvars()
    }

    pub fn gens(&self) -> &[MultiPoly] {
        self.ideal.gens()
    }

    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    pub fn is_full(&self) -> bool {
        self.gens().is_empty()
    }

    pub fn contains(&self, point: &[FieldElement]) -> Result<bool> {
        for g in self.gens() {
            if !self.field().is_zero(&g.eval(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn groebner(&self, budget: &Budget) -> Result<IdealBasis> {
        self.ideal.groebner(budget)
    }

    /// Empty over the algebraic closure, i.e. `1` lies in the ideal.
    pub fn is_empty_closure(&self, budget: &Budget) -> Result<bool> {
        if self.gens().iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.groebner(budget)?.is_unit())
    }

    /// Same set moved into another ring with the same variable names.
    pub fn in_ring(&self, ring: &Ring) -> Result<AlgebraicSet> {
        Ok(AlgebraicSet {
            ideal: self.ideal.clone_into_ring(ring)?,
        })
    }

    /// Same generators with coefficients moved into an extension field.
    pub fn over_field(&self, field: &Field) -> Result<AlgebraicSet> {
        let ring = Ring::new(field.clone(), self.ring().vars());
        let gens = self
            .gens()
            .iter()
            .map(|g| g.change_field(&ring))
            .collect::<Result<Vec<_>>>()?;
        AlgebraicSet::new(&ring, gens)
    }

    /// All points over the (finite) ground field, sorted lexicographically.
    pub fn enumerate_points(&self, budget: &Budget) -> Result<Vec<Point>> {
        enumerate_points(self, budget)
    }
}

/// `Zer(gens)` in `m` variables; with no generators the roster is `t1..tm`.
pub fn zero_set(gens: Vec<MultiPoly>, m: usize, field: &Field) -> Result<AlgebraicSet> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => Ring::affine(field.clone(), m),
    };
    if ring.nvars() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: ring.nvars(),
        });
    }
    if ring.field() != field {
        return Err(Error::FieldMismatch(format!("{} vs {}", ring.field(), field)));
    }
    AlgebraicSet::new(&ring, gens)
}

/// Backtracking enumeration: each generator is tested as soon as the largest
/// variable it uses is assigned.
pub fn enumerate_points(a: &AlgebraicSet, budget: &Budget) -> Result<Vec<Point>> {
    let field = a.field().clone();
    let q = field.size().ok_or(Error::InfiniteField)?;
    let m = a.ambient();
    let mut checks: Vec<Vec<Evaluator>> = vec![Vec::new(); m];
    for g in a.gens() {
        let ev = Evaluator::new(g);
        match ev.max_var() {
            Some(v) => checks[v].push(ev),
            None => {
                if !g.is_zero() {
                    return Ok(Vec::new());
                }
            }
        }
    }
    if m == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    let mut point = vec![field.zero(); m];
    let mut digits = vec![0u64; m];
    let mut depth = 0usize;
    let mut visited = 0u64;
    // Iterative DFS: digits[depth] is the next candidate code at that depth.
    loop {
        if digits[depth] == q {
            digits[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        visited += 1;
        if visited > budget.points {
            return Err(Error::budget(
                "enumerate_points",
                format!("{} nodes visited, {} points found", visited - 1, out.len()),
            ));
        }
        point[depth] = FieldElement::Finite(digits[depth]);
        digits[depth] += 1;
        if checks[depth].iter().all(|ev| field.is_zero(&ev.eval(&point))) {
            if depth + 1 == m {
                out.push(point.clone());
            } else {
                depth += 1;
            }
        }
    }
    Ok(out)
}

/// Every point of `K^m` for a finite `K`, in lexicographic order.
pub fn all_points(field: &Field, m: usize, budget: &Budget) -> Result<Vec<Point>> {
    let ring = Ring::affine(field.clone(), m);
    enumerate_points(&AlgebraicSet::full(&ring), budget)
}

/// Reduced Groebner basis of the ideal of a finite point set, under the ring's
/// order (Buchberger-Moeller).
pub fn vanishing_ideal_of_points(points: &[Point], ring: &Ring) -> Result<IdealBasis> {
    let field = ring.field();
    let n = ring.nvars();
    let mut pts: Vec<Point> = Vec::new();
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        if let Some(bad) = p.iter().find(|a| !field.contains(a)) {
            return Err(Error::FieldMismatch(format!("{bad:?} is not in {field}")));
        }
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }
    let order = ring.order();
    let eval_mono = |m: &Monomial| -> Vec<FieldElement> {
        pts.iter()
            .map(|p| {
                let mut acc = field.one();
                for (v, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        acc = field.mul(&acc, &field.pow(&p[v], e as u64));
                    }
                }
                acc
            })
            .collect()
    };

    // (pivot, normalized evaluation vector, polynomial with that evaluation)
    let mut rows: Vec<(usize, Vec<FieldElement>, MultiPoly)> = Vec::new();
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut candidates = vec![Monomial::one(n)];
    let mut seen: HashSet<Monomial> = candidates.iter().cloned().collect();
    while !candidates.is_empty() {
        let mut best = 0;
        for i in 1..candidates.len() {
            if order.cmp(&candidates[i], &candidates[best]).is_lt() {
                best = i;
            }
        }
        let t = candidates.swap_remove(best);
        if basis
            .iter()
            .any(|g| g.leading_monomial().unwrap().divides(&t))
        {
            continue;
        }
        let mut v = eval_mono(&t);
        let mut poly = ring.from_terms([(t.clone(), field.one())]);
        for (piv, row, rp) in &rows {
            if !field.is_zero(&v[*piv]) {
                let c = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = field.sub(x, &field.mul(&c, r));
                }
                poly = poly.sub(&rp.scale(&c));
            }
        }
        match v.iter().position(|x| !field.is_zero(x)) {
            None => basis.push(poly),
            Some(piv) => {
                let inv = field.inv(&v[piv]).unwrap();
                let v: Vec<_> = v.iter().map(|x| field.mul(x, &inv)).collect();
                rows.push((piv, v, poly.scale(&inv)));
                for i in 0..n {
                    let next = t.mul(&Monomial::var(n, i));
                    if seen.insert(next.clone()) {
                        candidates.push(next);
                    }
                }
            }
        }
    }
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(IdealBasis::new(ring.clone(), basis)?.assume_groebner())
}

/// One comma-separated tuple per line.
pub fn format_points(field: &Field, points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        let parts: Vec<String> = p.iter().map(|a| field.format(a)).collect();
        out.push_str(&parts.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{groebner_basis, reduce_mod};

    fn fp(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn ints(field: &Field, xs: &[i64]) -> Point {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn zero_set_examples() {
        let f2 = fp(2);
        let line = zero_set(vec![], 1, &f2).unwrap();
        assert_eq!(line.enumerate_points(&Budget::default()).unwrap().len(), 2);

        let r = Ring::affine(f2.clone(), 1);
        let empty = zero_set(vec![r.one()], 1, &f2).unwrap();
        assert!(empty.enumerate_points(&Budget::default()).unwrap().is_empty());
        assert!(empty.is_empty_closure(&Budget::default()).unwrap());

        let q = Field::rationals();
        let r = Ring::affine(q.clone(), 2);
        let cusp = zero_set(vec![r.parse("t1^2 - t2^3").unwrap()], 2, &q).unwrap();
        assert!(cusp.contains(&ints(&q, &[1, 1])).unwrap());
        assert!(cusp.contains(&ints(&q, &[8, 4])).unwrap());
        assert!(!cusp.contains(&ints(&q, &[1, 2])).unwrap());
        assert!(matches!(
            zero_set(vec![r.one()], 3, &q),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        let f5 = fp(5);
        let r = Ring::affine(f5.clone(), 1);
        let a = AlgebraicSet::new(&r, vec![r.parse("t1^2 + 1").unwrap()]).unwrap();
        assert_eq!(
            a.enumerate_points(&Budget::default()).unwrap(),
            vec![ints(&f5, &[2]), ints(&f5, &[3])]
        );
        let plane = all_points(&fp(2), 2, &Budget::default()).unwrap();
        assert_eq!(plane.len(), 4);
        assert!(plane.windows(2).all(|w| w[0] < w[1]));
        let q = Field::rationals();
        assert_eq!(
            AlgebraicSet::full(&Ring::affine(q, 1)).enumerate_points(&Budget::default()),
            Err(Error::InfiniteField)
        );
    }

    #[test]
    fn enumeration_budget() {
        let r = Ring::affine(fp(7), 6);
        let err = AlgebraicSet::full(&r)
            .enumerate_points(&Budget::default().with_points(1000))
            .unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn vanishing_ideal_examples() {
        let q = Field::rationals();
        let r = Ring::affine(q.clone(), 1);
        let i0 = vanishing_ideal_of_points(&[ints(&q, &[0])], &r).unwrap();
        assert_eq!(i0.gens(), &[r.parse("t1").unwrap()]);
        let i01 = vanishing_ideal_of_points(&[ints(&q, &[0]), ints(&q, &[1])], &r).unwrap();
        assert_eq!(i01.gens(), &[r.parse("t1^2 - t1").unwrap()]);

        let f7 = fp(7);
        let r7 = Ring::affine(f7.clone(), 1);
        let all: Vec<Point> = f7.elements().map(|a| vec![a]).collect();
        let ideal = vanishing_ideal_of_points(&all, &r7).unwrap();
        assert_eq!(ideal.gens(), &[r7.parse("t1^7 - t1").unwrap()]);
        let back = AlgebraicSet::from_ideal(ideal).enumerate_points(&Budget::default()).unwrap();
        assert_eq!(back, all);

        let none = vanishing_ideal_of_points(&[], &r7).unwrap();
        assert!(none.is_unit());
    }

    #[test]
    fn vanishing_ideal_is_reduced_groebner() {
        let f5 = fp(5);
        let r = Ring::affine(f5.clone(), 2);
        let pts = vec![ints(&f5, &[0, 1]), ints(&f5, &[2, 3]), ints(&f5, &[2, 4]), ints(&f5, &[4, 4])];
        let bm = vanishing_ideal_of_points(&pts, &r).unwrap();
        let gb = groebner_basis(&bm, r.order(), &Budget::default()).unwrap();
        assert_eq!(bm.gens(), gb.gens());
        for g in bm.gens() {
            assert!(reduce_mod(g, &gb).unwrap().is_zero());
        }
        let zer = AlgebraicSet::from_ideal(bm).enumerate_points(&Budget::default()).unwrap();
        assert_eq!(zer, pts);
    }
}
