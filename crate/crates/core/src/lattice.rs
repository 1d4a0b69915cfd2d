//! The group `Z^d`: windows, sublattices in Hermite normal form, cosets.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn zero(d: usize) -> Self {
        GroupElement(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        GroupElement(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, k: i64) -> Self {
        GroupElement(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, o: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, o: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite subset of `Z^d`, sorted lexicographically without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    dim: usize,
    elems: Vec<GroupElement>,
}

impl Window {
    pub fn new(dim: usize, elems: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        let mut elems: Vec<GroupElement> = elems.into_iter().collect();
        if let Some(bad) = elems.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        elems.sort();
        elems.dedup();
        Ok(Window { dim, elems })
    }

    pub fn empty(dim: usize) -> Self {
        Window { dim, elems: Vec::new() }
    }

    /// One-dimensional window from integers.
    pub fn line(xs: impl IntoIterator<Item = i64>) -> Self {
        Window::new(1, xs.into_iter().map(|x| GroupElement(vec![x]))).unwrap()
    }

    /// The box `lo <= g <= hi` componentwise.
    pub fn boxed(lo: &[i64], hi: &[i64]) -> Self {
        let d = lo.len();
        let mut elems = vec![GroupElement(Vec::new())];
        for i in 0..d {
            let mut next = Vec::new();
            for g in &elems {
                for x in lo[i]..=hi[i] {
                    let mut v = g.0.clone();
                    v.push(x);
                    next.push(GroupElement(v));
                }
            }
            elems = next;
        }
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            elems.clear();
        }
        Window { dim: d, elems }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elems.binary_search(g).is_ok()
    }

    /// Position of `g` in the sorted window.
    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.elems.binary_search(g).ok()
    }

    pub fn translate(&self, g: &GroupElement) -> Window {
        Window {
            dim: self.dim,
            elems: self.elems.iter().map(|e| e + g).collect(),
        }
    }

    pub fn negate(&self) -> Window {
        Window::new(self.dim, self.elems.iter().map(|e| -e)).unwrap()
    }

    /// `{s + t}`.
    pub fn sumset(&self, other: &Window) -> Window {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.elems {
            for b in &other.elems {
                out.push(a + b);
            }
        }
        Window::new(self.dim, out).unwrap()
    }

    pub fn union(&self, other: &Window) -> Window {
        Window::new(self.dim, self.elems.iter().chain(&other.elems).cloned()).unwrap()
    }

    pub fn is_subset(&self, other: &Window) -> bool {
        self.elems.iter().all(|g| other.contains(g))
    }

    /// Componentwise minimum and maximum, `None` when empty.
    pub fn bounds(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let first = self.elems.first()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for g in &self.elems {
            for i in 0..self.dim {
                lo[i] = lo[i].min(g.0[i]);
                hi[i] = hi[i].max(g.0[i]);
            }
        }
        Some((lo, hi))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `{g : g + m ∈ E for all m ∈ M}`.
pub fn interior(e: &Window, m: &Window) -> Window {
    let Some(m0) = m.elements().first() else {
        // Every g qualifies vacuously; restrict to E itself, the useful reading.
        return e.clone();
    };
    // g + m0 ∈ E, so candidates are E - m0.
    let elems = e
        .elements()
        .iter()
        .map(|x| x - m0)
        .filter(|g| m.elements().iter().all(|mm| e.contains(&(g + mm))))
        .collect::<Vec<_>>();
    Window::new(e.dim(), elems).unwrap()
}

/// Finite-index or rank-deficient subgroup of `Z^d`, stored as the nonzero rows of
/// its row-style Hermite normal form: upper triangular shape, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Sublattice {
    /// The subgroup generated by the given vectors.
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let mut m: Vec<Vec<i64>> = Vec::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            m.push(g.clone());
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..dim {
            // Euclid on column c among rows r..
            loop {
                let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
                if nz.is_empty() {
                    break;
                }
                let best = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
                m.swap(r, best);
                let mut done = true;
                for i in r + 1..m.len() {
                    if m[i][c] != 0 {
                        let k = Integer::div_floor(&m[i][c], &m[r][c]);
                        for j in 0..dim {
                            m[i][j] -= k * m[r][j];
                        }
                        if m[i][c] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if r < m.len() && m[r][c] != 0 {
                if m[r][c] < 0 {
                    for x in m[r].iter_mut() {
                        *x = -*x;
                    }
                }
                for i in 0..r {
                    let k = Integer::div_floor(&m[i][c], &m[r][c]);
                    for j in 0..dim {
                        m[i][j] -= k * m[r][j];
                    }
                }
                pivots.push(c);
                r += 1;
            }
        }
        m.truncate(r);
        Ok(Sublattice { dim, rows: m, pivots })
    }

    /// `n Z^d`.
    pub fn scaled(dim: usize, n: i64) -> Result<Self> {
        let gens: Vec<Vec<i64>> = (0..dim).map(|i| GroupElement::unit(dim, i).scale(n).0).collect();
        Sublattice::new(dim, &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Hermite normal form rows (a basis).
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `[Z^d : H]`, `None` for infinite index.
    pub fn index(&self) -> Option<u64> {
        if self.rank() < self.dim {
            return None;
        }
        Some(self.rows.iter().enumerate().map(|(i, r)| r[i] as u64).product())
    }

    /// Coordinates of `g` in the basis, if `g ∈ H`.
    pub fn solve(&self, g: &GroupElement) -> Option<Vec<i64>> {
        let mut rest = g.0.clone();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if rest[c] % row[c] != 0 {
                return None;
            }
            let k = rest[c] / row[c];
            for j in 0..self.dim {
                rest[j] -= k * row[j];
            }
            coords.push(k);
        }
        if rest.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.solve(g).is_some()
    }

    /// `Σ c_i b_i`.
    pub fn embed(&self, coords: &[i64]) -> GroupElement {
        let mut v = vec![0i64; self.dim];
        for (row, &c) in self.rows.iter().zip(coords) {
            for j in 0..self.dim {
                v[j] += c * row[j];
            }
        }
        GroupElement(v)
    }

    /// Canonical box representative of `g + H` (finite index only).
    pub fn reduce(&self, g: &GroupElement) -> Result<GroupElement> {
        if self.index().is_none() {
            return Err(Error::RankDeficient {
                rank: self.rank(),
                dim: self.dim,
            });
        }
        let mut v = g.0.clone();
        for (i, row) in self.rows.iter().enumerate() {
            let k = Integer::div_floor(&v[i], &row[i]);
            for j in 0..self.dim {
                v[j] -= k * row[j];
            }
        }
        Ok(GroupElement(v))
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Coset representatives of `H \ Z^d` and the projection onto them.
#[derive(Clone, Debug)]
pub struct CosetData {
    lattice: Sublattice,
    reps: Window,
}

impl CosetData {
    pub fn representatives(&self) -> &Window {
        &self.reps
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    /// Index of the coset of `g` among the representatives.
    pub fn project(&self, g: &GroupElement) -> usize {
        let r = self.lattice.reduce(g).expect("finite index");
        self.reps.index_of(&r).expect("reduced element is a representative")
    }
}

pub fn coset_data(h: &Sublattice) -> Result<CosetData> {
    if h.index().is_none() {
        return Err(Error::RankDeficient {
            rank: h.rank(),
            dim: h.dim(),
        });
    }
    let lo = vec![0; h.dim()];
    let hi: Vec<i64> = (0..h.dim()).map(|i| h.rows[i][i] - 1).collect();
    Ok(CosetData {
        lattice: h.clone(),
        reps: Window::boxed(&lo, &hi),
    })
}

/// Every sublattice of `Z^d` with index at most `max_index`, d ≤ 2 (HNF enumeration).
pub fn sublattices_up_to(dim: usize, max_index: u64) -> Result<Vec<Sublattice>> {
    let mut out = Vec::new();
    match dim {
        1 => {
            for n in 1..=max_index as i64 {
                out.push(Sublattice::new(1, &[vec![n]])?);
            }
        }
        2 => {
            for a in 1..=max_index as i64 {
                for c in 1..=(max_index as i64 / a) {
                    for b in 0..c {
                        out.push(Sublattice::new(2, &[vec![a, b], vec![0, c]])?);
                    }
                }
            }
        }
        _ => {
            return Err(Error::InvalidParameter(
                "sublattice enumeration is implemented for d <= 2".into(),
            ))
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(xs: &[i64]) -> GroupElement {
        GroupElement(xs.to_vec())
    }

    #[test]
    fn interior_examples() {
        let e = Window::line(0..=3);
        assert_eq!(interior(&e, &Window::line([0, 1])), Window::line(0..=2));
        assert_eq!(interior(&e, &Window::line([0])), e);
        assert!(interior(&Window::line([0]), &Window::line([0, 1])).is_empty());
    }

    #[test]
    fn coset_examples() {
        let h = Sublattice::new(1, &[vec![3]]).unwrap();
        let cd = coset_data(&h).unwrap();
        assert_eq!(cd.representatives(), &Window::line(0..=2));
        assert_eq!(cd.project(&g(&[7])), cd.representatives().index_of(&g(&[1])).unwrap());
        assert_eq!(cd.project(&g(&[-1])), 2);
        let h2 = Sublattice::scaled(2, 2).unwrap();
        assert_eq!(coset_data(&h2).unwrap().representatives().len(), 4);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = Sublattice::new(2, &[vec![2, 1], vec![0, 2]]).unwrap();
        let b = Sublattice::new(2, &[vec![2, 3], vec![2, 5], vec![0, 4]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[vec![2, 1], vec![0, 2]]);
        assert_eq!(a.index(), Some(4));
    }

    #[test]
    fn rank_deficient() {
        let h = Sublattice::new(2, &[vec![2, 0]]).unwrap();
        assert_eq!(h.rank(), 1);
        assert_eq!(h.index(), None);
        assert!(matches!(coset_data(&h), Err(Error::RankDeficient { rank: 1, dim: 2 })));
        assert_eq!(h.solve(&g(&[6, 0])), Some(vec![3]));
        assert_eq!(h.solve(&g(&[6, 1])), None);
    }

    #[test]
    fn enumerated_sublattices_are_distinct() {
        let all = sublattices_up_to(2, 8).unwrap();
        for (i, a) in all.iter().enumerate() {
            assert!(a.index().unwrap() <= 8);
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
        // sigma_1 summed: number of index-n sublattices of Z^2 is sigma(n)
        let count = |n: u64| all.iter().filter(|h| h.index() == Some(n)).count();
        assert_eq!((1..=8).map(count).collect::<Vec<_>>(), vec![1, 3, 4, 7, 6, 12, 8, 15]);
    }

    #[test]
    fn boxes_exhaust() {
        let m = Window::new(2, [g(&[0, 0]), g(&[1, 0]), g(&[0, 1])]).unwrap();
        let target = Window::boxed(&[-3, -3], &[3, 3]);
        let f = |n: i64| interior(&Window::boxed(&[-n, -n], &[n, n]), &m);
        assert!(target.is_subset(&f(4)));
        assert!(!target.is_subset(&f(3)));
    }

    fn hnf_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1i64..=6, 1i64..=4, 0i64..6).prop_map(|(a, c, b)| vec![vec![a, b % c], vec![0, c]])
    }

    proptest! {
        #[test]
        fn coset_count_is_determinant(rows in hnf_strategy()) {
            let h = Sublattice::new(2, &rows).unwrap();
            let det = (rows[0][0] * rows[1][1]) as u64;
            prop_assert_eq!(h.index(), Some(det));
            let cd = coset_data(&h).unwrap();
            prop_assert_eq!(cd.representatives().len() as u64, det);
            // distinct representatives lie in distinct cosets
            let reps = cd.representatives().elements();
            for (i, r) in reps.iter().enumerate() {
                prop_assert_eq!(cd.project(r), i);
            }
        }

        #[test]
        fn projection_constant_on_cosets(
            rows in hnf_strategy(),
            x in -50i64..50, y in -50i64..50, s in -9i64..9, t in -9i64..9,
        ) {
            let h = Sublattice::new(2, &rows).unwrap();
            let cd = coset_data(&h).unwrap();
            let gg = g(&[x, y]);
            let hh = h.embed(&[s, t]);
            prop_assert!(h.contains(&hh));
            prop_assert_eq!(cd.project(&(&gg + &hh)), cd.project(&gg));
        }

        #[test]
        fn interior_monotonicity(
            e in proptest::collection::vec(-5i64..5, 0..8),
            m in proptest::collection::vec(-2i64..3, 1..3),
            extra in -2i64..3,
        ) {
            let e = Window::line(e);
            let m = Window::line(m);
            let m2 = m.union(&Window::line([extra]));
            prop_assert!(interior(&e, &m2).is_subset(&interior(&e, &m)));
            let e2 = e.union(&Window::line([extra + 4]));
            prop_assert!(interior(&e, &m).is_subset(&interior(&e2, &m)));
        }
    }
}
