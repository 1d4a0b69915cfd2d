//! Sparse distributed multivariate polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldElement};
use super::order::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Coefficient field, variable roster and active monomial order.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

struct RingData {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    /// Ring with grevlex order on the roster as given.
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let order = MonomialOrder::grevlex(vars.len());
        Ring(Arc::new(RingData { field, vars, order }))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        if order.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: order.nvars(),
            });
        }
        Ok(Ring(Arc::new(RingData {
            field: self.field().clone(),
            vars: self.0.vars.clone(),
            order,
        })))
    }

    /// `t1, ..., tm` over the field.
    pub fn affine(field: Field, m: usize) -> Self {
        let vars: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
        Ring::new(field, &vars)
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: FieldElement) -> MultiPoly {
        let terms = if self.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(Monomial::one(self.nvars()), c)]
        };
        MultiPoly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn int(&self, n: i64) -> MultiPoly {
        self.constant(self.field().from_i64(n))
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        MultiPoly {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.nvars(), i), self.field().one())],
        }
    }

    pub fn var_named(&self, name: &str) -> Result<MultiPoly> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.var(i))
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> MultiPoly {
        let f = self.field();
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), self.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = f.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        let order = self.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly {
            ring: self.clone(),
            terms,
        }
    }

    /// Same roster and field with one extra variable appended.
    pub fn extended(&self, extra: &[String]) -> Ring {
        let mut vars = self.vars().to_vec();
        vars.extend(extra.iter().cloned());
        Ring::new(self.field().clone(), &vars)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.vars == other.0.vars
                && self.0.order == other.0.order)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({} ; {})", self.field(), self.vars().join(","))
    }
}

pub type Term = (Monomial, FieldElement);

/// A polynomial; terms are sorted from the leading term down under the ring's order
/// and never carry zero coefficients, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: Vec<Term>,
}

impl MultiPoly {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&v| self.uses_var(v)).collect()
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(
            self.ring == other.ring,
            "polynomials from different rings: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    fn merge(&self, other: &MultiPoly, negate_other: bool) -> MultiPoly {
        self.check_ring(other);
        let f = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let adj = |c: &FieldElement| if negate_other { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), adj(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), adj(c))));
        MultiPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> MultiPoly {
        let f = self.field();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    /// `c * mono * self`; order is preserved because monomial orders are multiplicative.
    pub fn mul_term(&self, mono: &Monomial, c: &FieldElement) -> MultiPoly {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let f = self.field();
        let prods = self.terms.iter().flat_map(|(ma, ca)| {
            other
                .terms
                .iter()
                .map(move |(mb, cb)| (ma.mul(mb), f.mul(ca, cb)))
        });
        self.ring.from_terms(prods)
    }

    pub fn pow(&self, mut e: u64) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact value at a point.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                got: point.len(),
            });
        }
        let f = self.field();
        if let Some(bad) = point.iter().find(|a| !f.contains(a)) {
            return Err(Error::FieldMismatch(format!("{bad:?} is not an element of {f}")));
        }
        Ok(self.eval_unchecked(point))
    }

    /// Evaluation without dimension or membership checks.
    pub fn eval_unchecked(&self, point: &[FieldElement]) -> FieldElement {
        let f = self.field();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &f.pow(&point[v], e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images must share one ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => {
                // No variables: the polynomial is a constant.
                return Err(Error::InvalidParameter(
                    "substitution into a ring without variables needs substitute_into".into(),
                ));
            }
        };
        self.substitute_into(images, &target)
    }

    /// As [`MultiPoly::substitute`] with an explicit target ring.
    pub fn substitute_into(&self, images: &[MultiPoly], target: &Ring) -> Result<MultiPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        if target.field() != self.field() {
            return Err(Error::FieldMismatch(format!(
                "cannot substitute from {} into {}",
                self.field(),
                target.field()
            )));
        }
        for img in images {
            if img.ring != *target {
                return Err(Error::FieldMismatch("substitution images from different rings".into()));
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); images.len()];
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                if cache.is_empty() {
                    cache.push(target.one());
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[v]);
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitution by variable name; every used variable must be assigned.
    pub fn substitute_named(
        &self,
        assignment: &HashMap<String, MultiPoly>,
        target: &Ring,
    ) -> Result<MultiPoly> {
        let mut images = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.vars().iter().enumerate() {
            match assignment.get(name) {
                Some(p) => images.push(p.clone()),
                None if !self.uses_var(i) => images.push(target.zero()),
                None => return Err(Error::MissingAssignment(name.clone())),
            }
        }
        self.substitute_into(&images, target)
    }

    /// Re-expresses the polynomial in another ring with the same field, matching
    /// variables by name.
    pub fn to_ring(&self, target: &Ring) -> Result<MultiPoly> {
        if target.field() != self.field() {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field(),
                target.field()
            )));
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.vars().iter().enumerate() {
            match target.var_index(name) {
                Some(j) => map.push(Some(j)),
                None if !self.uses_var(i) => map.push(None),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        Ok(self.remap(target, &map))
    }

    /// Moves variable `i` to `map[i]` in `target` (variables mapped to `None` must not occur).
    pub fn remap(&self, target: &Ring, map: &[Option<usize>]) -> MultiPoly {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    let j = map[i].expect("variable has no image");
                    e[j] += x;
                }
            }
            (Monomial(e), c.clone())
        });
        if target.order() == self.ring.order() && map.iter().enumerate().all(|(i, j)| *j == Some(i)) {
            return MultiPoly {
                ring: target.clone(),
                terms: terms.collect(),
            };
        }
        target.from_terms(terms)
    }

    /// Moves coefficients into a field with the same prime subfield.
    pub fn change_field(&self, target: &Ring) -> Result<MultiPoly> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                got: target.nvars(),
            });
        }
        let from = self.field();
        let to = target.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), to.embed_from(from, c)?));
        }
        Ok(target.from_terms(terms))
    }

    /// The polynomial without its leading term.
    pub(crate) fn tail(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    /// Wraps terms already sorted descending under the ring's order with no zeros.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> MultiPoly {
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Formats a monomial with the ring's variable names.
    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.ring.vars()[v].clone()),
                _ => parts.push(format!("{}^{}", self.ring.vars()[v], e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = self.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            // Over Q, negative coefficients are printed as subtraction.
            let (neg, c) = match c {
                FieldElement::Rational(r) if r < &num_rational::BigRational::from_integer(0.into()) => {
                    (true, FieldElement::Rational(-r))
                }
                _ => (false, c.clone()),
            };
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else if neg {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let mono = self.fmt_monomial(m);
            let coeff = f.format(&c);
            if mono.is_empty() {
                write!(out, "{coeff}")?;
            } else if f.is_one(&c) {
                write!(out, "{mono}")?;
            } else if f.is_compound(&c) {
                write!(out, "({coeff})*{mono}")?;
            } else {
                write!(out, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
