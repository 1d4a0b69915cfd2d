//! Buchberger's algorithm with a step budget, normal forms and elimination.

use std::collections::HashSet;

use super::order::{Monomial, MonomialOrder, OrderKind};
use super::poly::{MultiPoly, Ring};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Generators of an ideal. `groebner` records the order under which the
/// generators form a reduced Groebner basis, if they do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: Ring,
    gens: Vec<MultiPoly>,
    groebner: Option<MonomialOrder>,
}

impl IdealBasis {
    pub fn new(ring: Ring, gens: Vec<MultiPoly>) -> Result<Self> {
        for g in &gens {
            if *g.ring() != ring {
                return Err(Error::FieldMismatch(format!(
                    "generator {g} is not over {ring:?}"
                )));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealBasis {
            ring,
            gens,
            groebner: None,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_groebner(&self) -> bool {
        self.groebner.is_some()
    }

    pub fn groebner_order(&self) -> Option<&MonomialOrder> {
        self.groebner.as_ref()
    }

    /// True for a flagged basis equal to `{1}`.
    pub fn is_unit(&self) -> bool {
        self.is_groebner() && self.gens.len() == 1 && self.gens[0].is_constant()
    }

    /// Groebner basis under the ring's own order.
    pub fn groebner(&self, budget: &Budget) -> Result<IdealBasis> {
        if self.is_groebner() {
            return Ok(self.clone());
        }
        groebner_basis(self, self.ring.order(), budget)
    }
}

/// Reduces `f` fully against `basis`; counts cancellations in `steps`.
fn reduce_full(f: &MultiPoly, basis: &[MultiPoly], steps: &mut u64, cap: u64) -> Result<MultiPoly> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut rem = Vec::new();
    let mut p = f.clone();
    while let Some((lm, lc)) = p.terms().first().cloned() {
        *steps += 1;
        if *steps > cap {
            return Err(Error::budget("reduction", format!("{} cancellations", steps)));
        }
        match basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(&lm)))
        {
            Some(g) => {
                let gm = g.leading_monomial().unwrap();
                let c = field.div(&lc, g.leading_coeff().unwrap()).unwrap();
                p = p.sub(&g.mul_term(&gm.quotient_of(&lm), &c));
            }
            None => {
                rem.push((lm, lc));
                p = p.tail();
            }
        }
    }
    Ok(MultiPoly::from_sorted(&ring, rem))
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let fm = f.leading_monomial().unwrap();
    let gm = g.leading_monomial().unwrap();
    let l = fm.lcm(gm);
    let field = f.field();
    let a = f.mul_term(&fm.quotient_of(&l), &field.inv(f.leading_coeff().unwrap()).unwrap());
    let b = g.mul_term(&gm.quotient_of(&l), &field.inv(g.leading_coeff().unwrap()).unwrap());
    a.sub(&b)
}

/// Reduced Groebner basis of the ideal under `order`.
pub fn groebner_basis(gens: &IdealBasis, order: &MonomialOrder, budget: &Budget) -> Result<IdealBasis> {
    let ring = gens.ring.with_order(order.clone())?;
    let cap = budget.groebner_steps;
    let mut steps = 0u64;

    let mut input: Vec<MultiPoly> = gens
        .gens
        .iter()
        .map(|g| g.to_ring(&ring))
        .collect::<Result<_>>()?;
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<MultiPoly>,
                pairs: &mut Vec<(usize, usize)>,
                pending: &mut HashSet<(usize, usize)>,
                h: MultiPoly| {
        let j = basis.len();
        basis.push(h.monic());
        for i in 0..j {
            pairs.push((i, j));
            pending.insert((i, j));
        }
    };

    for g in input {
        let r = reduce_full(&g, &basis, &mut steps, cap)?;
        if !r.is_zero() {
            if r.is_constant() {
                return Ok(unit_ideal(&ring, order));
            }
            push(&mut basis, &mut pairs, &mut pending, r);
        }
    }

    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first, ties by index.
        let mut best = 0;
        let mut best_lcm = lcm_of(&basis, pairs[0]);
        for (idx, &pr) in pairs.iter().enumerate().skip(1) {
            let l = lcm_of(&basis, pr);
            let c = order.cmp(&l, &best_lcm);
            if c == std::cmp::Ordering::Less || (c == std::cmp::Ordering::Equal && pr < pairs[best]) {
                best = idx;
                best_lcm = l;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let mi = basis[i].leading_monomial().unwrap();
        let mj = basis[j].leading_monomial().unwrap();
        if mi.coprime(mj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&best_lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j]);
        let r = reduce_full(&s, &basis, &mut steps, cap).map_err(|_| {
            Error::budget(
                "groebner_basis",
                format!(
                    "basis size {}, pairs pending {}, cancellations {}",
                    basis.len(),
                    pairs.len(),
                    steps
                ),
            )
        })?;
        if !r.is_zero() {
            if r.is_constant() {
                return Ok(unit_ideal(&ring, order));
            }
            push(&mut basis, &mut pairs, &mut pending, r);
        }
    }

    // Minimalise, then interreduce.
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let gm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(gm))
        {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce_full(&minimal[i], &others, &mut steps, cap.saturating_mul(2))?;
        reduced.push(r.monic());
    }
    Ok(IdealBasis {
        ring,
        gens: reduced,
        groebner: Some(order.clone()),
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn lcm_of(basis: &[MultiPoly], (i, j): (usize, usize)) -> Monomial {
    basis[i]
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].leading_monomial().unwrap())
}

fn unit_ideal(ring: &Ring, order: &MonomialOrder) -> IdealBasis {
    IdealBasis {
        ring: ring.clone(),
        gens: vec![ring.one()],
        groebner: Some(order.clone()),
    }
}

/// Unique normal form of `f` modulo a flagged reduced Groebner basis.
pub fn reduce_mod(f: &MultiPoly, gb: &IdealBasis) -> Result<MultiPoly> {
    if !gb.is_groebner() {
        return Err(Error::NotGroebner);
    }
    let f = f.to_ring(&gb.ring)?;
    let mut steps = 0;
    reduce_full(&f, &gb.gens, &mut steps, u64::MAX)
}

/// Generators of `I ∩ K[keep]`, computed with an elimination order that puts the
/// other variables first. The result lives in a ring over `keep` (roster order
/// preserved, grevlex) and is flagged as a reduced Groebner basis there.
pub fn elimination(gens: &IdealBasis, keep: &[&str], budget: &Budget) -> Result<IdealBasis> {
    let ring = &gens.ring;
    let mut keep_idx = Vec::new();
    for name in keep {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        if !keep_idx.contains(&i) {
            keep_idx.push(i);
        }
    }
    keep_idx.sort_unstable();
    let elim: Vec<usize> = (0..ring.nvars()).filter(|i| !keep_idx.contains(i)).collect();
    let mut perm = elim.clone();
    perm.extend(&keep_idx);
    let order = MonomialOrder::new(OrderKind::Elimination(elim.len()), perm)?;
    let gb = groebner_basis(gens, &order, budget)?;

    let kept_vars: Vec<String> = keep_idx.iter().map(|&i| ring.vars()[i].clone()).collect();
    let target = Ring::new(ring.field().clone(), &kept_vars);
    let mut out = Vec::new();
    for g in gb.gens {
        if elim.iter().all(|&v| !g.uses_var(v)) {
            out.push(g.to_ring(&target)?);
        }
    }
    out.sort_by(|a, b| {
        target
            .order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    let order = target.order().clone();
    Ok(IdealBasis {
        ring: target,
        gens: out,
        groebner: Some(order),
    })
}

/// True when every generator of `sub` reduces to zero modulo `gb`.
pub fn ideal_contains(gb: &IdealBasis, sub: &IdealBasis) -> Result<bool> {
    for g in &sub.gens {
        if !reduce_mod(g, gb)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal equality by mutual reduction to zero.
pub fn ideals_equal(a: &IdealBasis, b: &IdealBasis, budget: &Budget) -> Result<bool> {
    let ga = a.groebner(budget)?;
    let b_in_a = b.clone_into_ring(ga.ring())?;
    if !ideal_contains(&ga, &b_in_a)? {
        return Ok(false);
    }
    let gb = b.groebner(budget)?;
    let a_in_b = a.clone_into_ring(gb.ring())?;
    ideal_contains(&gb, &a_in_b)
}

impl IdealBasis {
    /// Same generators moved into another ring by variable name.
    pub fn clone_into_ring(&self, ring: &Ring) -> Result<IdealBasis> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        IdealBasis::new(ring.clone(), gens)
    }

    /// Marks generators as a reduced Groebner basis without checking. Used for
    /// bases that are Groebner by construction (e.g. from Buchberger-Moeller).
    pub(crate) fn assume_groebner(mut self) -> IdealBasis {
        self.groebner = Some(self.ring.order().clone());
        self
    }
}

/// `I : Q^∞`, via elimination of a fresh variable from `I + (1 - yQ)`.
pub fn saturate(ideal: &IdealBasis, q: &MultiPoly, budget: &Budget) -> Result<IdealBasis> {
    let ring = ideal.ring();
    let fresh = fresh_name(ring, "_sat");
    let ext = ring.extended(std::slice::from_ref(&fresh));
    let y = ext.var_named(&fresh)?;
    let mut gens: Vec<MultiPoly> = ideal
        .gens
        .iter()
        .map(|g| g.to_ring(&ext))
        .collect::<Result<_>>()?;
    gens.push(ext.one().sub(&y.mul(&q.to_ring(&ext)?)));
    let keep: Vec<&str> = ring.vars().iter().map(|s| s.as_str()).collect();
    let out = elimination(&IdealBasis::new(ext, gens)?, &keep, budget)?;
    out.clone_into_ring(&Ring::new(ring.field().clone(), ring.vars()))
        .map(|b| b.assume_groebner())
}

/// `I ∩ J`, via elimination of `s` from `s I + (1 - s) J`.
pub fn intersect(a: &IdealBasis, b: &IdealBasis, budget: &Budget) -> Result<IdealBasis> {
    let ring = a.ring();
    let fresh = fresh_name(ring, "_int");
    let ext = ring.extended(std::slice::from_ref(&fresh));
    let s = ext.var_named(&fresh)?;
    let one_minus = ext.one().sub(&s);
    let mut gens = Vec::new();
    for g in &a.gens {
        gens.push(s.mul(&g.to_ring(&ext)?));
    }
    for g in &b.gens {
        gens.push(one_minus.mul(&g.to_ring(&ext)?));
    }
    let keep: Vec<&str> = ring.vars().iter().map(|s| s.as_str()).collect();
    let out = elimination(&IdealBasis::new(ext, gens)?, &keep, budget)?;
    out.clone_into_ring(&Ring::new(ring.field().clone(), ring.vars()))
        .map(|b| b.assume_groebner())
}

pub(crate) fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    let mut i = 0;
    while ring.var_index(&name).is_some() {
        i += 1;
        name = format!("{base}{i}");
    }
    name
}
