//! Desk-scale oracle checks behind `aca selftest`.

use aca_core::algebra::{functional_normal_form, ideals_equal, Field, Ring};
use aca_core::automata::{ca_apply, ca_compose, ca_make_text, ca_minimal_memory, surjunctivity_check, CellularAutomaton, Pattern};
use aca_core::geometry::{image_closure, AlgebraicSet, RegularMap};
use aca_core::lattice::{Sublattice, Window};
use aca_core::limits::{
    ml_lift, real_counterexample_thresholds, reversibility_search, thresholds_diverge, window_preimage_chain,
    ProjectiveSequence,
};
use aca_core::Budget;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::catalog;
use crate::cli::random_pattern;
use crate::spec::AutomatonSpec;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Same minimal memory and the same rule as functions on the alphabet points.
pub fn functionally_equal(a: &CellularAutomaton, b: &CellularAutomaton, budget: &Budget) -> Result<bool, String> {
    let q = a.field().size().ok_or("finite field expected")?;
    let (ma, ra) = ca_minimal_memory(a, budget).map_err(s)?;
    let (mb, rb) = ca_minimal_memory(b, budget).map_err(s)?;
    if ma != mb {
        return Ok(false);
    }
    for (f, g) in ra.rule_polys().iter().zip(rb.rule_polys()) {
        let d = f.sub(&g.to_ring(f.ring()).map_err(s)?);
        if !functional_normal_form(&d, q).map_err(s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn image_closure_cusp(b: &Budget) -> Check {
    let q = Field::rationals();
    let line = AlgebraicSet::full(&Ring::affine(q.clone(), 1));
    let plane_ring = Ring::affine(q, 2);
    let plane = AlgebraicSet::full(&plane_ring);
    let r = line.ring();
    let f = RegularMap::new(line.clone(), plane, vec![r.parse("t1^3").map_err(s)?, r.parse("t1^2").map_err(s)?], b)
        .map_err(s)?;
    let closure = image_closure(&f, b).map_err(s)?;
    let cusp = AlgebraicSet::new(&plane_ring, vec![plane_ring.parse("t1^2 - t2^3").map_err(s)?]).map_err(s)?;
    let eq = ideals_equal(&closure.groebner(b).map_err(s)?, &cusp.groebner(b).map_err(s)?, b).map_err(s)?;
    ensure(eq, "closure differs from the cusp")
}

fn triangular_inverse(b: &Budget) -> Check {
    let e = catalog::lookup("triangular2", None, b).map_err(s)?;
    let rep = reversibility_search(&e.automaton, 3, b).map_err(s)?;
    let found = rep.inverse().ok_or("no inverse found")?;
    ensure(
        functionally_equal(found, e.inverse.as_ref().unwrap(), b)?,
        "inverse differs from the closed form",
    )
}

fn thresholds() -> Check {
    let t: Vec<String> = real_counterexample_thresholds(5).iter().map(|x| x.to_string()).collect();
    ensure(t == ["1", "2", "5", "26", "677"], format!("thresholds {t:?}"))?;
    ensure(thresholds_diverge(8), "thresholds do not diverge")
}

fn preimage_chain() -> Check {
    let tau = catalog::real_quadratic().automaton;
    let f = tau.field().clone();
    let y = Pattern::line(&f, 0, &[1; 12]);
    let x = window_preimage_chain(&y, &f.zero()).map_err(s)?;
    ensure(ca_apply(&tau, &x).map_err(s)? == y, "chain does not map onto the target")
}

fn affine_surjunctive(b: &Budget) -> Check {
    let e = catalog::lookup("affine", None, b).map_err(s)?;
    let hs: Vec<Sublattice> = (1..=4).map(|n| Sublattice::scaled(1, n)).collect::<Result<_, _>>().map_err(s)?;
    let rep = surjunctivity_check(&e.automaton, &hs, 1, b).map_err(s)?;
    ensure(rep.all_bijective(), "affine rule not bijective on some lattice")
}

fn composition(b: &Budget) -> Check {
    let t2 = catalog::lookup("triangular2", None, b).map_err(s)?.automaton;
    let inv = catalog::lookup("triangular2", None, b).map_err(s)?.inverse.unwrap();
    let c = ca_compose(&inv, &t2).map_err(s)?;
    ensure(c.memory() == &inv.memory().sumset(t2.memory()), "memory is not the sumset")?;
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let p = random_pattern(&t2, &Window::line(0..10), &mut rng, b).map_err(s)?;
        let seq = ca_apply(&inv, &ca_apply(&t2, &p).map_err(s)?).map_err(s)?;
        ensure(ca_apply(&c, &p).map_err(s)? == seq, "composite disagrees with sequential application")?;
    }
    Ok(())
}

fn minimal_memory(b: &Budget) -> Check {
    for q in [2u64, 3, 5] {
        let field = Field::prime(q).map_err(s)?;
        let alphabet = AlgebraicSet::full(&Ring::affine(field, 1));
        let rule = format!("x[1][1] + x[0][1]^{q} - x[0][1]");
        let tau = ca_make_text(&alphabet, &Window::line([0, 1]), &[&rule], b).map_err(s)?;
        let (m0, _) = ca_minimal_memory(&tau, b).map_err(s)?;
        ensure(m0 == Window::line([1]), format!("q={q}: minimal memory {m0}"))?;
    }
    Ok(())
}

fn shrinking(b: &Budget) -> Check {
    for q in [2u64, 3, 5] {
        let seq = ProjectiveSequence::shrinking(&Field::prime(q).map_err(s)?).map_err(s)?;
        let rep = ml_lift(&seq, q as usize + 1, b).map_err(s)?;
        ensure(
            matches!(rep.result, aca_core::limits::LiftResult::Obstruction { level } if level == q as usize - 1),
            format!("q={q}: no obstruction at q-1"),
        )?;
    }
    Ok(())
}

fn frobenius() -> Check {
    for k in 1..=3 {
        let l = catalog::frobenius_level(2, k).map_err(s)?;
        ensure(l.bijective && l.degree == Some(1 << (k - 1)), format!("level {k}"))?;
    }
    Ok(())
}

fn spec_round_trip(b: &Budget) -> Check {
    for name in catalog::NAMES {
        let text = catalog::lookup(name, None, b).map_err(s)?.spec().to_text();
        let again = AutomatonSpec::parse(&text).map_err(s)?.to_text();
        ensure(again == text, format!("{name} does not round-trip"))?;
    }
    Ok(())
}

pub fn run_all(budget: &Budget) -> Vec<(&'static str, Check)> {
    vec![
        ("image-closure", image_closure_cusp(budget)),
        ("triangular-inverse", triangular_inverse(budget)),
        ("thresholds", thresholds()),
        ("preimage-chain", preimage_chain()),
        ("surjunctivity", affine_surjunctive(budget)),
        ("composition", composition(budget)),
        ("minimal-memory", minimal_memory(budget)),
        ("shrinking-obstruction", shrinking(budget)),
        ("frobenius", frobenius()),
        ("spec-round-trip", spec_round_trip(budget)),
    ]
}
