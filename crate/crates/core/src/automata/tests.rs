use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{Field, FieldElement, Monomial, MultiPoly, Ring};
use crate::budget::Budget;
use crate::geometry::{AlgebraicSet, Point};
use crate::lattice::{GroupElement, Sublattice, Window};

fn b() -> Budget {
    Budget::default()
}

fn line(field: &Field) -> AlgebraicSet {
    AlgebraicSet::full(&Ring::affine(field.clone(), 1))
}

fn ca(field: &Field, memory: &[i64], rule: &str) -> CellularAutomaton {
    ca_make_text(&line(field), &Window::line(memory.iter().copied()), &[rule], &b()).unwrap()
}

fn random_poly(ring: &Ring, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> MultiPoly {
    let f = ring.field();
    let q = f.size().unwrap();
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; ring.nvars()];
        let mut left = rng.gen_range(0..=max_deg);
        while left > 0 {
            e[rng.gen_range(0..ring.nvars())] += 1;
            left -= 1;
        }
        out.push((Monomial(e), FieldElement::Finite(rng.gen_range(0..q))));
    }
    ring.from_terms(out)
}

fn random_ca(field: &Field, memory: &Window, rng: &mut ChaCha8Rng) -> CellularAutomaton {
    let ring = product_ring(field, 1, memory.len());
    let p = random_poly(&ring, rng, 2, 4);
    ca_make(&line(field), memory, vec![p], &b()).unwrap()
}

fn random_pattern(field: &Field, window: Window, m: usize, rng: &mut ChaCha8Rng) -> Pattern {
    let q = field.size().unwrap();
    Pattern::from_fn(window, |_| (0..m).map(|_| FieldElement::Finite(rng.gen_range(0..q))).collect())
}

#[test]
fn make_examples() {
    let q = Field::rationals();
    let shift = ca(&q, &[1], "x[0][1]");
    assert_eq!(shift.memory(), &Window::line([1]));
    let quad = ca(&q, &[0, 1], "x[1][1] - x[0][1]^2");
    assert!(quad.rule().is_verified());

    let f5 = Field::prime(5).unwrap();
    let r4 = Ring::affine(f5.clone(), 4);
    let sl2 = AlgebraicSet::new(&r4, vec![r4.parse("t1*t4 - t2*t3 - 1").unwrap()]).unwrap();
    // (x(n+1))^{-1} x(n) with inverse = adjugate on SL2; blocks: x[0] = x(n), x[1] = x(n+1).
    let rule = [
        "x[1][4]*x[0][1] - x[1][2]*x[0][3]",
        "x[1][4]*x[0][2] - x[1][2]*x[0][4]",
        "-x[1][3]*x[0][1] + x[1][1]*x[0][3]",
        "-x[1][3]*x[0][2] + x[1][1]*x[0][4]",
    ];
    let tau = ca_make_text(&sl2, &Window::line([0, 1]), &rule, &b()).unwrap();
    assert!(tau.rule().is_verified());
    // Rejected: a rule leaving SL2.
    let bad = ca_make_text(&sl2, &Window::line([0, 1]), &["x[0][1]", "0", "0", "x[0][4] + 1"], &b());
    assert!(bad.is_err());
}

#[test]
fn apply_examples() {
    let q = Field::rationals();
    let shift = ca(&q, &[1], "x[0][1]");
    let p = Pattern::line(&q, 0, &[7, 8, 9]);
    // interior({0,1,2}, {1}) = {-1,0,1}; on {0,1} the output is (b, c).
    let out = ca_apply(&shift, &p).unwrap();
    assert_eq!(out, Pattern::line(&q, -1, &[7, 8, 9]));
    assert_eq!(out.restrict(&Window::line([0, 1])).unwrap(), Pattern::line(&q, 0, &[8, 9]));
    let quad = ca(&q, &[0, 1], "x[1][1] - x[0][1]^2");
    let out = ca_apply(&quad, &Pattern::line(&q, 0, &[0, 1, 2, 3])).unwrap();
    assert_eq!(out, Pattern::line(&q, 0, &[1, 1, -1]));
    let tiny = ca_apply(&quad, &Pattern::line(&q, 0, &[5])).unwrap();
    assert!(tiny.is_empty());
}

#[test]
fn apply_is_equivariant_and_supported_on_interior() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let mem = Window::line((0..rng.gen_range(1..4)).map(|_| rng.gen_range(-2..3)));
        let tau = random_ca(&f5, &mem, &mut rng);
        let lo = rng.gen_range(-4..2);
        let e = Window::line(lo..lo + rng.gen_range(1..8));
        let p = random_pattern(&f5, e.clone(), 1, &mut rng);
        let out = ca_apply(&tau, &p).unwrap();
        assert_eq!(out.window(), &crate::lattice::interior(&e, &mem));
        let g = GroupElement(vec![rng.gen_range(-5..6)]);
        assert_eq!(ca_apply(&tau, &p.translate(&g)).unwrap(), out.translate(&g));
    }
}

#[test]
fn truncation_examples() {
    let q = Field::rationals();
    let shift = ca(&q, &[1], "x[0][1]");
    let t = ca_truncation(&shift, &Window::line([0, 1])).unwrap();
    // F = {-1, 0}; the coordinate at cell 0 is the projection onto x(1).
    let shown: Vec<String> = t.components().iter().map(|c| c.to_string()).collect();
    assert_eq!(shown, ["x[0][1]", "x[1][1]"]);
    let quad = ca(&q, &[0, 1], "x[1][1] - x[0][1]^2");
    let t = ca_truncation(&quad, &Window::line([0, 1])).unwrap();
    assert_eq!(t.components().len(), 1);
    assert_eq!(t.components()[0].to_string(), "-x[0][1]^2 + x[1][1]");
    let empty = ca_truncation(&quad, &Window::line([0])).unwrap();
    assert_eq!(empty.target().ambient(), 0);
}

#[test]
fn truncation_agrees_with_apply() {
    let f7 = Field::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let mem = Window::line((0..rng.gen_range(1..3)).map(|_| rng.gen_range(-1..2)));
        let tau = random_ca(&f7, &mem, &mut rng);
        let e = Window::line(0..rng.gen_range(1..6));
        let p = random_pattern(&f7, e.clone(), 1, &mut rng);
        let map = ca_truncation(&tau, &e).unwrap();
        let flat: Point = p.values().iter().flatten().cloned().collect();
        let img = map.apply(&flat);
        let direct: Point = ca_apply(&tau, &p).unwrap().values().iter().flatten().cloned().collect();
        assert_eq!(img, direct);
    }
}

#[test]
fn compose_examples() {
    let q = Field::rationals();
    let shift = ca(&q, &[1], "x[0][1]");
    let two = ca_compose(&shift, &shift).unwrap();
    assert_eq!(two.memory(), &Window::line([2]));
    assert_eq!(two.rule_polys()[0].to_string(), "x[0][1]");
    assert_eq!(
        Window::line([0, 1]).sumset(&Window::line([0, 1])),
        Window::line([0, 1, 2])
    );
}

#[test]
fn composition_agrees_with_sequential_application() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let s = Window::line((0..rng.gen_range(1..3)).map(|_| rng.gen_range(-1..2)));
        let t = Window::line((0..rng.gen_range(1..3)).map(|_| rng.gen_range(-1..2)));
        let sigma = random_ca(&f5, &s, &mut rng);
        let tau = random_ca(&f5, &t, &mut rng);
        let st = ca_compose(&sigma, &tau).unwrap();
        assert_eq!(st.memory(), &s.sumset(&t));
        let p = random_pattern(&f5, Window::line(-3..5), 1, &mut rng);
        let seq = ca_apply(&sigma, &ca_apply(&tau, &p).unwrap()).unwrap();
        assert_eq!(ca_apply(&st, &p).unwrap(), seq);
    }
}

#[test]
fn composition_is_associative_on_patterns() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let mk = |rng: &mut ChaCha8Rng| {
            let w = Window::line((0..rng.gen_range(1..3)).map(|_| rng.gen_range(-1..2)));
            random_ca(&f5, &w, rng)
        };
        let (a, bb, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        let left = ca_compose(&ca_compose(&a, &bb).unwrap(), &c).unwrap();
        let right = ca_compose(&a, &ca_compose(&bb, &c).unwrap()).unwrap();
        let p = random_pattern(&f5, Window::line(-4..6), 1, &mut rng);
        assert_eq!(ca_apply(&left, &p).unwrap(), ca_apply(&right, &p).unwrap());
        assert_eq!(left.memory(), right.memory());
    }
}

#[test]
fn minimal_memory_examples() {
    for q in [2u64, 3, 5] {
        let f = Field::prime(q).unwrap();
        let tau = ca(&f, &[0, 1], &format!("x[1][1] + x[0][1]^{q} - x[0][1]"));
        let (m0, reduced) = ca_minimal_memory(&tau, &b()).unwrap();
        assert_eq!(m0, Window::line([1]));
        assert!(!depends_on_cell(&tau, 0, &b()).unwrap());
        assert!(depends_on_cell(&tau, 1, &b()).unwrap());
        let p = Pattern::from_fn(Window::line(0..4), |g| vec![f.from_i64(g.0[0] * 3 + 1)]);
        let full = ca_apply(&tau, &p).unwrap();
        assert_eq!(ca_apply(&reduced, &p).unwrap().restrict(full.window()).unwrap(), full);
    }
    let q = Field::rationals();
    let shift = ca(&q, &[1], "x[0][1]");
    assert_eq!(ca_minimal_memory(&shift, &b()).unwrap().0, Window::line([1]));
    let constant = ca(&q, &[0, 1], "3");
    let (m0, c0) = ca_minimal_memory(&constant, &b()).unwrap();
    assert!(m0.is_empty());
    assert_eq!(c0.rule_polys()[0].to_string(), "3");
    // Over Q, x0^5 - x0 is a genuine dependence.
    let qq = ca(&q, &[0, 1], "x[1][1] + x[0][1]^5 - x[0][1]");
    assert_eq!(ca_minimal_memory(&qq, &b()).unwrap().0, Window::line([0, 1]));
}

#[test]
fn minimal_memory_on_a_curve_alphabet() {
    // On {t^2 = t} = {0,1} over F_5, x^2 and x agree, so x0^2 - x0 is the zero function.
    let f5 = Field::prime(5).unwrap();
    let r = Ring::affine(f5.clone(), 1);
    let a = AlgebraicSet::new(&r, vec![r.parse("t1^2 - t1").unwrap()]).unwrap();
    let tau = ca_make_text(&a, &Window::line([0, 1]), &["x[1][1] + x[0][1]^2 - x[0][1]"], &b()).unwrap();
    let (m0, _) = ca_minimal_memory(&tau, &b()).unwrap();
    assert_eq!(m0, Window::line([1]));
}

#[test]
fn padding_memory_preserves_the_function() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let mem = Window::line([0, 1]);
        let tau = random_ca(&f5, &mem, &mut rng);
        let big = tau.with_memory(&Window::line([-1, 0, 1, 2])).unwrap();
        assert_eq!(big.functional_rule().unwrap().len(), 1);
        let p = random_pattern(&f5, Window::line(-2..6), 1, &mut rng);
        let small_out = ca_apply(&tau, &p).unwrap();
        let big_out = ca_apply(&big, &p).unwrap();
        assert_eq!(small_out.restrict(big_out.window()).unwrap(), big_out);
        let (m0a, ra) = ca_minimal_memory(&tau, &b()).unwrap();
        let (m0b, rb) = ca_minimal_memory(&big, &b()).unwrap();
        assert_eq!(m0a, m0b);
        assert_eq!(ra.functional_rule().unwrap(), rb.functional_rule().unwrap());
    }
}

#[test]
fn local_rule_is_recovered_from_any_extension() {
    // μ_M(p) = τ(x)(0) for every x agreeing with p on M.
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mem = Window::line([-1, 1]);
    let tau = random_ca(&f5, &mem, &mut rng);
    for _ in 0..100 {
        let core = random_pattern(&f5, mem.clone(), 1, &mut rng);
        let x = Pattern::from_fn(Window::line(-3..4), |g| match core.get(g) {
            Some(v) => v.clone(),
            None => vec![FieldElement::Finite(rng.gen_range(0..5))],
        });
        let cells: Vec<&Point> = mem.elements().iter().map(|s| core.get(s).unwrap()).collect();
        let at0 = ca_apply(&tau, &x).unwrap();
        assert_eq!(at0.get(&GroupElement(vec![0])).unwrap(), &tau.local(&cells));
    }
}

#[test]
fn change_group_examples() {
    let q = Field::rationals();
    let tau = ca(&q, &[2], "x[0][1]^2 + 1");
    let h = Sublattice::new(1, &[vec![2]]).unwrap();
    let r = ca_change_group(&tau, &h, GroupChange::Restrict).unwrap();
    assert_eq!(r.memory(), &Window::line([1]));
    assert_eq!(r.rule_polys(), tau.rule_polys());
    let back = ca_change_group(&r, &h, GroupChange::Induce).unwrap();
    assert_eq!(back.memory(), tau.memory());
    assert!(matches!(
        ca_change_group(&ca(&q, &[1], "x[0][1]"), &h, GroupChange::Restrict),
        Err(crate::error::Error::NotInSublattice(_))
    ));
}

#[test]
fn induce_then_restrict_round_trips() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let mem = Window::line((0..rng.gen_range(1..4)).map(|_| rng.gen_range(-3..4)));
        let sigma = random_ca(&f5, &mem, &mut rng);
        // rank-1 sublattice of Z^2
        let gen = vec![rng.gen_range(1..4), rng.gen_range(-3..4)];
        let h = Sublattice::new(2, &[gen]).unwrap();
        let up = ca_change_group(&sigma, &h, GroupChange::Induce).unwrap();
        assert_eq!(up.dim(), 2);
        let down = ca_change_group(&up, &h, GroupChange::Restrict).unwrap();
        assert_eq!(down.memory(), sigma.memory());
        assert_eq!(down.rule_polys(), sigma.rule_polys());
    }
}

#[test]
fn periodic_map_examples() {
    let f5 = Field::prime(5).unwrap();
    let shift = ca(&f5, &[1], "x[0][1]");
    let h3 = Sublattice::new(1, &[vec![3]]).unwrap();
    let map = ca_periodic_map(&shift, &h3).unwrap();
    let shown: Vec<String> = map.components().iter().map(|c| c.to_string()).collect();
    assert_eq!(shown, ["x[1][1]", "x[2][1]", "x[0][1]"]);
    let id = ca(&f5, &[0], "x[0][1]");
    let map = ca_periodic_map(&id, &h3).unwrap();
    let ring = map.source().ring().clone();
    assert_eq!(map.components(), &[ring.var(0), ring.var(1), ring.var(2)]);
}

#[test]
fn periodic_map_conjugates_the_automaton() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for h in [Sublattice::new(1, &[vec![2]]).unwrap(), Sublattice::new(1, &[vec![3]]).unwrap()] {
        let tau = random_ca(&f5, &Window::line([0, 1]), &mut rng);
        let map = ca_periodic_map(&tau, &h).unwrap();
        let pts = map.source().enumerate_points(&b()).unwrap();
        let window = Window::line(-4..6);
        for y in pts {
            let conf = PeriodicConfiguration::from_flat(&h, 1, &y).unwrap();
            let image = PeriodicConfiguration::from_flat(&h, 1, &map.apply(&y)).unwrap();
            let out = ca_apply(&tau, &conf.to_pattern(&window)).unwrap();
            assert_eq!(out, image.to_pattern(out.window()));
        }
    }
}

#[test]
fn periodic_map_respects_composition() {
    let f5 = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h = Sublattice::new(1, &[vec![2]]).unwrap();
    for _ in 0..10 {
        let sigma = random_ca(&f5, &Window::line([0, 1]), &mut rng);
        let tau = random_ca(&f5, &Window::line([-1, 0]), &mut rng);
        let st = ca_periodic_map(&ca_compose(&sigma, &tau).unwrap(), &h).unwrap();
        let s = ca_periodic_map(&sigma, &h).unwrap();
        let t = ca_periodic_map(&tau, &h).unwrap();
        for y in st.source().enumerate_points(&b()).unwrap() {
            assert_eq!(st.apply(&y), s.apply(&t.apply(&y)));
        }
    }
}

#[test]
fn surjunctivity_examples() {
    let f5 = Field::prime(5).unwrap();
    let affine = ca(&f5, &[1], "2*x[0][1] + 3");
    let lattices: Vec<Sublattice> = (1..=4).map(|n| Sublattice::new(1, &[vec![n]]).unwrap()).collect();
    let rep = surjunctivity_check(&affine, &lattices, 1, &b()).unwrap();
    assert!(rep.all_bijective());

    let f2 = Field::prime(2).unwrap();
    let sum = ca(&f2, &[0, 1], "x[0][1] + x[1][1]");
    let h2 = [Sublattice::new(1, &[vec![2]]).unwrap()];
    let rep = surjunctivity_check(&sum, &h2, 1, &b()).unwrap();
    assert!(rep.consistent());
    let bad = rep.non_injective();
    assert_eq!(bad.len(), 1);
    let (x, y) = bad[0].collision(1).unwrap();
    let w = Window::line(0..4);
    assert_ne!(x.to_pattern(&w), y.to_pattern(&w));
    assert_eq!(ca_apply(&sum, &x.to_pattern(&w)).unwrap(), ca_apply(&sum, &y.to_pattern(&w)).unwrap());

    let id = ca(&f5, &[0], "x[0][1]");
    assert!(surjunctivity_check(&id, &lattices, 2, &b()).unwrap().all_bijective());
}
