use aca_core::algebra::{ideals_equal, Field, FieldElement, Monomial, MultiPoly, Ring};
use aca_core::geometry::{
    all_points, image_closure, image_points, injectivity_report, vanishing_ideal_of_points, AlgebraicSet,
    ConstructibleSet, LocallyClosedPiece, RegularMap,
};
use aca_core::Budget;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(ring: &Ring, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> MultiPoly {
    let q = ring.field().size().unwrap();
    let out = (0..terms).map(|_| {
        let mut e = vec![0u32; ring.nvars()];
        for _ in 0..rng.gen_range(0..=max_deg) {
            e[rng.gen_range(0..ring.nvars())] += 1;
        }
        (Monomial(e), FieldElement::Finite(rng.gen_range(0..q)))
    });
    ring.from_terms(out.collect::<Vec<_>>())
}

fn random_map(ring: &Ring, rng: &mut ChaCha8Rng) -> RegularMap {
    let full = AlgebraicSet::full(ring);
    let comps = (0..ring.nvars()).map(|_| random_poly(ring, rng, 2, 3)).collect();
    RegularMap::new(full.clone(), full, comps, &Budget::default()).unwrap()
}

fn random_constructible(ring: &Ring, rng: &mut ChaCha8Rng) -> ConstructibleSet {
    let pieces = (0..rng.gen_range(0..3))
        .map(|_| {
            let gens = (0..rng.gen_range(0..2)).map(|_| random_poly(ring, rng, 2, 2)).collect();
            LocallyClosedPiece {
                closed: AlgebraicSet::new(ring, gens).unwrap(),
                neq: random_poly(ring, rng, 1, 2),
            }
        })
        .collect();
    ConstructibleSet::new(ring, pieces).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn points_are_the_zeros_of_their_ideal(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = Field::prime(q).unwrap();
        let ring = Ring::affine(field.clone(), 2);
        let mut sigma: Vec<_> = all_points(&field, 2, &Budget::default())
            .unwrap()
            .into_iter()
            .filter(|_| rng.gen_bool(0.3))
            .collect();
        sigma.sort();
        let zer = AlgebraicSet::from_ideal(vanishing_ideal_of_points(&sigma, &ring).unwrap());
        prop_assert_eq!(zer.enumerate_points(&Budget::default()).unwrap(), sigma);
    }

    #[test]
    fn constructible_sets_form_a_boolean_algebra(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = Field::prime(5).unwrap();
        let ring = Ring::affine(field.clone(), 2);
        let b = Budget::default();
        let c = random_constructible(&ring, &mut rng);
        let d = random_constructible(&ring, &mut rng);
        let union = c.union(&d).unwrap();
        let meet = c.intersect(&d, &b).unwrap();
        let comp = c.complement(&b).unwrap();
        for p in all_points(&field, 2, &b).unwrap() {
            let (x, y) = (c.contains(&p).unwrap(), d.contains(&p).unwrap());
            prop_assert_eq!(union.contains(&p).unwrap(), x || y);
            prop_assert_eq!(meet.contains(&p).unwrap(), x && y);
            prop_assert_eq!(comp.contains(&p).unwrap(), !x);
        }
    }

    #[test]
    fn image_points_lie_in_image_closure(seed in any::<u64>(), q in prop::sample::select(vec![5u64, 7])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::affine(Field::prime(q).unwrap(), 2);
        let f = random_map(&ring, &mut rng);
        let b = Budget::default();
        let closure = image_closure(&f, &b).unwrap();
        for p in image_points(&f, &b).unwrap() {
            prop_assert!(closure.contains(&p).unwrap());
        }
    }

    #[test]
    fn iterated_image_closures_stabilize(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::affine(Field::prime(5).unwrap(), 2);
        let f = random_map(&ring, &mut rng);
        let b = Budget::default();
        let mut cur = AlgebraicSet::full(&ring);
        let mut stable = false;
        for _ in 0..12 {
            let restricted = RegularMap::new(cur.clone(), AlgebraicSet::full(&ring), f.components().to_vec(), &b).unwrap();
            let next = image_closure(&restricted, &b).unwrap();
            let mut joined = cur.gens().to_vec();
            joined.extend(next.gens().iter().cloned());
            let next = AlgebraicSet::new(&ring, joined).unwrap();
            if ideals_equal(&cur.groebner(&b).unwrap(), &next.groebner(&b).unwrap(), &b).unwrap() {
                stable = true;
                break;
            }
            cur = next;
        }
        prop_assert!(stable);
    }

    #[test]
    fn bijectivity_descends_to_subfields(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::affine(Field::prime(2).unwrap(), 2);
        let f = random_map(&ring, &mut rng);
        let report = injectivity_report(&f, 4, &Budget::default()).unwrap();
        for l in &report.levels {
            if l.injective && l.surjective {
                for d in report.levels.iter().filter(|d| l.k % d.k == 0) {
                    prop_assert!(d.injective && d.surjective, "bijective at {} but not at {}", l.k, d.k);
                }
            }
        }
    }
}
