use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::algebra::{Field, Ring};
use crate::automata::{ca_make_text, CellularAutomaton, Pattern};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::AlgebraicSet;
use crate::lattice::{GroupElement, Window};

/// `τ(x)(n) = x(n + 1) - x(n)^2` on the rational line.
pub fn real_quadratic() -> CellularAutomaton {
    let alphabet = AlgebraicSet::full(&Ring::affine(Field::rationals(), 1));
    ca_make_text(&alphabet, &Window::line([0, 1]), &["x[1][1] - x[0][1]^2"], &Budget::default())
        .expect("the quadratic rule is regular")
}

/// `b_1 = 1`, `b_{k+1} = 1 + b_k^2`: a backward chain of length `k` for the constant
/// target 1 exists from seed `t` exactly when `t >= b_k`.
pub fn real_counterexample_thresholds(kmax: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(kmax);
    for k in 0..kmax {
        let next = match k {
            0 => BigInt::one(),
            _ => BigInt::one() + &out[k - 1] * &out[k - 1],
        };
        out.push(next);
    }
    out
}

/// `b_k > 2^(2^(k-3))` for every `4 <= k <= kmax`.
pub fn thresholds_diverge(kmax: usize) -> bool {
    let b = real_counterexample_thresholds(kmax);
    (4..=kmax).all(|k| b[k - 1] > Pow::pow(BigInt::from(2), 1u64 << (k - 3)))
}

/// Forward preimage of a one-dimensional scalar pattern `y` on an interval:
/// `x(start) = seed`, `x(n + 1) = y(n) + x(n)^2`. The result covers one more cell.
pub fn window_preimage_chain(y: &Pattern, seed: &crate::algebra::FieldElement) -> Result<Pattern> {
    let w = y.window();
    if w.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: w.dim() });
    }
    if y.values().iter().any(|v| v.len() != 1) {
        return Err(Error::InvalidParameter("scalar pattern expected".into()));
    }
    let field = Field::rationals();
    let start = w.elements().first().map_or(0, |g| g.0[0]);
    if w.elements().iter().enumerate().any(|(i, g)| g.0[0] != start + i as i64) {
        return Err(Error::InvalidParameter("window must be an interval".into()));
    }
    let mut xs = vec![seed.clone()];
    for v in y.values() {
        let last = xs.last().unwrap();
        xs.push(field.add(&v[0], &field.mul(last, last)));
    }
    let cells = xs
        .into_iter()
        .enumerate()
        .map(|(i, x)| (GroupElement(vec![start + i as i64]), vec![x]))
        .collect();
    Pattern::from_cells(1, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{ca_apply, rational};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn thresholds_match_recursion() {
        let b = real_counterexample_thresholds(5);
        assert_eq!(b, [1, 2, 5, 26, 677].map(BigInt::from));
        assert_eq!(real_counterexample_thresholds(2), [1, 2].map(BigInt::from));
        let long = real_counterexample_thresholds(9);
        assert!(long.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(long[5], BigInt::from(458330));
        assert!(thresholds_diverge(8));
    }

    #[test]
    fn constant_one_chain() {
        let y = Pattern::line(&Field::rationals(), 0, &[1, 1, 1, 1]);
        let x = window_preimage_chain(&y, &rational(0, 1)).unwrap();
        assert_eq!(x, Pattern::line(&Field::rationals(), 0, &[0, 1, 2, 5, 26]));
        assert_eq!(ca_apply(&real_quadratic(), &x).unwrap(), y);
    }

    #[test]
    fn zero_target_fixed_point() {
        let y = Pattern::line(&Field::rationals(), -3, &[0, 0, 0]);
        let x = window_preimage_chain(&y, &rational(0, 1)).unwrap();
        assert!(x.values().iter().all(|v| v[0] == rational(0, 1)));
    }

    #[test]
    fn random_rational_targets_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let tau = real_quadratic();
        for _ in 0..50 {
            let len = rng.gen_range(1..=8);
            let start = rng.gen_range(-5..5);
            let cells = (0..len)
                .map(|i| {
                    let v = BigRational::new(rng.gen_range(-9..10).into(), rng.gen_range(1..5).into());
                    (GroupElement(vec![start + i]), vec![crate::algebra::FieldElement::Rational(v)])
                })
                .collect();
            let y = Pattern::from_cells(1, cells).unwrap();
            let seed = rational(rng.gen_range(-3..4), rng.gen_range(1..3));
            let x = window_preimage_chain(&y, &seed).unwrap();
            assert_eq!(ca_apply(&tau, &x).unwrap(), y);
        }
    }
}
