use super::field::{Field, FieldElement};
use super::poly::MultiPoly;

/// A polynomial flattened for repeated evaluation: each term keeps only its
/// nonzero exponents.
#[derive(Clone, Debug)]
pub struct Evaluator {
    field: Field,
    terms: Vec<(FieldElement, Vec<(usize, u32)>)>,
    max_var: Option<usize>,
}

impl Evaluator {
    pub fn new(f: &MultiPoly) -> Self {
        let terms: Vec<_> = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let sparse = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| (v, e))
                    .collect::<Vec<_>>();
                (c.clone(), sparse)
            })
            .collect();
        let max_var = terms
            .iter()
            .filter_map(|(_, s)| s.last().map(|&(v, _)| v))
            .max();
        Evaluator {
            field: f.field().clone(),
            terms,
            max_var,
        }
    }

    /// Largest variable index the polynomial depends on syntactically.
    pub fn max_var(&self) -> Option<usize> {
        self.max_var
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for (c, vars) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in vars {
                let x = &point[v];
                t = if e == 1 { f.mul(&t, x) } else { f.mul(&t, &f.pow(x, e as u64)) };
            }
            acc = f.add(&acc, &t);
        }
        acc
    }
}
