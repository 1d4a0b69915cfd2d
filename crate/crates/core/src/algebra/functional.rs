//! Polynomial functions over finite fields: reduction by the field equations
//! `t^q - t` and interpolation of function tables.

use super::field::{Field, FieldElement};
use super::order::Monomial;
use super::poly::{MultiPoly, Ring};
use crate::error::{Error, Result};

/// The representative with all exponents below `q` defining the same function `F_q^m -> F_q`.
pub fn functional_normal_form(f: &MultiPoly, q: u64) -> Result<MultiPoly> {
    let field = f.field();
    match field.size() {
        None => {
            return Err(Error::FiniteField(
                "over Q polynomials are already faithful as functions".into(),
            ))
        }
        Some(size) if size != q => {
            return Err(Error::FieldMismatch(format!(
                "field {field} has {size} elements, not {q}"
            )))
        }
        _ => {}
    }
    let reduce = |e: u32| -> u32 {
        let e = e as u64;
        if e < q {
            e as u32
        } else {
            ((e - 1) % (q - 1) + 1) as u32
        }
    };
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| (Monomial(m.0.iter().map(|&e| reduce(e)).collect()), c.clone()));
    Ok(f.ring().from_terms(terms))
}

/// Inverse of the `q x q` matrix `V[a][e] = a^e` (with `0^0 = 1`).
fn inverse_vandermonde(field: &Field) -> Vec<Vec<FieldElement>> {
    let q = field.size().unwrap() as usize;
    let els: Vec<FieldElement> = field.elements().collect();
    // Augmented [V | I].
    let mut m: Vec<Vec<FieldElement>> = els
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut row: Vec<FieldElement> = (0..q).map(|e| field.pow(a, e as u64)).collect();
            row.extend((0..q).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    for col in 0..q {
        let piv = (col..q).find(|&r| !field.is_zero(&m[r][col])).expect("Vandermonde is invertible");
        m.swap(col, piv);
        let inv = field.inv(&m[col][col]).unwrap();
        for x in m[col].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for r in 0..q {
            if r != col && !field.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in 0..2 * q {
                    let t = field.mul(&factor, &m[col][c]);
                    m[r][c] = field.sub(&m[r][c], &t);
                }
            }
        }
    }
    m.into_iter().map(|row| row[q..].to_vec()).collect()
}

/// Interpolates a function `F_q^n -> F_q` given as a table indexed in odometer order
/// (first variable most significant, elements in code order). Returns the unique
/// polynomial with all exponents below `q`.
pub fn interpolate(ring: &Ring, table: &[FieldElement]) -> Result<MultiPoly> {
    let field = ring.field();
    let q = field.size().ok_or(Error::InfiniteField)? as usize;
    let n = ring.nvars();
    let expected = (q as u64)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::budget("interpolate", "table too large"))?;
    if table.len() as u64 != expected {
        return Err(Error::DimensionMismatch {
            expected: expected as usize,
            got: table.len(),
        });
    }
    let vinv = inverse_vandermonde(field);
    let mut data = table.to_vec();
    // Transform one axis at a time; axis `v` has stride q^(n-1-v).
    for v in 0..n {
        let stride = q.pow((n - 1 - v) as u32);
        let block = stride * q;
        let mut fiber = vec![field.zero(); q];
        for start in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (a, slot) in fiber.iter_mut().enumerate() {
                    *slot = data[start + off + a * stride].clone();
                }
                for e in 0..q {
                    let mut acc = field.zero();
                    for a in 0..q {
                        if !field.is_zero(&fiber[a]) {
                            acc = field.add(&acc, &field.mul(&vinv[e][a], &fiber[a]));
                        }
                    }
                    data[start + off + e * stride] = acc;
                }
            }
        }
    }
    let mut terms = Vec::new();
    for (idx, c) in data.into_iter().enumerate() {
        if field.is_zero(&c) {
            continue;
        }
        let mut exps = vec![0u32; n];
        let mut rest = idx;
        for v in (0..n).rev() {
            exps[v] = (rest % q) as u32;
            rest /= q;
        }
        terms.push((Monomial(exps), c));
    }
    Ok(ring.from_terms(terms))
}
