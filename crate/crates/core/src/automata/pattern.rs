use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::geometry::{AlgebraicSet, Point};
use crate::lattice::{GroupElement, Window};

/// A configuration restricted to a finite window: one alphabet point per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    window: Window,
    values: Vec<Point>,
}

impl Pattern {
    /// `values[i]` belongs to the `i`-th cell of the (sorted) window.
    pub fn new(window: Window, values: Vec<Point>) -> Result<Self> {
        if window.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: window.len(),
                got: values.len(),
            });
        }
        Ok(Pattern { window, values })
    }

    /// Builds a pattern from `(cell, value)` pairs in any order.
    pub fn from_cells(dim: usize, cells: Vec<(GroupElement, Point)>) -> Result<Self> {
        let window = Window::new(dim, cells.iter().map(|(g, _)| g.clone()))?;
        if window.len() != cells.len() {
            return Err(Error::InvalidParameter("pattern lists a cell twice".into()));
        }
        let mut values = vec![Vec::new(); cells.len()];
        for (g, v) in cells {
            values[window.index_of(&g).unwrap()] = v;
        }
        Ok(Pattern { window, values })
    }

    /// Pattern on `window` with values `f(cell)`.
    pub fn from_fn(window: Window, mut f: impl FnMut(&GroupElement) -> Point) -> Self {
        let values = window.elements().iter().map(&mut f).collect();
        Pattern { window, values }
    }

    /// One-dimensional scalar pattern on `start, start + 1, ...`.
    pub fn line(field: &Field, start: i64, xs: &[i64]) -> Self {
        let window = Window::line(start..start + xs.len() as i64);
        let values = xs.iter().map(|&x| vec![field.from_i64(x)]).collect();
        Pattern { window, values }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn get(&self, g: &GroupElement) -> Option<&Point> {
        self.window.index_of(g).map(|i| &self.values[i])
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    /// Every value lies in the alphabet.
    pub fn validate(&self, alphabet: &AlgebraicSet) -> Result<()> {
        for (g, v) in self.window.elements().iter().zip(&self.values) {
            if v.len() != alphabet.ambient() || !alphabet.contains(v)? {
                return Err(Error::Validation(format!("value at {g} is not in the alphabet")));
            }
        }
        Ok(())
    }

    /// The pattern shifted so that the value at `x` moves to `x + g`.
    pub fn translate(&self, g: &GroupElement) -> Pattern {
        Pattern {
            window: self.window.translate(g),
            values: self.values.clone(),
        }
    }

    /// Restriction to a sub-window.
    pub fn restrict(&self, sub: &Window) -> Result<Pattern> {
        let mut values = Vec::with_capacity(sub.len());
        for g in sub.elements() {
            values.push(
                self.get(g)
                    .ok_or_else(|| Error::InvalidParameter(format!("cell {g} outside the pattern")))?
                    .clone(),
            );
        }
        Ok(Pattern {
            window: sub.clone(),
            values,
        })
    }

    /// `cell : value` lines, e.g. `0,1 : 2,3`.
    pub fn to_text(&self, field: &Field) -> String {
        let mut out = String::new();
        for (g, v) in self.window.elements().iter().zip(&self.values) {
            let cell: Vec<String> = g.0.iter().map(|x| x.to_string()).collect();
            let val: Vec<String> = v.iter().map(|a| field.format(a)).collect();
            writeln!(out, "{} : {}", cell.join(","), val.join(",")).unwrap();
        }
        out
    }

    /// Inverse of [`Pattern::to_text`]. Values are integers, fractions `a/b`, or
    /// extension elements in `w`.
    pub fn parse(text: &str, dim: usize, field: &Field) -> Result<Pattern> {
        let mut cells = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Syntax {
                col: 1,
                msg: format!("line {}: {msg}", ln + 1),
            };
            let (cell, val) = line.split_once(':').ok_or_else(|| err("expected `cell : value`"))?;
            let g = cell
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("cell coordinates must be integers"))?;
            if g.len() != dim {
                return Err(err("cell has the wrong dimension"));
            }
            let v = val
                .split(',')
                .map(|x| parse_element(field, x.trim()))
                .collect::<Result<Vec<_>>>()?;
            cells.push((GroupElement(g), v));
        }
        Pattern::from_cells(dim, cells)
    }
}

/// Parses a single field element: an integer, `a/b`, or a polynomial in `w`.
pub fn parse_element(field: &Field, text: &str) -> Result<FieldElement> {
    let ring = crate::algebra::Ring::new(field.clone(), &[] as &[&str]);
    let p = ring.parse(text)?;
    Ok(p.constant_value().unwrap_or_else(|| field.zero()))
}

/// Exact rational from numerator and denominator.
pub fn rational(num: i64, den: i64) -> FieldElement {
    FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
}
