//! The `.aca` automaton file format.
//!
//! ```text
//! name: triangular2
//! field: 5
//! group: 1
//! alphabet: 2
//! equation: t1^2 - t1
//! memory: (1) (2)
//! rule: x[0][1]
//! rule: x[1][2] + x[0][1]^2
//! note: free text
//! ```
//!
//! Alphabet coordinates are `t1..tm`; rule variables are `x[cell][coord]` with cells
//! numbered in the sorted memory order. `#` starts a comment.

use std::fmt::Write as _;

use aca_core::algebra::{Field, MultiPoly, Ring};
use aca_core::automata::{ca_make, product_ring, CellularAutomaton};
use aca_core::geometry::AlgebraicSet;
use aca_core::lattice::{GroupElement, Window};
use aca_core::{Budget, Error};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct SpecError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug)]
pub struct AutomatonSpec {
    pub name: Option<String>,
    pub field: Field,
    pub dim: usize,
    pub alphabet: AlgebraicSet,
    pub memory: Window,
    pub rules: Vec<MultiPoly>,
    pub notes: Vec<String>,
}

impl AutomatonSpec {
    pub fn from_automaton(tau: &CellularAutomaton, name: Option<&str>) -> Self {
        AutomatonSpec {
            name: name.map(str::to_string),
            field: tau.field().clone(),
            dim: tau.dim(),
            alphabet: tau.alphabet().clone(),
            memory: tau.memory().clone(),
            rules: tau.rule_polys().to_vec(),
            notes: Vec::new(),
        }
    }

    pub fn to_automaton(&self, budget: &Budget) -> Result<CellularAutomaton, Error> {
        ca_make(&self.alphabet, &self.memory, self.rules.clone(), budget)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(out, "name: {n}");
        }
        let _ = writeln!(out, "field: {}", self.field);
        let _ = writeln!(out, "group: {}", self.dim);
        let _ = writeln!(out, "alphabet: {}", self.alphabet.ambient());
        for g in self.alphabet.gens() {
            let _ = writeln!(out, "equation: {g}");
        }
        let cells: Vec<String> = self.memory.elements().iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "memory: {}", cells.join(" ").trim_end());
        for r in &self.rules {
            let _ = writeln!(out, "rule: {r}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        Self::parse_with_field(text, None)
    }

    /// Parses a spec, reading every polynomial over `field` when given instead of
    /// the file's own `field:` line.
    pub fn parse_with_field(text: &str, field: Option<&Field>) -> Result<Self, SpecError> {
        let mut entries: Vec<(usize, usize, &str, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap();
            if body.trim().is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once(':') else {
                return Err(err(i + 1, 1, "expected `key: value`"));
            };
            let offset = key.len() + 1 + (value.len() - value.trim_start().len());
            entries.push((i + 1, offset + 1, key.trim(), value.trim()));
        }
        let one = |key: &str| -> Result<Option<(usize, usize, &str)>, SpecError> {
            let mut found = entries.iter().filter(|e| e.2 == key);
            let first = found.next().map(|e| (e.0, e.1, e.3));
            if let Some(dup) = found.next() {
                return Err(err(dup.0, 1, &format!("`{key}` given twice")));
            }
            Ok(first)
        };
        for e in &entries {
            if !["name", "field", "group", "alphabet", "equation", "memory", "rule", "note"].contains(&e.2) {
                return Err(err(e.0, 1, &format!("unknown key `{}`", e.2)));
            }
        }

        let field = match (field, one("field")?) {
            (Some(f), _) => f.clone(),
            (None, Some((l, c, v))) => Field::parse(v).map_err(|e| err(l, c, &e.to_string()))?,
            (None, None) => return Err(err(1, 1, "missing `field:` (or pass a field explicitly)")),
        };
        let dim = match one("group")? {
            Some((l, c, v)) => v.parse::<usize>().map_err(|_| err(l, c, "group dimension must be an integer"))?,
            None => 1,
        };
        let (al, ac, av) = one("alphabet")?.ok_or_else(|| err(1, 1, "missing `alphabet:`"))?;
        let m: usize = av.parse().map_err(|_| err(al, ac, "alphabet dimension must be an integer"))?;
        let aring = Ring::affine(field.clone(), m);
        let mut equations = Vec::new();
        for e in entries.iter().filter(|e| e.2 == "equation") {
            equations.push(parse_poly(&aring, e.0, e.1, e.3)?);
        }
        let alphabet = AlgebraicSet::new(&aring, equations).map_err(|e| err(al, ac, &e.to_string()))?;

        let (ml, mc, mv) = one("memory")?.ok_or_else(|| err(1, 1, "missing `memory:`"))?;
        let memory = parse_memory(mv, dim).map_err(|(col, msg)| err(ml, mc + col, &msg))?;
        let rring = product_ring(&field, m, memory.len());
        let rules = entries
            .iter()
            .filter(|e| e.2 == "rule")
            .map(|e| parse_poly(&rring, e.0, e.1, e.3))
            .collect::<Result<Vec<_>, _>>()?;
        if rules.len() != m {
            return Err(err(ml, 1, &format!("{m} rule lines expected, found {}", rules.len())));
        }
        Ok(AutomatonSpec {
            name: one("name")?.map(|(_, _, v)| v.to_string()),
            field,
            dim,
            alphabet,
            memory,
            rules,
            notes: entries.iter().filter(|e| e.2 == "note").map(|e| e.3.to_string()).collect(),
        })
    }
}

fn err(line: usize, col: usize, msg: &str) -> SpecError {
    SpecError {
        line,
        col,
        msg: msg.to_string(),
    }
}

fn parse_poly(ring: &Ring, line: usize, col: usize, text: &str) -> Result<MultiPoly, SpecError> {
    ring.parse(text).map_err(|e| match e {
        Error::Syntax { col: c, msg } => err(line, col + c - 1, &msg),
        other => err(line, col, &other.to_string()),
    })
}

/// `(1) (2)` or `(0,1) (1,0)`; an empty value is the empty window.
pub fn parse_memory(text: &str, dim: usize) -> Result<Window, (usize, String)> {
    let mut cells = Vec::new();
    let mut rest = text;
    let mut pos = 0;
    loop {
        let trimmed = rest.trim_start();
        pos += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        if !trimmed.starts_with('(') {
            return Err((pos, "expected `(`".into()));
        }
        let close = trimmed.find(')').ok_or((pos, "unclosed `(`".to_string()))?;
        let coords = trimmed[1..close]
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| (pos, "cell coordinates must be integers".to_string()))?;
        if coords.len() != dim {
            return Err((pos, format!("cell has {} coordinates, group has {dim}", coords.len())));
        }
        cells.push(GroupElement(coords));
        pos += close + 1;
        rest = &trimmed[close + 1..];
    }
    let n = cells.len();
    let w = Window::new(dim, cells).map_err(|e| (0, e.to_string()))?;
    if w.len() != n {
        return Err((0, "memory lists a cell twice".into()));
    }
    Ok(w)
}
