//! Line-oriented text form for algebraic sets, constructible sets and maps.
//!
//! ```text
//! ambient=2; field=5; gens: [t1*t2 - 1]
//!
//! ambient=2; field=5
//! piece: {gens: [t1], neq: t2}
//!
//! field=Q
//! source: ambient=1; gens: []
//! target: ambient=2; gens: [t1^2 - t2^3]
//! map: [t1^3, t1^2]
//! ```
//!
//! Rosters other than `t1..tm` are written as `vars=[x, y]` after `ambient`.

use super::algebraic::AlgebraicSet;
use super::constructible::{ConstructibleSet, LocallyClosedPiece};
use super::map::RegularMap;
use crate::algebra::{Field, MultiPoly, Ring};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Splits on `sep` outside of `()`, `[]` and `{}`.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Syntax {
        col: 1,
        msg: msg.into(),
    }
}

/// Items of a `[a, b, c]` list.
pub fn parse_list(s: &str) -> Result<Vec<String>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| bad(format!("expected a bracketed list, got `{t}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(split_top_level(inner, ',').into_iter().map(|x| x.trim().to_string()).collect())
}

fn format_list(polys: &[MultiPoly]) -> String {
    let items: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn roster_text(ring: &Ring) -> String {
    let default = (1..=ring.nvars()).map(|i| format!("t{i}")).collect::<Vec<_>>();
    if ring.vars() == default.as_slice() {
        format!("ambient={}", ring.nvars())
    } else {
        format!("ambient={}; vars=[{}]", ring.nvars(), ring.vars().join(", "))
    }
}

/// Reads `key=value` / `key: value` segments separated by `;`.
fn segments(line: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for seg in split_top_level(line, ';') {
        let seg = seg.trim();
        if seg.is_empty() {
            continue;
        }
        let cut = seg
            .find(['=', ':'])
            .ok_or_else(|| bad(format!("expected key=value, got `{seg}`")))?;
        out.push((seg[..cut].trim().to_string(), seg[cut + 1..].trim().to_string()));
    }
    Ok(out)
}

fn get<'a>(segs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    segs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn ring_from(segs: &[(String, String)], field: &Field) -> Result<Ring> {
    let m: usize = get(segs, "ambient")
        .ok_or_else(|| bad("missing `ambient`"))?
        .parse()
        .map_err(|_| bad("ambient must be a nonnegative integer"))?;
    match get(segs, "vars") {
        Some(v) => {
            let vars = parse_list(v)?;
            if vars.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: vars.len(),
                });
            }
            Ok(Ring::new(field.clone(), &vars))
        }
        None => Ok(Ring::affine(field.clone(), m)),
    }
}

fn parse_polys(ring: &Ring, list: &str) -> Result<Vec<MultiPoly>> {
    parse_list(list)?.iter().map(|s| ring.parse(s)).collect()
}

fn set_from(segs: &[(String, String)], field: &Field) -> Result<AlgebraicSet> {
    let ring = ring_from(segs, field)?;
    let gens = match get(segs, "gens") {
        Some(g) => parse_polys(&ring, g)?,
        None => Vec::new(),
    };
    AlgebraicSet::new(&ring, gens)
}

fn field_from(segs: &[(String, String)]) -> Result<Field> {
    Field::parse(get(segs, "field").ok_or_else(|| bad("missing `field`"))?)
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
}

impl AlgebraicSet {
    pub fn to_text(&self) -> String {
        format!(
            "{}; field={}; gens: {}",
            roster_text(self.ring()),
            self.field(),
            format_list(self.gens())
        )
    }

    pub fn parse(text: &str) -> Result<AlgebraicSet> {
        let line = content_lines(text).next().ok_or_else(|| bad("empty input"))?;
        let segs = segments(line)?;
        set_from(&segs, &field_from(&segs)?)
    }
}

impl ConstructibleSet {
    pub fn to_text(&self) -> String {
        let mut out = format!("{}; field={}\n", roster_text(self.ring()), self.ring().field());
        for p in self.pieces() {
            out.push_str(&format!(
                "piece: {{gens: {}, neq: {}}}\n",
                format_list(p.closed.gens()),
                p.neq
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<ConstructibleSet> {
        let mut lines = content_lines(text);
        let head = segments(lines.next().ok_or_else(|| bad("empty input"))?)?;
        let field = field_from(&head)?;
        let ring = ring_from(&head, &field)?;
        let mut pieces = Vec::new();
        for line in lines {
            let body = line
                .strip_prefix("piece:")
                .map(str::trim)
                .and_then(|b| b.strip_prefix('{'))
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| bad(format!("expected `piece: {{...}}`, got `{line}`")))?;
            let mut gens = Vec::new();
            let mut neq = ring.one();
            for item in split_top_level(body, ',') {
                let (k, v) = item
                    .split_once(':')
                    .ok_or_else(|| bad(format!("expected key: value in `{item}`")))?;
                match k.trim() {
                    "gens" => gens = parse_polys(&ring, v)?,
                    "neq" => neq = ring.parse(v.trim())?,
                    other => return Err(bad(format!("unknown piece key `{other}`"))),
                }
            }
            pieces.push(LocallyClosedPiece {
                closed: AlgebraicSet::new(&ring, gens)?,
                neq,
            });
        }
        ConstructibleSet::new(&ring, pieces)
    }
}

impl RegularMap {
    pub fn to_text(&self) -> String {
        let set_line = |a: &AlgebraicSet| format!("{}; gens: {}", roster_text(a.ring()), format_list(a.gens()));
        format!(
            "field={}\nsource: {}\ntarget: {}\nmap: {}\n",
            self.field(),
            set_line(self.source()),
            set_line(self.target()),
            format_list(self.components())
        )
    }

    pub fn parse(text: &str, budget: &Budget) -> Result<RegularMap> {
        let mut field = None;
        let mut source = None;
        let mut target = None;
        let mut comps = None;
        for line in content_lines(text) {
            let (key, rest) = line
                .split_once([':', '='])
                .ok_or_else(|| bad(format!("unrecognized line `{line}`")))?;
            match key.trim() {
                "field" => field = Some(Field::parse(rest)?),
                "source" | "target" => {
                    let f = field.as_ref().ok_or_else(|| bad("`field` must come first"))?;
                    let set = set_from(&segments(rest)?, f)?;
                    if key.trim() == "source" {
                        source = Some(set);
                    } else {
                        target = Some(set);
                    }
                }
                "map" => comps = Some(rest.to_string()),
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let source = source.ok_or_else(|| bad("missing `source`"))?;
        let target = target.ok_or_else(|| bad("missing `target`"))?;
        let comps = parse_polys(source.ring(), &comps.ok_or_else(|| bad("missing `map`"))?)?;
        RegularMap::new(source, target, comps, budget)
    }
}
