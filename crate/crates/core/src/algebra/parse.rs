//! Polynomial text syntax: identifiers (with optional `[i]` suffixes), `+ - * / ^`,
//! parentheses, integer literals and `a/b`. The extension generator is `w`.

use num_bigint::BigInt;

use super::poly::{MultiPoly, Ring};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
}

impl Ring {
    /// Parses a polynomial over this ring. Whitespace is ignored.
    pub fn parse(&self, text: &str) -> Result<MultiPoly> {
        let mut p = Parser {
            ring: self,
            chars: text.chars().collect(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err(format!("unexpected `{}`", p.chars[p.pos])));
        }
        Ok(out)
    }
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    let c = d.constant_value().ok_or_else(|| Error::Syntax {
                        col: at + 1,
                        msg: "division only by constants".into(),
                    })?;
                    let inv = self.ring.field().inv(&c).ok_or_else(|| Error::Syntax {
                        col: at + 1,
                        msg: "division by zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                self.pos = start;
                return Err(self.err("exponent must be a nonnegative integer literal"));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u64 = digits.parse().map_err(|_| Error::Syntax {
                col: start + 1,
                msg: "exponent too large".into(),
            })?;
            if e > 1 << 20 {
                return Err(Error::Syntax {
                    col: start + 1,
                    msg: "exponent too large".into(),
                });
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().expect("digits");
                Ok(self.ring.constant(self.ring.field().from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                while self.pos < self.chars.len() && self.chars[self.pos] == '[' {
                    let open = self.pos;
                    self.pos += 1;
                    while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if self.pos == open + 1 || self.chars.get(self.pos) != Some(&']') {
                        return Err(self.err("malformed index, expected `[digits]`"));
                    }
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if let Some(i) = self.ring.var_index(&name) {
                    return Ok(self.ring.var(i));
                }
                if name == "w" {
                    if let Some(g) = self.ring.field().generator() {
                        return Ok(self.ring.constant(g));
                    }
                }
                Err(Error::Syntax {
                    col: start + 1,
                    msg: format!("unknown variable `{name}`"),
                })
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }
}
