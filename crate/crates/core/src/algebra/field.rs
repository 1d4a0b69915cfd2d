//! Exact scalar fields: the rationals, prime fields and small extension fields.
//!
//! Elements are plain values; the [`Field`] descriptor that gives them meaning
//! lives on the owning polynomial ring, set or automaton. Extension-field
//! elements are packed as base-`p` integers: the coefficient of `w^i` is the
//! `i`-th digit, so the prime subfield is embedded as the codes `0..p`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest extension field for which log/antilog tables are built.
pub const MAX_EXTENSION_SIZE: u64 = 1 << 20;

/// A value of some field. Which field is recorded by the owner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(BigRational),
    Finite(u64),
}

impl FieldElement {
    pub fn as_finite(&self) -> Option<u64> {
        match self {
            FieldElement::Finite(v) => Some(*v),
            FieldElement::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Finite(_) => None,
        }
    }
}

#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

enum FieldKind {
    Rationals,
    Prime { p: u64 },
    Extension(Extension),
}

struct Extension {
    p: u64,
    k: u32,
    /// Monic modulus, coefficients low to high, length `k + 1`.
    modulus: Vec<u64>,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn pack(ds: &[u64], p: u64) -> u64 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p (low-to-high coefficients).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Exhaustive scan for monic factors of degree `1..=k/2`.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(modulus, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `k` whose lower coefficients have the smallest packed code.
pub fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for code in 0..count {
        let mut m = digits(code, p, k as usize);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Extension {
    fn build(p: u64, k: u32, modulus: Vec<u64>) -> Result<Self> {
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_EXTENSION_SIZE)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{k} exceeds {MAX_EXTENSION_SIZE}")))?;
        let kk = k as usize;
        for g in 2..q {
            let gd = digits(g, p, kk);
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut cur = digits(1, p, kk);
            let mut ok = true;
            for i in 0..q - 1 {
                let c = pack(&cur, p);
                if i > 0 && c == 1 {
                    ok = false;
                    break;
                }
                exp.push(c as u32);
                cur = poly_mulmod(&cur, &gd, &modulus, p);
            }
            if ok && pack(&cur, p) == 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return Ok(Extension {
                    p,
                    k,
                    modulus,
                    q,
                    exp,
                    log,
                });
            }
        }
        Err(Error::InvalidField("no primitive element found".into()))
    }
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("{p} is too large")));
        }
        Ok(Field(Arc::new(FieldKind::Prime { p })))
    }

    /// `F_{p^k}` with the given modulus (coefficients low to high, monic, degree `k`),
    /// or the default modulus when none is supplied.
    pub fn extension(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if k == 1 && modulus.is_none() {
            return Field::prime(p);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField("modulus coefficient not reduced".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::InvalidField("modulus is reducible".into()));
                }
                m
            }
            None => default_modulus(p, k),
        };
        if k == 1 {
            return Field::prime(p);
        }
        Ok(Field(Arc::new(FieldKind::Extension(Extension::build(
            p, k, modulus,
        )?))))
    }

    /// The level-`k` field of the tower over `F_p`, with the default modulus.
    pub fn tower(p: u64, k: u32) -> Result<Self> {
        Field::extension(p, k, None)
    }

    /// Parses `Q`, `p`, `p^k` or `p^k:<monic polynomial in w>`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" || t == "q" || t == "QQ" {
            return Ok(Field::rationals());
        }
        let (head, modulus) = match t.split_once(':') {
            Some((h, m)) => (h.trim(), Some(m.trim())),
            None => (t, None),
        };
        let bad = || Error::InvalidField(format!("cannot parse field `{text}`"));
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.parse::<u64>().map_err(|_| bad())?, 1),
        };
        let modulus = match modulus {
            None => None,
            Some(m) => Some(parse_modulus(m, p, k)?),
        };
        Field::extension(p, k, modulus)
    }

    pub fn is_rationals(&self) -> bool {
        matches!(*self.0, FieldKind::Rationals)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_rationals()
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(*self.0, FieldKind::Prime { .. })
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some(*p),
            FieldKind::Extension(e) => Some(e.q),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } => *p,
            FieldKind::Extension(e) => e.p,
        }
    }

    /// Degree over the prime field (1 for prime fields and for the rationals).
    pub fn degree(&self) -> u32 {
        match &*self.0 {
            FieldKind::Extension(e) => e.k,
            _ => 1,
        }
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        match &*self.0 {
            FieldKind::Extension(e) => Some(&e.modulus),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => FieldElement::Rational(BigRational::zero()),
            _ => FieldElement::Finite(0),
        }
    }

    pub fn one(&self) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => FieldElement::Rational(BigRational::one()),
            _ => FieldElement::Finite(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            _ => {
                let p = self.characteristic() as i64;
                FieldElement::Finite(n.rem_euclid(p) as u64)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                FieldElement::Finite(n.mod_floor(&p).to_u64().unwrap())
            }
        }
    }

    /// `num / den`, or `None` when the denominator vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<FieldElement> {
        match &*self.0 {
            FieldKind::Rationals => {
                if den.is_zero() {
                    None
                } else {
                    Some(FieldElement::Rational(BigRational::new(num.clone(), den.clone())))
                }
            }
            _ => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d)?;
                Some(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    /// The generator `w` of an extension field.
    pub fn generator(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldKind::Extension(e) => Some(FieldElement::Finite(e.p)),
            _ => None,
        }
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        match (&*self.0, a) {
            (FieldKind::Rationals, FieldElement::Rational(_)) => true,
            (FieldKind::Rationals, _) | (_, FieldElement::Rational(_)) => false,
            (_, FieldElement::Finite(v)) => *v < self.size().unwrap(),
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Finite(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Finite(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Rational(x), Rational(y)) => Rational(x + y),
            (FieldKind::Prime { p }, Finite(x), Finite(y)) => Finite((x + y) % p),
            (FieldKind::Extension(e), Finite(x), Finite(y)) => {
                let (mut x, mut y) = (*x, *y);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..e.k {
                    out += ((x % e.p + y % e.p) % e.p) * place;
                    x /= e.p;
                    y /= e.p;
                    place *= e.p;
                }
                Finite(out)
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (&*self.0, a) {
            (FieldKind::Rationals, Rational(x)) => Rational(-x),
            (FieldKind::Prime { p }, Finite(x)) => Finite((p - x) % p),
            (FieldKind::Extension(e), Finite(x)) => {
                let mut x = *x;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..e.k {
                    out += ((e.p - x % e.p) % e.p) * place;
                    x /= e.p;
                    place *= e.p;
                }
                Finite(out)
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x - y)
            }
            (FieldKind::Prime { p }, FieldElement::Finite(x), FieldElement::Finite(y)) => {
                FieldElement::Finite((x + p - y) % p)
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Rational(x), Rational(y)) => Rational(x * y),
            (FieldKind::Prime { p }, Finite(x), Finite(y)) => Finite((x * y) % p),
            (FieldKind::Extension(e), Finite(x), Finite(y)) => {
                if *x == 0 || *y == 0 {
                    Finite(0)
                } else {
                    let l = (e.log[*x as usize] as u64 + e.log[*y as usize] as u64) % (e.q - 1);
                    Finite(e.exp[l as usize] as u64)
                }
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        use FieldElement::*;
        if self.is_zero(a) {
            return None;
        }
        Some(match (&*self.0, a) {
            (FieldKind::Rationals, Rational(x)) => Rational(x.recip()),
            (FieldKind::Prime { p }, Finite(x)) => Finite(mod_pow(*x, p - 2, *p)),
            (FieldKind::Extension(e), Finite(x)) => {
                let l = (e.q - 1 - e.log[*x as usize] as u64) % (e.q - 1);
                Finite(e.exp[l as usize] as u64)
            }
            _ => panic!("element does not belong to field {self}"),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// All elements in code order. Panics on the rationals.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        let q = self.size().expect("elements() requires a finite field");
        (0..q).map(FieldElement::Finite)
    }

    /// Moves an element of the prime subfield of `from` into `self`.
    pub fn embed_from(&self, from: &Field, a: &FieldElement) -> Result<FieldElement> {
        if from == self {
            return Ok(a.clone());
        }
        match a {
            FieldElement::Rational(r) if self.is_rationals() => Ok(FieldElement::Rational(r.clone())),
            FieldElement::Rational(r) => {
                self.from_ratio(r.numer(), r.denom()).ok_or_else(|| {
                    Error::FieldMismatch(format!("{r} has no image in {self}"))
                })
            }
            FieldElement::Finite(v) => {
                if self.is_finite()
                    && from.characteristic() == self.characteristic()
                    && *v < self.characteristic()
                {
                    Ok(FieldElement::Finite(*v))
                } else {
                    Err(Error::FieldMismatch(format!(
                        "{} of {from} is not in the prime subfield shared with {self}",
                        from.format(a)
                    )))
                }
            }
        }
    }

    /// Canonical text for an element: integers or `a/b` over Q, residues mod p,
    /// polynomials in `w` over extensions.
    pub fn format(&self, a: &FieldElement) -> String {
        match (&*self.0, a) {
            (FieldKind::Extension(e), FieldElement::Finite(v)) => {
                let ds = digits(*v, e.p, e.k as usize);
                let mut parts = Vec::new();
                for (i, &d) in ds.iter().enumerate().rev() {
                    if d == 0 {
                        continue;
                    }
                    let var = match i {
                        0 => String::new(),
                        1 => "w".to_string(),
                        _ => format!("w^{i}"),
                    };
                    parts.push(match (d, i) {
                        (_, 0) => d.to_string(),
                        (1, _) => var,
                        _ => format!("{d}*{var}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
            (_, FieldElement::Finite(v)) => v.to_string(),
            (_, FieldElement::Rational(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// True when the formatted element needs parentheses as a coefficient.
    pub fn is_compound(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Finite(v) => {
                matches!(&*self.0, FieldKind::Extension(e) if *v >= e.p)
            }
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn parse_modulus(text: &str, p: u64, k: u32) -> Result<Vec<u64>> {
    // Accepts either a comma list of coefficients (low to high) or a polynomial in w.
    if text.contains(',') {
        return text
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidField(format!("bad modulus coefficient `{c}`")))
            })
            .collect();
    }
    let mut coeffs = vec![0u64; k as usize + 1];
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let bad = |t: &str| Error::InvalidField(format!("bad modulus term `{t}`"));
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.trim_start_matches('+')),
        };
        let (c, mono) = match body.split_once('*') {
            Some((c, m)) => (c.parse::<u64>().map_err(|_| bad(&term))?, m),
            None if body.contains('w') => (1, body),
            None => (body.parse::<u64>().map_err(|_| bad(&term))?, ""),
        };
        let deg = if mono.is_empty() {
            0
        } else if mono == "w" {
            1
        } else if let Some(e) = mono.strip_prefix("w^") {
            e.parse::<usize>().map_err(|_| bad(&term))?
        } else {
            return Err(bad(&term));
        };
        if deg > k as usize {
            return Err(Error::InvalidField(format!("modulus degree exceeds {k}")));
        }
        let c = c % p;
        let c = if neg { (p - c) % p } else { c };
        coeffs[deg] = (coeffs[deg] + c) % p;
    }
    Ok(coeffs)
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::Prime { p }, FieldKind::Prime { p: q }) => p == q,
            (FieldKind::Extension(a), FieldKind::Extension(b)) => {
                a.p == b.p && a.modulus == b.modulus
            }
            _ => false,
        }
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.characteristic().hash(state);
        self.modulus().hash(state);
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "{p}"),
            FieldKind::Extension(e) => {
                let mut terms = vec![format!("w^{}", e.k)];
                for i in (0..e.k as usize).rev() {
                    let c = e.modulus[i];
                    if c == 0 {
                        continue;
                    }
                    terms.push(match (c, i) {
                        (_, 0) => c.to_string(),
                        (1, 1) => "w".into(),
                        (_, 1) => format!("{c}*w"),
                        (1, _) => format!("w^{i}"),
                        _ => format!("{c}*w^{i}"),
                    });
                }
                write!(f, "{}^{}:{}", e.p, e.k, terms.join(" + "))
            }
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}
