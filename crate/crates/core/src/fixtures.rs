//! Golden fixtures: a small formula language and the fixture files embedded
//! in the crate.
//!
//! Formulas use `p`, integers, `+ - * ^`, parentheses and juxtaposition for
//! multiplication. Hecke formulas name generators `T`, `T1`..`T{n-1}` and
//! `P` (for `[p]`); spherical formulas use `symIJKL` with one digit per part.
//! Only `p` may carry a negative exponent.
//!
//! A fixture file is a list of entries, one per key:
//!
//! ```text
//! e2 = -p^2 (T2 + P)       value as displayed
//! f4 =! p^6 (T2^2 + ...)   displayed value with a correction applied
//! f4@printed = ...         the displayed value before correction
//! f7 := f1 * (p^6 P)^3     derived from other entries, not displayed
//! ```
//!
//! Lines starting with whitespace continue the previous entry; `#` starts a
//! comment line. A `genus N` line must come first.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::inversion::{GenMonomial, HeckePoly};
use crate::kernel::{LaurentP, SymPoly};
use crate::spseries::Generator;

pub const GENUS1: &str = include_str!("../fixtures/genus1.txt");
pub const GENUS2: &str = include_str!("../fixtures/genus2.txt");
pub const GENUS3: &str = include_str!("../fixtures/genus3.txt");
pub const GENUS4: &str = include_str!("../fixtures/genus4.txt");
pub const GENERATOR_IMAGES_N4: &str = include_str!("../fixtures/generator_images_n4.txt");
pub const OMEGA_EXAMPLES_N4: &str = include_str!("../fixtures/omega_examples_n4.txt");
pub const E3_IMAGE_N4: &str = include_str!("../fixtures/e3_image_n4.txt");

/// Second, independently produced encoding of the genus files, in canonical
/// `HeckePoly` text under `[key]` headers.
pub const GENUS1_CANON: &str = include_str!("../fixtures/genus1.canon");
pub const GENUS2_CANON: &str = include_str!("../fixtures/genus2.canon");
pub const GENUS3_CANON: &str = include_str!("../fixtures/genus3.canon");
pub const GENUS4_CANON: &str = include_str!("../fixtures/genus4.canon");

pub fn genus_fixture_text(n: usize) -> Result<&'static str> {
    match n {
        1 => Ok(GENUS1),
        2 => Ok(GENUS2),
        3 => Ok(GENUS3),
        4 => Ok(GENUS4),
        _ => Err(Error::Usage(format!("no golden fixture for genus {n}"))),
    }
}

pub fn genus_canon_text(n: usize) -> Result<&'static str> {
    match n {
        1 => Ok(GENUS1_CANON),
        2 => Ok(GENUS2_CANON),
        3 => Ok(GENUS3_CANON),
        4 => Ok(GENUS4_CANON),
        _ => Err(Error::Usage(format!("no golden fixture for genus {n}"))),
    }
}

/// Values the formula language can evaluate into.
pub trait Algebra: Clone {
    fn scalar(n: usize, c: LaurentP) -> Self;
    /// A named generator, or `None` if the name is not one.
    fn atom(n: usize, name: &str) -> Option<Self>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Algebra for HeckePoly {
    fn scalar(n: usize, c: LaurentP) -> Self {
        HeckePoly::constant(n, c)
    }

    fn atom(n: usize, name: &str) -> Option<Self> {
        let g = match name {
            "T" => Generator::T,
            "P" => Generator::Scalar,
            _ => {
                let i: usize = name.strip_prefix('T')?.parse().ok()?;
                if i == 0 || i >= n {
                    return None;
                }
                Generator::Ti(i)
            }
        };
        Some(HeckePoly::term(
            GenMonomial::generator(n, g),
            LaurentP::one(),
        ))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Algebra for SymPoly {
    fn scalar(n: usize, c: LaurentP) -> Self {
        SymPoly::constant(n, c)
    }

    fn atom(n: usize, name: &str) -> Option<Self> {
        let digits = name.strip_prefix("sym")?;
        if digits.len() != n || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let parts: Vec<u16> = digits.bytes().map(|b| (b - b'0') as u16).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(SymPoly::sym(n, &parts))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if chars[i..].starts_with(&['[', 'p', ']']) {
            out.push(Tok::Name("P".to_string()));
            i += 3;
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} in {src:?}"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a, A> {
    toks: Vec<Tok>,
    pos: usize,
    n: usize,
    env: &'a HashMap<String, A>,
    src: &'a str,
}

impl<A: Algebra> Parser<'_, A> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<A> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
                continue;
            }
            match self.peek() {
                Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<A> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<A> {
        let is_p = self.peek() == Some(&Tok::Name("p".to_string()));
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e: u32 = match self.peek() {
            Some(Tok::Num(v)) => u32::try_from(v).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected exponent")),
        };
        self.pos += 1;
        if neg {
            if !is_p {
                return Err(self.err("negative exponent on something other than p"));
            }
            return Ok(A::scalar(self.n, LaurentP::p_pow(-(e as i32))));
        }
        Ok((0..e).fold(A::scalar(self.n, LaurentP::one()), |acc, _| acc.mul(&base)))
    }

    fn atom(&mut self) -> Result<A> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(A::scalar(self.n, LaurentP::from(v)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if let Some(v) = self.env.get(&name) {
                    return Ok(v.clone());
                }
                if name == "p" {
                    return Ok(A::scalar(self.n, LaurentP::p()));
                }
                A::atom(self.n, &name).ok_or_else(|| self.err(&format!("unknown name {name:?}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

/// Evaluates one formula; names found in `env` take precedence.
pub fn eval_formula<A: Algebra>(n: usize, src: &str, env: &HashMap<String, A>) -> Result<A> {
    let mut parser = Parser {
        toks: tokenize(src)?,
        pos: 0,
        n,
        env,
        src,
    };
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// As displayed in the reference formulas.
    Printed,
    /// Displayed value with a correction applied; see the `@printed` entry.
    Corrected,
    /// Not displayed; follows from other entries by the stated rule.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Printed => "printed",
            Provenance::Corrected => "corrected",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Entry<A> {
    pub key: String,
    pub provenance: Provenance,
    pub source: String,
    pub value: A,
}

#[derive(Clone, Debug)]
pub struct Fixture<A> {
    pub genus: usize,
    pub entries: Vec<Entry<A>>,
}

impl<A: Algebra> Fixture<A> {
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw: Vec<(String, String)> = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            if line.starts_with(char::is_whitespace) {
                let last = raw.last_mut().ok_or_else(|| {
                    Error::Parse(format!("continuation before any entry: {line:?}"))
                })?;
                last.1.push(' ');
                last.1.push_str(line.trim());
            } else {
                raw.push((line.to_string(), String::new()));
            }
        }
        let mut iter = raw.into_iter();
        let genus = match iter.next() {
            Some((head, _)) => head
                .strip_prefix("genus")
                .and_then(|g| g.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("expected 'genus N', got {head:?}")))?,
            None => return Err(Error::Parse("empty fixture".into())),
        };
        let mut env: HashMap<String, A> = HashMap::new();
        let mut entries = Vec::new();
        for (head, cont) in iter {
            let line = format!("{head} {cont}");
            let (key, provenance, src) = if let Some((k, s)) = line.split_once(":=") {
                (k, Provenance::Derived, s)
            } else if let Some((k, s)) = line.split_once("=!") {
                (k, Provenance::Corrected, s)
            } else if let Some((k, s)) = line.split_once('=') {
                (k, Provenance::Printed, s)
            } else {
                return Err(Error::Parse(format!("entry without '=': {line:?}")));
            };
            let key = key.trim().to_string();
            if env.contains_key(&key) {
                return Err(Error::Parse(format!("duplicate fixture key {key:?}")));
            }
            let value: A = eval_formula(genus, src, &env)?;
            env.insert(key.clone(), value.clone());
            entries.push(Entry {
                key,
                provenance,
                source: src.trim().to_string(),
                value,
            });
        }
        Ok(Fixture { genus, entries })
    }

    pub fn get(&self, key: &str) -> Option<&Entry<A>> {
        self.entries.iter().find(|e| e.key == key)
    }

    /// `key0, key1, ..` in index order, stopping at the first gap.
    pub fn sequence(&self, prefix: &str) -> Vec<&Entry<A>> {
        (0..)
            .map_while(|i| self.get(&format!("{prefix}{i}")))
            .collect()
    }
}

/// Sections of a `.canon` file: `[key]` followed by canonical term lines.
pub fn parse_canon_sections(n: usize, text: &str) -> Result<Vec<(String, HeckePoly)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(key) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if !key.contains(';') {
                out.push((key.to_string(), String::new()));
                continue;
            }
        }
        let last = out
            .last_mut()
            .ok_or_else(|| Error::Parse(format!("term before any section: {t:?}")))?;
        last.1.push_str(t);
        last.1.push('\n');
    }
    out.into_iter()
        .map(|(k, body)| Ok((k, HeckePoly::parse_canonical(n, &body)?)))
        .collect()
}
