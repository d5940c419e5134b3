use std::fmt;

use crate::{Error, Result};

/// A generator or its inverse. Surface generators are numbered
/// `2(i-1)` for `x_i` and `2(i-1)+1` for `y_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen: gen as u32, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn generator(gen: usize) -> Self {
        Word(vec![Letter::new(gen, false)])
    }

    pub fn x(i: usize) -> Self {
        Self::generator(2 * (i - 1))
    }

    pub fn y(i: usize) -> Self {
        Self::generator(2 * (i - 1) + 1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Self {
        Self::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `self^by = by⁻¹·self·by`
    pub fn conj(&self, by: &Word) -> Self {
        by.inverse().mul(self).mul(by)
    }

    /// `[a, b] = a⁻¹b⁻¹ab`
    pub fn comm(a: &Word, b: &Word) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Largest generator index used, plus one.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|l| l.gen as usize + 1).max().unwrap_or(0)
    }

    /// Exponent sum of each of `rank` generators.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for l in &self.0 {
            v[l.gen as usize] += if l.inv { -1 } else { 1 };
        }
        v
    }

    /// Renders with custom generator labels; the empty word is `1`.
    pub fn display_with<F: Fn(usize) -> String>(&self, label: F) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            let e = if l.inv { -(run as i64) } else { run as i64 };
            let name = label(l.gen as usize);
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i += run;
        }
        parts.join("*")
    }

    /// Parses the surface word syntax, e.g. `x1*y1^-1*[x2,y2]` or `x1^y2`.
    pub fn parse(src: &str, genus: usize) -> Result<Word> {
        let mut p = Parser { src: src.as_bytes(), pos: 0, genus };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(w)
    }
}

pub fn surface_label(gen: usize) -> String {
    let i = gen / 2 + 1;
    if gen.is_multiple_of(2) { format!("x{i}") } else { format!("y{i}") }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(surface_label))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    genus: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(c) if c == b'-' || c.is_ascii_digit() => w = w.pow(self.integer()?),
                _ => w = w.conj(&self.atom()?),
            }
        }
        Ok(w)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse { pos: start, msg: "expected an integer".into() })
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(Word::comm(&a, &b))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c @ (b'x' | b'y')) => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let label = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let i: usize = std::str::from_utf8(&self.src[digits..self.pos])
                    .ok()
                    .and_then(|s| s.parse().ok())
                    .ok_or(Error::Parse { pos: start, msg: "expected a generator index".into() })?;
                if i == 0 || i > self.genus {
                    return Err(Error::UnknownLabel(label));
                }
                Ok(Word::generator(2 * (i - 1) + usize::from(c == b'y')))
            }
            _ => Err(self.err("expected a generator, `1`, `(` or `[`")),
        }
    }
}
