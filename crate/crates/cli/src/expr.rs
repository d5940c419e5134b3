//! The group expression mini-language.
//!
//! ```text
//! expr   := C<n> | S<n> | A<n> | D<n>
//!         | perm{ cycles, ... }
//!         | product(expr, expr)
//!         | semidirect(expr, expr [, action=action])
//!         | wreath(expr, expr [, over={word, ...}] [, action=action])
//! action := trivial | inversion | {[word, ...], ...}
//! word   := e | 1 | g<i>[^k] (* g<i>[^k])*
//! ```
//!
//! In `semidirect(A, B, ...)` the group `B` acts on `A`; an action table has
//! one row per generator of `B`, listing the images of the generators of `A`.
//! In `wreath(A, G, over=..., ...)` the listed words generate `G₀ ≤ G` and the
//! action rows refer to those words, in order.

use std::fmt;
use std::sync::Arc;

use surfgrp::fingroup::named::{build, Family};
use surfgrp::fingroup::{direct_product, FiniteGroup, GroupAction, Limits, SemidirectProduct, Subgroup};
use surfgrp::wreath::TwistedWreath;
use surfgrp::{Error, Perm, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Named(Family, usize),
    /// generators, each a list of cycles on points `1..`
    Perm(Vec<Vec<Vec<usize>>>),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Semidirect(Box<GroupExpr>, Box<GroupExpr>, ActionExpr),
    Wreath {
        module: Box<GroupExpr>,
        top: Box<GroupExpr>,
        over: Vec<ElemWord>,
        action: ActionExpr,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionExpr {
    Trivial,
    Inversion,
    Table(Vec<Vec<ElemWord>>),
}

/// A product of powers of generators; generator indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ElemWord(pub Vec<(usize, i64)>);

impl ElemWord {
    pub fn eval(&self, group: &FiniteGroup) -> Result<usize> {
        let gens = group.generators();
        let mut x = group.identity();
        for &(j, k) in &self.0 {
            let g = *gens.get(j).ok_or_else(|| Error::UnknownLabel(format!("g{}", j + 1)))?;
            x = group.mul(x, group.pow(g, k));
        }
        Ok(x)
    }
}

impl fmt::Display for ElemWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, &(j, k)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "g{}", j + 1)?;
            if k != 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ActionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionExpr::Trivial => write!(f, "trivial"),
            ActionExpr::Inversion => write!(f, "inversion"),
            ActionExpr::Table(rows) => {
                write!(f, "{{")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[{}]", join(row))?;
                }
                write!(f, "}}")
            }
        }
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Named(fam, n) => {
                let c = match fam {
                    Family::Cyclic => 'C',
                    Family::Symmetric => 'S',
                    Family::Alternating => 'A',
                    Family::Dihedral => 'D',
                };
                write!(f, "{c}{n}")
            }
            GroupExpr::Perm(gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        if cycles.is_empty() {
                            return "()".to_string();
                        }
                        cycles
                            .iter()
                            .map(|c| format!("({})", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")))
                            .collect()
                    })
                    .collect();
                write!(f, "perm{{{}}}", parts.join(", "))
            }
            GroupExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            GroupExpr::Semidirect(a, b, act) => {
                write!(f, "semidirect({a}, {b}")?;
                if *act != ActionExpr::Trivial {
                    write!(f, ", action={act}")?;
                }
                write!(f, ")")
            }
            GroupExpr::Wreath { module, top, over, action } => {
                write!(f, "wreath({module}, {top}")?;
                if !over.is_empty() {
                    write!(f, ", over={{{}}}", join(over))?;
                }
                if *action != ActionExpr::Trivial {
                    write!(f, ", action={action}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "number too large".into() })
    }

    fn signed(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let n = self.number()? as i64;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        let start = self.pos;
        let id = self.ident();
        let fam = match id.as_str() {
            "C" => Some(Family::Cyclic),
            "S" => Some(Family::Symmetric),
            "A" => Some(Family::Alternating),
            "D" => Some(Family::Dihedral),
            _ => None,
        };
        if let Some(fam) = fam {
            let n = self.number()?;
            if n == 0 {
                return Err(Error::Parse { pos: start, msg: "group parameter must be positive".into() });
            }
            return Ok(GroupExpr::Named(fam, n));
        }
        match id.as_str() {
            "perm" => {
                self.expect(b'{')?;
                let mut gens = vec![self.cycles()?];
                while self.eat(b',') {
                    gens.push(self.cycles()?);
                }
                self.expect(b'}')?;
                Ok(GroupExpr::Perm(gens))
            }
            "product" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
            }
            "semidirect" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                let mut action = ActionExpr::Trivial;
                if self.eat(b',') {
                    self.keyword("action")?;
                    action = self.action()?;
                }
                self.expect(b')')?;
                Ok(GroupExpr::Semidirect(Box::new(a), Box::new(b), action))
            }
            "wreath" => {
                self.expect(b'(')?;
                let module = self.expr()?;
                self.expect(b',')?;
                let top = self.expr()?;
                let mut over = Vec::new();
                let mut action = ActionExpr::Trivial;
                let mut seen_action = false;
                while self.eat(b',') {
                    let at = self.pos;
                    let key = self.ident();
                    self.expect(b'=')?;
                    match key.as_str() {
                        "over" if over.is_empty() && !seen_action => {
                            self.expect(b'{')?;
                            over = self.word_list(b'}')?;
                            if over.is_empty() {
                                return Err(Error::Parse { pos: at, msg: "empty over-list; omit it instead".into() });
                            }
                        }
                        "action" if !seen_action => {
                            action = self.action()?;
                            seen_action = true;
                        }
                        _ => return Err(Error::Parse { pos: at, msg: format!("unexpected option '{key}'") }),
                    }
                }
                self.expect(b')')?;
                Ok(GroupExpr::Wreath { module: Box::new(module), top: Box::new(top), over, action })
            }
            "" => self.err("expected a group expression"),
            other => Err(Error::Parse { pos: start, msg: format!("unknown group '{other}'") }),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let at = self.pos;
        if self.ident() != kw {
            return Err(Error::Parse { pos: at, msg: format!("expected '{kw}='") });
        }
        self.expect(b'=')
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.expect(b'(')?;
        if self.eat(b')') {
            return Ok(out);
        }
        loop {
            let mut cyc = Vec::new();
            while self.peek() != Some(b')') {
                let p = self.number()?;
                if p == 0 {
                    return self.err("points are numbered from 1");
                }
                cyc.push(p);
            }
            self.expect(b')')?;
            out.push(cyc);
            if self.peek() != Some(b'(') {
                return Ok(out);
            }
            self.expect(b'(')?;
        }
    }

    fn action(&mut self) -> Result<ActionExpr> {
        if self.peek() == Some(b'{') {
            self.pos += 1;
            let mut rows = Vec::new();
            if !self.eat(b'}') {
                loop {
                    self.expect(b'[')?;
                    rows.push(self.word_list(b']')?);
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b'}')?;
            }
            return Ok(ActionExpr::Table(rows));
        }
        let at = self.pos;
        match self.ident().as_str() {
            "trivial" => Ok(ActionExpr::Trivial),
            "inversion" => Ok(ActionExpr::Inversion),
            _ => Err(Error::Parse { pos: at, msg: "expected 'trivial', 'inversion' or a table".into() }),
        }
    }

    /// Comma-separated words up to and including `close`.
    fn word_list(&mut self, close: u8) -> Result<Vec<ElemWord>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.word()?);
            if !self.eat(b',') {
                break;
            }
        }
        self.expect(close)?;
        Ok(out)
    }

    fn word(&mut self) -> Result<ElemWord> {
        match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                return Ok(ElemWord::default());
            }
            Some(b'1') => {
                self.pos += 1;
                return Ok(ElemWord::default());
            }
            _ => {}
        }
        let mut out = Vec::new();
        loop {
            if !self.eat(b'g') {
                return self.err("expected a generator g<i>");
            }
            let at = self.pos;
            let j = self.number()?;
            if j == 0 {
                return Err(Error::Parse { pos: at, msg: "generators are numbered from 1".into() });
            }
            let k = if self.eat(b'^') { self.signed()? } else { 1 };
            out.push((j - 1, k));
            if !self.eat(b'*') {
                return Ok(ElemWord(out));
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.finish()?;
        Ok(e)
    }
}

impl std::str::FromStr for ActionExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let a = p.action()?;
        p.finish()?;
        Ok(a)
    }
}

impl std::str::FromStr for ElemWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let w = p.word()?;
        p.finish()?;
        Ok(w)
    }
}

/// Comma-separated element words, as in `g1, g2^2, e`.
pub fn parse_words(s: &str) -> Result<Vec<ElemWord>> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    if p.peek().is_none() {
        return Ok(out);
    }
    loop {
        out.push(p.word()?);
        if !p.eat(b',') {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}

/// A subgroup given as `{word, ...}`.
pub fn parse_word_set(s: &str) -> Result<Vec<ElemWord>> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    p.expect(b'{')?;
    let out = p.word_list(b'}')?;
    p.finish()?;
    Ok(out)
}

impl ActionExpr {
    /// `actor` acting on `module`.
    pub fn build(&self, actor: &Arc<FiniteGroup>, module: &Arc<FiniteGroup>) -> Result<GroupAction> {
        match self {
            ActionExpr::Trivial => Ok(GroupAction::trivial(actor, module)),
            ActionExpr::Inversion => GroupAction::inversion(actor, module),
            ActionExpr::Table(rows) => {
                let images = rows
                    .iter()
                    .map(|row| row.iter().map(|w| w.eval(module)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                GroupAction::from_generator_images(actor, module, &images)
            }
        }
    }
}

impl GroupExpr {
    pub fn build(&self, limits: &Limits) -> Result<Arc<FiniteGroup>> {
        match self {
            GroupExpr::Named(fam, n) => build(*fam, *n, limits),
            GroupExpr::Perm(gens) => {
                let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
                let perms = gens.iter().map(|c| Perm::from_cycles(degree, c)).collect::<Result<Vec<_>>>()?;
                FiniteGroup::close(&perms, limits)
            }
            GroupExpr::Product(a, b) => Ok(direct_product(&a.build(limits)?, &b.build(limits)?, limits)?.group),
            GroupExpr::Semidirect(a, b, act) => {
                let (a, b) = (a.build(limits)?, b.build(limits)?);
                Ok(SemidirectProduct::new(&act.build(&b, &a)?, limits)?.group)
            }
            GroupExpr::Wreath { .. } => Ok(self.build_wreath(limits)?.group().clone()),
        }
    }

    pub fn build_wreath(&self, limits: &Limits) -> Result<TwistedWreath> {
        let GroupExpr::Wreath { module, top, over, action } = self else {
            return Err(Error::Precondition("not a wreath expression".into()));
        };
        let (a, g) = (module.build(limits)?, top.build(limits)?);
        let gens = over.iter().map(|w| w.eval(&g)).collect::<Result<Vec<_>>>()?;
        let g0 = Subgroup::generated(&g, &gens);
        let (g0g, _) = g0.as_group(limits)?;
        TwistedWreath::new(&g0, &action.build(&g0g, &a)?, limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> usize {
        s.parse::<GroupExpr>().unwrap().build(&Limits::default()).unwrap().order()
    }

    #[test]
    fn orders() {
        assert_eq!(order("C5"), 5);
        assert_eq!(order("S4"), 24);
        assert_eq!(order("A4"), 12);
        assert_eq!(order("D4"), 8);
        assert_eq!(order("perm{(1 2)(3 4), (1 3)}"), 8);
        assert_eq!(order("product(C2, C3)"), 6);
        assert_eq!(order("semidirect(C3, C2, action=inversion)"), 6);
        assert_eq!(order("semidirect(C5, C4, action={[g1^2]})"), 20);
        assert_eq!(order("wreath(C2, C3)"), 24);
        assert_eq!(order("wreath(C3, S3, over={g1}, action={[g1^-1]})"), 6 * 27);
    }

    #[test]
    fn errors_carry_positions() {
        let err = "product(C2, X3)".parse::<GroupExpr>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 12, .. }), "{err:?}");
        assert!(matches!("C0".parse::<GroupExpr>(), Err(Error::Parse { .. })));
        assert!(matches!("C3 C3".parse::<GroupExpr>(), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!("semidirect(C3, C2, action=swap)".parse::<GroupExpr>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn bad_action_is_rejected() {
        let e: GroupExpr = "semidirect(C3, C2, action={[g1^2], [g1]})".parse().unwrap();
        assert!(matches!(e.build(&Limits::default()), Err(Error::InvalidAction(_))));
        let e: GroupExpr = "semidirect(C4, C2, action={[g2]})".parse().unwrap();
        assert!(matches!(e.build(&Limits::default()), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn words() {
        let w: ElemWord = "g1*g2^-3".parse().unwrap();
        assert_eq!(w.0, vec![(0, 1), (1, -3)]);
        assert_eq!(w.to_string(), "g1*g2^-3");
        assert_eq!("1".parse::<ElemWord>().unwrap().to_string(), "e");
    }
}
