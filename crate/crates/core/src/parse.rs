//! Text syntax for field elements, quaternions, lines and maps.
//!
//! ```text
//!   expr  := term (('+' | '-') term)*
//!   term  := unary (('*' | '/') unary)*
//!   unary := '-' unary | power
//!   power := atom ('^' digits)?
//!   atom  := digits | name | '(' expr ')'
//!   line  := 'span' '(' expr ';' expr ')'
//!   lines := '[' (line (',' line)*)? ']'
//!   map   := factor ('.' factor)*
//!   factor:= ('inner' | 'ltrans' | 'rtrans') '(' expr ')' | 'conj' | 'galois'
//! ```
//!
//! Names are `s` (the square root in `Q(sqrt m)`), `t` and `u` (in
//! `F2(t,u)`), and `i`, `j`, `k` in quaternion expressions. Integer literals
//! over `F2(t,u)` are reduced mod 2. Whitespace is ignored between tokens. In
//! a composite map the rightmost factor is applied first.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{F2Poly, FieldConfig, FieldElem, FieldKind, Rational};
use crate::geometry::Line;
use crate::quaternion::{Quaternion, QuaternionAlgebra};
use crate::semilinear::{self, SemilinearMap};

/// A syntax or evaluation error at a character offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {}: {message}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl fmt::Display) -> Self {
        Self {
            pos,
            message: message.to_string(),
        }
    }
}

type Result<T> = std::result::Result<T, ParseError>;

/// Arithmetic used by the expression evaluator.
trait Domain {
    type V: Clone;
    fn number(&self, n: &BigInt) -> Self::V;
    fn name(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V, pos: usize) -> Result<Self::V>;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn one(&self) -> Self::V;
}

struct FieldDomain<'a>(&'a FieldConfig);

impl Domain for FieldDomain<'_> {
    type V = FieldElem;

    fn number(&self, n: &BigInt) -> FieldElem {
        self.0.from_bigint(n)
    }

    fn name(&self, name: &str, pos: usize) -> Result<FieldElem> {
        let f = self.0;
        match (name, f.kind()) {
            ("s", FieldKind::QuadExt(_)) => Ok(f
                .quad(
                    Rational::from_integer(0.into()),
                    Rational::from_integer(1.into()),
                )
                .expect("quadratic field")),
            ("t", FieldKind::F2TU) => Ok(FieldElem::from(F2Poly::t())),
            ("u", FieldKind::F2TU) => Ok(FieldElem::from(F2Poly::u())),
            _ => Err(ParseError::new(
                pos,
                format!("unknown name `{name}` in field {f}"),
            )),
        }
    }

    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a + b
    }

    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a - b
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a * b
    }

    fn div(&self, a: &FieldElem, b: &FieldElem, pos: usize) -> Result<FieldElem> {
        a.checked_div(b).map_err(|e| ParseError::new(pos, e))
    }

    fn neg(&self, a: &FieldElem) -> FieldElem {
        -a
    }

    fn one(&self) -> FieldElem {
        self.0.one()
    }
}

struct QuatDomain<'a>(&'a QuaternionAlgebra);

impl Domain for QuatDomain<'_> {
    type V = Quaternion;

    fn number(&self, n: &BigInt) -> Quaternion {
        Quaternion::scalar(self.0.field().from_bigint(n))
    }

    fn name(&self, name: &str, pos: usize) -> Result<Quaternion> {
        match name {
            "i" => Ok(self.0.basis(1)),
            "j" => Ok(self.0.basis(2)),
            "k" => Ok(self.0.basis(3)),
            _ => FieldDomain(self.0.field())
                .name(name, pos)
                .map(Quaternion::scalar),
        }
    }

    fn add(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a.add(b)
    }

    fn sub(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a.sub(b)
    }

    fn mul(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        self.0.mul(a, b)
    }

    fn div(&self, a: &Quaternion, b: &Quaternion, pos: usize) -> Result<Quaternion> {
        if !b.is_scalar() {
            return Err(ParseError::new(pos, "can only divide by field elements"));
        }
        let inv = b.coord(0).inv().map_err(|e| ParseError::new(pos, e))?;
        Ok(a.scale(&inv))
    }

    fn neg(&self, a: &Quaternion) -> Quaternion {
        a.neg()
    }

    fn one(&self) -> Quaternion {
        self.0.one()
    }
}

/// A cursor over an input string; each method consumes one syntactic item.
pub struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub fn error(&self, message: impl fmt::Display) -> ParseError {
        ParseError::new(self.pos, message)
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !f(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    /// A word of letters, digits, `-`, `_` and `?`, such as a query verb.
    pub fn word(&mut self) -> Result<&'a str> {
        let w = self.take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '?'));
        if w.is_empty() {
            Err(self.error("expected a word"))
        } else {
            Ok(w)
        }
    }

    fn name(&mut self) -> &'a str {
        self.take_while(|c| c.is_ascii_alphabetic() || c == '_')
    }

    fn expr<D: Domain>(&mut self, d: &D) -> Result<D::V> {
        let mut acc = self.term(d)?;
        loop {
            if self.eat('+') {
                acc = d.add(&acc, &self.term(d)?);
            } else if self.eat('-') {
                acc = d.sub(&acc, &self.term(d)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<D: Domain>(&mut self, d: &D) -> Result<D::V> {
        let mut acc = self.unary(d)?;
        loop {
            if self.eat('*') {
                acc = d.mul(&acc, &self.unary(d)?);
            } else if self.peek() == Some('/') {
                let pos = self.pos;
                self.pos += 1;
                acc = d.div(&acc, &self.unary(d)?, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<D: Domain>(&mut self, d: &D) -> Result<D::V> {
        if self.eat('-') {
            Ok(d.neg(&self.unary(d)?))
        } else {
            self.power(d)
        }
    }

    fn power<D: Domain>(&mut self, d: &D) -> Result<D::V> {
        let base = self.atom(d)?;
        if !self.eat('^') {
            return Ok(base);
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        let e: u32 = digits
            .parse()
            .map_err(|_| self.error("expected a small exponent"))?;
        Ok((0..e).fold(d.one(), |acc, _| d.mul(&acc, &base)))
    }

    fn atom<D: Domain>(&mut self, d: &D) -> Result<D::V> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr(d)?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(d.number(&n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let pos = self.pos;
                let name = self.name();
                d.name(name, pos)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    pub fn field_elem(&mut self, field: &FieldConfig) -> Result<FieldElem> {
        self.expr(&FieldDomain(field))
    }

    pub fn quaternion(&mut self, alg: &QuaternionAlgebra) -> Result<Quaternion> {
        self.expr(&QuatDomain(alg))
    }

    pub fn line(&mut self, alg: &QuaternionAlgebra) -> Result<Line> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.name() != "span" {
            self.pos = start;
            return Err(self.error("expected `span(...; ...)`"));
        }
        self.expect('(')?;
        let x = self.quaternion(alg)?;
        self.expect(';')?;
        let y = self.quaternion(alg)?;
        self.expect(')')?;
        Line::span(&x, &y).map_err(|e| ParseError::new(start, e))
    }

    pub fn line_list(&mut self, alg: &QuaternionAlgebra) -> Result<Vec<Line>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.line(alg)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn map_factor(&mut self, alg: &QuaternionAlgebra) -> Result<SemilinearMap> {
        self.skip_ws();
        let start = self.pos;
        let name = self.name();
        let at = |e: semilinear::MapError| ParseError::new(start, e);
        let arg = |p: &mut Self| -> Result<Quaternion> {
            p.expect('(')?;
            let q = p.quaternion(alg)?;
            p.expect(')')?;
            Ok(q)
        };
        match name {
            "inner" => semilinear::inner(alg, &arg(self)?).map_err(at),
            "ltrans" => semilinear::left_translation(alg, &arg(self)?).map_err(at),
            "rtrans" => semilinear::right_translation(alg, &arg(self)?).map_err(at),
            "conj" => Ok(semilinear::conjugation(alg)),
            "galois" => semilinear::galois_outer(alg).map_err(at),
            "" => Err(self.error("expected a map")),
            other => Err(ParseError::new(start, format!("unknown map `{other}`"))),
        }
    }

    pub fn map(&mut self, alg: &QuaternionAlgebra) -> Result<SemilinearMap> {
        let mut acc = self.map_factor(alg)?;
        while self.eat('.') {
            acc = acc.compose(&self.map_factor(alg)?);
        }
        Ok(acc)
    }
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(src);
    let v = f(&mut p)?;
    p.expect_end()?;
    Ok(v)
}

pub fn parse_field_elem(field: &FieldConfig, src: &str) -> Result<FieldElem> {
    whole(src, |p| p.field_elem(field))
}

pub fn parse_quaternion(alg: &QuaternionAlgebra, src: &str) -> Result<Quaternion> {
    whole(src, |p| p.quaternion(alg))
}

pub fn parse_line(alg: &QuaternionAlgebra, src: &str) -> Result<Line> {
    whole(src, |p| p.line(alg))
}

pub fn parse_line_list(alg: &QuaternionAlgebra, src: &str) -> Result<Vec<Line>> {
    whole(src, |p| p.line_list(alg))
}

pub fn parse_map(alg: &QuaternionAlgebra, src: &str) -> Result<SemilinearMap> {
    whole(src, |p| p.map(alg))
}
