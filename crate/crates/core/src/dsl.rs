//! Text syntax for order expressions and their elements.
//!
//! ```text
//! expr := fin(nat) | omega | rationals | rev(expr) | sum(expr, expr)
//!       | lexq(ord) | kurepa(ord; ord, ...) | dup(expr; elem, ...)
//! ord  := nat | w.nat | w.nat+nat
//! ```
//!
//! Whitespace between tokens is ignored and keywords are case-insensitive.
//! Elements are read against the expression they belong to: naturals for
//! `fin` and `omega`, `p/q` for `rationals`, the inner syntax for `rev`,
//! `l(x)` and `r(x)` for `sum`, `{coord:p/q, ...}` or `y(ord)` for `lexq` and
//! `kurepa`, and `minus(x)`, `plus(x)` or a bare `x` for `dup`.

use std::fmt;

use thiserror::Error;

use crate::kurepa::{FinSuppVec, KurepaPoint};
use crate::order::{self, Element, Half, OrderExpr};
use crate::ordinal::OrdCode;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse_expr(text: &str) -> Result<OrderExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Reads an element of `e`; it must inhabit `e`.
pub fn parse_element(e: &OrderExpr, text: &str) -> Result<Element, ParseError> {
    let mut p = Parser::new(text);
    let start = p.pos;
    let a = p.element(e)?;
    p.finish()?;
    if !e.inhabits(&a) {
        return Err(p.error_at(start, format!("`{a}` is not an element of {e}")));
    }
    Ok(a)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        ParseError {
            line,
            column: before[line_start..].chars().count() + 1,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}` after the end"))),
        }
    }

    /// A lowercased identifier, or `None` (consuming nothing) if there is none.
    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        let word = self.rest()[..len].to_ascii_lowercase();
        self.pos += len;
        Some(word)
    }

    fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        let d = &self.rest()[..len];
        self.pos += len;
        d
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return Err(self.error("expected a natural number"));
        }
        d.parse().map_err(|_| self.error_at(start, "number out of range"))
    }

    fn ord(&mut self) -> Result<OrdCode, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(OrdCode::finite(self.nat()?));
        }
        match self.ident().as_deref() {
            Some("w") => {}
            _ => return Err(self.error_at(start, "expected an ordinal: `n`, `w.a` or `w.a+b`")),
        }
        self.expect('.')?;
        let a = self.nat()?;
        let b = if self.eat('+') { self.nat()? } else { 0 };
        Ok(OrdCode::new(a, b))
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut token = String::new();
        if let Some(sign) = self.peek().filter(|c| *c == '-' || *c == '+') {
            self.pos += 1;
            token.push(sign);
        }
        token.push_str(self.digits());
        if self.eat('/') {
            token.push('/');
            token.push_str(self.digits());
        }
        rational::parse(&token).map_err(|_| self.error_at(start, "expected a rational `p` or `p/q`"))
    }

    fn list<T>(
        &mut self,
        close: char,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn expr(&mut self) -> Result<OrderExpr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(word) = self.ident() else {
            return Err(self.error("expected an order expression"));
        };
        let e = match word.as_str() {
            "omega" => return Ok(OrderExpr::Omega),
            "rationals" => return Ok(OrderExpr::Rationals),
            "fin" => {
                self.expect('(')?;
                let n = self.nat()?;
                self.expect(')')?;
                OrderExpr::Fin(n)
            }
            "rev" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                OrderExpr::rev(inner)
            }
            "sum" => {
                self.expect('(')?;
                let lower = self.expr()?;
                self.expect(',')?;
                let upper = self.expr()?;
                self.expect(')')?;
                OrderExpr::sum(lower, upper)
            }
            "lexq" => {
                self.expect('(')?;
                let kappa = self.ord()?;
                self.expect(')')?;
                OrderExpr::LexQ(kappa)
            }
            "kurepa" => {
                self.expect('(')?;
                let kappa = self.ord()?;
                self.expect(';')?;
                let fillers = self.list(')', |p| {
                    p.skip_ws();
                    let at = p.pos;
                    let d = p.ord()?;
                    if d.is_limit() && d < kappa {
                        Ok(d)
                    } else {
                        Err(p.error_at(at, format!("filler index {d} must be a limit below {kappa}")))
                    }
                })?;
                OrderExpr::kurepa(kappa, fillers).map_err(|e| self.error_at(start, e.to_string()))?
            }
            "dup" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(';')?;
                let points = self.list(')', |p| {
                    p.skip_ws();
                    let at = p.pos;
                    let a = p.element(&inner)?;
                    if inner.inhabits(&a) {
                        Ok(a)
                    } else {
                        Err(p.error_at(at, format!("`{a}` is not an element of {inner}")))
                    }
                })?;
                order::duplicate(&inner, points).map_err(|e| self.error_at(start, e.to_string()))?
            }
            other => return Err(self.error_at(start, format!("unknown order `{other}`"))),
        };
        Ok(e)
    }

    fn wrapped(&mut self, e: &OrderExpr) -> Result<Element, ParseError> {
        self.expect('(')?;
        let a = self.element(e)?;
        self.expect(')')?;
        Ok(a)
    }

    fn element(&mut self, e: &OrderExpr) -> Result<Element, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match e {
            OrderExpr::Fin(_) => Ok(Element::Index(self.nat()?)),
            OrderExpr::Omega => Ok(Element::Nat(self.nat()?)),
            OrderExpr::Rationals => Ok(Element::Rat(self.rational()?)),
            OrderExpr::Rev(inner) => Ok(Element::Rev(Box::new(self.element(inner)?))),
            OrderExpr::Sum(l, u) => match self.ident().as_deref() {
                Some("l") => Ok(Element::Lower(Box::new(self.wrapped(l)?))),
                Some("r") => Ok(Element::Upper(Box::new(self.wrapped(u)?))),
                _ => Err(self.error_at(start, "expected `l(...)` or `r(...)`")),
            },
            OrderExpr::LexQ(_) | OrderExpr::KurepaX { .. } => Ok(Element::Point(self.point()?)),
            OrderExpr::Dup { inner, .. } => {
                let half = match self.ident().as_deref() {
                    Some("minus") => Some(Half::Minus),
                    Some("plus") => Some(Half::Plus),
                    _ => None,
                };
                if let Some(half) = half {
                    // `minus(x)` may also be a bare element of a nested duplication;
                    // membership tells the readings apart
                    if let Ok(x) = self.wrapped(inner) {
                        let a = Element::Dup(Box::new(x), Some(half));
                        if e.inhabits(&a) {
                            return Ok(a);
                        }
                    }
                }
                self.pos = start;
                Ok(Element::Dup(Box::new(self.element(inner)?), None))
            }
        }
    }

    fn point(&mut self) -> Result<KurepaPoint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('{') {
            let mut v = FinSuppVec::zero();
            let mut seen = Vec::new();
            self.list('}', |p| {
                p.skip_ws();
                let at = p.pos;
                let k = p.ord()?;
                p.expect(':')?;
                let q = p.rational()?;
                if seen.contains(&k) {
                    return Err(p.error_at(at, format!("coordinate {k} repeated")));
                }
                seen.push(k);
                v.set(k, q);
                Ok(())
            })?;
            return Ok(KurepaPoint::Vec(v));
        }
        match self.ident().as_deref() {
            Some("y") => {
                self.expect('(')?;
                let at = self.pos;
                let delta = self.ord()?;
                self.expect(')')?;
                KurepaPoint::y(delta).map_err(|e| self.error_at(at, e.to_string()))
            }
            _ => Err(self.error_at(start, "expected a point `{coord:value, ...}` or `y(ord)`")),
        }
    }
}

impl fmt::Display for OrderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderExpr::Fin(n) => write!(f, "fin({n})"),
            OrderExpr::Omega => f.write_str("omega"),
            OrderExpr::Rationals => f.write_str("rationals"),
            OrderExpr::Rev(inner) => write!(f, "rev({inner})"),
            OrderExpr::Sum(l, u) => write!(f, "sum({l}, {u})"),
            OrderExpr::LexQ(kappa) => write!(f, "lexq({kappa})"),
            OrderExpr::KurepaX { kappa, fillers } => {
                write!(f, "kurepa({kappa};")?;
                write_list(f, fillers)?;
                f.write_str(")")
            }
            OrderExpr::Dup { inner, points } => {
                write!(f, "dup({inner};")?;
                write_list(f, points)?;
                f.write_str(")")
            }
        }
    }
}

fn write_list<'a, T: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    items: impl IntoIterator<Item = &'a T>,
) -> fmt::Result {
    for (i, x) in items.into_iter().enumerate() {
        f.write_str(if i == 0 { " " } else { ", " })?;
        x.fmt(f)?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) | Element::Nat(i) => write!(f, "{i}"),
            Element::Rat(q) => f.write_str(&rational::format(q)),
            Element::Rev(x) => x.fmt(f),
            Element::Lower(x) => write!(f, "l({x})"),
            Element::Upper(x) => write!(f, "r({x})"),
            Element::Point(p) => p.fmt(f),
            Element::Dup(x, None) => x.fmt(f),
            Element::Dup(x, Some(Half::Minus)) => write!(f, "minus({x})"),
            Element::Dup(x, Some(Half::Plus)) => write!(f, "plus({x})"),
        }
    }
}
