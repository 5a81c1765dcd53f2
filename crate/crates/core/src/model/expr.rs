//! Recursive-descent evaluation of arithmetic expressions.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("-" | "+") unary | power
//! power := atom ("^" exponent)*
//! atom  := INT | ID derivative? | "(" expr ")"
//! ```
//!
//! Identifiers are resolved by the caller, which also decides whether the
//! derivative suffixes `'` and `^(k)` are allowed.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::lexer::{error_at, Tok, Token};
use crate::arith::{Field, Rat, RatFun};
use crate::diff::DiffPoly;
use crate::error::{ParseError, ParseErrorKind};

pub trait ExprValue: Clone {
    fn from_int(n: &BigInt) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn pow(&self, k: u32) -> Self;
    fn try_div(&self, rhs: &Self) -> Result<Self, String>;
}

impl ExprValue for RatFun {
    fn from_int(n: &BigInt) -> Self {
        RatFun::constant(Rat::from_integer(n.clone()))
    }
    fn add(&self, rhs: &Self) -> Self {
        Field::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Field::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Field::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Field::neg(self)
    }
    fn pow(&self, k: u32) -> Self {
        RatFun::pow(self, k)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, String> {
        if rhs.is_zero() {
            Err("division by zero".into())
        } else {
            Ok(Field::div(self, rhs))
        }
    }
}

impl ExprValue for DiffPoly {
    fn from_int(n: &BigInt) -> Self {
        DiffPoly::constant(<RatFun as ExprValue>::from_int(n))
    }
    fn add(&self, rhs: &Self) -> Self {
        DiffPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        DiffPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        DiffPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        DiffPoly::neg(self)
    }
    fn pow(&self, k: u32) -> Self {
        DiffPoly::pow(self, k)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, String> {
        match rhs.constant_value() {
            Some(c) if !c.is_zero() => Ok(self.scale(&c.inv())),
            Some(_) => Err("division by zero".into()),
            None if rhs.is_zero() => Err("division by zero".into()),
            None => Err("division by a non-constant differential polynomial".into()),
        }
    }
}

/// How an identifier occurrence was written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    /// Derivative order from `'` marks or `^(k)`; 0 when absent.
    pub order: u32,
    pub has_suffix: bool,
}

pub struct ExprParser<'t, F> {
    toks: &'t [Token],
    pos: usize,
    resolve: F,
    derivative_caret: bool,
}

impl<'t, V, F> ExprParser<'t, F>
where
    V: ExprValue,
    F: FnMut(&str, Occurrence) -> Result<V, ParseErrorKind>,
{
    /// `derivative_caret` makes `ID^(k)` a k-th derivative instead of a power.
    pub fn new(toks: &'t [Token], pos: usize, resolve: F, derivative_caret: bool) -> Self {
        ExprParser {
            toks,
            pos,
            resolve,
            derivative_caret,
        }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        error_at(self.peek(), ParseErrorKind::Syntax(msg.into()))
    }

    pub fn expr(&mut self) -> Result<V, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<V, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    let at = self.bump().clone();
                    let rhs = self.unary()?;
                    acc = acc
                        .try_div(&rhs)
                        .map_err(|m| error_at(&at, ParseErrorKind::Syntax(m)))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<V, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<V, ParseError> {
        let mut base = self.atom()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            let k = self.exponent()?;
            base = base.pow(k);
        }
        Ok(base)
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                n.to_u32()
                    .ok_or_else(|| error_at(&t, ParseErrorKind::Syntax("exponent too large".into())))
            }
            _ => Err(self.syntax("expected a non-negative integer")),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek().tok == Tok::LParen {
            self.bump();
            let k = self.small_int()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(k)
        } else {
            self.small_int()
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn atom(&mut self) -> Result<V, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(V::from_int(n))
            }
            Tok::LParen => {
                self.bump();
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Tok::Ident(name) => {
                self.bump();
                let mut occ = Occurrence {
                    order: 0,
                    has_suffix: false,
                };
                while self.peek().tok == Tok::Prime {
                    self.bump();
                    occ.order += 1;
                    occ.has_suffix = true;
                }
                if !occ.has_suffix
                    && self.derivative_caret
                    && self.peek().tok == Tok::Caret
                    && *self.peek_at(1) == Tok::LParen
                {
                    self.bump();
                    self.bump();
                    occ.order = self.small_int()?;
                    occ.has_suffix = true;
                    self.expect(Tok::RParen, "`)`")?;
                }
                (self.resolve)(name, occ).map_err(|k| error_at(&t, k))
            }
            Tok::Eof | Tok::Newline => Err(self.syntax("unexpected end of expression")),
            other => Err(self.syntax(format!("unexpected token {other:?}"))),
        }
    }
}
