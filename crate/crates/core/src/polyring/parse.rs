//! Polynomial text syntax.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*      juxtaposition means '*'
//! factor := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')'
//! ```
//! Division is only allowed by nonzero constants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Polynomial, RingContext};
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = cs[start..i].iter().collect();
                out.push(Tok::Num(text.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Arc<RingContext>,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn constant(&self, n: BigInt) -> Result<Polynomial<F>> {
        let q = Rational::from_big(BigRational::from_integer(n));
        let c = F::from_rational(&q).ok_or_else(|| Error::Parse("constant not representable".into()))?;
        Ok(Polynomial::constant(self.ring, c))
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse("division only by nonzero constants".into()));
                    }
                    acc = acc.div_constant(&d.terms()[0].coeff)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    if e > u16::MAX as u32 {
                        return Err(Error::Parse("exponent too large".into()));
                    }
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected a non-negative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.next() {
            Some(Tok::Num(n)) => self.constant(n),
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Polynomial::var(self.ring, i),
                None => Err(Error::Parse(format!("unknown variable `{name}`"))),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_polynomial<F: Field>(ring: &Arc<RingContext>, s: &str) -> Result<Polynomial<F>> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0, ring, _f: std::marker::PhantomData };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}
