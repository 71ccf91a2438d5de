//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | variable | 'i' | '(' expr ')'
//! number := digits ('/' digits)?
//! ```
//!
//! Implicit multiplication (`2x`, `x y`) is rejected. The token `i` is the
//! imaginary unit in the Gaussian domain and an error in the rational one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{MultiPoly, Scalar, VarList};
use crate::poly::Domain;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable(String),
    ImaginaryUnitNotAllowed,
    ImplicitMultiplication,
    ZeroDenominator,
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {kind:?}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().expect("digits");
                let mut den = BigInt::from(1);
                if i < bytes.len() && bytes[i] == b'/' {
                    let ds = i + 1;
                    let mut j = ds;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == ds {
                        return Err(ParseError {
                            kind: ParseErrorKind::UnexpectedChar('/'),
                            position: i,
                        });
                    }
                    den = text[ds..j].parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            kind: ParseErrorKind::ZeroDenominator,
                            position: ds,
                        });
                    }
                    i = j;
                }
                out.push((Tok::Num(BigRational::new(num, den)), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                let ch = text[i..].chars().next().unwrap_or(other);
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    position: i,
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a VarList,
    domain: Domain,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.here(),
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(format!("{t:?}"))),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    return Err(self.err(ParseErrorKind::ImplicitMultiplication));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.err(ParseErrorKind::ExponentTooLarge))?;
                    if e > 4096 {
                        return Err(self.err(ParseErrorKind::ExponentTooLarge));
                    }
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.unexpected()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.vars.clone(), Scalar::from_rational(n)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    self.pos += 1;
                    return Ok(MultiPoly::var(self.vars.clone(), idx));
                }
                if name == "i" {
                    if self.domain != Domain::Gaussian {
                        return Err(self.err(ParseErrorKind::ImaginaryUnitNotAllowed));
                    }
                    self.pos += 1;
                    return Ok(MultiPoly::constant(self.vars.clone(), Scalar::i()));
                }
                Err(self.err(ParseErrorKind::UnknownVariable(name)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `text` over ℚ with the given variable order.
pub fn parse_poly(text: &str, vars: &VarList) -> Result<MultiPoly, ParseError> {
    parse_poly_in(text, vars, Domain::Rational)
}

/// Parses `text` over the requested exact domain.
pub fn parse_poly_in(text: &str, vars: &VarList, domain: Domain) -> Result<MultiPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
        domain,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(out)
}
