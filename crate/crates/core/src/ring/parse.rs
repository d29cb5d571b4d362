//! Polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'|'/'] power | power)*      juxtaposition multiplies
//! power  := atom ['^' integer]
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! In rings whose variables are all single letters, a run of letters such as
//! `ade` reads as `a*d*e`. Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::PolyRing;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
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

fn tokenize(text: &str, split_letters: bool) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().unwrap();
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                if split_letters {
                    out.push((start, Tok::Ident(c.to_string())));
                } else {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    out.push((start, Tok::Ident(text[start..i].to_string())));
                    continue;
                }
            }
            other => {
                return Err(Error::parse(
                    start,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn zero(&self) -> Polynomial {
        self.ring.zero()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.zero();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        acc = if negate {
            acc.sub(&first)
        } else {
            acc.add(&first)
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let (d, rational) = self.constant_power()?;
                    if rational == BigRational::from_integer(0.into()) {
                        return Err(Error::DivisionByZero);
                    }
                    if d.is_zero() {
                        return Err(Error::NotRepresentable {
                            value: format!("1/{rational}"),
                            field: self.ring.field.to_string(),
                        });
                    }
                    let c = d.leading_coeff().unwrap().inv();
                    acc = acc.scale(&c);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    /// A divisor: integer literal optionally raised to a power.
    fn constant_power(&mut self) -> Result<(Polynomial, BigRational)> {
        let at = self.offset();
        let base = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n
            }
            _ => {
                return Err(Error::parse(
                    at,
                    "division is only supported by integer constants",
                ))
            }
        };
        let exp = self.exponent()?;
        let value = BigRational::from_integer(num_traits::pow(base, exp as usize));
        let poly = match self.ring.field.from_rational(&value) {
            Ok(c) => self.ring.constant(c),
            Err(_) => self.zero(),
        };
        Ok((poly, value))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                u32::try_from(n).map_err(|_| Error::parse(at, "exponent too large"))
            }
            _ => Err(Error::parse(at, "expected a non-negative integer exponent")),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        let e = self.exponent()?;
        if e == 1 {
            return Ok(base);
        }
        if e == 0 {
            return Ok(self.ring.one());
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = self
                    .ring
                    .field
                    .from_rational(&BigRational::from_integer(n))?;
                Ok(self.ring.constant(c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let idx = self
                    .ring
                    .variables
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(Error::UnknownVariable(name))?;
                Ok(self.ring.monomial(Monomial::var(idx)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::parse(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_poly(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let split = ring.variables.iter().all(|v| v.chars().count() == 1);
    let toks = tokenize(text, split)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty input"));
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: text.len(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(poly)
}
