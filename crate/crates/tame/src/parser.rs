//! Recursive-descent parser for polynomials, derivations and endomorphisms.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*        divisors must be nonzero constants
//! unary  := '-' unary | factor
//! factor := base ('^' nat)?
//! base   := nat | 'X' | 'Y' | 'E' '(' rational ')' | '(' poly ')'
//! ```
//!
//! Derivations are written `dX = <poly> ; dY = <poly>`, endomorphisms
//! `X -> <poly> ; Y -> <poly>` or `(<poly> ; <poly>)`.

use num_bigint::BigInt;
use tame_core::scalars::Rational;
use tame_core::{exp_symbol, Derivation, Endomorphism, Operator, Poly2, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("non-rational literal `{literal}` at position {pos}")]
    NonRationalLiteral { pos: usize, literal: String },
    #[error("unknown symbol `{symbol}` at position {pos}")]
    UnknownSymbol { pos: usize, symbol: String },
}

pub type Result<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Poly,
    Derivation,
    Endomorphism,
}

/// Any parsed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(Poly2),
    Derivation(Derivation),
    Endomorphism(Endomorphism),
}

pub fn parse(text: &str, kind: Kind) -> Result<Value> {
    Ok(match kind {
        Kind::Poly => Value::Poly(parse_poly(text)?),
        Kind::Derivation => Value::Derivation(parse_derivation(text)?),
        Kind::Endomorphism => Value::Endomorphism(parse_endomorphism(text)?),
    })
}

pub fn parse_poly(text: &str) -> Result<Poly2> {
    let mut p = Parser::new(text);
    let v = p.poly()?;
    p.finish()?;
    Ok(v)
}

pub fn parse_derivation(text: &str) -> Result<Derivation> {
    let mut p = Parser::new(text);
    p.keyword("dX")?;
    p.expect('=')?;
    let dx = p.poly()?;
    p.expect(';')?;
    p.keyword("dY")?;
    p.expect('=')?;
    let dy = p.poly()?;
    p.finish()?;
    Ok(Derivation::new(dx, dy))
}

pub fn parse_endomorphism(text: &str) -> Result<Endomorphism> {
    let mut p = Parser::new(text);
    if p.peek() == Some('(') && text.contains(';') && !text.contains("->") {
        p.expect('(')?;
        let ix = p.poly()?;
        p.expect(';')?;
        let iy = p.poly()?;
        p.expect(')')?;
        p.finish()?;
        return Ok(Endomorphism::new(ix, iy));
    }
    p.keyword("X")?;
    p.arrow()?;
    let ix = p.poly()?;
    p.expect(';')?;
    p.keyword("Y")?;
    p.arrow()?;
    let iy = p.poly()?;
    p.finish()?;
    Ok(Endomorphism::new(ix, iy))
}

/// A derivation if the text starts with `dX`, an endomorphism otherwise.
pub fn parse_operator(text: &str) -> Result<Operator> {
    if text.trim_start().starts_with("dX") {
        parse_derivation(text).map(Operator::Derivation)
    } else {
        parse_endomorphism(text).map(Operator::Endomorphism)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn syntax<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        Err(ParseError::Syntax { pos, message: message.into() })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => self.syntax(at, format!("expected `{want}`, found `{c}`")),
            None => self.syntax(at, format!("expected `{want}`, found end of input")),
        }
    }

    fn arrow(&mut self) -> Result<()> {
        let at = self.offset();
        if self.src[at..].starts_with("->") {
            self.pos = at + 2;
            Ok(())
        } else {
            self.syntax(at, "expected `->`")
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let at = self.offset();
        if self.src[at..].starts_with(word) {
            self.pos = at + word.len();
            Ok(())
        } else {
            self.syntax(at, format!("expected `{word}`"))
        }
    }

    /// Position of the next non-blank character.
    fn offset(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn finish(&mut self) -> Result<()> {
        let at = self.offset();
        match self.peek() {
            None => Ok(()),
            Some(c) => self.syntax(at, format!("unexpected `{c}`")),
        }
    }

    fn poly(&mut self) -> Result<Poly2> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    let Some(c) = d.as_constant() else { return self.syntax(at, "divisor must be a constant") };
                    let Ok(inv) = c.inv() else { return self.syntax(at, "division by zero") };
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly2> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Poly2> {
        let base = self.base()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                let Ok(n) = u32::try_from(&n) else { return self.syntax(at, "exponent too large") };
                Ok(base.pow(n))
            }
            _ => self.syntax(at, "exponent must be a natural number"),
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        let start = self.offset();
        let digits = self.src[start..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return self.syntax(start, "expected a number");
        }
        self.pos = start + digits;
        let rest = &self.src[self.pos..];
        if rest.starts_with('.') || rest.starts_with(['e', 'E']) && rest[1..].starts_with(|c: char| c.is_ascii_digit()) {
            let len = rest.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '.').count();
            return Err(ParseError::NonRationalLiteral {
                pos: start,
                literal: self.src[start..self.pos + len].to_string(),
            });
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let at = self.offset();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let len = self.src[at..].chars().take_while(|c| *c != ')').count();
            return Err(ParseError::NonRationalLiteral { pos: at, literal: self.src[at..at + len].trim().to_string() });
        }
        let n = self.nat()?;
        let d = if self.peek() == Some('/') {
            self.bump();
            let at = self.offset();
            let d = self.nat()?;
            if d == BigInt::from(0) {
                return self.syntax(at, "zero denominator");
            }
            d
        } else {
            BigInt::from(1)
        };
        let q = Rational::new(n, d);
        Ok(if neg { -q } else { q })
    }

    fn base(&mut self) -> Result<Poly2> {
        let at = self.offset();
        match self.peek() {
            Some('(') => {
                self.bump();
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly2::constant(Scalar::from_rational(Rational::from_integer(self.nat()?)))),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let word: String = self.src[at..].chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
                match word.as_str() {
                    "X" => {
                        self.pos = at + 1;
                        Ok(Poly2::x())
                    }
                    "Y" => {
                        self.pos = at + 1;
                        Ok(Poly2::y())
                    }
                    "E" => {
                        self.pos = at + 1;
                        self.expect('(')?;
                        let q = self.rational()?;
                        self.expect(')')?;
                        Ok(Poly2::constant(exp_symbol(q)))
                    }
                    _ => Err(ParseError::UnknownSymbol { pos: at, symbol: word }),
                }
            }
            Some(c) => self.syntax(at, format!("unexpected `{c}`")),
            None => self.syntax(at, "unexpected end of input"),
        }
    }
}
