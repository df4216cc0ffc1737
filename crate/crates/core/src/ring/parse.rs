//! Recursive-descent parser for polynomial expressions.
//!
//! Accepted syntax: integer and fraction literals (`3`, `3/2`), identifiers,
//! unary minus, binary `+ - *`, `^` followed by a non-negative integer
//! literal, and parentheses. Juxtaposition is not multiplication and `/` is
//! only legal inside a fraction literal.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable(String),
    NegativeExponent,
    NonIntegerExponent,
    ExponentTooLarge,
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {}", describe(.kind))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    use alloc::format;
    match kind {
        ParseErrorKind::UnexpectedChar(c) => format!("unexpected character {c:?}"),
        ParseErrorKind::UnexpectedToken(t) => format!("unexpected {t}"),
        ParseErrorKind::UnexpectedEnd => "unexpected end of input".to_string(),
        ParseErrorKind::UnknownVariable(v) => format!("unknown variable {v:?}"),
        ParseErrorKind::NegativeExponent => "negative exponent".to_string(),
        ParseErrorKind::NonIntegerExponent => "non-integer exponent".to_string(),
        ParseErrorKind::ExponentTooLarge => "exponent too large".to_string(),
        ParseErrorKind::ZeroDenominator => "zero denominator".to_string(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(i) => alloc::format!("number {i}"),
            Tok::Ident(s) => alloc::format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut advance = |c: char| {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            advance(c);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                advance(d);
            }
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                ident.push(d);
                chars.next();
                advance(d);
            }
            Tok::Ident(ident)
        } else {
            chars.next();
            advance(c);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        kind: ParseErrorKind::UnexpectedChar(other),
                    })
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a, S> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Tok::End => self.error_here(ParseErrorKind::UnexpectedEnd),
            t => self.error_here(ParseErrorKind::UnexpectedToken(t.describe())),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exponent = match self.peek().clone() {
            Tok::Int(e) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    return Err(self.error_here(ParseErrorKind::NonIntegerExponent));
                }
                e
            }
            Tok::Minus => return Err(self.error_here(ParseErrorKind::NegativeExponent)),
            Tok::End => return Err(self.error_here(ParseErrorKind::UnexpectedEnd)),
            _ => return Err(self.error_here(ParseErrorKind::NonIntegerExponent)),
        };
        if *self.peek() == Tok::Caret {
            return Err(self.unexpected());
        }
        let e = exponent
            .to_u32()
            .filter(|&e| e <= 4096)
            .ok_or_else(|| self.error_here(ParseErrorKind::ExponentTooLarge))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().clone() {
            Tok::Int(numer) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Int(denom) = self.peek().clone() else {
                        return Err(self.unexpected());
                    };
                    if denom.is_zero() {
                        return Err(self.error_here(ParseErrorKind::ZeroDenominator));
                    }
                    self.bump();
                    return Ok(Poly::constant(self.nvars(), Rational::new(numer, denom)));
                }
                Ok(Poly::constant(self.nvars(), Rational::from_integer(numer)))
            }
            Tok::Ident(name) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| v.as_ref() == name)
                    .ok_or_else(|| self.error_here(ParseErrorKind::UnknownVariable(name.clone())))?;
                self.bump();
                Ok(Poly::var(self.nvars(), idx))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses `text` as a polynomial in the ordered variable list `vars`.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Poly, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected());
    }
    Ok(out)
}

/// Parses a constant expression with no variables, e.g. `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let vars: [&str; 0] = [];
    let p = parse_poly(text, &vars)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    const V: [&str; 2] = ["x1", "x2"];

    #[test]
    fn two_term_polynomial() {
        let p = parse_poly("x1*x2^2 - 3/2", &V).unwrap();
        let expected = &(&Poly::var(2, 0) * &Poly::var(2, 1).pow(2)) - &Poly::constant(2, rat(3, 2));
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn cancellation_to_zero() {
        assert!(parse_poly("x1 - x1", &V).unwrap().is_zero());
    }

    #[test]
    fn unknown_variable() {
        let e = parse_poly("x3", &V).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("x3".into()));
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn exponent_errors() {
        assert_eq!(
            parse_poly("x1^-1", &V).unwrap_err().kind,
            ParseErrorKind::NegativeExponent
        );
        assert_eq!(
            parse_poly("x1^1/2", &V).unwrap_err().kind,
            ParseErrorKind::NonIntegerExponent
        );
        assert_eq!(
            parse_poly("x1^x2", &V).unwrap_err().kind,
            ParseErrorKind::NonIntegerExponent
        );
    }

    #[test]
    fn grammar_edges() {
        // juxtaposition is rejected
        assert!(parse_poly("2x1", &V).is_err());
        assert!(parse_poly("x1 x2", &V).is_err());
        // division outside a literal is rejected
        assert!(parse_poly("x1/2", &V).is_err());
        assert!(parse_poly("(x1 + 1", &V).is_err());
        assert!(parse_poly("", &V).is_err());
        assert_eq!(
            parse_poly("1/0", &V).unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert_eq!(
            parse_poly("-(x1 + 1)^2", &V).unwrap(),
            -(&Poly::var(2, 0) + &Poly::one(2)).pow(2)
        );
        assert_eq!(
            parse_poly(" 2 *\n x2 ", &V).unwrap(),
            Poly::var(2, 1).scale(&int(2))
        );
        let e = parse_poly("x1 +\n  $", &V).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("x").is_err());
    }
}
