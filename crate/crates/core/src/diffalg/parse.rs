//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := base ("^" uint)?
//! base   := rational | "G" | var | "(" expr ")"
//! var    := "t" uint? | "k" uint?
//! ```
//!
//! `t`/`t0` is the generator itself and `tN` its N-th derivative; `k` plays the
//! same role for the curvature generator. Whitespace is insignificant.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::coefficient::{Coefficient, Rational};
use super::poly::{DiffPoly, Generator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Expected(&'static str),
    UnknownSymbol(String),
    /// A variable of the other generator appeared.
    WrongGenerator(char),
    ZeroDenominator,
    NumberTooLarge,
    TrailingInput,
}

/// Syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Expected(what) => {
                write!(f, "syntax error at offset {}: expected {what}", self.offset)
            }
            ParseErrorKind::UnknownSymbol(s) => {
                write!(f, "unknown symbol `{s}` at offset {}", self.offset)
            }
            ParseErrorKind::WrongGenerator(c) => write!(
                f,
                "variable `{c}` at offset {} belongs to a different generator",
                self.offset
            ),
            ParseErrorKind::ZeroDenominator => {
                write!(f, "zero denominator at offset {}", self.offset)
            }
            ParseErrorKind::NumberTooLarge => {
                write!(f, "number too large at offset {}", self.offset)
            }
            ParseErrorKind::TrailingInput => {
                write!(f, "syntax error at offset {}: unexpected input", self.offset)
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses `text` over the given generator.
pub fn parse(text: &str, generator: Generator) -> Result<DiffPoly, ParseError> {
    Parser::new(text, Some(generator)).run()
}

/// Parses `text`, taking the generator from the first variable seen
/// (`Tau` when the expression has no variables).
pub fn parse_any(text: &str) -> Result<DiffPoly, ParseError> {
    Parser::new(text, None).run()
}

/// Cursor over the input bytes.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    generator: Option<Generator>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, generator: Option<Generator>) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
            generator,
        }
    }

    fn run(mut self) -> Result<DiffPoly, ParseError> {
        let value = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error(ParseErrorKind::TrailingInput));
        }
        let generator = self.generator.unwrap_or(Generator::Tau);
        Ok(value.with_generator(generator))
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
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

    // Values are built over Tau and relabelled at the end, so generator
    // checks happen on variable names only.
    fn expr(&mut self) -> Result<DiffPoly, ParseError> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffPoly, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let exp = self.uint("exponent")?;
            let exp = u32::try_from(exp).map_err(|_| self.error(ParseErrorKind::NumberTooLarge))?;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<DiffPoly, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.error(ParseErrorKind::Expected("term")));
        };
        match c {
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error(ParseErrorKind::Expected("`)`")));
                }
                Ok(inner)
            }
            b'0'..=b'9' => {
                let num = self.big_uint()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.big_uint()?;
                    if den.is_zero() {
                        return Err(ParseError {
                            offset: at,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    Ok(DiffPoly::constant(
                        Generator::Tau,
                        Coefficient::from_rational(Rational::new(num, den)),
                    ))
                } else {
                    Ok(DiffPoly::constant(
                        Generator::Tau,
                        Coefficient::from_rational(Rational::from_integer(num)),
                    ))
                }
            }
            c if c.is_ascii_alphabetic() => self.symbol(),
            _ => Err(self.error(ParseErrorKind::Expected("term"))),
        }
    }

    fn symbol(&mut self) -> Result<DiffPoly, ParseError> {
        let start = self.pos;
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_alphabetic() {
            end += 1;
        }
        let word = std::str::from_utf8(&self.src[start..end]).expect("ascii");
        let generator = match word {
            "G" => {
                self.pos = end;
                return Ok(DiffPoly::g(Generator::Tau));
            }
            "t" => Generator::Tau,
            "k" => Generator::Kappa,
            _ => {
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::UnknownSymbol(word.to_string()),
                })
            }
        };
        match self.generator {
            Some(g) if g != generator => {
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::WrongGenerator(generator.letter()),
                })
            }
            _ => self.generator = Some(generator),
        }
        self.pos = end;
        let order = if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            let n = self.uint("derivative order")?;
            usize::try_from(n).map_err(|_| self.error(ParseErrorKind::NumberTooLarge))?
        } else {
            0
        };
        if order > 64 {
            return Err(ParseError {
                offset: start,
                kind: ParseErrorKind::NumberTooLarge,
            });
        }
        Ok(DiffPoly::var(Generator::Tau, order))
    }

    fn digits(&mut self, what: &'static str) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(ParseErrorKind::Expected(what)));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn uint(&mut self, what: &'static str) -> Result<u64, ParseError> {
        let start = self.pos;
        let s = self.digits(what)?;
        s.parse().map_err(|_| ParseError {
            offset: start,
            kind: ParseErrorKind::NumberTooLarge,
        })
    }

    fn big_uint(&mut self) -> Result<BigInt, ParseError> {
        let s = self.digits("number")?;
        Ok(s.parse().expect("digits parse as an integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(order: usize) -> DiffPoly {
        DiffPoly::var(Generator::Tau, order)
    }

    #[test]
    fn parses_burgers_flow() {
        let p = parse("t2 + 2*t*t1", Generator::Tau).unwrap();
        assert_eq!(p, t(2) + DiffPoly::from_int(Generator::Tau, 2) * t(0) * t(1));
    }

    #[test]
    fn parses_g_terms() {
        let p = parse("G*t1 + 3*t^2*t1", Generator::Tau).unwrap();
        let expected = (DiffPoly::g(Generator::Tau) + DiffPoly::from_int(Generator::Tau, 3) * t(0).pow(2)) * t(1);
        assert_eq!(p, expected);
        assert_eq!(parse("(G + 3*t0^2)*t1", Generator::Tau).unwrap(), expected);
    }

    #[test]
    fn dangling_operator_reports_offset() {
        let err = parse("t1 -", Generator::Tau).unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.kind, ParseErrorKind::Expected("term"));
        assert_eq!(err.to_string(), "syntax error at offset 4: expected term");
    }

    #[test]
    fn unknown_symbols_and_wrong_generator() {
        let err = parse("t + x1", Generator::Tau).unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.kind, ParseErrorKind::UnknownSymbol("x".into()));
        let err = parse("k2 + t", Generator::Kappa).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::WrongGenerator('t'));
        assert_eq!(err.offset, 5);
        assert!(parse("1/0", Generator::Tau).is_err());
        assert!(parse("t)", Generator::Tau).is_err());
        assert!(parse("(t", Generator::Tau).is_err());
    }

    #[test]
    fn parse_any_detects_generator() {
        assert_eq!(parse_any("k3 + G*k1").unwrap().generator(), Generator::Kappa);
        assert_eq!(parse_any("2").unwrap().generator(), Generator::Tau);
        assert!(parse_any("k + t").is_err());
    }

    #[test]
    fn leading_sign_and_fractions() {
        let p = parse("-3/2*t + 1/2", Generator::Tau).unwrap();
        assert_eq!(p.to_string(), "1/2 - 3/2*t");
    }
}
