//! Element literals.
//!
//! ```text
//! expr  := ['+' | '-'] term (('+' | '-') term)*
//! term  := power (('*' | '/') power | power)*
//! power := atom ['^' exp]
//! exp   := ['-'] int | '(' ['-'] int ['/' int] ')'
//! atom  := int | 't' | 'i' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies with the precedence of `*`, so `3/4i` reads as
//! `(3/4)*i`. Fractional exponents are accepted only on `t` in `Hahn`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::coeff::Rational;
use super::element::{FieldElement, FieldId};
use super::hahn_series::HahnSeries;
use crate::error::{Error, Result};

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n: BigInt = s[start..k].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b't' => Tok::T,
            b'i' => Tok::I,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = s[k..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: k,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((k, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser {
    field: FieldId,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(&Tok::Minus) {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.checked_mul(&self.power()?)?;
            } else if self.eat(&Tok::Slash) {
                acc = acc.checked_div(&self.power()?)?;
            } else if matches!(
                self.peek(),
                Some(Tok::Int(_) | Tok::T | Tok::I | Tok::LParen)
            ) {
                acc = acc.checked_mul(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<FieldElement> {
        let is_t = self.peek() == Some(&Tok::T);
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        let e = self.exponent()?;
        if e.is_integer() {
            let n = e.to_integer().to_i64().filter(|n| n.abs() <= MAX_EXPONENT);
            let n = n.ok_or_else(|| Error::Syntax {
                offset: at,
                message: "exponent too large".into(),
            })?;
            return base.pow(n);
        }
        if is_t && self.field == FieldId::Hahn {
            return Ok(FieldElement::Hahn(HahnSeries::monomial(
                Rational::one(),
                e,
            )?));
        }
        Err(Error::Domain(format!(
            "fractional exponent not allowed in {}",
            self.field
        )))
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.syntax("expected integer exponent")),
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.eat(&Tok::LParen) {
            let p = self.signed_int()?;
            let q = if self.eat(&Tok::Slash) {
                match self.peek().cloned() {
                    Some(Tok::Int(q)) => {
                        self.pos += 1;
                        q
                    }
                    _ => return Err(self.syntax("expected exponent denominator")),
                }
            } else {
                BigInt::one()
            };
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            self.expect(&Tok::RParen, "')'")?;
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(self.signed_int()?))
        }
    }

    fn atom(&mut self) -> Result<FieldElement> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(FieldElement::from_rational(
                    self.field,
                    Rational::from_integer(n),
                ))
            }
            Some(Tok::T) => {
                self.pos += 1;
                FieldElement::t(self.field).map_err(|_| Error::Syntax {
                    offset: self.toks[self.pos - 1].0,
                    message: format!("'t' is not an element of {}", self.field),
                })
            }
            Some(Tok::I) => {
                self.pos += 1;
                FieldElement::i(self.field).map_err(|_| Error::Syntax {
                    offset: self.toks[self.pos - 1].0,
                    message: format!("'i' is not an element of {}", self.field),
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(v)
            }
            _ => Err(self.syntax("expected a number, 't', 'i' or '('")),
        }
    }
}

/// Parses a literal into the canonical element of `field`.
pub fn parse_element(field: FieldId, literal: &str) -> Result<FieldElement> {
    let toks = tokenize(literal)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty literal".into(),
        });
    }
    let mut p = Parser {
        field,
        toks,
        pos: 0,
        end: literal.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(field: FieldId, s: &str) -> String {
        parse_element(field, s).unwrap().to_string()
    }

    #[test]
    fn rational_function_cancellation() {
        assert_eq!(rt(FieldId::Qt, "(t^2-1)/(t-1)"), "t+1");
        assert_eq!(rt(FieldId::Qt, "1/(1+t)"), "1/(t+1)");
    }

    #[test]
    fn gaussian_literals() {
        let x = parse_element(FieldId::Qi, "1/2+3i").unwrap();
        let g = x.as_gaussian().unwrap();
        assert_eq!(g.re, Rational::new(1.into(), 2.into()));
        assert_eq!(g.im, Rational::from_integer(3.into()));
        assert_eq!(rt(FieldId::Qi, "3/4i"), "3/4i");
    }

    #[test]
    fn hahn_literals() {
        let x = parse_element(FieldId::Hahn, "2*t^(1/3) - t^2").unwrap();
        let FieldElement::Hahn(h) = &x else { panic!() };
        assert_eq!(h.terms().len(), 2);
        assert_eq!(x.to_string(), "2*t^(1/3)-t^2");
        assert!(matches!(
            parse_element(FieldId::Hahn, "t^(1/2)"),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            parse_element(FieldId::Hahn, "1/(1+t)"),
            Err(Error::HahnUnsupportedInverse)
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(
            parse_element(FieldId::Q, "1+"),
            Err(Error::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_element(FieldId::Q, "t"),
            Err(Error::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            parse_element(FieldId::Q, "(1"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_element(FieldId::Q, "1 $"),
            Err(Error::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            parse_element(FieldId::Qt, "1/(t-t)"),
            Err(Error::DivisionByZero)
        );
    }
}
