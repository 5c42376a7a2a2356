//! Recursive-descent reader for the scalar grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' signed-int]
//! atom   := integer | 'q' | '(' expr ')' | '-' factor
//! ```
//!
//! ASCII only, whitespace insignificant, no implicit multiplication.

use num_bigint::BigInt;

use super::{RatFun, Rational};
use crate::field::Field;

/// Degree cap on any intermediate power, keeps `q^2000000000` from allocating.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("trailing input")]
    Trailing,
    #[error("exponent does not fit a machine word")]
    ExponentOverflow,
    #[error("power exceeds the degree bound {MAX_DEGREE}")]
    DegreeBound,
    #[error("division by zero")]
    DivisionByZero,
    #[error("implicit multiplication is not allowed")]
    ImplicitMultiplication,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

/// Parse a scalar expression into canonical form.
pub fn parse_scalar(text: &str) -> Result<RatFun, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(match p.src[p.pos] {
            b'q' | b'(' | b'0'..=b'9' => ParseErrorKind::ImplicitMultiplication,
            _ => ParseErrorKind::Trailing,
        }));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { offset: self.pos, kind }
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

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&b) => self.error(ParseErrorKind::Unexpected(b as char)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc.plus(&rhs) } else { acc.minus(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun, ParseError> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                acc.times(&rhs)
            } else {
                acc.checked_div(&rhs).map_err(|_| ParseError { offset: at, kind: ParseErrorKind::DivisionByZero })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFun, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let exp = self.signed_int()?;
        let fail = |kind| ParseError { offset: at, kind };
        let degree = base.total_degree().max(1);
        let unit = base.is_zero() || base.is_one() || base.negated().is_one();
        if !unit && (exp.unsigned_abs() as usize).saturating_mul(degree) > MAX_DEGREE {
            return Err(fail(ParseErrorKind::DegreeBound));
        }
        base.pow(exp).map_err(|_| fail(ParseErrorKind::DivisionByZero))
    }

    fn atom(&mut self) -> Result<RatFun, ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(RatFun::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.negated())
            }
            Some(b'0'..=b'9') => {
                let digits = self.digits();
                let n = BigInt::parse_bytes(digits, 10).expect("ascii digits");
                Ok(RatFun::constant(Rational::from_integer(n)))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn signed_int(&mut self) -> Result<i32, ParseError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.unexpected());
        }
        let text = std::str::from_utf8(digits).expect("ascii digits");
        let magnitude: i64 =
            text.parse().map_err(|_| ParseError { offset: start, kind: ParseErrorKind::ExponentOverflow })?;
        let value = if negative { -magnitude } else { magnitude };
        i32::try_from(value).map_err(|_| ParseError { offset: start, kind: ParseErrorKind::ExponentOverflow })
    }
}

impl std::str::FromStr for RatFun {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_minus_q_inverse() {
        let v = parse_scalar("q - q^-1").unwrap();
        let q = RatFun::q();
        let expected = (&(&q * &q) - &RatFun::one()).checked_div(&q).unwrap();
        assert_eq!(v, expected);
    }

    #[test]
    fn zero_literal() {
        assert!(parse_scalar("0").unwrap().is_zero());
        assert!(parse_scalar("  0 ").unwrap().is_zero());
    }

    #[test]
    fn cancels_on_parse() {
        assert_eq!(parse_scalar("(q^2-1)/(q-1)").unwrap(), parse_scalar("q+1").unwrap());
    }

    #[test]
    fn unary_minus_binds_to_factor() {
        assert_eq!(parse_scalar("-q^2").unwrap(), RatFun::q_pow(2).negated());
        assert_eq!(parse_scalar("-2^2").unwrap(), RatFun::from_int(-4));
        assert_eq!(parse_scalar("1 - -q").unwrap(), parse_scalar("1 + q").unwrap());
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let err = parse_scalar("2q").unwrap_err();
        assert_eq!(err.offset, 1);
        assert_eq!(err.kind, ParseErrorKind::ImplicitMultiplication);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(parse_scalar("q + ").unwrap_err(), ParseError { offset: 4, kind: ParseErrorKind::UnexpectedEnd });
        assert_eq!(parse_scalar("(q").unwrap_err().offset, 2);
        assert_eq!(parse_scalar("q $").unwrap_err().kind, ParseErrorKind::Trailing);
        assert_eq!(parse_scalar("x").unwrap_err().kind, ParseErrorKind::Unexpected('x'));
        assert_eq!(parse_scalar("1/(q-q)").unwrap_err().kind, ParseErrorKind::DivisionByZero);
    }

    #[test]
    fn exponent_limits() {
        assert_eq!(parse_scalar("q^99999999999").unwrap_err().kind, ParseErrorKind::ExponentOverflow);
        assert_eq!(parse_scalar("q^2147483647").unwrap_err().kind, ParseErrorKind::DegreeBound);
        assert_eq!(parse_scalar("1^2147483647").unwrap(), RatFun::one());
        assert_eq!(parse_scalar("2^100000").unwrap_err().kind, ParseErrorKind::DegreeBound);
    }
}
