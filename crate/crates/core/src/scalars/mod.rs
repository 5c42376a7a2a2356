//! Exact scalars: ℚ and the rational-function field ℚ(q).

mod parse;
mod poly;
mod ratfun;

pub use parse::{parse_scalar, ParseError, ParseErrorKind, MAX_DEGREE};
pub use poly::Poly;
pub use ratfun::RatFun;

/// Arbitrary-precision rationals, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {at}")]
    Pole { at: Rational },
    #[error("indeterminate 0/0 at q = {at}")]
    Indeterminate { at: Rational },
}

/// Parse a rational literal such as `3`, `-2/7` or `1/2`.
///
/// Accepts the full scalar grammar but rejects anything that depends on `q`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let value = parse_scalar(text)?;
    value.as_constant().ok_or(ParseError { offset: 0, kind: ParseErrorKind::Unexpected('q') })
}
