use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Poly, Rational, ScalarError};
use crate::field::Field;

/// An element of ℚ(q) in lowest terms with a monic denominator.
///
/// Zero is `0/1`. Because the representation is canonical, derived equality is
/// field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFun {
    /// Build `num/den` and bring it to canonical form.
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(num: Poly<Rational>) -> Self {
        RatFun { num, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `q^e` for any integer exponent.
    pub fn q_pow(e: i32) -> Self {
        let mono = Poly::monomial(Rational::from_int(1), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(mono)
        } else {
            RatFun { num: Poly::one(), den: mono }
        }
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    /// True when the element lies in ℚ.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Sum of numerator and denominator degrees.
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    fn normalized(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        if num.is_zero() {
            return RatFun { num, den: Poly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        other.inverse().map(|inv| self.times(&inv)).ok_or(ScalarError::DivisionByZero)
    }

    pub fn checked_inverse(&self) -> Result<Self, ScalarError> {
        self.inverse().ok_or(ScalarError::DivisionByZero)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.checked_inverse()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFun { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Evaluate at `q = at`.
    pub fn specialize(&self, at: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(at);
        let n = self.num.eval(at);
        if d.is_zero() {
            return Err(if n.is_zero() {
                ScalarError::Indeterminate { at: at.clone() }
            } else {
                ScalarError::Pole { at: at.clone() }
            });
        }
        Ok(n / d)
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn plus(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            if self.den.is_one() {
                return RatFun { num, den: Poly::one() };
            }
            return Self::normalized(num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&other.num * &a);
        Self::normalized(num, &self.den * &b)
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFun { num: &self.num * &other.num, den: Poly::one() };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), other.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    fn negated(&self) -> Self {
        RatFun { num: -&self.num, den: self.den.clone() }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lc = self.num.leading().unwrap().recip();
        Some(RatFun { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn weight(&self) -> usize {
        let bits: u64 =
            self.num.coeffs().iter().chain(self.den.coeffs()).map(|c| c.numer().bits() + c.denom().bits()).sum();
        self.total_degree() * 4096 + (bits as usize).min(4095)
    }
}

fn term_count(p: &Poly<Rational>) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// Prints in the scalar input grammar; `parse_scalar` reads it back exactly.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string_in("q");
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = self.den.to_string_in("q");
        let num = if term_count(&self.num) > 1 { format!("({num})") } else { num };
        let den = if term_count(&self.den) > 1 { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}

impl From<Rational> for RatFun {
    fn from(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        self.plus(rhs)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.minus(rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        self.times(rhs)
    }
}

/// Panics on division by zero; use [`RatFun::checked_div`] otherwise.
impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero in ℚ(q)")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        self.negated()
    }
}
