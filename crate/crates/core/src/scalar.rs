//! Gaussian rationals: complex numbers whose real and imaginary parts are
//! arbitrary-precision fractions.
//!
//! Every value is kept in lowest terms with a positive denominator, which
//! `BigRational` guarantees after each operation.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p`, `-p`, `p/q` or `-p/q` with decimal digits only.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return Err(ParseRationalError::Malformed(s.to_string()));
    }
    let mut p = BigInt::from_str(num).map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
    let q = match den {
        Some(q) => BigInt::from_str(q).map_err(|_| ParseRationalError::Malformed(s.to_string()))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    if neg {
        p = -p;
    }
    Ok(Rational::new(p, q))
}

/// Exact `p/q` (or `p` when the denominator is 1).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rational_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// A complex number `re + i·im` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(rational_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::real(rational(p, q))
    }

    pub fn i() -> Self {
        Scalar { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Scalar { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: Rational::one(), im: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Scalar { re: &self.re * r, im: &self.im * r }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        Scalar { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        // ±1 and purely real factors dominate the permutation-like operators
        // this crate works with.
        if o.im.is_zero() {
            if o.re.is_one() {
                return self.clone();
            }
            if self.im.is_zero() {
                return Scalar::real(&self.re * &o.re);
            }
            return self.scale(&o.re);
        }
        if self.im.is_zero() {
            return o.scale(&self.re);
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        let inv = o.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if !o.re.is_zero() {
            self.re += &o.re;
        }
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if !o.re.is_zero() {
            self.re -= &o.re;
        }
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("3").unwrap(), rational_int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("0/5").unwrap(), rational_int(0));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Empty)));
        for bad in ["+1", "1/", "/2", "1.5", " 1", "--1", "1/-2", "a"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lowest_terms_after_arithmetic() {
        let a = Scalar::from_ratio(2, 4);
        assert_eq!(a.re, rational(1, 2));
        let b = &a + &Scalar::from_ratio(1, 2);
        assert!(b.is_one());
        assert_eq!(format_rational(&rational(6, -4)), "-3/2");
    }

    #[test]
    fn gaussian_field_ops() {
        let z = Scalar::new(rational(1, 2), rational(-3, 4));
        let w = Scalar::new(rational(2, 3), rational(5, 7));
        let prod = &z * &w;
        assert_eq!(prod.re, rational(1, 3) + rational(15, 28));
        assert_eq!(prod.im, rational(5, 14) - rational(1, 2));
        assert_eq!(&(&z / &w) * &w, z);
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(z.conj().conj(), z);
        assert_eq!((&z * &z.conj()).re, z.norm_sqr());
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(Scalar::from_int(-2).pow(3), Scalar::from_int(-8));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_ratio(-1, 3).to_string(), "-1/3");
        assert_eq!(Scalar::new(rational(1, 2), rational(-1, 1)).to_string(), "1/2-1i");
        assert_eq!(Scalar::i().to_string(), "1i");
    }
}
