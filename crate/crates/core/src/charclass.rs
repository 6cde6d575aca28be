//! Truncated power series over `Q` and the rational characteristic-class
//! coefficients of the twists induced by exponential functors.
//!
//! For an exponential functor with parameters `b = (b_1, …, b_m)` the
//! indecomposable part of its degree-`n` class is `κ_1 a_3 + ⋯ + κ_{n−1} a_{2n−1}`
//! where `κ_i` is the coefficient of `x^i` in
//! `κ(x) = Σ_j log((1 + b_j eˣ) / (1 + b_j))`. Decomposable terms are not
//! computed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("logarithm needs constant term 1, found {0}")]
    LogOfNonUnit(String),
    #[error("exponential needs constant term 0, found {0}")]
    ExpOfNonZeroConstant(String),
    #[error("series orders differ: {0} and {1}")]
    OrderMismatch(usize, usize),
}

/// An element of `Q[t]/(t^{N+1})`, stored as coefficients of degrees `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to degrees `0..=order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::new(vec![Rational::one()], order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        TruncatedSeries::new(vec![c], order)
    }

    /// The generator `t`.
    pub fn t(order: usize) -> Self {
        TruncatedSeries::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `log f` for `f(0) = 1`, from `f·(log f)' = f'`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogOfNonUnit(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut h = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            let mut s = int(k as i64) * &self.coeffs[k];
            for j in 1..k {
                s -= int(j as i64) * &h[j] * &self.coeffs[k - j];
            }
            h[k] = s / int(k as i64);
        }
        Ok(TruncatedSeries { coeffs: h })
    }

    /// `exp f` for `f(0) = 0`, from `(exp f)' = f'·exp f`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpOfNonZeroConstant(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let mut g = vec![Rational::zero(); n + 1];
        g[0] = Rational::one();
        for k in 1..=n {
            let s: Rational = (1..=k).map(|j| int(j as i64) * &self.coeffs[j] * &g[k - j]).sum();
            g[k] = s / int(k as i64);
        }
        Ok(TruncatedSeries { coeffs: g })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `(1 + b·eᵗ)/(1 + b)` in `Q[t]/(t^{order+1})`.
fn block_factor(b: u64, order: usize) -> TruncatedSeries {
    let e = TruncatedSeries::t(order).exp().expect("t has zero constant term");
    let bb = int(b as i64);
    let num = e.scale(&bb).add(&TruncatedSeries::one(order)).expect("same order");
    num.scale(&(Rational::one() / (bb + int(1))))
}

/// `κ(x) = Σ_j log((1 + b_j eˣ)/(1 + b_j))`, accumulated block by block.
pub fn kappa_series(b: &[u64], order: usize) -> TruncatedSeries {
    b.iter().fold(TruncatedSeries::zero(order), |acc, &bj| {
        let l = block_factor(bj, order).log().expect("block factor has constant term 1");
        acc.add(&l).expect("same order")
    })
}

/// `Π_j (1 + b_j eᵗ)/(1 + b_j)`, the Chern character of `F(H)` divided by
/// its rank `Π(1 + b_j)`.
pub fn chern_fh(b: &[u64], order: usize) -> TruncatedSeries {
    b.iter()
        .fold(TruncatedSeries::one(order), |acc, &bj| acc.mul(&block_factor(bj, order)).expect("same order"))
}

/// `[κ_1, …, κ_{n−1}]`, the coefficients of `a_3, …, a_{2n−1}`.
pub fn delta_indecomposable(b: &[u64], n: usize) -> Vec<Rational> {
    assert!(n >= 2, "classes start at n = 2");
    kappa_series(b, n - 1).coeffs()[1..].to_vec()
}

/// The indecomposable coefficients of the determinant twist, read off from
/// `log ch(H) = log eᵗ`.
pub fn det_twist_coeffs(n: usize) -> Vec<Rational> {
    assert!(n >= 2, "classes start at n = 2");
    let ch = TruncatedSeries::t(n - 1).exp().expect("t has zero constant term");
    ch.log().expect("eᵗ has constant term 1").coeffs()[1..].to_vec()
}

/// Label `a_{2i+1}` of the `i`-th coefficient, 1-based.
pub fn generator_label(i: usize) -> String {
    format!("a{}", 2 * i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int};

    fn factorial(k: i64) -> i64 {
        (1..=k).product()
    }

    #[test]
    fn log_exp_inverse() {
        let t = TruncatedSeries::t(7);
        assert_eq!(t.exp().unwrap().log().unwrap(), t);
    }

    #[test]
    fn exp_coefficients() {
        let e = TruncatedSeries::t(6).exp().unwrap();
        for k in 0..=6 {
            assert_eq!(e.coeff(k), &rational(1, factorial(k as i64)));
        }
    }

    #[test]
    fn mercator() {
        let one_plus_t = TruncatedSeries::one(6).add(&TruncatedSeries::t(6)).unwrap();
        let l = one_plus_t.log().unwrap();
        for k in 1..=6i64 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coeff(k as usize), &rational(sign, k));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(TruncatedSeries::constant(rational_int(2), 3).log(), Err(SeriesError::LogOfNonUnit(_))));
        assert!(matches!(TruncatedSeries::one(3).exp(), Err(SeriesError::ExpOfNonZeroConstant(_))));
        assert!(TruncatedSeries::one(3).mul(&TruncatedSeries::one(4)).is_err());
    }

    #[test]
    fn kappa_examples() {
        let k1 = kappa_series(&[1], 3);
        assert_eq!((k1.coeff(0), k1.coeff(1), k1.coeff(2)), (&rational_int(0), &rational(1, 2), &rational(1, 8)));
        let k2 = kappa_series(&[2], 3);
        assert_eq!((k2.coeff(1), k2.coeff(2)), (&rational(2, 3), &rational(1, 9)));
        assert_eq!(kappa_series(&[1, 2], 3).coeff(1), &rational(7, 6));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_indecomposable(&[1], 2), vec![rational(1, 2)]);
        assert_eq!(delta_indecomposable(&[1], 3), vec![rational(1, 2), rational(1, 8)]);
        assert_eq!(delta_indecomposable(&[3], 3), vec![rational(3, 4), rational(3, 32)]);
    }

    #[test]
    fn chern_examples() {
        assert_eq!(chern_fh(&[], 4), TruncatedSeries::one(4));
        let c = chern_fh(&[1], 5);
        assert_eq!(c.coeff(0), &rational_int(1));
        for k in 1..=5 {
            assert_eq!(c.coeff(k), &rational(1, 2 * factorial(k as i64)));
        }
        for b in [&[1][..], &[2], &[1, 1], &[1, 2]] {
            assert_eq!(chern_fh(b, 6).log().unwrap(), kappa_series(b, 6));
        }
    }

    #[test]
    fn det_twist_examples() {
        assert_eq!(det_twist_coeffs(2), vec![rational_int(1)]);
        assert_eq!(det_twist_coeffs(4), vec![rational_int(1), rational_int(0), rational_int(0)]);
        assert_eq!(generator_label(1), "a3");
    }

    #[test]
    fn display() {
        let s = TruncatedSeries::new(vec![rational_int(1), rational_int(0), rational(-1, 2)], 3);
        assert_eq!(s.to_string(), "1 + (-1/2)t^2 + O(t^4)");
    }
}
