//! Dense univariate polynomials over the rationals, lowest degree first.

use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    #[cfg(test)]
    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        Poly::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut rem = self.0.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (dd..=sd).rev() {
            let c = &rem[k] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.0.iter().enumerate() {
                rem[k - dd + j] -= &c * b;
            }
            quot[k - dd] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Divides out `1 + c·t` when it is a factor.
    pub fn divide_linear(&self, c: &Rational) -> Option<Poly> {
        let (q, r) = self.divrem(&Poly::new(vec![Rational::one(), c.clone()]));
        r.is_zero().then_some(q)
    }
}

/// Rational reconstruction: given the first `n` coefficients of a power
/// series `g`, finds `p/q` with `q(0) = 1`, `deg p ≤ k`, `deg q < n − k` and
/// `q·g ≡ p mod tⁿ`. The extended Euclidean algorithm on `(tⁿ, g)` yields
/// the unique reduced solution when one exists.
pub(crate) fn rational_reconstruction(g: &[Rational], k: usize) -> Option<(Poly, Poly)> {
    let n = g.len();
    let mut tn = vec![Rational::zero(); n + 1];
    tn[n] = Rational::one();
    let (mut r0, mut r1) = (Poly::new(tn), Poly::new(g.to_vec()));
    let (mut s0, mut s1) = (Poly::zero(), Poly::constant(Rational::one()));
    while r1.degree().is_some_and(|d| d > k) {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let c = s1.coeff(0);
    if c.is_zero() || s1.degree().is_some_and(|d| d >= n - k) {
        return None;
    }
    let inv = c.recip();
    Some((r1.scale(&inv), s1.scale(&inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| rational_int(x)).collect())
    }

    #[test]
    fn divrem_round_trip() {
        let a = p(&[1, -3, 0, 2, 5]);
        let b = p(&[2, 0, 3]);
        let (q, r) = a.divrem(&b);
        assert!(r.degree().is_none_or(|d| d < 2));
        assert_eq!(q.mul(&b).sub(&a.sub(&r)), Poly::zero());
    }

    #[test]
    fn linear_factor() {
        // (1 + 2t)(1 - t) = 1 + t - 2t²
        let f = p(&[1, 1, -2]);
        assert_eq!(f.divide_linear(&rational_int(2)).unwrap(), p(&[1, -1]));
        assert!(f.divide_linear(&rational_int(3)).is_none());
        assert_eq!(f.eval(&rational(-1, 2)), rational_int(0));
    }

    #[test]
    fn reconstructs_rational_series() {
        // (1 + 2t) / (1 - t) = 1 + 3t + 3t² + …
        let mut g = vec![rational_int(1)];
        g.extend(std::iter::repeat_n(rational_int(3), 6));
        let (num, den) = rational_reconstruction(&g, 3).unwrap();
        assert_eq!(num, p(&[1, 2]));
        assert_eq!(den, p(&[1, -1]));
    }
}
