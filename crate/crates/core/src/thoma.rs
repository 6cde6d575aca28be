//! Characters of the symmetric groups generated by R-matrices, their Thoma
//! parameters, and multiplicities of the trivial representation.
//!
//! Parameters are stored rescaled by the dimension: `a_i = d·α_i` and
//! `b_j = d·β_j` are positive integers with `Σa + Σb = d`, and the character
//! on an `n`-cycle is `Σ(a_i/d)ⁿ + (−1)^{n+1} Σ(b_j/d)ⁿ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{rational_reconstruction, Poly};
use crate::rmatrix::{RMatrix, RMatrixError};
use crate::scalar::{Rational, Scalar};
use crate::symgroup::{binomial, enumerate, partitions, Permutation, SymGroupError};
use crate::{Caps, SizeCapExceeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThomaError {
    #[error("Thoma parameter {0} is not a positive integer")]
    NonIntegerParameter(String),
    #[error("at least one Thoma parameter is required")]
    EmptyParameters,
    #[error("generating function has a root that is not a reciprocal integer ≤ {d}: leftover factor {leftover}")]
    NonIntegerRoot { d: usize, leftover: String },
    #[error("could not reconstruct the generating function: {0}")]
    ReconstructionFailed(String),
    #[error("trace of ρ({what}) is not real: {value}")]
    NonRealTrace { what: String, value: String },
    #[error("average of traces over S_{n} is {value}, not a nonnegative integer")]
    NonIntegralAverage { n: usize, value: String },
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
    #[error(transparent)]
    SymGroup(#[from] SymGroupError),
    #[error(transparent)]
    SizeCap(#[from] SizeCapExceeded),
}

/// Rescaled Thoma parameters, each multiset sorted weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThomaParams {
    a: Vec<u64>,
    b: Vec<u64>,
}

impl ThomaParams {
    pub fn new(mut a: Vec<u64>, mut b: Vec<u64>) -> Result<Self, ThomaError> {
        if a.is_empty() && b.is_empty() {
            return Err(ThomaError::EmptyParameters);
        }
        if a.contains(&0) || b.contains(&0) {
            return Err(ThomaError::NonIntegerParameter("0".into()));
        }
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        Ok(ThomaParams { a, b })
    }

    /// Accepts rationals, rejecting anything that is not a positive integer.
    pub fn from_rationals(a: &[Rational], b: &[Rational]) -> Result<Self, ThomaError> {
        let conv = |xs: &[Rational]| -> Result<Vec<u64>, ThomaError> {
            xs.iter()
                .map(|x| {
                    x.is_integer()
                        .then(|| x.to_integer().to_u64())
                        .flatten()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| ThomaError::NonIntegerParameter(x.to_string()))
                })
                .collect()
        };
        ThomaParams::new(conv(a)?, conv(b)?)
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.a.iter().chain(&self.b).sum()
    }

    /// Multiset union, the parameters of a box-sum.
    pub fn union(&self, other: &ThomaParams) -> ThomaParams {
        let a = self.a.iter().chain(&other.a).copied().collect();
        let b = self.b.iter().chain(&other.b).copied().collect();
        ThomaParams::new(a, b).expect("union of valid parameters")
    }
}

impl fmt::Display for ThomaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // listed ascending, the reverse of the stored order
        let list = |v: &[u64]| v.iter().rev().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "a: [{}] b: [{}] d: {}", list(&self.a), list(&self.b), self.d())
    }
}

/// `χ(c_n)` for `2 ≤ n ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub d: usize,
    pub values: BTreeMap<usize, Rational>,
}

/// `Tr ρ⁽ⁿ⁾(τ_1 τ_2 ⋯ τ_{n−1})` by tracing out one tensor factor at a time.
///
/// Tracing the last factor of `R_1 ⋯ R_{n−1}` leaves `R_1 ⋯ R_{n−2}`
/// followed by a `d×d` operator `M` on factor `n−1`; tracing that factor
/// replaces `M` by `T(M) = Tr_2(R·(1 ⊗ M))`. Hence the trace is
/// `Tr Tⁿ⁻¹(1)`, at cost `O(n·d⁴)` instead of `O(dⁿ)`.
pub fn cycle_trace(r: &RMatrix, n: usize) -> Scalar {
    let d = r.d();
    if n == 0 {
        return Scalar::one();
    }
    let mut m: Vec<Scalar> = (0..d * d).map(|i| if i / d == i % d { Scalar::one() } else { Scalar::zero() }).collect();
    let mat = r.matrix();
    for _ in 1..n {
        let mut next = vec![Scalar::zero(); d * d];
        for col in 0..d * d {
            let (a, b) = (col / d, col % d);
            for row in 0..d * d {
                let x = mat.get(row, col);
                if x.is_zero() {
                    continue;
                }
                let (c, e) = (row / d, row % d);
                let y = &m[b * d + e];
                if !y.is_zero() {
                    next[c * d + a] += &(x * y);
                }
            }
        }
        m = next;
    }
    (0..d).map(|i| m[i * d + i].clone()).sum()
}

fn real_part(value: Scalar, what: impl FnOnce() -> String) -> Result<Rational, ThomaError> {
    if value.is_real() {
        Ok(value.re)
    } else {
        Err(ThomaError::NonRealTrace { what: what(), value: value.to_string() })
    }
}

fn d_pow(d: usize, n: usize) -> Rational {
    Rational::from_integer(BigInt::from(d).pow(n as u32))
}

/// `χ_R(c_n) = Tr ρ⁽ⁿ⁾(c_n) / dⁿ`.
pub fn character_cycle(r: &RMatrix, n: usize) -> Result<Rational, ThomaError> {
    let tr = real_part(cycle_trace(r, n), || format!("c_{n}"))?;
    Ok(tr / d_pow(r.d(), n))
}

pub fn character_table(r: &RMatrix, max_n: usize) -> Result<CharacterTable, ThomaError> {
    let values = (2..=max_n).map(|n| Ok((n, character_cycle(r, n)?))).collect::<Result<_, ThomaError>>()?;
    Ok(CharacterTable { d: r.d(), values })
}

/// Normalised trace of `ρ⁽ⁿ⁾(σ)`, summed over all basis vectors.
pub fn character(r: &RMatrix, sigma: &Permutation, caps: &Caps) -> Result<Rational, ThomaError> {
    let n = sigma.degree();
    let tr = real_part(r.trace(n, sigma, caps)?, || sigma.to_string())?;
    Ok(tr / d_pow(r.d(), n))
}

/// `Σ(a_i/d)ⁿ + (−1)^{n+1} Σ(b_j/d)ⁿ`.
pub fn eval_character(p: &ThomaParams, n: usize) -> Rational {
    power_sum(p, n) / d_pow(p.d() as usize, n)
}

/// `dⁿ·χ(c_n) = Σa_iⁿ + (−1)^{n+1} Σb_jⁿ`.
fn power_sum(p: &ThomaParams, n: usize) -> Rational {
    let pw = |x: u64| BigInt::from(x).pow(n as u32);
    let sa: BigInt = p.a.iter().map(|&x| pw(x)).sum();
    let sb: BigInt = p.b.iter().map(|&x| pw(x)).sum();
    Rational::from_integer(if n % 2 == 1 { sa + sb } else { sa - sb })
}

/// Recovers the Thoma parameters of `R` from its cycle traces.
///
/// With `q_n = Tr ρ⁽ⁿ⁾(c_n)` the series `G(t) = Π(1 + b_j t) / Π(1 − a_i t)`
/// satisfies `k·g_k = Σ_{m=1}^{k} q_m g_{k−m}`. Since both degrees are
/// bounded by `d`, the coefficients up to `t^{2d}` determine `G`; numerator
/// and denominator are then split into linear factors with integer
/// parameters by trial division. The answer is re-checked against every
/// computed `q_n`.
pub fn extract(r: &RMatrix, assume_alpha_zero: bool) -> Result<ThomaParams, ThomaError> {
    let d = r.d();
    let big_n = 2 * d;
    let q: Vec<Rational> =
        (0..=big_n).map(|n| real_part(cycle_trace(r, n), || format!("c_{n}"))).collect::<Result<_, _>>()?;
    let mut g = vec![Rational::one()];
    for k in 1..=big_n {
        let s: Rational = (1..=k).map(|m| &q[m] * &g[k - m]).sum();
        g.push(s / Rational::from_integer(BigInt::from(k)));
    }
    let (num, den) = if assume_alpha_zero {
        (Poly::new(g[..=d].to_vec()), Poly::constant(Rational::one()))
    } else {
        rational_reconstruction(&g, d)
            .ok_or_else(|| ThomaError::ReconstructionFailed("no rational function of degree ≤ d fits".into()))?
    };
    let b = linear_factors(num, 1, d)?;
    let a = linear_factors(den, -1, d)?;
    let params = ThomaParams::new(a, b)?;
    if params.d() as usize != d {
        return Err(ThomaError::ReconstructionFailed(format!("parameters {params} do not sum to d = {d}")));
    }
    if let Some(n) = (1..=big_n).find(|&n| power_sum(&params, n) != q[n]) {
        return Err(ThomaError::ReconstructionFailed(format!("parameters {params} disagree with Tr ρ(c_{n})")));
    }
    Ok(params)
}

/// Splits `f` into factors `1 + sign·c·t` with `1 ≤ c ≤ d`, returning the
/// `c` in decreasing order.
fn linear_factors(mut f: Poly, sign: i64, d: usize) -> Result<Vec<u64>, ThomaError> {
    let mut out = Vec::new();
    for c in (1..=d as u64).rev() {
        let coef = Rational::from_integer(BigInt::from(sign) * BigInt::from(c));
        while let Some(rest) = f.divide_linear(&coef) {
            out.push(c);
            f = rest;
        }
    }
    if f != Poly::constant(Rational::one()) {
        let leftover = f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        return Err(ThomaError::NonIntegerRoot { d, leftover: format!("[{leftover}]") });
    }
    Ok(out)
}

/// How [`invariant_dimension`] computes the multiplicity of the trivial
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionMethod {
    /// `(1/n!) Σ_{σ ∈ S_n} Tr ρ⁽ⁿ⁾(σ)` over an explicit enumeration.
    Burnside,
    /// Rank of the span of the symmetrised basis vectors, which is the image
    /// of the averaging projector.
    Rank,
}

/// `dim ((C^d)^{⊗n})^{S_n}` for the action `ρ⁽ⁿ⁾` of `R`.
pub fn invariant_dimension(r: &RMatrix, n: usize, method: DimensionMethod, caps: &Caps) -> Result<u64, ThomaError> {
    match method {
        DimensionMethod::Burnside => {
            let perms: Vec<Permutation> = enumerate(n, caps.enumerate)?.collect();
            let traces: Vec<Scalar> = perms.par_iter().map(|s| r.trace(n, s, caps)).collect::<Result<_, _>>()?;
            let total = real_part(traces.into_iter().sum(), || format!("Σ S_{n}"))?;
            let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
            integral_average(total / Rational::from_integer(fact), n)
        }
        DimensionMethod::Rank => Ok(r.invariant_basis(n, caps)?.len() as u64),
    }
}

fn integral_average(avg: Rational, n: usize) -> Result<u64, ThomaError> {
    if avg.is_integer() && !avg.is_negative() {
        if let Some(v) = avg.to_integer().to_u64() {
            return Ok(v);
        }
    }
    Err(ThomaError::NonIntegralAverage { n, value: avg.to_string() })
}

/// `dim ((W ⊗ C^k)^{⊗n})^{S_n}` for the action of `R ⊠ T_k`, `T_k` the flip
/// on `C^k`, summed over conjugacy classes.
///
/// `ρ_{R⊠T}(σ)` is `ρ_R(σ) ⊗ P(σ)`, so its trace is `Tr ρ_R(σ)·k^{#cycles}`;
/// on the class representative made of consecutive cycles `ρ_R(σ)` is a
/// tensor product of cycle operators, whose traces come from
/// [`cycle_trace`].
pub fn class_sum_dimension(r: &RMatrix, k: usize, n: usize) -> Result<u64, ThomaError> {
    let mut traces: Vec<Rational> = Vec::with_capacity(n + 1);
    for l in 0..=n {
        traces.push(real_part(cycle_trace(r, l), || format!("c_{l}"))?);
    }
    let mut total = Rational::zero();
    for lambda in partitions(n) {
        let tr: Rational = lambda.parts().iter().map(|&l| traces[l].clone()).product();
        let weight = Rational::from_integer(BigInt::from(k).pow(lambda.parts().len() as u32) * BigInt::from(lambda.class_size()));
        total += tr * weight;
    }
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    integral_average(total / Rational::from_integer(fact), n)
}

/// `Σ_{s_1+⋯+s_m=n} Π_i C(d_U, s_i)·b_i^{s_i}`, the `n`-th elementary
/// symmetric polynomial in each `b_i` repeated `d_U` times.
pub fn e_n_closed_form(b: &[u64], d_u: u64, n: usize) -> u128 {
    let mut acc = vec![0u128; n + 1];
    acc[0] = 1;
    for &bi in b {
        let mut next = vec![0u128; n + 1];
        for (t, &x) in acc.iter().enumerate().filter(|(_, x)| **x != 0) {
            for s in 0..=(n - t).min(d_u as usize) {
                next[t + s] += x * binomial(d_u, s as u64) as u128 * (bi as u128).pow(s as u32);
            }
        }
        acc = next;
    }
    acc[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::{box_sum, box_tensor, normal_form};
    use crate::scalar::{rational, rational_int};

    fn params(a: &[u64], b: &[u64]) -> ThomaParams {
        ThomaParams::new(a.to_vec(), b.to_vec()).unwrap()
    }

    fn nf(a: &[u64], b: &[u64]) -> RMatrix {
        normal_form(&params(a, b)).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(ThomaParams::new(vec![], vec![]), Err(ThomaError::EmptyParameters));
        assert!(matches!(ThomaParams::new(vec![0], vec![1]), Err(ThomaError::NonIntegerParameter(_))));
        let p = params(&[1, 2], &[1, 3]);
        assert_eq!(p.a(), &[2, 1]);
        assert_eq!(p.b(), &[3, 1]);
        assert_eq!(p.d(), 7);
        assert_eq!(p.to_string(), "a: [1,2] b: [1,3] d: 7");
        assert!(matches!(
            ThomaParams::from_rationals(&[rational(1, 2)], &[]),
            Err(ThomaError::NonIntegerParameter(s)) if s == "1/2"
        ));
    }

    #[test]
    fn character_cycle_examples() {
        for d in 1..=3 {
            assert_eq!(character_cycle(&RMatrix::minus_identity(d), 2).unwrap(), rational_int(-1));
        }
        assert_eq!(character_cycle(&RMatrix::minus_identity(2), 3).unwrap(), rational_int(1));
        assert_eq!(character_cycle(&RMatrix::flip(2), 2).unwrap(), rational(1, 2));
    }

    #[test]
    fn cycle_trace_matches_sweep() {
        let caps = Caps::default();
        for r in [nf(&[1], &[2]), nf(&[], &[1, 1, 1]), RMatrix::flip(3)] {
            for n in 1..=5 {
                let c = Permutation::from_word(n, &(1..n).collect::<Vec<_>>()).unwrap();
                assert_eq!(cycle_trace(&r, n), r.trace(n, &c, &caps).unwrap(), "n = {n}");
            }
        }
    }

    #[test]
    fn character_examples() {
        let caps = Caps::default();
        let r = RMatrix::minus_identity(2);
        assert_eq!(character(&r, &Permutation::identity(3), &caps).unwrap(), rational_int(1));
        let s = Permutation::from_one_line(&[2, 1, 4, 3]).unwrap();
        assert_eq!(character(&r, &s, &caps).unwrap(), rational_int(1));
        let t = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(character(&RMatrix::flip(2), &t, &caps).unwrap(), rational(1, 2));
    }

    #[test]
    fn eval_character_examples() {
        for d in 1..=4 {
            assert_eq!(eval_character(&params(&[], &[d]), 4), rational_int(-1));
        }
        for n in 2..=6 {
            assert_eq!(eval_character(&params(&[1, 1], &[]), n), rational(2, 1 << n));
        }
        assert_eq!(eval_character(&params(&[], &[1, 2]), 2), rational(-5, 9));
    }

    #[test]
    fn extract_examples() {
        assert_eq!(extract(&RMatrix::minus_identity(2), false).unwrap(), params(&[], &[2]));
        assert_eq!(extract(&RMatrix::minus_identity(2), true).unwrap(), params(&[], &[2]));
        assert_eq!(extract(&RMatrix::flip(2), false).unwrap(), params(&[1, 1], &[]));
        assert_eq!(extract(&nf(&[], &[1, 2]), true).unwrap(), params(&[], &[1, 2]));
        assert_eq!(extract(&nf(&[3, 1], &[2]), false).unwrap(), params(&[3, 1], &[2]));
    }

    #[test]
    fn extract_alpha_zero_rejects_alphas() {
        assert!(extract(&RMatrix::flip(2), true).is_err());
    }

    #[test]
    fn box_sum_union() {
        let (p, q) = (params(&[1], &[2]), params(&[], &[1]));
        let s = box_sum(&normal_form(&p).unwrap(), &normal_form(&q).unwrap());
        assert_eq!(extract(&s, false).unwrap(), p.union(&q));
    }

    #[test]
    fn box_tensor_repeats_b() {
        let t = box_tensor(&nf(&[], &[1]), &RMatrix::flip(2));
        assert_eq!(extract(&t, true).unwrap(), params(&[], &[1, 1]));
    }

    #[test]
    fn invariant_dimension_examples() {
        let caps = Caps::default();
        for method in [DimensionMethod::Burnside, DimensionMethod::Rank] {
            assert_eq!(invariant_dimension(&RMatrix::minus_identity(1), 2, method, &caps).unwrap(), 0);
            assert_eq!(invariant_dimension(&nf(&[], &[1, 1]), 2, method, &caps).unwrap(), 1);
            assert_eq!(invariant_dimension(&nf(&[], &[1, 2]), 2, method, &caps).unwrap(), 2);
        }
        assert_eq!(class_sum_dimension(&nf(&[], &[1, 2]), 1, 2).unwrap(), 2);
    }

    #[test]
    fn invariant_dimension_non_monomial() {
        let caps = Caps::default();
        let u = Matrix::from_fn(2, 2, |i, j| {
            let s = if i == j { rational(1, 2) } else { -rational(1, 2) };
            Scalar::new(rational(1, 2), s)
        });
        let r = nf(&[1], &[1]).conjugate(&u).unwrap();
        for n in 1..=4 {
            let burnside = invariant_dimension(&r, n, DimensionMethod::Burnside, &caps).unwrap();
            assert_eq!(invariant_dimension(&r, n, DimensionMethod::Rank, &caps).unwrap(), burnside);
            assert_eq!(class_sum_dimension(&r, 1, n).unwrap(), burnside);
        }
    }

    #[test]
    fn e_n_examples() {
        for k in 0..4 {
            assert_eq!(e_n_closed_form(&[1], 1, k), if k <= 1 { 1 } else { 0 });
        }
        assert_eq!(e_n_closed_form(&[1, 2], 1, 2), 2);
        assert_eq!(e_n_closed_form(&[1], 2, 2), 1);
        assert_eq!(e_n_closed_form(&[2, 3], 2, 0), 1);
    }

    use crate::linalg::Matrix;
}
