//! Involutive unitary solutions of the Yang–Baxter equation and the
//! symmetric-group representations they generate.
//!
//! An [`RMatrix`] can only be obtained through [`RMatrix::validate`], so every
//! value in circulation satisfies `R² = 1`, `RR* = 1` and
//! `R₁R₂R₁ = R₂R₁R₂`. The representation `ρ⁽ⁿ⁾` sends the generator `τ_i` to
//! `R_i`, which acts as `R` on tensor factors `i, i+1` of `(C^d)^{⊗n}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{index_digits, perm_operator, Echelon, Matrix, SparseVec};
use crate::scalar::Scalar;
use crate::symgroup::Permutation;
use crate::thoma::{self, ThomaParams};
use crate::{check_cap, pow_u128, Caps, SizeCapExceeded};

/// A basis tensor `e_{x_1} ⊗ … ⊗ e_{x_k}` (0-based digits) at which an
/// identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Vec<usize>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("e{}", x + 1)).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RMatrixError {
    #[error("expected a {expected}x{expected} matrix for d = {d}, got {rows}x{cols}")]
    Shape { d: usize, expected: usize, rows: usize, cols: usize },
    #[error("R² ≠ 1 at {0}")]
    NotInvolutive(Witness),
    #[error("RR* ≠ 1 at {0}")]
    NotUnitary(Witness),
    #[error("R₁R₂R₁ ≠ R₂R₁R₂ at {0}")]
    YangBaxterFails(Witness),
    #[error("permutation of degree {got} used where degree {expected} is required")]
    Degree { expected: usize, got: usize },
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("cutoff {cutoff} is below the dimensions ({d_r}, {d_s})")]
    CutoffTooSmall { cutoff: usize, d_r: usize, d_s: usize },
    #[error("normal form needs at least one parameter")]
    EmptyParameters,
    #[error(transparent)]
    SizeCap(#[from] SizeCapExceeded),
}

/// A validated involutive unitary R-matrix on `C^d ⊗ C^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    d: usize,
    mat: Matrix,
    /// Column `p` of `mat` as `(row, entry)` pairs, nonzero entries only.
    local: Vec<Vec<(usize, Scalar)>>,
    monomial: bool,
    /// For monomial matrices with entries `±1`: `(row, negated)` per column.
    signed: Option<Vec<(usize, bool)>>,
    /// `D·R` as Gaussian integers, for gcd-free word application.
    scaled: ScaledLocal,
}

/// Columns of `D·R` with `D` the least common denominator of the entries.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ScaledLocal {
    denom: BigInt,
    cols: Vec<Vec<(usize, BigInt, BigInt)>>,
}

impl ScaledLocal {
    fn new(local: &[Vec<(usize, Scalar)>]) -> Self {
        let denom = local
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.re.denom()).lcm(c.im.denom()));
        let int = |x: &BigRational| x.numer() * (&denom / x.denom());
        let cols = local.iter().map(|col| col.iter().map(|(q, c)| (*q, int(&c.re), int(&c.im))).collect()).collect();
        ScaledLocal { denom, cols }
    }
}

/// A vector of Gaussian-integer numerators over one common denominator.
/// Word application only multiplies and adds integers; fractions are
/// reduced once, on conversion back.
#[derive(Debug, Clone)]
struct IntVec {
    entries: BTreeMap<usize, (BigInt, BigInt)>,
    denom: BigInt,
}

impl IntVec {
    fn from_sparse(v: &SparseVec) -> Self {
        let denom = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.re.denom()).lcm(x.im.denom()));
        let int = |x: &BigRational| x.numer() * (&denom / x.denom());
        let entries = v.iter().map(|(&i, x)| (i, (int(&x.re), int(&x.im)))).collect();
        IntVec { entries, denom }
    }

    fn into_sparse(self) -> SparseVec {
        let denom = self.denom;
        SparseVec::from_entries(self.entries.into_iter().map(|(i, (re, im))| {
            (i, Scalar::new(BigRational::new(re, denom.clone()), BigRational::new(im, denom.clone())))
        }))
    }

    fn scale(&mut self, k: &BigInt) {
        if k.is_one() {
            return;
        }
        for (re, im) in self.entries.values_mut() {
            *re *= k;
            *im *= k;
        }
        self.denom *= k;
    }

    fn add_assign(&mut self, other: &IntVec) {
        let mut other = other.clone();
        let common = self.denom.lcm(&other.denom);
        self.scale(&(&common / &self.denom));
        other.scale(&(&common / &other.denom));
        for (i, (re, im)) in other.entries {
            let e = self.entries.entry(i).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
            e.0 += re;
            e.1 += im;
        }
        self.entries.retain(|_, (re, im)| !re.is_zero() || !im.is_zero());
    }
}

impl RMatrix {
    /// Checks involutivity, unitarity and the Yang–Baxter equation exactly,
    /// reporting the first failing basis tensor in lexicographic order.
    pub fn validate(d: usize, mat: Matrix) -> Result<RMatrix, RMatrixError> {
        let dd = d * d;
        if d == 0 || mat.rows() != dd || mat.cols() != dd {
            return Err(RMatrixError::Shape { d, expected: dd, rows: mat.rows(), cols: mat.cols() });
        }
        let local: Vec<Vec<(usize, Scalar)>> = (0..dd)
            .map(|p| (0..dd).filter(|&q| !mat.get(q, p).is_zero()).map(|q| (q, mat.get(q, p).clone())).collect())
            .collect();
        let monomial = local.iter().all(|c| c.len() == 1);
        let minus_one = Scalar::from_int(-1);
        let signed = if monomial && local.iter().all(|c| c[0].1.is_one() || c[0].1 == minus_one) {
            Some(local.iter().map(|c| (c[0].0, !c[0].1.is_one())).collect())
        } else {
            None
        };
        let scaled = ScaledLocal::new(&local);
        let r = RMatrix { d, mat, local, monomial, signed, scaled };

        for x in 0..dd {
            let e = SparseVec::basis(x);
            if r.apply_word(&r.apply_word(&e, 2, &[1]), 2, &[1]) != e {
                return Err(RMatrixError::NotInvolutive(Witness(index_digits(x, d, 2))));
            }
        }
        // Given R² = 1, (RR*)e_p = e_p holds exactly when R*e_p = Re_p.
        for x in 0..dd {
            if (0..dd).any(|y| r.mat.get(y, x) != &r.mat.get(x, y).conj()) {
                return Err(RMatrixError::NotUnitary(Witness(index_digits(x, d, 2))));
            }
        }
        for x in 0..d * dd {
            let e = SparseVec::basis(x);
            if r.apply_word(&e, 3, &[1, 2, 1]) != r.apply_word(&e, 3, &[2, 1, 2]) {
                return Err(RMatrixError::YangBaxterFails(Witness(index_digits(x, d, 3))));
            }
        }
        Ok(r)
    }

    /// The identity on `C^d ⊗ C^d`.
    pub fn identity(d: usize) -> RMatrix {
        RMatrix::validate(d, Matrix::identity(d * d)).expect("identity is an R-matrix")
    }

    /// `-1` on `C^d ⊗ C^d`.
    pub fn minus_identity(d: usize) -> RMatrix {
        RMatrix::validate(d, Matrix::scalar_identity(d * d, Scalar::from_int(-1))).expect("-1 is an R-matrix")
    }

    /// The tensor flip `v ⊗ w ↦ w ⊗ v` on `C^d ⊗ C^d`.
    pub fn flip(d: usize) -> RMatrix {
        let m = perm_operator(&Permutation::transposition(2, 0, 1), d);
        RMatrix::validate(d, m).expect("the flip is an R-matrix")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    /// Applies `R_i` (1-based, acting on factors `i, i+1`) to a vector in
    /// `(C^d)^{⊗n}`.
    pub fn apply_local(&self, v: &SparseVec, n: usize, i: usize) -> SparseVec {
        self.apply_word(v, n, &[i])
    }

    /// Applies `R_{w_1} ⋯ R_{w_k}`, rightmost generator first.
    pub fn apply_word(&self, v: &SparseVec, n: usize, word: &[usize]) -> SparseVec {
        let mut acc = IntVec::from_sparse(v);
        for &i in word.iter().rev() {
            acc = self.apply_local_int(&acc, n, i);
        }
        acc.into_sparse()
    }

    /// `D·R_i` on numerators; the denominator is multiplied by `D`.
    fn apply_local_int(&self, v: &IntVec, n: usize, i: usize) -> IntVec {
        assert!(i >= 1 && i < n, "R_{i} is undefined on {n} factors");
        let dd = self.d * self.d;
        let stride = self.d.pow((n - i - 1) as u32);
        let mut out: BTreeMap<usize, (BigInt, BigInt)> = BTreeMap::new();
        for (&idx, (a, b)) in &v.entries {
            let p = (idx / stride) % dd;
            let base = idx - p * stride;
            for (q, cr, ci) in &self.scaled.cols[p] {
                let e = out.entry(base + q * stride).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
                if ci.is_zero() {
                    e.0 += a * cr;
                    e.1 += b * cr;
                } else if cr.is_zero() {
                    e.0 -= b * ci;
                    e.1 += a * ci;
                } else {
                    e.0 += a * cr - b * ci;
                    e.1 += a * ci + b * cr;
                }
            }
        }
        out.retain(|_, (re, im)| !re.is_zero() || !im.is_zero());
        IntVec { entries: out, denom: &v.denom * &self.scaled.denom }
    }

    /// Diagonal entry `⟨e_x, ρ(word) e_x⟩`.
    pub(crate) fn word_diagonal(&self, x: usize, n: usize, word: &[usize]) -> Scalar {
        if self.monomial {
            let dd = self.d * self.d;
            let mut idx = x;
            let mut coef = Scalar::one();
            for &i in word.iter().rev() {
                let stride = self.d.pow((n - i - 1) as u32);
                let p = (idx / stride) % dd;
                let (q, c) = &self.local[p][0];
                idx = idx - p * stride + q * stride;
                coef = &coef * c;
            }
            if idx == x { coef } else { Scalar::zero() }
        } else {
            let (re, im) = self.word_diagonal_int(x, n, word);
            let denom = self.scaled.denom.pow(word.len() as u32);
            Scalar::new(BigRational::new(re, denom.clone()), BigRational::new(im, denom))
        }
    }

    /// Numerator of the diagonal entry over the denominator `D^{|word|}`.
    ///
    /// Each `R_i` is self-adjoint, so with `word = uv` the entry is
    /// `⟨ρ(reverse u) e_x, ρ(v) e_x⟩`; both halves stay much sparser than
    /// the full product.
    fn word_diagonal_int(&self, x: usize, n: usize, word: &[usize]) -> (BigInt, BigInt) {
        let (u, v) = word.split_at(word.len() / 2);
        let run = |letters: &mut dyn Iterator<Item = &usize>| {
            let mut acc = IntVec { entries: BTreeMap::from([(x, (BigInt::one(), BigInt::zero()))]), denom: BigInt::one() };
            for &i in letters {
                acc = self.apply_local_int(&acc, n, i);
            }
            acc.entries
        };
        let left = run(&mut u.iter());
        let right = run(&mut v.iter().rev());
        let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
        for (y, (a, b)) in &left {
            if let Some((c, d)) = right.get(y) {
                // conj(a + bi)·(c + di)
                re += a * c + b * d;
                im += a * d - b * c;
            }
        }
        (re, im)
    }

    /// `Tr ρ⁽ⁿ⁾(word)` by sweeping basis vectors.
    pub(crate) fn word_trace(&self, n: usize, word: &[usize], caps: &Caps) -> Result<Scalar, SizeCapExceeded> {
        let dim = pow_u128(self.d, n);
        check_cap("matrix-free sweep", dim, caps.sweep)?;
        let dim = dim as usize;
        if let Some(signed) = &self.signed {
            let strides: Vec<usize> = word.iter().rev().map(|&i| self.d.pow((n - i - 1) as u32)).collect();
            let dd = self.d * self.d;
            let diag = |x: usize| -> i64 {
                let mut idx = x;
                let mut neg = false;
                for &stride in &strides {
                    let p = (idx / stride) % dd;
                    let (q, s) = signed[p];
                    idx = idx - p * stride + q * stride;
                    neg ^= s;
                }
                match (idx == x, neg) {
                    (false, _) => 0,
                    (true, false) => 1,
                    (true, true) => -1,
                }
            };
            let total: i64 = if dim >= 4096 { (0..dim).into_par_iter().map(diag).sum() } else { (0..dim).map(diag).sum() };
            return Ok(Scalar::from_int(total));
        }
        if self.monomial {
            return Ok(if dim >= 4096 {
                (0..dim).into_par_iter().map(|x| self.word_diagonal(x, n, word)).reduce(Scalar::zero, |a, b| a + b)
            } else {
                (0..dim).map(|x| self.word_diagonal(x, n, word)).sum()
            });
        }
        let add = |a: (BigInt, BigInt), b: (BigInt, BigInt)| (a.0 + b.0, a.1 + b.1);
        let zero = || (BigInt::zero(), BigInt::zero());
        let (re, im) = if dim >= 4096 {
            (0..dim).into_par_iter().map(|x| self.word_diagonal_int(x, n, word)).reduce(zero, add)
        } else {
            (0..dim).map(|x| self.word_diagonal_int(x, n, word)).fold(zero(), add)
        };
        let denom = self.scaled.denom.pow(word.len() as u32);
        Ok(Scalar::new(BigRational::new(re, denom.clone()), BigRational::new(im, denom)))
    }

    /// `Tr ρ⁽ⁿ⁾(σ)` by sweeping basis vectors.
    pub fn trace(&self, n: usize, sigma: &Permutation, caps: &Caps) -> Result<Scalar, RMatrixError> {
        self.check_degree(n, sigma)?;
        Ok(self.word_trace(n, &sigma.adjacent_word(), caps)?)
    }

    fn check_degree(&self, n: usize, sigma: &Permutation) -> Result<(), RMatrixError> {
        if sigma.degree() != n {
            return Err(RMatrixError::Degree { expected: n, got: sigma.degree() });
        }
        Ok(())
    }

    /// Dense `ρ⁽ⁿ⁾(σ)`, built column by column from the adjacent word of `σ`.
    pub fn rep_matrix(&self, n: usize, sigma: &Permutation, caps: &Caps) -> Result<Matrix, RMatrixError> {
        self.check_degree(n, sigma)?;
        self.rep_matrix_of_word(n, &sigma.adjacent_word(), caps)
    }

    /// Dense `R_{w_1} ⋯ R_{w_k}` for an arbitrary word.
    pub fn rep_matrix_of_word(&self, n: usize, word: &[usize], caps: &Caps) -> Result<Matrix, RMatrixError> {
        let dim = pow_u128(self.d, n);
        check_cap("dense representation matrix", dim, caps.dense)?;
        let dim = dim as usize;
        let cols: Vec<SparseVec> = (0..dim).map(|x| self.apply_word(&SparseVec::basis(x), n, word)).collect();
        Ok(Matrix::from_sparse_columns(dim, &cols))
    }

    /// `ρ⁽ⁿ⁾(σ)·v` without materialising `ρ⁽ⁿ⁾(σ)`.
    pub fn rep_apply(&self, n: usize, sigma: &Permutation, v: &[Scalar]) -> Result<Vec<Scalar>, RMatrixError> {
        self.check_degree(n, sigma)?;
        let dim = self.d.pow(n as u32);
        if v.len() != dim {
            return Err(RMatrixError::VectorLength { expected: dim, got: v.len() });
        }
        let out = self.apply_word(&SparseVec::from_dense(v), n, &sigma.adjacent_word());
        Ok(out.to_dense(dim))
    }

    pub fn rep_apply_sparse(&self, n: usize, sigma: &Permutation, v: &SparseVec) -> SparseVec {
        self.apply_word(v, n, &sigma.adjacent_word())
    }

    /// `Σ_{σ ∈ S_n} ρ(σ) v`, evaluated through the coset factorisation
    /// `Σ_{S_m} = (Σ_{k=1}^{m} τ_k τ_{k+1} ⋯ τ_{m-1}) · Σ_{S_{m-1}}`.
    pub fn symmetrize(&self, n: usize, v: &SparseVec) -> SparseVec {
        let mut acc = IntVec::from_sparse(v);
        for m in 2..=n {
            let mut term = acc.clone();
            let mut total = acc;
            for k in (1..m).rev() {
                term = self.apply_local_int(&term, n, k);
                total.add_assign(&term);
            }
            acc = total;
        }
        acc.into_sparse()
    }

    /// Reduced row echelon basis of the `S_n`-fixed subspace of
    /// `(C^d)^{⊗n}`, spanned by the symmetrised basis vectors.
    ///
    /// For monomial `R` the group permutes basis lines, and symmetrising any
    /// vector of one orbit gives a multiple of the same fixed vector, so one
    /// representative per orbit suffices.
    pub fn invariant_basis(&self, n: usize, caps: &Caps) -> Result<Vec<SparseVec>, RMatrixError> {
        let dim = pow_u128(self.d, n);
        check_cap("matrix-free sweep", dim, caps.sweep)?;
        let dim = dim as usize;
        let mut ech = Echelon::new();
        if n == 0 {
            ech.insert(SparseVec::basis(0));
            return Ok(ech.into_rref());
        }
        if self.monomial {
            let dd = self.d * self.d;
            let mut seen = vec![false; dim];
            for x in 0..dim {
                if seen[x] {
                    continue;
                }
                seen[x] = true;
                let mut stack = vec![x];
                while let Some(y) = stack.pop() {
                    for i in 1..n {
                        let stride = self.d.pow((n - i - 1) as u32);
                        let p = (y / stride) % dd;
                        let z = y - p * stride + self.local[p][0].0 * stride;
                        if !seen[z] {
                            seen[z] = true;
                            stack.push(z);
                        }
                    }
                }
                ech.insert(self.symmetrize(n, &SparseVec::basis(x)));
            }
        } else {
            for x in 0..dim {
                ech.insert(self.symmetrize(n, &SparseVec::basis(x)));
            }
        }
        Ok(ech.into_rref())
    }

    /// Conjugates by `u ⊗ u` for a unitary `u` on `C^d`.
    pub fn conjugate(&self, u: &Matrix) -> Result<RMatrix, RMatrixError> {
        let uu = u.kron(u);
        let m = &(&uu * &self.mat) * &uu.adjoint();
        RMatrix::validate(self.d, m)
    }
}

/// `R ⊞ S` on `(W_R ⊕ W_S)^{⊗2}`: `R` on `W_R^{⊗2}`, `S` on `W_S^{⊗2}`, and
/// the swap between `W_R ⊗ W_S` and `W_S ⊗ W_R`.
pub fn box_sum(r: &RMatrix, s: &RMatrix) -> RMatrix {
    let (dr, ds) = (r.d, s.d);
    let d = dr + ds;
    let mut m = Matrix::zeros(d * d, d * d);
    for p in 0..d {
        for q in 0..d {
            let col = p * d + q;
            match (p < dr, q < dr) {
                (true, true) => {
                    for (row, c) in &r.local[p * dr + q] {
                        let (p2, q2) = (row / dr, row % dr);
                        m.set(p2 * d + q2, col, c.clone());
                    }
                }
                (false, false) => {
                    for (row, c) in &s.local[(p - dr) * ds + (q - dr)] {
                        let (p2, q2) = (row / ds + dr, row % ds + dr);
                        m.set(p2 * d + q2, col, c.clone());
                    }
                }
                _ => m.set(q * d + p, col, Scalar::one()),
            }
        }
    }
    RMatrix::validate(d, m).expect("box-sum of R-matrices is an R-matrix")
}

/// `R ⊠ S` on `(W ⊗ V)^{⊗2}`: `R ⊗ S` transported along the middle swap
/// `(W ⊗ V)^{⊗2} ≅ W^{⊗2} ⊗ V^{⊗2}`.
pub fn box_tensor(r: &RMatrix, s: &RMatrix) -> RMatrix {
    let (dr, ds) = (r.d, s.d);
    let d = dr * ds;
    let mut m = Matrix::zeros(d * d, d * d);
    for w1 in 0..dr {
        for v1 in 0..ds {
            for w2 in 0..dr {
                for v2 in 0..ds {
                    let col = (w1 * ds + v1) * d + (w2 * ds + v2);
                    for (rr, a) in &r.local[w1 * dr + w2] {
                        let (w1p, w2p) = (rr / dr, rr % dr);
                        for (sr, b) in &s.local[v1 * ds + v2] {
                            let (v1p, v2p) = (sr / ds, sr % ds);
                            let row = (w1p * ds + v1p) * d + (w2p * ds + v2p);
                            m.set(row, col, a * b);
                        }
                    }
                }
            }
        }
    }
    RMatrix::validate(d, m).expect("box-tensor of R-matrices is an R-matrix")
}

/// Box-sum of `+1` on `C^{a_i}` for every `a_i` followed by `-1` on
/// `C^{b_j}` for every `b_j`.
pub fn normal_form(params: &ThomaParams) -> Result<RMatrix, RMatrixError> {
    let blocks = params
        .a()
        .iter()
        .map(|&a| RMatrix::identity(a as usize))
        .chain(params.b().iter().map(|&b| RMatrix::minus_identity(b as usize)));
    blocks.reduce(|acc, blk| box_sum(&acc, &blk)).ok_or(RMatrixError::EmptyParameters)
}

/// Equal dimension and equal cycle characters `χ(c_n)` for `2 ≤ n ≤ cutoff`.
pub fn equivalent(r: &RMatrix, s: &RMatrix, cutoff: usize) -> Result<bool, RMatrixError> {
    if cutoff < r.d.max(s.d) {
        return Err(RMatrixError::CutoffTooSmall { cutoff, d_r: r.d, d_s: s.d });
    }
    if r.d != s.d {
        return Ok(false);
    }
    Ok((2..=cutoff).all(|n| thoma::cycle_trace(r, n) == thoma::cycle_trace(s, n)))
}
