//! Explicit models of the exponential functors `F^R`.
//!
//! For an R-matrix `R` on `W` with parameters `(∅, b)` and a space `V = C^k`,
//! `F^R_n(V)` is the subspace of `(W ⊗ V)^{⊗n}` fixed by `ρ⁽ⁿ⁾_{R⊠T}`, `T` the
//! flip on `V ⊗ V`. Basis index of `W ⊗ V` is `w·k + v`.
//!
//! The embeddings `Φ_{i,j}: F_i(V₁) ⊗ F_j(V₂) → F_n(V₁ ⊕ V₂)` are coset sums
//! `Σ_σ ρ(σ)∘ι` over the `(i, j)`-shuffles, kept without the `1/√C(n,i)`
//! normalisation so that everything stays rational. `V₁` occupies the first
//! coordinates of `V₁ ⊕ V₂`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::rmatrix::{box_tensor, RMatrix, RMatrixError};
use crate::scalar::{Rational, Scalar};
use crate::symgroup::{binomial, coset_reps, SymGroupError};
use crate::thoma::{class_sum_dimension, e_n_closed_form, extract, ThomaError, ThomaParams};
use crate::{check_cap, pow_u128, Caps, SizeCapExceeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpFunctorError {
    #[error("block dimensions must be positive")]
    ZeroBlock,
    #[error("R has parameters {0}; exponential functors need a = ∅")]
    AlphaParametersPresent(ThomaParams),
    #[error("dim F_{n} is {computed}, closed form gives {expected}")]
    DimensionMismatch { n: usize, computed: u64, expected: u128 },
    #[error("recovered matrix differs from R in column {column}")]
    RecoveryMismatch { column: usize },
    #[error("recovery needs a model over C² with degrees up to 2 (got V = C^{v_dim}, degree {max_n})")]
    RecoveryPrecondition { v_dim: usize, max_n: usize },
    #[error("Φ image of a basis tensor is not fixed by the symmetric group")]
    NotInvariant,
    #[error(transparent)]
    Thoma(#[from] ThomaError),
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
    #[error(transparent)]
    SymGroup(#[from] SymGroupError),
    #[error(transparent)]
    SizeCap(#[from] SizeCapExceeded),
}

/// `F^{W₁} ⊗ ⋯ ⊗ F^{W_m}` with `dim W_i = b_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctorSpec {
    b: Vec<u64>,
}

impl FunctorSpec {
    pub fn new(b: Vec<u64>) -> Result<Self, ExpFunctorError> {
        if b.contains(&0) {
            return Err(ExpFunctorError::ZeroBlock);
        }
        Ok(FunctorSpec { b })
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn union(&self, other: &FunctorSpec) -> FunctorSpec {
        FunctorSpec { b: self.b.iter().chain(&other.b).copied().collect() }
    }
}

pub fn convolve(p: &[u128], q: &[u128]) -> Vec<u128> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Homogeneous dimensions of `F(C^k)` in degrees `0..=k·m`: each factor
/// `F^W(C^k) = ⊕_n Λⁿ(C^k) ⊗ W^{⊗n}` contributes `C(k,n)·bⁿ`.
pub fn fw_table(spec: &FunctorSpec, k: usize) -> Vec<u128> {
    spec.b.iter().fold(vec![1], |acc, &b| {
        let factor: Vec<u128> = (0..=k).map(|n| binomial(k as u64, n as u64) as u128 * (b as u128).pow(n as u32)).collect();
        convolve(&acc, &factor)
    })
}

pub fn fw_dims(spec: &FunctorSpec, k: usize, n: usize) -> u128 {
    fw_table(spec, k).get(n).copied().unwrap_or(0)
}

/// Homogeneous dimensions of `(F_p ⊗ F_q)(C^k)`.
pub fn tensor_dims(p: &FunctorSpec, q: &FunctorSpec, k: usize) -> Vec<u128> {
    convolve(&fw_table(p, k), &fw_table(q, k))
}

/// Parameters `(∅, b)` of `R`, or an error when `α`-parameters appear.
pub fn functor_params(r: &RMatrix) -> Result<ThomaParams, ExpFunctorError> {
    let params = extract(r, false)?;
    if !params.a().is_empty() {
        return Err(ExpFunctorError::AlphaParametersPresent(params));
    }
    Ok(params)
}

/// Dimensions of `F^R_n(C^k)` from class sums of cycle traces, for `n`
/// from 0 up to and including the first degree where the closed form
/// vanishes. Needs no enumeration of the ambient space.
pub fn functor_dims_by_classes(r: &RMatrix, k: usize) -> Result<Vec<u64>, ExpFunctorError> {
    let params = functor_params(r)?;
    let mut out = Vec::new();
    for n in 0.. {
        out.push(class_sum_dimension(r, k, n)?);
        if e_n_closed_form(params.b(), k as u64, n) == 0 {
            break;
        }
    }
    Ok(out)
}

/// `F^R` evaluated on `C^{v_dim}`: exact bases of every homogeneous piece up
/// to the vanishing degree or `max_n`, whichever comes first.
#[derive(Debug, Clone)]
pub struct FunctorModel {
    r: RMatrix,
    params: ThomaParams,
    v_dim: usize,
    rt: RMatrix,
    bases: Vec<Vec<SparseVec>>,
}

pub fn build_model(r: &RMatrix, v_dim: usize, max_n: usize, caps: &Caps) -> Result<FunctorModel, ExpFunctorError> {
    let params = functor_params(r)?;
    let rt = box_tensor(r, &RMatrix::flip(v_dim));
    let mut bases = Vec::new();
    for n in 0..=max_n {
        let expected = e_n_closed_form(params.b(), v_dim as u64, n);
        let basis = rt.invariant_basis(n, caps)?;
        if basis.len() as u128 != expected {
            return Err(ExpFunctorError::DimensionMismatch { n, computed: basis.len() as u64, expected });
        }
        bases.push(basis);
        if expected == 0 {
            break;
        }
    }
    Ok(FunctorModel { r: r.clone(), params, v_dim, rt, bases })
}

impl FunctorModel {
    pub fn r(&self) -> &RMatrix {
        &self.r
    }

    pub fn params(&self) -> &ThomaParams {
        &self.params
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    /// `R ⊠ T`, the R-matrix acting on `(W ⊗ V)^{⊗2}`.
    pub fn rt(&self) -> &RMatrix {
        &self.rt
    }

    /// Highest degree with a stored basis.
    pub fn max_n(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Basis of `F_n(V)`; empty beyond the stored degrees, where it vanishes
    /// or was not built.
    pub fn basis(&self, n: usize) -> &[SparseVec] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn ambient_dim(&self, n: usize) -> u128 {
        pow_u128(self.rt.d(), n)
    }

    /// The basis of `F_n(V)` as the columns of a matrix.
    pub fn basis_matrix(&self, n: usize, caps: &Caps) -> Result<Matrix, ExpFunctorError> {
        let rows = self.ambient_dim(n);
        check_cap("dense basis export", rows, caps.dense)?;
        Ok(Matrix::from_sparse_columns(rows as usize, self.basis(n)))
    }
}

/// `ι`: `(W⊗V₁)^{⊗i} ⊗ (W⊗V₂)^{⊗j} → (W⊗V)^{⊗(i+j)}` with `V = V₁ ⊕ V₂`,
/// `dim V = k`.
fn iota(x: &SparseVec, d: usize, v1: usize, v2: usize, i: usize, j: usize) -> SparseVec {
    let k = v1 + v2;
    let (b1, b2, bk) = (d * v1, d * v2, d * k);
    let low = b2.pow(j as u32);
    x.map_indices(|idx| {
        let (mut hi, mut lo) = (idx / low, idx % low);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..j {
            let t = lo % b2;
            lo /= b2;
            out += ((t / v2) * k + v1 + t % v2) * place;
            place *= bk;
        }
        for _ in 0..i {
            let t = hi % b1;
            hi /= b1;
            out += ((t / v1) * k + t % v1) * place;
            place *= bk;
        }
        out
    })
}

/// Data shared by every `Φ` into `F(V₁ ⊕ V₂)`.
struct PhiContext {
    rt: RMatrix,
    d: usize,
    v1: usize,
    v2: usize,
}

impl PhiContext {
    fn new(r: &RMatrix, v1: usize, v2: usize) -> Self {
        PhiContext { rt: box_tensor(r, &RMatrix::flip(v1 + v2)), d: r.d(), v1, v2 }
    }

    /// `Φ_{i,j}(x) = Σ_σ ρ(σ) ι(x)` over the `(i, j)`-shuffles `σ`.
    fn apply(&self, x: &SparseVec, i: usize, j: usize, caps: &Caps) -> Result<SparseVec, ExpFunctorError> {
        let n = i + j;
        check_cap("ambient of Φ", pow_u128(self.rt.d(), n), caps.sweep)?;
        let base = iota(x, self.d, self.v1, self.v2, i, j);
        let mut out = SparseVec::new();
        for sigma in coset_reps(n, i, j)? {
            out.add_assign(&self.rt.rep_apply_sparse(n, &sigma, &base));
        }
        Ok(out)
    }
}

/// Images under `Φ_{i,j}` of `x ⊗ y` for basis vectors `x` of `F_i(V₁)` and
/// `y` of `F_j(V₂)`, `x` varying slowest.
fn phi_columns(
    ctx: &PhiContext,
    m1: &FunctorModel,
    m2: &FunctorModel,
    i: usize,
    j: usize,
    caps: &Caps,
) -> Result<Vec<SparseVec>, ExpFunctorError> {
    let inner = pow_u128(ctx.d * ctx.v2, j) as usize;
    let mut cols = Vec::new();
    for x in m1.basis(i) {
        for y in m2.basis(j) {
            cols.push(ctx.apply(&x.tensor(y, inner), i, j, caps)?);
        }
    }
    Ok(cols)
}

fn gram(vs: &[SparseVec]) -> Vec<Vec<Scalar>> {
    vs.iter().map(|x| vs.iter().map(|y| x.inner(y)).collect()).collect()
}

/// The matrix of `Φ_{i,j}` on the product of the invariant bases of
/// `F_i(C^{v1})` and `F_j(C^{v2})`.
pub fn phi_embed(r: &RMatrix, v1: usize, v2: usize, i: usize, j: usize, caps: &Caps) -> Result<Matrix, ExpFunctorError> {
    let m1 = build_model(r, v1, i, caps)?;
    let m2 = build_model(r, v2, j, caps)?;
    let ctx = PhiContext::new(r, v1, v2);
    let cols = phi_columns(&ctx, &m1, &m2, i, j, caps)?;
    let rows = pow_u128(ctx.rt.d(), i + j);
    check_cap("dense Φ matrix", rows, caps.dense)?;
    Ok(Matrix::from_sparse_columns(rows as usize, &cols))
}

/// Outcome of [`check_kappa_iso`] for one pair `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaBlock {
    pub i: usize,
    pub j: usize,
    pub domain_dim: usize,
    /// `c` with `⟨Φx, Φy⟩ = c·⟨x, y⟩` on the whole domain, if one exists.
    pub isometry_constant: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaReport {
    pub n: usize,
    pub blocks: Vec<KappaBlock>,
    pub fixed_dim: usize,
    pub image_rank: usize,
    /// Human-readable description of each failed check.
    pub failures: Vec<String>,
}

impl KappaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies that `κⁿ = ⊕_{i+j=n} Φ_{i,j}` maps `⊕ F_i(V₁) ⊗ F_j(V₂)`
/// bijectively onto `F_n(V₁ ⊕ V₂)` with `Φ_{i,j}` a `C(n,i)`-scaled isometry
/// and mutually orthogonal images.
pub fn check_kappa_iso(r: &RMatrix, v1: usize, v2: usize, n: usize, caps: &Caps) -> Result<KappaReport, ExpFunctorError> {
    let m1 = build_model(r, v1, n, caps)?;
    let m2 = build_model(r, v2, n, caps)?;
    let target = build_model(r, v1 + v2, n, caps)?;
    let ctx = PhiContext::new(r, v1, v2);
    let mut failures = Vec::new();
    let mut blocks = Vec::new();
    let mut images: Vec<(usize, Vec<SparseVec>)> = Vec::new();
    for i in (0..=n).rev() {
        let j = n - i;
        let cols = phi_columns(&ctx, &m1, &m2, i, j, caps)?;
        for (c, col) in cols.iter().enumerate() {
            if let Some(l) = (1..n).find(|&l| &ctx.rt.apply_local(col, n, l) != col) {
                failures.push(format!("Φ_{{{i},{j}}} column {c} is not fixed by τ_{l}"));
            }
        }
        let domain: Vec<Vec<Scalar>> = {
            let (g1, g2) = (gram(m1.basis(i)), gram(m2.basis(j)));
            let mut out = Vec::new();
            for r1 in &g1 {
                for r2 in &g2 {
                    out.push(r1.iter().flat_map(|x| r2.iter().map(move |y| x * y)).collect());
                }
            }
            out
        };
        let image = gram(&cols);
        let constant = isometry_constant(&domain, &image);
        let expected = Rational::from_integer(BigInt::from(binomial(n as u64, i as u64)));
        if !cols.is_empty() && constant.as_ref() != Some(&expected) {
            failures.push(format!("Φ_{{{i},{j}}} is not a {expected}-scaled isometry"));
        }
        for (i2, other) in &images {
            if cols.iter().any(|x| other.iter().any(|y| !x.inner(y).is_zero())) {
                failures.push(format!("images of Φ_{{{i},{j}}} and Φ_{{{i2},{}}} are not orthogonal", n - i2));
            }
        }
        blocks.push(KappaBlock { i, j, domain_dim: cols.len(), isometry_constant: constant });
        images.push((i, cols));
    }
    let fixed_dim = target.basis(n).len();
    let mut ech = Echelon::new();
    for (_, cols) in &images {
        for c in cols {
            ech.insert(c.clone());
        }
    }
    let image_rank = ech.rank();
    let total: usize = blocks.iter().map(|b| b.domain_dim).sum();
    if total != fixed_dim {
        failures.push(format!("domain dimensions sum to {total}, dim F_{n}(V₁⊕V₂) is {fixed_dim}"));
    }
    if image_rank != fixed_dim {
        failures.push(format!("images span dimension {image_rank}, expected {fixed_dim}"));
    }
    Ok(KappaReport { n, blocks, fixed_dim, image_rank, failures })
}

/// `c` with `image = c·domain` entrywise, when `domain` is not all zero.
fn isometry_constant(domain: &[Vec<Scalar>], image: &[Vec<Scalar>]) -> Option<Rational> {
    let (r, c) = (0..domain.len()).find_map(|r| (0..domain[r].len()).find(|&c| !domain[r][c].is_zero()).map(|c| (r, c)))?;
    let ratio = &image[r][c] / &domain[r][c];
    if !ratio.is_real() {
        return None;
    }
    let ok = domain.iter().zip(image).all(|(dr, ir)| dr.iter().zip(ir).all(|(x, y)| &(x * &ratio) == y));
    ok.then_some(ratio.re)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocReport {
    /// Number of basis triples compared.
    pub checked: usize,
    /// First triple `(x, y, z)` of basis indices where the composites differ.
    pub mismatch: Option<(usize, usize, usize)>,
}

impl AssocReport {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares `Φ^{1,23}∘(id ⊗ Φ^{2,3})` with `Φ^{12,3}∘(Φ^{1,2} ⊗ id)` on every
/// triple of basis vectors of `F_i(V₁) ⊗ F_j(V₂) ⊗ F_k(V₃)`.
pub fn check_associativity(
    r: &RMatrix,
    dims: (usize, usize, usize),
    degrees: (usize, usize, usize),
    caps: &Caps,
) -> Result<AssocReport, ExpFunctorError> {
    let (v1, v2, v3) = dims;
    let (i, j, k) = degrees;
    let d = r.d();
    let m1 = build_model(r, v1, i, caps)?;
    let m2 = build_model(r, v2, j, caps)?;
    let m3 = build_model(r, v3, k, caps)?;
    let phi_23 = PhiContext::new(r, v2, v3);
    let phi_1_23 = PhiContext::new(r, v1, v2 + v3);
    let phi_12 = PhiContext::new(r, v1, v2);
    let phi_12_3 = PhiContext::new(r, v1 + v2, v3);
    let mut checked = 0;
    for (a, x) in m1.basis(i).iter().enumerate() {
        for (b, y) in m2.basis(j).iter().enumerate() {
            let xy = phi_12.apply(&x.tensor(y, pow_u128(d * v2, j) as usize), i, j, caps)?;
            for (c, z) in m3.basis(k).iter().enumerate() {
                let yz = phi_23.apply(&y.tensor(z, pow_u128(d * v3, k) as usize), j, k, caps)?;
                let lhs = phi_1_23.apply(&x.tensor(&yz, pow_u128(d * (v2 + v3), j + k) as usize), i, j + k, caps)?;
                let rhs = phi_12_3.apply(&xy.tensor(z, pow_u128(d * v3, k) as usize), i + j, k, caps)?;
                checked += 1;
                if lhs != rhs {
                    return Ok(AssocReport { checked, mismatch: Some((a, b, c)) });
                }
            }
        }
    }
    Ok(AssocReport { checked, mismatch: None })
}

/// Index of `w_a ⊗ e_1 ⊗ w_b ⊗ e_2` in `(W ⊗ C²)^{⊗2}`.
fn slot(d: usize, a: usize, b: usize) -> usize {
    (2 * a) * (2 * d) + 2 * b + 1
}

/// Applies `F(s)` for the coordinate swap `s` of `C²` to a vector of
/// `(W ⊗ C²)^{⊗n}`.
fn swap_action(v: &SparseVec, d: usize, n: usize) -> SparseVec {
    let base = 2 * d;
    v.map_indices(|mut idx| {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..n {
            let t = idx % base;
            idx /= base;
            out += (t ^ 1) * place;
            place *= base;
        }
        out
    })
}

/// Reads `R` back off `F^R(C²)`: `Φ_{1,1}(w_a ⊗ w_b)` contains
/// `w_a ⊗ e_1 ⊗ w_b ⊗ e_2` with coefficient 1, and after the swap of `C²`
/// the coefficient of `w_c ⊗ e_1 ⊗ w_d ⊗ e_2` is `R[(c,d),(a,b)]`.
pub fn recover_r(model: &FunctorModel, caps: &Caps) -> Result<Matrix, ExpFunctorError> {
    if model.v_dim != 2 || model.max_n() < 2 {
        return Err(ExpFunctorError::RecoveryPrecondition { v_dim: model.v_dim, max_n: model.max_n() });
    }
    let d = model.r.d();
    let ctx = PhiContext::new(&model.r, 1, 1);
    let mut span = Echelon::new();
    for v in model.basis(2) {
        span.insert(v.clone());
    }
    let mut m = Matrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let u = ctx.apply(&SparseVec::basis(a * d + b), 1, 1, caps)?;
            if u.get(slot(d, a, b)) != Scalar::one() || !span.contains(&u) {
                return Err(ExpFunctorError::NotInvariant);
            }
            let s = swap_action(&u, d, 2);
            for c in 0..d {
                for e in 0..d {
                    m.set(c * d + e, a * d + b, s.get(slot(d, c, e)));
                }
            }
        }
    }
    if let Some(column) = (0..d * d).find(|&c| m.column(c) != model.r.matrix().column(c)) {
        return Err(ExpFunctorError::RecoveryMismatch { column });
    }
    Ok(m)
}

/// The swap of `C²` acting on `F_1(C²)`, written in the basis
/// `κ¹(w_a ⊗ 1) = w_a ⊗ e_1`, `κ¹(1 ⊗ w_a) = w_a ⊗ e_2` of `W ⊕ W`.
pub fn degree_one_swap(model: &FunctorModel, caps: &Caps) -> Result<Matrix, ExpFunctorError> {
    if model.v_dim != 2 {
        return Err(ExpFunctorError::RecoveryPrecondition { v_dim: model.v_dim, max_n: model.max_n() });
    }
    let d = model.r.d();
    let ctx = PhiContext::new(&model.r, 1, 1);
    let mut images = Vec::with_capacity(2 * d);
    for a in 0..d {
        images.push(ctx.apply(&SparseVec::basis(a), 1, 0, caps)?);
    }
    for a in 0..d {
        images.push(ctx.apply(&SparseVec::basis(a), 0, 1, caps)?);
    }
    // each image is a single basis vector of W ⊗ C², so coordinates are
    // read off by position
    let position = |v: &SparseVec| images.iter().position(|w| w == v);
    let mut m = Matrix::zeros(2 * d, 2 * d);
    for (col, u) in images.iter().enumerate() {
        let s = swap_action(u, d, 1);
        let row = position(&s).ok_or(ExpFunctorError::NotInvariant)?;
        m.set(row, col, Scalar::one());
    }
    Ok(m)
}

/// Total dimension `Σ_n dim F_n`.
pub fn total_dim(dims: &[u64]) -> u128 {
    dims.iter().map(|&x| x as u128).sum()
}

/// `Π_j (1 + b_j)^k`.
pub fn product_formula(b: &[u64], k: usize) -> u128 {
    b.iter().map(|&x| (1 + x as u128).pow(k as u32)).product()
}
