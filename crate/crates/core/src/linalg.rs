//! Dense and sparse linear algebra over the Gaussian rationals.
//!
//! Tensor indices are flattened with the first factor most significant, so
//! `kron` and [`perm_operator`] agree on which digit belongs to which factor.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use thiserror::Error;

use crate::scalar::{Rational, Scalar};
use crate::symgroup::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount { rows, cols, got: entries.len() });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, s: Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Integer entries, convenient for tests and fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Matrix::from_fn(r, c, |i, j| Scalar::from_int(rows[i][j]))
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col.iter() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        SparseVec::from_dense(&self.column(j))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    /// `true` when every column has at most one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        (0..self.cols).all(|j| (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).count() <= 1)
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, x) in v.iter() {
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out.add_entry(i, &(a * x));
                }
            }
        }
        out
    }

    /// Exact rank by Gaussian elimination with full pivoting; the pivot is the
    /// first nonzero entry of the remaining block in row-major order.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        for k in 0..m.min(n) {
            let pivot = (k..m).find_map(|r| (k..n).find(|&c| !a[r][c].is_zero()).map(|c| (r, c)));
            let Some((pr, pc)) = pivot else { break };
            a.swap(k, pr);
            if pc != k {
                for row in a.iter_mut() {
                    row.swap(k, pc);
                }
            }
            let inv = a[k][k].inv().expect("pivot is nonzero");
            for r in (k + 1)..m {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] * &inv;
                for c in k..n {
                    if a[k][c].is_zero() {
                        continue;
                    }
                    let t = &f * &a[k][c];
                    a[r][c] -= &t;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the column space in reduced row echelon form (leading entry 1,
    /// pivots strictly increasing). Its length is `rank()`.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::new();
        for j in 0..self.cols {
            ech.insert(self.sparse_column(j));
        }
        ech.into_rref().into_iter().map(|v| v.to_dense(self.rows)).collect()
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        kron(self, other)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product shape mismatch")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Kronecker product; entry `((i1,i2),(j1,j2))` is `A[i1,j1]·B[i2,j2]`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            let x = a.get(i1, j1);
            if x.is_zero() {
                continue;
            }
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    let y = b.get(i2, j2);
                    if y.is_zero() {
                        continue;
                    }
                    out.set(i1 * b.rows + i2, j1 * b.cols + j2, x * y);
                }
            }
        }
    }
    out
}

/// Splits a flat index into `n` base-`d` digits, most significant first.
pub fn index_digits(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for slot in digits.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    digits
}

pub fn digits_index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// The operator `v_1 ⊗ … ⊗ v_n ↦ v_{σ⁻¹(1)} ⊗ … ⊗ v_{σ⁻¹(n)}` on `(C^d)^{⊗n}`.
///
/// The factor sitting at position `j` moves to position `σ(j)`, which makes
/// `σ ↦ P(σ)` a homomorphism for `(στ)(x) = σ(τ(x))`.
pub fn perm_operator(sigma: &Permutation, d: usize) -> Matrix {
    let n = sigma.degree();
    let dim = d.pow(n as u32);
    let mut m = Matrix::zeros(dim, dim);
    let mut out = vec![0; n];
    for col in 0..dim {
        let x = index_digits(col, d, n);
        for (j, &xj) in x.iter().enumerate() {
            out[sigma.image(j)] = xj;
        }
        m.set(digits_index(&out, d), col, Scalar::one());
    }
    m
}

/// Sparse vector keyed by flat basis index. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(BTreeMap<usize, Scalar>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(i, Scalar::one());
        v
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in entries {
            v.add_entry(i, &x);
        }
        v
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (&i, x) in &self.0 {
            out[i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Scalar)> {
        self.0.iter()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.0.iter().next().map(|(&i, x)| (i, x))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    /// Adds `x` at index `i`, dropping the entry if it cancels.
    pub fn add_entry(&mut self, i: usize, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        match self.0.get_mut(&i) {
            Some(cur) => {
                *cur += x;
                if cur.is_zero() {
                    self.0.remove(&i);
                }
            }
            None => {
                self.0.insert(i, x.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVec, s: &Scalar) {
        for (&i, x) in &other.0 {
            self.add_entry(i, &(x * s));
        }
    }

    pub fn add_assign(&mut self, other: &SparseVec) {
        for (&i, x) in &other.0 {
            self.add_entry(i, x);
        }
    }

    pub fn scale(&self, s: &Scalar) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(&i, x)| (i, x * s)).collect())
    }

    pub fn scale_rational(&self, r: &Rational) -> SparseVec {
        self.scale(&Scalar::real(r.clone()))
    }

    /// Sesquilinear `⟨self, other⟩ = Σ conj(self_i)·other_i`.
    pub fn inner(&self, other: &SparseVec) -> Scalar {
        let (small, large, conj_small) =
            if self.nnz() <= other.nnz() { (self, other, true) } else { (other, self, false) };
        let mut acc = Scalar::zero();
        for (i, x) in &small.0 {
            if let Some(y) = large.0.get(i) {
                let t = if conj_small { &x.conj() * y } else { &y.conj() * x };
                acc += &t;
            }
        }
        acc
    }

    pub fn map_indices(&self, mut f: impl FnMut(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.0.iter().map(|(&i, x)| (f(i), x.clone())))
    }

    /// Tensor product with the first factor most significant.
    pub fn tensor(&self, other: &SparseVec, other_dim: usize) -> SparseVec {
        let mut out = BTreeMap::new();
        for (&i, x) in &self.0 {
            for (&j, y) in &other.0 {
                out.insert(i * other_dim + j, x * y);
            }
        }
        SparseVec(out)
    }
}

/// Incrementally maintained row echelon form of a set of sparse vectors.
///
/// Each stored row has leading coefficient 1 at its pivot and no entries
/// below it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let next = v.0.range(cursor..).find(|(i, _)| self.rows.contains_key(i)).map(|(&i, x)| (i, x.clone()));
            let Some((p, coef)) = next else { return v };
            v.add_scaled(&self.rows[&p], &(-coef));
            cursor = p + 1;
        }
    }

    /// Returns `true` when `v` was independent of the rows already present.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else { return false };
        let inv = lead.inv().expect("leading entry is nonzero");
        let row = r.scale(&inv);
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Reduced row echelon form, sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows = self.rows;
        for &p in pivots.iter().rev() {
            let row = rows[&p].clone();
            for &q in pivots.iter().filter(|&&q| q < p) {
                let coef = rows[&q].get(p);
                if !coef.is_zero() {
                    rows.get_mut(&q).unwrap().add_scaled(&row, &(-coef));
                }
            }
        }
        rows.into_values().collect()
    }
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank<I: IntoIterator<Item = SparseVec>>(vectors: I) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}
