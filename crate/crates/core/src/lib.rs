//! Exact-arithmetic workbench for involutive unitary R-matrices and the
//! polynomial exponential functors they determine.
//!
//! * [`scalar`], [`linalg`]: Gaussian rationals, dense and sparse matrices,
//!   Kronecker products, tensor-factor permutations, exact rank.
//! * [`symgroup`]: permutations, reduced words, cycle types, shuffles.
//! * [`rmatrix`]: validation of Yang–Baxter solutions, box-sum and
//!   box-tensor, normal forms, the induced `S_n` representations.
//! * [`thoma`]: characters on cycles, Thoma parameter extraction, trivial
//!   multiplicities.
//! * [`expfunctor`]: invariant-subspace models of `F^R`, the coset-averaged
//!   embeddings and their monoidal checks, recovery of `R`.
//! * [`charclass`]: truncated power series and the rational characteristic
//!   class coefficients of the associated twists.

pub mod charclass;
pub mod expfunctor;
pub mod format;
pub mod linalg;
mod poly;
pub mod rmatrix;
pub mod scalar;
pub mod symgroup;
pub mod thoma;

pub use linalg::{kron, perm_operator, Matrix, SparseVec};
pub use rmatrix::RMatrix;
pub use scalar::{Rational, Scalar};
pub use symgroup::{CycleType, Permutation};
pub use thoma::ThomaParams;

/// Size limits for computations that would otherwise blow up.
///
/// Exceeding a cap is always reported as an error, never approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest ambient dimension for which dense matrices are materialised.
    pub dense: usize,
    /// Largest `n` for which all of `S_n` is enumerated.
    pub enumerate: usize,
    /// Largest ambient dimension swept basis vector by basis vector in
    /// matrix-free computations.
    pub sweep: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { dense: 4096, enumerate: symgroup::DEFAULT_ENUM_CAP, sweep: 1 << 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{what}: size {size} exceeds cap {cap}")]
pub struct SizeCapExceeded {
    pub what: &'static str,
    pub size: u128,
    pub cap: u128,
}

pub(crate) fn check_cap(what: &'static str, size: u128, cap: usize) -> Result<(), SizeCapExceeded> {
    if size > cap as u128 {
        Err(SizeCapExceeded { what, size, cap: cap as u128 })
    } else {
        Ok(())
    }
}

/// `base^exp` without overflow.
pub(crate) fn pow_u128(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}
