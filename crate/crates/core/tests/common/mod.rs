//! Independent oracles shared by the integration tests: dense Kronecker
//! constructions, brute-force group checks and random test data.

#![allow(dead_code)]

use expfun_core::linalg::{kron, Matrix};
use expfun_core::rmatrix::normal_form;
use expfun_core::scalar::{rational, Scalar};
use expfun_core::symgroup::{enumerate, Permutation};
use expfun_core::{RMatrix, ThomaParams};
use rand::seq::SliceRandom;
use rand::Rng;

/// `id^{⊗(i−1)} ⊗ R ⊗ id^{⊗(n−i−1)}` as a dense matrix.
pub fn dense_local(r: &Matrix, d: usize, n: usize, i: usize) -> Matrix {
    let left = Matrix::identity(d.pow((i - 1) as u32));
    let right = Matrix::identity(d.pow((n - i - 1) as u32));
    kron(&kron(&left, r), &right)
}

/// Dense product `R_{w_1} ⋯ R_{w_k}`.
pub fn dense_word(r: &Matrix, d: usize, n: usize, word: &[usize]) -> Matrix {
    word.iter().fold(Matrix::identity(d.pow(n as u32)), |acc, &i| &acc * &dense_local(r, d, n, i))
}

/// All multisets of positive integers with sum at most `max`, each sorted
/// decreasingly; includes the empty multiset.
pub fn multisets(max: u64) -> Vec<Vec<u64>> {
    fn go(remaining: u64, largest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        for x in (1..=largest.min(remaining)).rev() {
            cur.push(x);
            go(remaining - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max, max, &mut Vec::new(), &mut out);
    out
}

/// All parameter sets with `Σa ≤ max_a`, `Σb ≤ max_b` and `1 ≤ d ≤ max_d`.
pub fn all_params(max_a: u64, max_b: u64, max_d: u64) -> Vec<ThomaParams> {
    let mut out = Vec::new();
    for a in multisets(max_a) {
        for b in multisets(max_b) {
            let d: u64 = a.iter().chain(&b).sum();
            if (1..=max_d).contains(&d) {
                out.push(ThomaParams::new(a.clone(), b).unwrap());
            }
        }
    }
    out
}

pub fn params(a: &[u64], b: &[u64]) -> ThomaParams {
    ThomaParams::new(a.to_vec(), b.to_vec()).unwrap()
}

pub fn nf(a: &[u64], b: &[u64]) -> RMatrix {
    normal_form(&params(a, b)).unwrap()
}

/// A random unitary on `C^d` with Gaussian-rational entries: a product of
/// Pythagorean rotations, the Hadamard-like `(1+i)/2` block, phases and
/// coordinate permutations.
pub fn random_unitary<R: Rng>(d: usize, rng: &mut R) -> Matrix {
    let mut u = Matrix::identity(d);
    for _ in 0..3 {
        let g = match rng.gen_range(0..4) {
            0 if d >= 2 => {
                let (p, q) = pick_two(d, rng);
                let (c, s) = (Scalar::from_ratio(3, 5), Scalar::from_ratio(4, 5));
                let mut g = Matrix::identity(d);
                g.set(p, p, c.clone());
                g.set(q, q, c);
                g.set(p, q, -&s);
                g.set(q, p, s);
                g
            }
            1 if d >= 2 => {
                let (p, q) = pick_two(d, rng);
                let h = |re: i64, im: i64| Scalar::new(rational(re, 2), rational(im, 2));
                let mut g = Matrix::identity(d);
                g.set(p, p, h(1, 1));
                g.set(q, q, h(1, 1));
                g.set(p, q, h(1, -1));
                g.set(q, p, h(1, -1));
                g
            }
            2 => {
                let phases = [Scalar::one(), Scalar::from_int(-1), Scalar::i(), -&Scalar::i()];
                Matrix::from_fn(d, d, |i, j| if i == j { phases.choose(rng).unwrap().clone() } else { Scalar::zero() })
            }
            _ => {
                let mut perm: Vec<usize> = (0..d).collect();
                perm.shuffle(rng);
                Matrix::from_fn(d, d, |i, j| if perm[j] == i { Scalar::one() } else { Scalar::zero() })
            }
        };
        u = &g * &u;
    }
    u
}

fn pick_two<R: Rng>(d: usize, rng: &mut R) -> (usize, usize) {
    let p = rng.gen_range(0..d);
    let mut q = rng.gen_range(0..d - 1);
    if q >= p {
        q += 1;
    }
    (p, q)
}

/// A random R-matrix with `d ≤ max_d`: a normal form, conjugated by a random
/// unitary half of the time.
pub fn random_r<R: Rng>(max_d: u64, rng: &mut R) -> RMatrix {
    let all = all_params(max_d, max_d, max_d);
    let p = all.choose(rng).unwrap();
    let r = normal_form(p).unwrap();
    if rng.gen_bool(0.5) {
        r.conjugate(&random_unitary(r.d(), rng)).unwrap()
    } else {
        r
    }
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// A word for `σ` different from `σ.adjacent_word()`: the reversed word of
/// `σ⁻¹`, padded with a cancelling pair `τ_j τ_j` if that coincides.
pub fn alternative_word<R: Rng>(sigma: &Permutation, rng: &mut R) -> Vec<usize> {
    let n = sigma.degree();
    let mut w: Vec<usize> = sigma.inverse().adjacent_word().into_iter().rev().collect();
    if w == sigma.adjacent_word() && n >= 2 {
        let j = rng.gen_range(1..n);
        let pos = rng.gen_range(0..=w.len());
        w.splice(pos..pos, [j, j]);
    }
    w
}

/// `σ⁻¹σ′ ∈ S_i × S_j × …` by direct inspection of block membership.
pub fn same_left_coset(a: &Permutation, b: &Permutation, parts: &[usize]) -> bool {
    let h = a.inverse().compose(b);
    let mut start = 0;
    for &p in parts {
        let block = start..start + p;
        if block.clone().any(|x| !block.contains(&h.image(x))) {
            return false;
        }
        start += p;
    }
    true
}

pub fn all_perms(n: usize) -> Vec<Permutation> {
    enumerate(n, 8).unwrap().collect()
}
