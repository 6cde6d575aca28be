//! Permutations of `{1, …, n}` and the bits of symmetric-group combinatorics
//! the representation code needs.
//!
//! Storage is 0-based; the one-line notation used for I/O is 1-based, so
//! `[2, 1, 3]` is the transposition `(1 2)` in `S₃`. Composition is
//! `(σ∘τ)(x) = σ(τ(x))` everywhere.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymGroupError {
    #[error("not a permutation: {0:?}")]
    NotABijection(Vec<usize>),
    #[error("enumerating S_{n} exceeds the cap n <= {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("Young subgroup parts {parts:?} do not sum to {n}")]
    BadParts { n: usize, parts: Vec<usize> },
    #[error("generator index {index} out of range for S_{n}")]
    BadGenerator { n: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, SymGroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(SymGroupError::NotABijection(images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(line: &[usize]) -> Result<Self, SymGroupError> {
        if line.contains(&0) {
            return Err(SymGroupError::NotABijection(line.to_vec()));
        }
        Permutation::from_images(line.iter().map(|&x| x - 1).collect())
    }

    /// Swaps the 0-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i, j);
        p
    }

    /// The generator `τ_i` exchanging `i` and `i+1` (1-based, `1 ≤ i < n`).
    pub fn adjacent(n: usize, i: usize) -> Result<Self, SymGroupError> {
        if i == 0 || i >= n {
            return Err(SymGroupError::BadGenerator { n, index: i });
        }
        Ok(Permutation::transposition(n, i - 1, i))
    }

    /// Product `τ_{w_1} ∘ … ∘ τ_{w_k}` of a word in adjacent transpositions.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, SymGroupError> {
        let mut p = Permutation::identity(n);
        for &i in word {
            p = p.compose(&Permutation::adjacent(n, i)?);
        }
        Ok(p)
    }

    /// The cycle `(1 2 … n) = τ_1 τ_2 ⋯ τ_{n-1}`.
    pub fn long_cycle(n: usize) -> Self {
        Permutation { images: (0..n).map(|i| (i + 1) % n.max(1)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of the 0-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Embeds into `S_total`, acting on the points `offset..offset+n` and
    /// fixing everything else.
    pub fn embed(&self, offset: usize, total: usize) -> Permutation {
        assert!(offset + self.degree() <= total);
        let mut p = Permutation::identity(total);
        for (i, &x) in self.images.iter().enumerate() {
            p.images[offset + i] = offset + x;
        }
        p
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn inversions(&self) -> usize {
        let n = self.degree();
        (0..n).map(|i| ((i + 1)..n).filter(|&j| self.images[i] > self.images[j]).count()).sum()
    }

    /// A word `[i_1, …, i_k]` with `τ_{i_1} ∘ … ∘ τ_{i_k} = self`.
    ///
    /// Bubble sort on the one-line notation: swapping positions `j, j+1`
    /// right-multiplies by `τ_j`, so the word is the swap sequence reversed.
    /// The result is always a reduced word.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut line = self.images.clone();
        let n = line.len();
        let mut swaps = Vec::new();
        loop {
            let mut swapped = false;
            for j in 0..n.saturating_sub(1) {
                if line[j] > line[j + 1] {
                    line.swap(j, j + 1);
                    swaps.push(j + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    /// Whether `self` lies in `S_{p_1} × S_{p_2} × …`, the stabiliser of the
    /// consecutive blocks of sizes `parts`.
    pub fn in_young_subgroup(&self, parts: &[usize]) -> bool {
        let block = block_labels(parts);
        self.images.iter().enumerate().all(|(i, &x)| block[i] == block[x])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

fn block_labels(parts: &[usize]) -> Vec<usize> {
    parts.iter().enumerate().flat_map(|(b, &len)| std::iter::repeat_n(b, len)).collect()
}

/// Cycle lengths, fixed points included, sorted weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The permutation `(1 … ℓ_1)(ℓ_1+1 … ℓ_1+ℓ_2)…` whose cycles occupy
    /// consecutive blocks.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in &self.parts {
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }

    /// Size of the conjugacy class, `n! / z_λ`.
    pub fn class_size(&self) -> u128 {
        let n = self.degree() as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        let mut z: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let len = self.parts[i];
            let mult = self.parts[i..].iter().take_while(|&&p| p == len).count();
            z *= (len as u128).pow(mult as u32) * fact(mult as u128);
            i += mult;
        }
        fact(n) / z
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n`, each weakly decreasing, in reverse lexicographic
/// order starting from `(n)`.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rem == 0 {
            out.push(CycleType { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub const DEFAULT_ENUM_CAP: usize = 8;

/// Every element of `S_n` exactly once, in lexicographic order of the
/// one-line notation.
pub fn enumerate(n: usize, cap: usize) -> Result<Permutations, SymGroupError> {
    if n > cap {
        return Err(SymGroupError::EnumerationCap { n, cap });
    }
    Ok(Permutations { next: Some((0..n).collect()) })
}

#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { images: cur })
    }
}

/// Minimal-length representatives of the left cosets `S_n / (S_i × S_j)`.
///
/// These are the `(i, j)`-shuffles: increasing on `1..=i` and on
/// `i+1..=n`. There are `C(n, i)` of them and the identity comes first.
pub fn coset_reps(n: usize, i: usize, j: usize) -> Result<Vec<Permutation>, SymGroupError> {
    if i + j != n {
        return Err(SymGroupError::BadParts { n, parts: vec![i, j] });
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(i);
    fn subsets(start: usize, n: usize, k: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == k {
            out.push(chosen.clone());
            return;
        }
        for x in start..n {
            if n - x < k - chosen.len() {
                break;
            }
            chosen.push(x);
            subsets(x + 1, n, k, chosen, out);
            chosen.pop();
        }
    }
    let mut sets = Vec::new();
    subsets(0, n, i, &mut chosen, &mut sets);
    for first in sets {
        let mut images = first.clone();
        images.extend((0..n).filter(|x| !first.contains(x)));
        out.push(Permutation { images });
    }
    Ok(out)
}

/// `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}
