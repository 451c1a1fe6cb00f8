//! Compositions (indices), set partitions, and small combinatorial helpers.
//!
//! An [`Index`] is a finite tuple of positive integers `(k_1, ..., k_r)`;
//! its weight is `k_1 + ... + k_r` and its depth is `r`. The empty index is
//! allowed everywhere and has weight 0. "Admissible" means `k_r >= 2`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("index parts must be positive"));
        }
        Ok(Index(parts))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// `({u}^a, v, {u}^b)` style builder: `a` copies of `u`, then `mid`,
    /// then `b` copies of `u`.
    pub fn padded(u: u32, a: usize, mid: u32, b: usize) -> Self {
        let mut parts = vec![u; a];
        parts.push(mid);
        parts.extend(std::iter::repeat_n(u, b));
        Index(parts)
    }

    /// `({k}^r)`: `r` copies of `k`.
    pub fn repeated(k: u32, r: usize) -> Self {
        Index(vec![k; r])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Last part at least 2 (vacuously true for the empty index).
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    pub fn reversed(&self) -> Index {
        let mut v = self.0.clone();
        v.reverse();
        Index(v)
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    /// All `2^{r-1}` comma/plus contractions: between consecutive parts
    /// either keep the comma or add the parts. Expands a star value into
    /// plain values: `zeta*(k) = sum over contractions of zeta`.
    pub fn contractions(&self) -> Vec<Index> {
        let r = self.depth();
        if r == 0 {
            return vec![Index::empty()];
        }
        let mut out = Vec::with_capacity(1 << (r - 1));
        for mask in 0u32..(1 << (r - 1)) {
            let mut parts = vec![self.0[0]];
            for j in 1..r {
                if mask & (1 << (j - 1)) != 0 {
                    *parts.last_mut().unwrap() += self.0[j];
                } else {
                    parts.push(self.0[j]);
                }
            }
            out.push(Index(parts));
        }
        out
    }

    /// Parse "2,3" or "" (empty index). Spaces allowed around commas.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Index::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::domain(format!("bad index component {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u32]> for Index {
    fn from(parts: &[u32]) -> Self {
        Index(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Index {
    fn from(parts: [u32; N]) -> Self {
        Index(parts.to_vec())
    }
}

/// All compositions of `k` into exactly `r` positive parts, in lexicographic
/// order. There are `binom(k-1, r-1)` of them.
pub fn compositions(k: u32, r: usize) -> Vec<Index> {
    let mut out = Vec::new();
    if r == 0 {
        if k == 0 {
            out.push(Index::empty());
        }
        return out;
    }
    let mut cur = Vec::with_capacity(r);
    fill_compositions(k, r, &mut cur, &mut out);
    out
}

fn fill_compositions(rem: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
    if slots == 1 {
        if rem >= 1 {
            cur.push(rem);
            out.push(Index(cur.clone()));
            cur.pop();
        }
        return;
    }
    // leave at least 1 per remaining slot
    let hi = rem.saturating_sub(slots as u32 - 1);
    for first in 1..=hi {
        cur.push(first);
        fill_compositions(rem - first, slots - 1, cur, out);
        cur.pop();
    }
}

/// Compositions of `k` into `r` parts with `k_i >= 2` (`i` is 1-based).
/// Requires `1 <= i <= r < k`.
pub fn compositions_i_adm(k: u32, r: usize, i: usize) -> Result<Vec<Index>> {
    if !(1 <= i && i <= r && (r as u32) < k) {
        return Err(Error::domain(format!(
            "need 1 <= i <= r < k, got k={k}, r={r}, i={i}"
        )));
    }
    Ok(compositions(k, r)
        .into_iter()
        .filter(|idx| idx.parts()[i - 1] >= 2)
        .collect())
}

/// All indices (nonempty compositions of any length) of exact weight `w`,
/// ordered by depth then lexicographically. There are `2^{w-1}` of them.
pub fn indices_of_weight(w: u32) -> Vec<Index> {
    let mut out = Vec::new();
    for r in 1..=(w as usize) {
        out.extend(compositions(w, r));
    }
    out
}

/// A set partition of `{0, 1, ..., r-1}`. Blocks are sorted internally and
/// ordered by their minimum, so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The multiplicity `prod_i (#B_i - 1)!`.
    pub fn c_coeff(&self) -> BigInt {
        self.blocks
            .iter()
            .map(|b| factorial(b.len() as u32 - 1))
            .product()
    }

    /// Per-block sums `b_i = sum_{j in B_i} k_j` of the parts of `k`.
    /// `k` must have depth `r`.
    pub fn block_sums(&self, k: &Index) -> Vec<u32> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&j| k.parts()[j]).sum())
            .collect()
    }
}

/// All set partitions of `{0, ..., r-1}` (Bell(r) of them), generated in
/// restricted-growth order. `r = 0` gives the single empty partition.
pub fn set_partitions(r: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; r];
    fill_partitions(0, 0, r, &mut assignment, &mut out);
    out
}

fn fill_partitions(
    pos: usize,
    max_used: usize,
    r: usize,
    assignment: &mut [usize],
    out: &mut Vec<SetPartition>,
) {
    if pos == r {
        let nblocks = if r == 0 { 0 } else { max_used };
        let mut blocks = vec![Vec::new(); nblocks];
        for (elem, &b) in assignment.iter().enumerate() {
            blocks[b].push(elem);
        }
        out.push(SetPartition { blocks });
        return;
    }
    for b in 0..=max_used {
        assignment[pos] = b;
        fill_partitions(pos + 1, max_used.max(b + 1), r, assignment, out);
    }
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc
}

/// Falling factorial `(n)_m = n(n-1)...(n-m+1)`; `(n)_0 = 1`.
pub fn falling(n: i64, m: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..m as i64 {
        acc *= n - j;
    }
    acc
}

/// Generalized binomial coefficient `binom(n, k) = (n)_k / k!` for any
/// integer `n`; zero for `k < 0`. In particular `binom(-2, 3) = -4`.
pub fn binom(n: i64, k: i64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    BigRational::new(falling(n, k as u32), factorial(k as u32))
}

/// `binom` restricted to the classical case; handy where an integer is wanted.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    let b = binom(n, k);
    debug_assert!(b.is_integer());
    b.to_integer()
}
