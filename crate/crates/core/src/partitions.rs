//! Integer partitions and straightening of generalized Schur indices.
//!
//! A [`Partition`] is stored without trailing zeros. Parts beyond the length
//! read as zero through [`Partition::get`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails if the parts increase
    /// anywhere.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from a literal. Panics on invalid input.
    pub fn of(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("invalid partition literal")
    }

    /// Builds from signed entries; fails on negative or increasing entries.
    pub fn from_signed(parts: &[i64]) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidPartition(parts.to_vec()));
        }
        Self::new(parts.iter().map(|&p| p as usize).collect())
            .map_err(|_| Error::InvalidPartition(parts.to_vec()))
    }

    pub(crate) fn from_sorted_unchecked(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The single-row partition `(m)`; empty for `m = 0`.
    pub fn row(m: usize) -> Self {
        Self::from_sorted_unchecked(vec![m])
    }

    /// The single-column partition `(1^m)`.
    pub fn column(m: usize) -> Self {
        Self::block(1, m)
    }

    /// The block `(n^k)`: `k` rows of length `n`.
    pub fn block(n: usize, k: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Partition { parts: vec![n; k] }
    }

    /// The staircase `(j, j-1, ..., 1)`.
    pub fn staircase(j: usize) -> Self {
        Partition {
            parts: (1..=j).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_k` with 0-based `k`; zero beyond the length.
    pub fn get(&self, k: usize) -> usize {
        self.parts.get(k).copied().unwrap_or(0)
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.get(0)
    }

    /// The conjugate partition: `λ~_j = #{k : λ_k >= j}`.
    pub fn conjugate(&self) -> Partition {
        let width = self.first();
        let mut out = Vec::with_capacity(width);
        for j in 1..=width {
            out.push(self.parts.iter().take_while(|&&p| p >= j).count());
        }
        Partition { parts: out }
    }

    /// True if `mu ⊂ self` as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// True if `self ⊂ (n^k)`.
    pub fn fits_in(&self, n: usize, k: usize) -> bool {
        self.len() <= k && self.first() <= n
    }

    /// Complement inside the block `(n^k)`: `(∁λ)_j = n - λ_{k+1-j}`.
    pub fn complement(&self, n: usize, k: usize) -> Result<Partition> {
        if !self.fits_in(n, k) {
            return Err(Error::NotInBlock(self.clone(), n, k));
        }
        let parts = (0..k).map(|j| n - self.get(k - 1 - j)).collect();
        Ok(Self::from_sorted_unchecked(parts))
    }

    /// Concatenation `(self, other)`; fails if the result is not a partition.
    pub fn concat(&self, other: &Partition) -> Result<Partition> {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Pointwise sum `λ + μ`.
    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Self::from_sorted_unchecked((0..n).map(|k| self.get(k) + other.get(k)).collect())
    }

    /// Parts padded with zeros to exactly `n` entries (`n >= len`).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        debug_assert!(n >= self.len());
        (0..n).map(|k| self.get(k)).collect()
    }

    /// All partitions contained in `self`, in canonical order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        sub_rec(&self.parts, 0, usize::MAX, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions contained in the block `(n^k)`.
    pub fn in_block(n: usize, k: usize) -> Vec<Partition> {
        Self::block(n, k).subpartitions()
    }

    /// Partitions of `m` with at most `max_len` parts, each at most `max_part`.
    pub fn of_weight(m: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        weight_rec(m, max_part, max_len, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions of weight at most `max_weight`.
    pub fn up_to_weight(max_weight: usize) -> Vec<Partition> {
        (0..=max_weight)
            .flat_map(|m| Self::of_weight(m, m, m))
            .collect()
    }
}

fn sub_rec(
    bound: &[usize],
    k: usize,
    prev: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if k == bound.len() {
        out.push(Partition::from_sorted_unchecked(cur.clone()));
        return;
    }
    let top = bound[k].min(prev);
    for v in 0..=top {
        cur.push(v);
        if v == 0 {
            // every later part is zero as well
            out.push(Partition::from_sorted_unchecked(cur.clone()));
        } else {
            sub_rec(bound, k + 1, v, cur, out);
        }
        cur.pop();
    }
}

fn weight_rec(
    m: usize,
    max_part: usize,
    max_len: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if m == 0 {
        out.push(Partition {
            parts: cur.clone(),
        });
        return;
    }
    if max_len == 0 {
        return;
    }
    for p in (1..=max_part.min(m)).rev() {
        cur.push(p);
        weight_rec(m - p, p, max_len - 1, cur, out);
        cur.pop();
    }
}

/// Graded order, then reverse lexicographic within a degree: `(3) < (2,1) <
/// (1,1,1)` and every partition of 2 precedes every partition of 3.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A Schur index up to sign: `sign * s_partition`, or zero when `sign == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedIndex {
    pub sign: i8,
    pub partition: Partition,
}

impl SignedIndex {
    pub fn zero() -> Self {
        SignedIndex {
            sign: 0,
            partition: Partition::empty(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

/// Resolves the generalized Schur polynomial `det[s_{a_k - k + l}]` to
/// `±s_μ` or zero, using the exchange rule `(.., a, b, ..) -> -(.., b-1, a+1, ..)`.
pub fn straighten(a: &[i64]) -> SignedIndex {
    let mut seq = a.to_vec();
    let m = seq.len();
    let mut sign: i8 = 1;
    let mut fuel = m * m;
    while let Some(k) = (0..m.saturating_sub(1)).find(|&k| seq[k] < seq[k + 1]) {
        if seq[k] == seq[k + 1] - 1 {
            return SignedIndex::zero();
        }
        if fuel == 0 {
            // the exchange rule needs at most m(m-1)/2 steps
            panic!("straighten exceeded its fuel bound on {a:?}");
        }
        fuel -= 1;
        let (x, y) = (seq[k], seq[k + 1]);
        seq[k] = y - 1;
        seq[k + 1] = x + 1;
        sign = -sign;
    }
    if seq.last().is_some_and(|&v| v < 0) {
        return SignedIndex::zero();
    }
    SignedIndex {
        sign,
        partition: Partition::from_sorted_unchecked(seq.into_iter().map(|v| v as usize).collect()),
    }
}
