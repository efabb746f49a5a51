//! The ring of symmetric functions in the Schur basis.
//!
//! [`SchurExpr`] is an integer combination of Schur functions `s_λ` in one
//! universal alphabet. Multiplication goes through Littlewood-Richardson
//! coefficients, enumerated as LR tableaux and memoized in a process-wide
//! table keyed on the unordered pair of factors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::partitions::Partition;
use crate::ring::{laplace_det, DetRing};

/// Finite integer combination `Σ e_λ s_λ`; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SchurExpr {
    terms: BTreeMap<Partition, BigInt>,
}

impl SchurExpr {
    pub fn zero() -> Self {
        SchurExpr::default()
    }

    pub fn one() -> Self {
        Self::basis(Partition::empty())
    }

    /// The basis element `s_λ`.
    pub fn basis(lambda: Partition) -> Self {
        Self::term(lambda, BigInt::one())
    }

    pub fn term(lambda: Partition, coeff: impl Into<BigInt>) -> Self {
        let mut out = SchurExpr::zero();
        out.add_term(lambda, coeff.into());
        out
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, C)>,
        C: Into<BigInt>,
    {
        let mut out = SchurExpr::zero();
        for (l, c) in terms {
            out.add_term(l, c.into());
        }
        out
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical partition order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    /// Degree of the homogeneous expression; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Partition::weight);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &BigInt) -> SchurExpr {
        if c.is_zero() {
            return SchurExpr::zero();
        }
        SchurExpr {
            terms: self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    /// Drops every `s_λ` with `l(λ) > max_len` (the image in a rank
    /// `max_len` alphabet).
    pub fn truncate_len(&self, max_len: usize) -> SchurExpr {
        SchurExpr {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.len() <= max_len)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// `s_λ(-X) = (-1)^{|λ|} s_{λ~}(X)` applied termwise.
    pub fn negate_alphabet(&self) -> SchurExpr {
        SchurExpr {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| {
                    let c = if l.weight() % 2 == 1 { -c } else { c.clone() };
                    (l.conjugate(), c)
                })
                .collect(),
        }
    }

    /// Product with row-length bound on the result (`None` = unbounded).
    pub fn mul_bounded(&self, other: &SchurExpr, max_len: Option<usize>) -> SchurExpr {
        let mut out = SchurExpr::zero();
        for (mu, a) in &self.terms {
            for (nu, b) in &other.terms {
                let ab = a * b;
                for (lambda, c) in lr_product(mu, nu, max_len).iter() {
                    out.add_term(lambda.clone(), &ab * c);
                }
            }
        }
        out
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

/// Bilinear Schur product `s_μ s_ν = Σ c^λ_{μν} s_λ`.
pub fn lr_multiply(x: &SchurExpr, y: &SchurExpr) -> SchurExpr {
    x.mul_bounded(y, None)
}

impl fmt::Display for SchurExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (l, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "s[")?;
            for (i, p) in l.parts().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SchurExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl AddAssign<&SchurExpr> for SchurExpr {
    fn add_assign(&mut self, rhs: &SchurExpr) {
        for (l, c) in &rhs.terms {
            self.add_term(l.clone(), c.clone());
        }
    }
}

impl SubAssign<&SchurExpr> for SchurExpr {
    fn sub_assign(&mut self, rhs: &SchurExpr) {
        for (l, c) in &rhs.terms {
            self.add_term(l.clone(), -c);
        }
    }
}

impl Add for &SchurExpr {
    type Output = SchurExpr;
    fn add(self, rhs: &SchurExpr) -> SchurExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &SchurExpr {
    type Output = SchurExpr;
    fn sub(self, rhs: &SchurExpr) -> SchurExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &SchurExpr {
    type Output = SchurExpr;
    fn neg(self) -> SchurExpr {
        SchurExpr {
            terms: self.terms.iter().map(|(l, c)| (l.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SchurExpr {
    type Output = SchurExpr;
    fn mul(self, rhs: &SchurExpr) -> SchurExpr {
        lr_multiply(self, rhs)
    }
}

impl DetRing for SchurExpr {
    fn zero_like(&self) -> Self {
        SchurExpr::zero()
    }
    fn one_like(&self) -> Self {
        SchurExpr::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        lr_multiply(self, other)
    }
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson coefficients

type Product = Arc<BTreeMap<Partition, BigInt>>;
type ProductKey = (Partition, Partition, usize);

fn lr_table() -> &'static RwLock<HashMap<ProductKey, Product>> {
    static TABLE: OnceLock<RwLock<HashMap<ProductKey, Product>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Expansion of `s_μ s_ν`, optionally keeping only `l(λ) <= max_len`.
/// Memoized; concurrent callers may duplicate work but see identical results.
pub fn lr_product(mu: &Partition, nu: &Partition, max_len: Option<usize>) -> Product {
    let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    let key = (a.clone(), b.clone(), max_len.unwrap_or(usize::MAX));
    if let Some(hit) = lr_table().read().unwrap().get(&key) {
        return hit.clone();
    }
    // Filling the smaller-length factor keeps the search narrow.
    let (base, content) = if a.len() <= b.len() { (b, a) } else { (a, b) };
    let computed: Product = Arc::new(
        lr_product_tableaux(base, content, max_len.unwrap_or(usize::MAX))
            .into_iter()
            .map(|(l, c)| (l, BigInt::from(c)))
            .collect(),
    );
    lr_table()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(computed)
        .clone()
}

/// `c^λ_{μν}` read from the memoized product table.
pub fn lr_coefficient(mu: &Partition, nu: &Partition, lambda: &Partition) -> BigInt {
    if lambda.weight() != mu.weight() + nu.weight()
        || !lambda.contains(mu)
        || !lambda.contains(nu)
    {
        return BigInt::zero();
    }
    lr_product(mu, nu, None)
        .get(lambda)
        .cloned()
        .unwrap_or_default()
}

/// Enumerates LR tableaux of content `content` on top of `base`: label `k`
/// is added as a horizontal strip, and the reverse reading word must stay a
/// lattice word.
fn lr_product_tableaux(
    base: &Partition,
    content: &Partition,
    max_len: usize,
) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if base.len() > max_len {
        return out;
    }
    let shape = base.parts().to_vec();
    let prev = vec![0usize; shape.len()];
    add_label(&shape, &prev, content.parts(), 0, max_len, &mut out);
    out
}

fn add_label(
    shape: &[usize],
    prev_counts: &[usize],
    content: &[usize],
    label: usize,
    max_len: usize,
    out: &mut BTreeMap<Partition, u64>,
) {
    if label == content.len() {
        *out.entry(Partition::from_sorted_unchecked(shape.to_vec()))
            .or_insert(0) += 1;
        return;
    }
    let rows = (shape.len() + 1).min(max_len);
    let mut new_counts = vec![0usize; rows];
    strip_rows(
        shape,
        prev_counts,
        content,
        label,
        max_len,
        0,
        content[label],
        0,
        0,
        &mut new_counts,
        out,
    );
}

#[allow(clippy::too_many_arguments)]
fn strip_rows(
    shape: &[usize],
    prev_counts: &[usize],
    content: &[usize],
    label: usize,
    max_len: usize,
    row: usize,
    remaining: usize,
    placed: usize,
    prev_seen: usize,
    new_counts: &mut Vec<usize>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if remaining == 0 {
        let mut next = shape.to_vec();
        for (r, &a) in new_counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if r < next.len() {
                next[r] += a;
            } else {
                next.push(a);
            }
        }
        let counts: Vec<usize> = (0..next.len())
            .map(|r| new_counts.get(r).copied().unwrap_or(0))
            .collect();
        add_label(&next, &counts, content, label + 1, max_len, out);
        return;
    }
    if row >= new_counts.len() {
        return;
    }
    let old = shape.get(row).copied().unwrap_or(0);
    let cap_strip = if row == 0 {
        remaining
    } else {
        shape[row - 1] - old
    };
    let cap_lattice = if label == 0 {
        remaining
    } else {
        prev_seen.saturating_sub(placed)
    };
    let cap = cap_strip.min(cap_lattice).min(remaining);
    let seen_here = prev_counts.get(row).copied().unwrap_or(0);
    for a in (0..=cap).rev() {
        new_counts[row] = a;
        strip_rows(
            shape,
            prev_counts,
            content,
            label,
            max_len,
            row + 1,
            remaining - a,
            placed + a,
            prev_seen + seen_here,
            new_counts,
            out,
        );
    }
    new_counts[row] = 0;
}

fn skew_table() -> &'static RwLock<HashMap<ProductKey, Product>> {
    static TABLE: OnceLock<RwLock<HashMap<ProductKey, Product>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// The skew Schur function `s_{λ/μ} = Σ_ν c^λ_{μν} s_ν`, keeping only
/// `l(ν) <= max_label`. Computed by filling the skew diagram in reverse
/// reading order with semistandard, lattice-word labels.
pub fn skew_expand(lambda: &Partition, mu: &Partition, max_label: Option<usize>) -> Product {
    let key = (
        lambda.clone(),
        mu.clone(),
        max_label.unwrap_or(usize::MAX),
    );
    if let Some(hit) = skew_table().read().unwrap().get(&key) {
        return hit.clone();
    }
    let computed: Product = Arc::new(
        skew_tableaux(lambda, mu, max_label.unwrap_or(usize::MAX))
            .into_iter()
            .map(|(l, c)| (l, BigInt::from(c)))
            .collect(),
    );
    skew_table()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(computed)
        .clone()
}

fn skew_tableaux(lambda: &Partition, mu: &Partition, max_label: usize) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if !lambda.contains(mu) {
        return out;
    }
    let rows = lambda.len();
    // column lengths of the skew shape bound the number of labels
    for c in 0..lambda.first() {
        let height = (0..rows)
            .filter(|&r| mu.get(r) <= c && c < lambda.get(r))
            .count();
        if height > max_label {
            return out;
        }
    }
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (mu.get(r)..lambda.get(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = (0..rows).map(|r| vec![0; lambda.get(r)]).collect();
    let mut counts = vec![0usize; rows + 2];
    fill_skew(&cells, 0, lambda, mu, max_label, &mut grid, &mut counts, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_skew(
    cells: &[(usize, usize)],
    idx: usize,
    lambda: &Partition,
    mu: &Partition,
    max_label: usize,
    grid: &mut Vec<Vec<usize>>,
    counts: &mut Vec<usize>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if idx == cells.len() {
        let content: Vec<usize> = counts[1..].iter().copied().take_while(|&c| c > 0).collect();
        *out.entry(Partition::from_sorted_unchecked(content)).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[idx];
    let mut hi = max_label.min(r + 1);
    if c + 1 < lambda.get(r) {
        hi = hi.min(grid[r][c + 1]);
    }
    let mut lo = 1;
    if r > 0 && c >= mu.get(r - 1) {
        lo = grid[r - 1][c] + 1;
    }
    for label in lo..=hi {
        if label >= 2 && counts[label] + 1 > counts[label - 1] {
            continue;
        }
        grid[r][c] = label;
        counts[label] += 1;
        fill_skew(cells, idx + 1, lambda, mu, max_label, grid, counts, out);
        counts[label] -= 1;
    }
    grid[r][c] = 0;
}

/// The triples of `s_λ(A+B) = Σ c^λ_{μν} s_μ(A) s_ν(B)`.
pub fn expand_sum(lambda: &Partition) -> Vec<(Partition, Partition, BigInt)> {
    let mut out = Vec::new();
    for mu in lambda.subpartitions() {
        for (nu, c) in skew_expand(lambda, &mu, None).iter() {
            out.push((mu.clone(), nu.clone(), c.clone()));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Pieri rules

/// Partitions obtained from `lambda` by adding a horizontal strip of size `k`.
pub fn horizontal_strips(lambda: &Partition, k: usize, max_len: Option<usize>) -> Vec<Partition> {
    let max_len = max_len.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let rows = (lambda.len() + 1).min(max_len);
    let mut add = vec![0usize; rows];
    h_strip_rec(lambda, 0, k, &mut add, &mut out);
    out
}

fn h_strip_rec(lambda: &Partition, row: usize, remaining: usize, add: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        let n = lambda.len().max(add.len());
        out.push(Partition::from_sorted_unchecked(
            (0..n).map(|r| lambda.get(r) + add.get(r).copied().unwrap_or(0)).collect(),
        ));
        return;
    }
    if row >= add.len() {
        return;
    }
    let cap = if row == 0 {
        remaining
    } else {
        lambda.get(row - 1) - lambda.get(row)
    };
    for a in 0..=cap.min(remaining) {
        add[row] = a;
        h_strip_rec(lambda, row + 1, remaining - a, add, out);
    }
    add[row] = 0;
}

/// Partitions obtained from `lambda` by adding a vertical strip of size `k`.
pub fn vertical_strips(lambda: &Partition, k: usize, max_len: Option<usize>) -> Vec<Partition> {
    let max_len = max_len.unwrap_or(usize::MAX);
    horizontal_strips(&lambda.conjugate(), k, None)
        .into_iter()
        .map(|p| p.conjugate())
        .filter(|p| p.len() <= max_len)
        .collect()
}

/// `x · s_(k)` (row Pieri rule).
pub fn pieri_row(x: &SchurExpr, k: usize, max_len: Option<usize>) -> SchurExpr {
    let mut out = SchurExpr::zero();
    for (l, c) in x.iter() {
        for m in horizontal_strips(l, k, max_len) {
            out.add_term(m, c.clone());
        }
    }
    out
}

/// `x · s_(1^k)` (column Pieri rule).
pub fn pieri_column(x: &SchurExpr, k: usize, max_len: Option<usize>) -> SchurExpr {
    let mut out = SchurExpr::zero();
    for (l, c) in x.iter() {
        for m in vertical_strips(l, k, max_len) {
            out.add_term(m, c.clone());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// c-variable form

/// Polynomial in the Chern variables `c_1, c_2, ...`. A monomial
/// `c_{k_1} ... c_{k_m}` is keyed by the partition `(k_1, ..., k_m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CPoly {
    terms: BTreeMap<Partition, BigInt>,
}

impl CPoly {
    pub fn zero() -> Self {
        CPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty())
    }

    /// The monomial `c_{k_1} ... c_{k_m}`.
    pub fn monomial(indices: Partition) -> Self {
        let mut t = BTreeMap::new();
        t.insert(indices, BigInt::one());
        CPoly { terms: t }
    }

    /// The variable `c_k` with `c_0 = 1` and `c_{<0} = 0`.
    pub fn c(k: i64) -> Self {
        match k {
            k if k < 0 => CPoly::zero(),
            0 => CPoly::one(),
            k => Self::monomial(Partition::row(k as usize)),
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    fn add_term(&mut self, m: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Expansion in the Schur basis.
    pub fn to_schur(&self) -> SchurExpr {
        let mut out = SchurExpr::zero();
        for (m, c) in &self.terms {
            out += &c_monomial_to_schur(m).scale(c);
        }
        out
    }
}

impl DetRing for CPoly {
    fn zero_like(&self) -> Self {
        CPoly::zero()
    }
    fn one_like(&self) -> Self {
        CPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = CPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut parts = a.parts().to_vec();
                parts.extend_from_slice(b.parts());
                parts.sort_unstable_by(|p, q| q.cmp(p));
                out.add_term(Partition::from_sorted_unchecked(parts), x * y);
            }
        }
        out
    }
}

/// `s_λ = det[c_{λ~_k - k + l}]` as a polynomial in the c-variables.
pub fn jacobi_trudi(lambda: &Partition) -> CPoly {
    let conj = lambda.conjugate();
    let m = conj.len();
    let matrix: Vec<Vec<CPoly>> = (0..m)
        .map(|k| {
            (0..m)
                .map(|l| CPoly::c(conj.get(k) as i64 - k as i64 + l as i64))
                .collect()
        })
        .collect();
    laplace_det(&matrix, &CPoly::one())
}

/// Schur expansion of `c_{k_1} ... c_{k_m}` by iterated column Pieri.
pub fn c_monomial_to_schur(indices: &Partition) -> SchurExpr {
    indices
        .parts()
        .iter()
        .fold(SchurExpr::one(), |acc, &k| pieri_column(&acc, k, None))
}
