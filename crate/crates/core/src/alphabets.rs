//! Chern-root calculus.
//!
//! Bundles are modelled by alphabets of formal root variables. An
//! [`AlphabetPoly`] is an exact polynomial with integer coefficients in the
//! roots of one or more alphabets; symmetric polynomials convert back to
//! products of Schur functions through greedy leading-term extraction.
//!
//! Monomials are packed into a `u128`, one byte of exponent per variable,
//! variable 0 in the most significant byte. Integer comparison of packed
//! monomials is therefore lexicographic order on exponent vectors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::partitions::Partition;
use crate::ring::{laplace_det, DetRing};
use crate::schur::{lr_product, skew_expand, SchurExpr};

pub const MAX_VARS: usize = 16;

type Monomial = u128;

fn shift(var: usize) -> u32 {
    ((MAX_VARS - 1 - var) * 8) as u32
}

fn exponent(m: Monomial, var: usize) -> usize {
    ((m >> shift(var)) & 0xff) as usize
}

fn unit(var: usize) -> Monomial {
    1u128 << shift(var)
}

fn mono_degree(m: Monomial) -> usize {
    m.to_be_bytes().iter().map(|&b| b as usize).sum()
}

/// A named block of consecutive root variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub name: String,
    pub offset: usize,
    pub rank: usize,
}

impl Alphabet {
    pub fn vars(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rank
    }

    /// The roots as degree-one polynomials.
    pub fn roots(&self, nvars: usize) -> Vec<AlphabetPoly> {
        self.vars().map(|v| AlphabetPoly::var(nvars, v)).collect()
    }
}

/// Variable layout: alphabets laid out one after another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    alphabets: Vec<Alphabet>,
    nvars: usize,
}

impl Layout {
    pub fn new(spec: &[(&str, usize)]) -> Result<Layout> {
        let mut offset = 0;
        let mut alphabets = Vec::new();
        for &(name, rank) in spec {
            alphabets.push(Alphabet {
                name: name.to_string(),
                offset,
                rank,
            });
            offset += rank;
        }
        if offset > MAX_VARS {
            return Err(Error::TooManyVariables(offset));
        }
        Ok(Layout {
            alphabets,
            nvars: offset,
        })
    }

    /// Alphabet `A` of rank `n` followed by `B` of rank `p`.
    pub fn pair(n: usize, p: usize) -> Result<Layout> {
        Layout::new(&[("A", n), ("B", p)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn alphabet(&self, name: &str) -> &Alphabet {
        self.alphabets
            .iter()
            .find(|a| a.name == name)
            .unwrap_or_else(|| panic!("no alphabet named {name}"))
    }

    pub fn alphabets(&self) -> &[Alphabet] {
        &self.alphabets
    }
}

/// Polynomial with integer coefficients in `nvars` root variables.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphabetPoly {
    nvars: usize,
    terms: HashMap<Monomial, BigInt>,
}

impl AlphabetPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        AlphabetPoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(0, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars);
        let mut p = Self::zero(nvars);
        p.add_term(unit(v), BigInt::one());
        p
    }

    /// Builds a polynomial from `(exponent vector, coefficient)` pairs.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars);
            let m = exps
                .iter()
                .enumerate()
                .fold(0u128, |m, (v, &e)| {
                    assert!(e < 256);
                    m + (e as u128) * unit(v)
                });
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coeff(&self, exps: &[usize]) -> BigInt {
        let m = exps
            .iter()
            .enumerate()
            .fold(0u128, |m, (v, &e)| m + (e as u128) * unit(v));
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms as `(exponent vector, coefficient)`, sorted lexicographically.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, BigInt)> {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_unstable_by(|a, b| b.cmp(a));
        keys.into_iter()
            .map(|m| {
                (
                    (0..self.nvars).map(|v| exponent(m, v)).collect(),
                    self.terms[&m].clone(),
                )
            })
            .collect()
    }

    /// Highest total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|&m| mono_degree(m)).max()
    }

    pub fn truncate_degree(&self, cap: usize) -> AlphabetPoly {
        AlphabetPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| mono_degree(m) <= cap)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    /// The degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: usize) -> AlphabetPoly {
        AlphabetPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| mono_degree(m) == d)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> AlphabetPoly {
        if c.is_zero() {
            return AlphabetPoly::zero(self.nvars);
        }
        AlphabetPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> AlphabetPoly {
        self.scale(c)
    }

    pub fn add(&self, other: &AlphabetPoly) -> AlphabetPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &AlphabetPoly) {
        assert_eq!(self.nvars, other.nvars);
        for (&m, c) in &other.terms {
            self.add_term(m, c.clone());
        }
    }

    pub fn sub(&self, other: &AlphabetPoly) -> AlphabetPoly {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn sub_assign(&mut self, other: &AlphabetPoly) {
        assert_eq!(self.nvars, other.nvars);
        for (&m, c) in &other.terms {
            self.add_term(m, -c);
        }
    }

    pub fn neg(&self) -> AlphabetPoly {
        AlphabetPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &AlphabetPoly) -> AlphabetPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = AlphabetPoly::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        let per_var_ok = self.max_exponent() + other.max_exponent() < 256;
        assert!(per_var_ok, "exponent overflow in packed monomial");
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// Product dropping every monomial above total degree `cap`.
    pub fn mul_truncated(&self, other: &AlphabetPoly, cap: usize) -> AlphabetPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = AlphabetPoly::zero(self.nvars);
        for (&a, x) in &self.terms {
            let da = mono_degree(a);
            if da > cap {
                continue;
            }
            for (&b, y) in &other.terms {
                if da + mono_degree(b) <= cap {
                    out.add_term(a + b, x * y);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> AlphabetPoly {
        (0..e).fold(AlphabetPoly::one(self.nvars), |acc, _| acc.mul(self))
    }

    fn max_exponent(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|&m| (0..self.nvars).map(move |v| exponent(m, v)))
            .max()
            .unwrap_or(0)
    }

    /// Substitutes the polynomial `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &AlphabetPoly) -> AlphabetPoly {
        assert_eq!(self.nvars, value.nvars);
        let mut powers: Vec<AlphabetPoly> = vec![AlphabetPoly::one(self.nvars)];
        let mut out = AlphabetPoly::zero(self.nvars);
        for (&m, c) in &self.terms {
            let e = exponent(m, var);
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let rest = AlphabetPoly {
                nvars: self.nvars,
                terms: std::iter::once((m - (e as u128) * unit(var), c.clone())).collect(),
            };
            out.add_assign(&rest.mul(&powers[e]));
        }
        out
    }

    /// Applies a permutation of variables given as `perm[v] = image of v`.
    fn permute(&self, swap: (usize, usize)) -> AlphabetPoly {
        let (a, b) = swap;
        AlphabetPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| {
                    let (ea, eb) = (exponent(m, a) as u128, exponent(m, b) as u128);
                    let m2 = m - ea * unit(a) - eb * unit(b) + eb * unit(a) + ea * unit(b);
                    (m2, c.clone())
                })
                .collect(),
        }
    }

    /// Invariance under every adjacent transposition of the alphabet.
    pub fn is_symmetric_in(&self, x: &Alphabet) -> bool {
        x.vars()
            .zip(x.vars().skip(1))
            .all(|(a, b)| self.permute((a, b)) == *self)
    }

    fn leading(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.iter().max_by_key(|(&m, _)| m).map(|(&m, c)| (m, c))
    }

    fn uses_only(&self, vars: &[bool]) -> bool {
        self.terms
            .keys()
            .all(|&m| (0..self.nvars).all(|v| vars[v] || exponent(m, v) == 0))
    }
}

impl fmt::Debug for AlphabetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    e => write!(f, "*x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl DetRing for AlphabetPoly {
    fn zero_like(&self) -> Self {
        AlphabetPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        AlphabetPoly::one(self.nvars)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other);
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        self.sub_assign(other);
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

// ---------------------------------------------------------------------------
// Symmetric functions of a list of roots

/// `e_0, ..., e_max` of the given roots.
pub fn elementary(roots: &[AlphabetPoly], nvars: usize, max: usize) -> Vec<AlphabetPoly> {
    let mut e = vec![AlphabetPoly::one(nvars)];
    e.resize(max + 1, AlphabetPoly::zero(nvars));
    for r in roots {
        for k in (1..=max).rev() {
            let t = e[k - 1].mul(r);
            e[k].add_assign(&t);
        }
    }
    e
}

/// `h_0, ..., h_max` from `Σ_j (-1)^j e_j h_{m-j} = 0`.
pub fn complete(e: &[AlphabetPoly], nvars: usize, max: usize) -> Vec<AlphabetPoly> {
    let mut h = vec![AlphabetPoly::one(nvars)];
    for m in 1..=max {
        let mut acc = AlphabetPoly::zero(nvars);
        for j in 1..=m.min(e.len() - 1) {
            let t = e[j].mul(&h[m - j]);
            if j % 2 == 1 {
                acc.add_assign(&t);
            } else {
                acc.sub_assign(&t);
            }
        }
        h.push(acc);
    }
    h
}

/// `s_λ` evaluated on an explicit list of roots; zero when `l(λ)` exceeds
/// the number of roots.
pub fn schur_on_roots(lambda: &Partition, roots: &[AlphabetPoly], nvars: usize) -> AlphabetPoly {
    if lambda.len() > roots.len() {
        return AlphabetPoly::zero(nvars);
    }
    let e = elementary(roots, nvars, roots.len());
    if lambda.first() < lambda.len() {
        // dual form det[e_{λ~_k - k + l}] is the smaller determinant
        let mut e = e;
        e.resize(lambda.first() + lambda.len() + 1, AlphabetPoly::zero(nvars));
        return jacobi_trudi_h(&lambda.conjugate(), &e, nvars);
    }
    let h = complete(&e, nvars, lambda.first() + lambda.len());
    jacobi_trudi_h(lambda, &h, nvars)
}

/// `det[g_{λ_k - k + l}]` for a sequence `g` with `g_m = 0` for `m < 0`.
fn jacobi_trudi_h(lambda: &Partition, h: &[AlphabetPoly], nvars: usize) -> AlphabetPoly {
    let m = lambda.len();
    let entry = |idx: i64| {
        if idx < 0 {
            AlphabetPoly::zero(nvars)
        } else {
            h[idx as usize].clone()
        }
    };
    let matrix: Vec<Vec<AlphabetPoly>> = (0..m)
        .map(|k| {
            (0..m)
                .map(|l| entry(lambda.get(k) as i64 - k as i64 + l as i64))
                .collect()
        })
        .collect();
    laplace_det(&matrix, &AlphabetPoly::one(nvars))
}

/// `s_λ(X)` in the roots of `x`.
pub fn schur_eval(lambda: &Partition, x: &Alphabet, nvars: usize) -> AlphabetPoly {
    let vars: Vec<usize> = x.vars().collect();
    schur_branching(lambda, &vars, nvars, &mut HashMap::new())
}

/// Branching rule `s_λ(x_1..x_n) = Σ_{λ/μ horizontal strip} x_n^{|λ/μ|} s_μ(x_1..x_{n-1})`.
fn schur_branching(
    lambda: &Partition,
    vars: &[usize],
    nvars: usize,
    memo: &mut HashMap<(Partition, usize), AlphabetPoly>,
) -> AlphabetPoly {
    if lambda.len() > vars.len() {
        return AlphabetPoly::zero(nvars);
    }
    if lambda.is_empty() {
        return AlphabetPoly::one(nvars);
    }
    let key = (lambda.clone(), vars.len());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let (&v, rest) = vars.split_last().expect("nonempty");
    let mut out = AlphabetPoly::zero(nvars);
    let mut mu = vec![0usize; lambda.len()];
    let mut strips = Vec::new();
    strip_bottoms(lambda, rest.len(), 0, &mut mu, &mut strips);
    for mu in strips {
        let d = lambda.weight() - mu.weight();
        let below = schur_branching(&mu, rest, nvars, memo);
        for (&m, c) in &below.terms {
            out.add_term(m + (d as u128) * unit(v), c.clone());
        }
    }
    memo.insert(key, out.clone());
    out
}

/// All `μ` with `λ_{k+1} ≤ μ_k ≤ λ_k` and `l(μ) ≤ max_len`.
fn strip_bottoms(lambda: &Partition, max_len: usize, k: usize, mu: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if k == lambda.len() {
        out.push(Partition::from_sorted_unchecked(mu.clone()));
        return;
    }
    let hi = if k >= max_len { 0 } else { lambda.get(k) };
    for x in lambda.get(k + 1)..=hi {
        mu[k] = x;
        strip_bottoms(lambda, max_len, k + 1, mu, out);
    }
}

// ---------------------------------------------------------------------------
// Bundle expressions

/// Formal bundle built from alphabets.
#[derive(Clone, Debug)]
pub enum Bundle {
    Roots(Alphabet),
    Sum(Box<Bundle>, Box<Bundle>),
    Diff(Box<Bundle>, Box<Bundle>),
    Dual(Box<Bundle>),
    Tensor(Box<Bundle>, Box<Bundle>),
    Sym2(Box<Bundle>),
}

impl Bundle {
    pub fn of(x: &Alphabet) -> Bundle {
        Bundle::Roots(x.clone())
    }

    pub fn plus(self, other: Bundle) -> Bundle {
        Bundle::Sum(Box::new(self), Box::new(other))
    }

    pub fn minus(self, other: Bundle) -> Bundle {
        Bundle::Diff(Box::new(self), Box::new(other))
    }

    pub fn dual(self) -> Bundle {
        Bundle::Dual(Box::new(self))
    }

    pub fn tensor(self, other: Bundle) -> Bundle {
        Bundle::Tensor(Box::new(self), Box::new(other))
    }

    pub fn sym2(self) -> Bundle {
        Bundle::Sym2(Box::new(self))
    }

    /// Weights of the positive and negative parts of the virtual bundle.
    pub fn virtual_weights(&self, nvars: usize) -> Result<(Vec<AlphabetPoly>, Vec<AlphabetPoly>)> {
        Ok(match self {
            Bundle::Roots(x) => (x.roots(nvars), Vec::new()),
            Bundle::Sum(a, b) => {
                let (mut p, mut n) = a.virtual_weights(nvars)?;
                let (p2, n2) = b.virtual_weights(nvars)?;
                p.extend(p2);
                n.extend(n2);
                (p, n)
            }
            Bundle::Diff(a, b) => {
                let (mut p, mut n) = a.virtual_weights(nvars)?;
                let (p2, n2) = b.virtual_weights(nvars)?;
                p.extend(n2);
                n.extend(p2);
                (p, n)
            }
            Bundle::Dual(a) => {
                let (p, n) = a.virtual_weights(nvars)?;
                (
                    p.iter().map(AlphabetPoly::neg).collect(),
                    n.iter().map(AlphabetPoly::neg).collect(),
                )
            }
            Bundle::Tensor(a, b) => {
                let wa = a.weights(nvars)?;
                let wb = b.weights(nvars)?;
                let w = wa
                    .iter()
                    .flat_map(|x| wb.iter().map(move |y| x.add(y)))
                    .collect();
                (w, Vec::new())
            }
            Bundle::Sym2(a) => {
                let wa = a.weights(nvars)?;
                let mut w = Vec::new();
                for i in 0..wa.len() {
                    for l in i..wa.len() {
                        w.push(wa[i].add(&wa[l]));
                    }
                }
                (w, Vec::new())
            }
        })
    }

    /// Weights of a genuine (non-virtual) bundle.
    pub fn weights(&self, nvars: usize) -> Result<Vec<AlphabetPoly>> {
        let (p, n) = self.virtual_weights(nvars)?;
        if !n.is_empty() {
            return Err(Error::WeightsOfDifference);
        }
        Ok(p)
    }
}

/// Total Chern class `Π(1 + w)` over positive weights divided by the same
/// over negative weights, truncated above degree `cap`.
pub fn chern_total(bundle: &Bundle, nvars: usize, cap: usize) -> Result<AlphabetPoly> {
    let (pos, neg) = bundle.virtual_weights(nvars)?;
    let one = AlphabetPoly::one(nvars);
    let mut out = one.clone();
    for w in &pos {
        out = out.mul_truncated(&one.add(w), cap);
    }
    for w in &neg {
        // 1/(1+w) = Σ (-w)^m
        let minus_w = w.neg();
        let mut series = one.clone();
        let mut power = one.clone();
        for _ in 1..=cap {
            power = power.mul_truncated(&minus_w, cap);
            if power.is_zero() {
                break;
            }
            series.add_assign(&power);
        }
        out = out.mul_truncated(&series, cap);
    }
    Ok(out)
}

/// `s_λ(E)` for a genuine bundle `E`.
pub fn schur_of_bundle(lambda: &Partition, bundle: &Bundle, nvars: usize) -> Result<AlphabetPoly> {
    Ok(schur_on_roots(lambda, &bundle.weights(nvars)?, nvars))
}

/// Euler class of `Hom(A, B)`: `Π_{i,l} (β_l - α_i)`.
pub fn euler_hom(a: &Alphabet, b: &Alphabet, nvars: usize) -> AlphabetPoly {
    let mut out = AlphabetPoly::one(nvars);
    for bv in b.vars() {
        for av in a.vars() {
            let w = AlphabetPoly::var(nvars, bv).sub(&AlphabetPoly::var(nvars, av));
            out = out.mul(&w);
        }
    }
    out
}

/// `ρ` on an explicit layout: replaces `c_k` by `c_k(B - A)`.
pub fn rho_on(x: &SchurExpr, a: &Alphabet, b: &Alphabet, nvars: usize) -> AlphabetPoly {
    let max_deg = x.iter().map(|(l, _)| l.weight()).max().unwrap_or(0);
    // Σ h_m(B-A) t^m = Π(1 - α t) / Π(1 - β t)
    let ea = elementary(&a.roots(nvars), nvars, a.rank);
    let eb = elementary(&b.roots(nvars), nvars, b.rank);
    let ha = complete(&ea, nvars, max_deg);
    let hb = complete(&eb, nvars, max_deg);
    let mut h_diff = Vec::with_capacity(max_deg + 1);
    let mut e_diff = Vec::with_capacity(max_deg + 1);
    for m in 0..=max_deg {
        let mut h = AlphabetPoly::zero(nvars);
        let mut e = AlphabetPoly::zero(nvars);
        for j in 0..=m.min(a.rank) {
            let th = ea[j].mul(&hb[m - j]);
            if j % 2 == 0 {
                h.add_assign(&th);
            } else {
                h.sub_assign(&th);
            }
        }
        for j in 0..=m {
            if m - j > b.rank {
                continue;
            }
            let te = eb[m - j].mul(&ha[j]);
            if j % 2 == 0 {
                e.add_assign(&te);
            } else {
                e.sub_assign(&te);
            }
        }
        h_diff.push(h);
        e_diff.push(e);
    }
    let mut out = AlphabetPoly::zero(nvars);
    for (lambda, c) in x.iter() {
        let term = if lambda.len() <= lambda.first() {
            jacobi_trudi_h(lambda, &h_diff, nvars)
        } else {
            // dual form det[c_{λ~_k - k + l}] with c_k = e_k(B - A)
            jacobi_trudi_h(&lambda.conjugate(), &e_diff, nvars)
        };
        out.add_assign(&term.scale_int(c));
    }
    out
}

/// The supersymmetric specialization `ρ_{n,p}`: result in variables
/// `α_1..α_n, β_1..β_p` of [`Layout::pair`].
pub fn rho(x: &SchurExpr, n: usize, p: usize) -> Result<AlphabetPoly> {
    let layout = Layout::pair(n, p)?;
    Ok(rho_on(
        x,
        layout.alphabet("A"),
        layout.alphabet("B"),
        layout.nvars(),
    ))
}

// ---------------------------------------------------------------------------
// Schur-basis extraction

/// Expands a polynomial symmetric in each listed alphabet as
/// `Σ e · Π_a s_{λ_a}(X_a)`. The listed alphabets must cover every variable
/// the polynomial uses. The expansion is with respect to the actual ranks,
/// so `s_λ` with `l(λ) > rank` never appears.
pub fn to_multischur(
    x: &AlphabetPoly,
    alphabets: &[&Alphabet],
) -> Result<BTreeMap<Vec<Partition>, BigInt>> {
    let nvars = x.nvars();
    let mut covered = vec![false; nvars];
    for a in alphabets {
        for v in a.vars() {
            covered[v] = true;
        }
    }
    if !x.uses_only(&covered) {
        return Err(Error::Internal(
            "polynomial depends on variables outside the listed alphabets".into(),
        ));
    }
    for a in alphabets {
        if !x.is_symmetric_in(a) {
            return Err(Error::NotSymmetric(a.name.clone()));
        }
    }
    let mut cache: HashMap<(usize, Partition), AlphabetPoly> = HashMap::new();
    let mut rest = x.clone();
    let mut out = BTreeMap::new();
    while let Some((m, c)) = rest.leading() {
        let c = c.clone();
        let mut key = Vec::with_capacity(alphabets.len());
        let mut basis = AlphabetPoly::one(nvars);
        for (ai, a) in alphabets.iter().enumerate() {
            let parts: Vec<usize> = a.vars().map(|v| exponent(m, v)).collect();
            let lambda = Partition::new(parts).map_err(|_| Error::NotSymmetric(a.name.clone()))?;
            let s = cache
                .entry((ai, lambda.clone()))
                .or_insert_with(|| schur_eval(&lambda, a, nvars));
            basis = basis.mul(s);
            key.push(lambda);
        }
        rest.sub_assign(&basis.scale(&c));
        out.insert(key, c);
    }
    Ok(out)
}

/// Like [`to_multischur`] but first requires every alphabet to have rank at
/// least the degree of `x`, so that the expansion is that of the universal
/// class (no `s_λ` has been lost to the rank bound).
pub fn to_multischur_universal(
    x: &AlphabetPoly,
    alphabets: &[&Alphabet],
) -> Result<BTreeMap<Vec<Partition>, BigInt>> {
    let deg = x.degree().unwrap_or(0);
    for a in alphabets {
        if a.rank < deg {
            return Err(Error::AlphabetTooSmall {
                name: a.name.clone(),
                rank: a.rank,
                required: deg,
            });
        }
    }
    to_multischur(x, alphabets)
}

/// Expansion `Σ e_{αβ} s_α(A) s_β(B)` of a polynomial symmetric in `A` and
/// in `B`, in the rank-bounded basis.
pub fn to_bischur(x: &AlphabetPoly, a: &Alphabet, b: &Alphabet) -> Result<BivariateSchurExpr> {
    let mut out = BivariateSchurExpr::zero();
    for (mut key, c) in to_multischur(x, &[a, b])? {
        let beta = key.pop().unwrap();
        let alpha = key.pop().unwrap();
        out.add_term(alpha, beta, c);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Two-alphabet Schur expressions

/// Finite integer combination of `s_α(A) s_β(B)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BivariateSchurExpr {
    terms: BTreeMap<(Partition, Partition), BigInt>,
}

impl BivariateSchurExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Partition::empty(), Partition::empty(), BigInt::one())
    }

    pub fn term(alpha: Partition, beta: Partition, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(alpha, beta, c.into());
        out
    }

    pub fn add_term(&mut self, alpha: Partition, beta: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, beta);
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn coeff(&self, alpha: &Partition, beta: &Partition) -> BigInt {
        self.terms
            .get(&(alpha.clone(), beta.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Partition, Partition), &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_assign(&mut self, other: &BivariateSchurExpr) {
        for ((a, b), c) in &other.terms {
            self.add_term(a.clone(), b.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &BivariateSchurExpr) -> BivariateSchurExpr {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> BivariateSchurExpr {
        let mut out = Self::zero();
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    /// Keeps the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> BivariateSchurExpr {
        BivariateSchurExpr {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| a.weight() + b.weight() == d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product computed with the LR rule in each alphabet, discarding
    /// partitions longer than the alphabet ranks.
    pub fn mul_bounded(
        &self,
        other: &BivariateSchurExpr,
        rank_a: Option<usize>,
        rank_b: Option<usize>,
    ) -> BivariateSchurExpr {
        // group the second factor by its A-part so each B-product is summed
        // before the outer product with the A-product is taken
        let mut groups: BTreeMap<&Partition, Vec<(&Partition, &BigInt)>> = BTreeMap::new();
        for ((a, b), c) in &other.terms {
            groups.entry(a).or_default().push((b, c));
        }
        let mut jobs = Vec::new();
        for ((a1, b1), c1) in &self.terms {
            for (a2, ys) in &groups {
                jobs.push((a1, b1, c1, *a2, ys));
            }
        }
        let parts = exec::fold_chunks(&jobs, |chunk| {
            let mut acc = BiAccumulator::default();
            for &(a1, b1, c1, a2, ys) in chunk {
                let pa = lr_product(a1, a2, rank_a);
                if pa.is_empty() {
                    continue;
                }
                let mut q: HashMap<Partition, BigInt> = HashMap::new();
                for &(b2, c2) in ys.iter() {
                    for (b, cb) in lr_product(b1, b2, rank_b).iter() {
                        add_into(&mut q, b, cb * c2);
                    }
                }
                q.retain(|_, v| !v.is_zero());
                for (a, ca) in pa.iter() {
                    let ca = ca * c1;
                    let row = acc.row(a);
                    for (b, qb) in &q {
                        add_into(row, b, &ca * qb);
                    }
                }
            }
            acc
        });
        BiAccumulator::merge(parts)
    }

    /// Evaluation on root variables.
    pub fn eval(&self, a: &Alphabet, b: &Alphabet, nvars: usize) -> AlphabetPoly {
        let mut ca: HashMap<&Partition, AlphabetPoly> = HashMap::new();
        let mut cb: HashMap<&Partition, AlphabetPoly> = HashMap::new();
        let mut out = AlphabetPoly::zero(nvars);
        for ((alpha, beta), c) in &self.terms {
            let sa = ca
                .entry(alpha)
                .or_insert_with(|| schur_eval(alpha, a, nvars))
                .clone();
            let sb = cb.entry(beta).or_insert_with(|| schur_eval(beta, b, nvars));
            out.add_assign(&sa.mul(sb).scale_int(c));
        }
        out
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Debug for BivariateSchurExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*sA{a}*sB{b}")?;
        }
        Ok(())
    }
}

/// `ρ_{n,p}` in the rank-bounded basis `s_α(A) s_β(B)`, via
/// `s_λ(B - A) = Σ_μ (-1)^{|λ/μ|} s_μ(B) s_{λ~/μ~}(A)`.
pub fn rho_bischur(x: &SchurExpr, n: usize, p: usize) -> BivariateSchurExpr {
    let terms: Vec<_> = x.iter().collect();
    let parts = exec::fold_chunks(&terms, |chunk| {
        let mut acc = BiAccumulator::default();
        for &(lambda, c) in chunk {
            rho_schur_into(lambda, c, n, p, &mut acc);
        }
        acc
    });
    BiAccumulator::merge(parts)
}

/// Sparse accumulator for bi-Schur sums, keyed by `A`-part then `B`-part.
#[derive(Default)]
struct BiAccumulator {
    rows: HashMap<Partition, HashMap<Partition, BigInt>>,
}

impl BiAccumulator {
    fn row(&mut self, a: &Partition) -> &mut HashMap<Partition, BigInt> {
        if !self.rows.contains_key(a) {
            self.rows.insert(a.clone(), HashMap::new());
        }
        self.rows.get_mut(a).expect("just inserted")
    }

    fn merge(parts: Vec<BiAccumulator>) -> BivariateSchurExpr {
        let mut iter = parts.into_iter();
        let mut acc = iter.next().unwrap_or_default();
        for part in iter {
            for (a, row) in part.rows {
                let target = acc.row(&a);
                for (b, c) in row {
                    add_into(target, &b, c);
                }
            }
        }
        let mut out = BivariateSchurExpr::zero();
        for (a, row) in acc.rows {
            for (b, c) in row {
                if !c.is_zero() {
                    out.terms.insert((a.clone(), b), c);
                }
            }
        }
        out
    }
}

fn add_into(map: &mut HashMap<Partition, BigInt>, key: &Partition, c: BigInt) {
    match map.get_mut(key) {
        Some(v) => *v += c,
        None => {
            map.insert(key.clone(), c);
        }
    }
}

fn rho_schur_into(lambda: &Partition, coeff: &BigInt, n: usize, p: usize, acc: &mut BiAccumulator) {
    // rows of λ/μ have at most n cells, and μ has at most p rows
    if (p..lambda.len()).any(|k| lambda.get(k) > n) {
        return;
    }
    let rows = lambda.len().min(p);
    let mut mus = Vec::new();
    let mut cur = vec![0usize; rows];
    mu_candidates(lambda, n, 0, usize::MAX, &mut cur, &mut mus);
    let conj = lambda.conjugate();
    for mu in mus {
        let c = if (lambda.weight() - mu.weight()).is_multiple_of(2) {
            coeff.clone()
        } else {
            -coeff
        };
        for (nu, v) in skew_expand(&conj, &mu.conjugate(), Some(n)).iter() {
            add_into(acc.row(nu), &mu, v * &c);
        }
    }
}

/// `ρ_{n,p}(s_λ)` in the bi-Schur basis.
pub fn rho_schur_basis(lambda: &Partition, n: usize, p: usize) -> BivariateSchurExpr {
    let mut acc = BiAccumulator::default();
    rho_schur_into(lambda, &BigInt::one(), n, p, &mut acc);
    BiAccumulator::merge(vec![acc])
}

fn mu_candidates(
    lambda: &Partition,
    n: usize,
    k: usize,
    prev: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if k == cur.len() {
        out.push(Partition::from_sorted_unchecked(cur.clone()));
        return;
    }
    let hi = lambda.get(k).min(prev);
    let lo = lambda.get(k).saturating_sub(n);
    if lo > hi {
        return;
    }
    for v in lo..=hi {
        cur[k] = v;
        mu_candidates(lambda, n, k + 1, v, cur, out);
    }
    cur[k] = 0;
}

/// Euler class of `Hom(A^n, B^p)` in the bi-Schur basis:
/// `s_{(n^p)}(B - A) = Σ_{μ ⊂ n^p} (-1)^{|∁μ|} s_μ(B) s_{(∁μ)~}(A)`.
pub fn euler_hom_bischur(n: usize, p: usize) -> BivariateSchurExpr {
    let mut out = BivariateSchurExpr::zero();
    for mu in Partition::in_block(n, p) {
        let comp = mu.complement(n, p).expect("μ lies in the block");
        let sign = if comp.weight() % 2 == 0 { 1 } else { -1 };
        out.add_term(comp.conjugate(), mu, BigInt::from(sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::of(parts)
    }

    fn q(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn s(parts: &[usize]) -> SchurExpr {
        SchurExpr::basis(p(parts))
    }

    #[test]
    fn schur_eval_examples() {
        let l = Layout::new(&[("A", 2)]).unwrap();
        let a = l.alphabet("A");
        let x0 = AlphabetPoly::var(2, 0);
        let x1 = AlphabetPoly::var(2, 1);
        assert_eq!(schur_eval(&p(&[1]), a, 2), x0.add(&x1));
        assert!(schur_eval(&p(&[1, 1, 1]), a, 2).is_zero());
        let expected = x0.pow(2).mul(&x1).add(&x0.mul(&x1.pow(2)));
        assert_eq!(schur_eval(&p(&[2, 1]), a, 2), expected);
    }

    #[test]
    fn schur_eval_matches_bialternant() {
        // s_λ · a_δ = a_{λ+δ} in three variables
        let l = Layout::new(&[("X", 3)]).unwrap();
        let x = l.alphabet("X");
        let v: Vec<_> = (0..3).map(|i| AlphabetPoly::var(3, i)).collect();
        let vandermonde = v[0].sub(&v[1]).mul(&v[0].sub(&v[2])).mul(&v[1].sub(&v[2]));
        for lambda in Partition::up_to_weight(5).into_iter().filter(|l| l.len() <= 3) {
            let e: Vec<usize> = (0..3).map(|k| lambda.get(k) + 2 - k).collect();
            let mut alt = AlphabetPoly::zero(3);
            for (perm, sign) in [
                ([0, 1, 2], 1),
                ([1, 0, 2], -1),
                ([0, 2, 1], -1),
                ([2, 1, 0], -1),
                ([1, 2, 0], 1),
                ([2, 0, 1], 1),
            ] {
                let mut exps = vec![0; 3];
                for k in 0..3 {
                    exps[perm[k]] = e[k];
                }
                alt.add_assign(&AlphabetPoly::from_terms(3, [(exps, q(sign))]));
            }
            assert_eq!(schur_eval(&lambda, x, 3).mul(&vandermonde), alt, "{lambda}");
        }
    }

    #[test]
    fn branching_matches_jacobi_trudi() {
        for rank in 1..=4 {
            let l = Layout::new(&[("Y", 1), ("X", rank)]).unwrap();
            let x = l.alphabet("X");
            let nv = l.nvars();
            for lambda in Partition::up_to_weight(8) {
                assert_eq!(
                    schur_eval(&lambda, x, nv),
                    schur_on_roots(&lambda, &x.roots(nv), nv),
                    "{lambda} rank {rank}"
                );
            }
        }
    }

    #[test]
    fn chern_total_examples() {
        let l = Layout::new(&[("A", 2)]).unwrap();
        let a = l.alphabet("A");
        let one = AlphabetPoly::one(2);
        let a1 = AlphabetPoly::var(2, 0);
        let a2 = AlphabetPoly::var(2, 1);
        let c = chern_total(&Bundle::of(a), 2, 10).unwrap();
        assert_eq!(c, one.add(&a1).mul(&one.add(&a2)));

        let c = chern_total(&Bundle::of(a).sym2(), 2, 10).unwrap();
        let two = |x: &AlphabetPoly| x.scale(&q(2));
        let expected = one
            .add(&two(&a1))
            .mul(&one.add(&a1).add(&a2))
            .mul(&one.add(&two(&a2)));
        assert_eq!(c, expected);

        let l = Layout::pair(1, 1).unwrap();
        let (a, b) = (l.alphabet("A"), l.alphabet("B"));
        let c = chern_total(&Bundle::of(b).minus(Bundle::of(a)), 2, 2).unwrap();
        let al = AlphabetPoly::var(2, 0);
        let be = AlphabetPoly::var(2, 1);
        let expected = AlphabetPoly::one(2)
            .add(&be.sub(&al))
            .add(&al.pow(2).sub(&al.mul(&be)));
        assert_eq!(c, expected);
    }

    #[test]
    fn chern_of_difference_matches_formula() {
        // c_2(B - A) = b_2 - a_2 + a_1^2 - a_1 b_1 for ranks 2, 2
        let l = Layout::pair(2, 2).unwrap();
        let (a, b) = (l.alphabet("A"), l.alphabet("B"));
        let c = chern_total(&Bundle::of(b).minus(Bundle::of(a)), 4, 2).unwrap();
        let ea = elementary(&a.roots(4), 4, 2);
        let eb = elementary(&b.roots(4), 4, 2);
        let expected = eb[2]
            .sub(&ea[2])
            .add(&ea[1].pow(2))
            .sub(&ea[1].mul(&eb[1]));
        assert_eq!(c.homogeneous_part(2), expected);
    }

    #[test]
    fn tensor_of_difference_is_rejected() {
        let l = Layout::pair(1, 1).unwrap();
        let (a, b) = (l.alphabet("A"), l.alphabet("B"));
        let bad = Bundle::of(b).minus(Bundle::of(a)).tensor(Bundle::of(a));
        assert_eq!(chern_total(&bad, 2, 3), Err(Error::WeightsOfDifference));
        let bad = Bundle::of(b).minus(Bundle::of(a)).sym2();
        assert_eq!(chern_total(&bad, 2, 3), Err(Error::WeightsOfDifference));
    }

    #[test]
    fn euler_hom_examples() {
        let l = Layout::pair(1, 1).unwrap();
        let e = euler_hom(l.alphabet("A"), l.alphabet("B"), 2);
        assert_eq!(e, AlphabetPoly::var(2, 1).sub(&AlphabetPoly::var(2, 0)));

        let l = Layout::pair(2, 1).unwrap();
        let e = euler_hom(l.alphabet("A"), l.alphabet("B"), 3);
        let b = AlphabetPoly::var(3, 2);
        let expected = b
            .sub(&AlphabetPoly::var(3, 0))
            .mul(&b.sub(&AlphabetPoly::var(3, 1)));
        assert_eq!(e, expected);

        let l = Layout::pair(2, 2).unwrap();
        let e = euler_hom(l.alphabet("A"), l.alphabet("B"), 4);
        assert_eq!(e.degree(), Some(4));
        assert_eq!(rho(&s(&[2, 2]), 2, 2).unwrap(), e);
    }

    #[test]
    fn rho_examples() {
        let r = rho(&s(&[1]), 1, 1).unwrap();
        assert_eq!(r, AlphabetPoly::var(2, 1).sub(&AlphabetPoly::var(2, 0)));
        assert!(rho(&s(&[2, 2]), 1, 1).unwrap().is_zero());
    }

    #[test]
    fn rho_factorization_small() {
        // λ = (n^p + β, α): ρ = (-1)^{|α|} e s_{α~}(A) s_β(B)
        let (n, p) = (2, 1);
        let l = Layout::pair(n, p).unwrap();
        let (a, b) = (l.alphabet("A"), l.alphabet("B"));
        let e = euler_hom(a, b, 3);
        let lambda = p_of(&[3, 2, 1]); // β = (1), α = (2, 1)
        let expected = e
            .mul(&schur_eval(&p_of(&[2, 1]).conjugate(), a, 3))
            .mul(&schur_eval(&p_of(&[1]), b, 3))
            .scale(&q(-1));
        assert_eq!(rho(&SchurExpr::basis(lambda), n, p).unwrap(), expected);
    }

    fn p_of(parts: &[usize]) -> Partition {
        Partition::of(parts)
    }

    #[test]
    fn rho_bischur_matches_root_route() {
        for (n, p) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let l = Layout::pair(n, p).unwrap();
            let (a, b) = (l.alphabet("A"), l.alphabet("B"));
            for lambda in Partition::up_to_weight(6) {
                let x = SchurExpr::basis(lambda.clone());
                let roots = rho(&x, n, p).unwrap();
                let via = rho_bischur(&x, n, p).eval(a, b, l.nvars());
                assert_eq!(roots, via, "{lambda} n={n} p={p}");
            }
        }
    }

    #[test]
    fn euler_bischur_matches_roots() {
        for (n, p) in [(1, 1), (2, 1), (1, 3), (2, 2), (3, 2)] {
            let l = Layout::pair(n, p).unwrap();
            let (a, b) = (l.alphabet("A"), l.alphabet("B"));
            let roots = euler_hom(a, b, l.nvars());
            assert_eq!(euler_hom_bischur(n, p).eval(a, b, l.nvars()), roots);
            assert_eq!(to_bischur(&roots, a, b).unwrap(), euler_hom_bischur(n, p));
        }
    }

    #[test]
    fn to_bischur_examples() {
        let l = Layout::pair(2, 1).unwrap();
        let (a, b) = (l.alphabet("A"), l.alphabet("B"));
        let x = AlphabetPoly::var(3, 0).add(&AlphabetPoly::var(3, 1));
        assert_eq!(
            to_bischur(&x, a, b).unwrap(),
            BivariateSchurExpr::term(p(&[1]), Partition::empty(), 1)
        );

        let l = Layout::pair(1, 1).unwrap();
        let (a, b) = (l.alphabet("A"), l.alphabet("B"));
        let e = euler_hom(a, b, 2);
        let mut expected = BivariateSchurExpr::term(Partition::empty(), p(&[1]), 1);
        expected.add_term(p(&[1]), Partition::empty(), BigInt::from(-1));
        assert_eq!(to_bischur(&e, a, b).unwrap(), expected);
    }

    #[test]
    fn to_bischur_rejects_bad_input() {
        let l = Layout::pair(2, 1).unwrap();
        let (a, b) = (l.alphabet("A"), l.alphabet("B"));
        let x = AlphabetPoly::var(3, 0);
        assert_eq!(to_bischur(&x, a, b), Err(Error::NotSymmetric("A".into())));
        let sq = AlphabetPoly::var(3, 2).pow(2);
        assert!(matches!(
            to_multischur_universal(&sq, &[a, b]),
            Err(Error::AlphabetTooSmall { .. })
        ));
    }

    #[test]
    fn substitute_examples() {
        let t = AlphabetPoly::var(2, 0);
        let b = AlphabetPoly::var(2, 1);
        let x = t.pow(2).add(&t.mul(&b));
        let two_b = b.scale(&q(2));
        assert_eq!(x.substitute(0, &two_b), b.pow(2).scale(&q(6)));
    }

    fn arb_homogeneous(deg: usize) -> impl Strategy<Value = SchurExpr> {
        let parts = Partition::of_weight(deg, deg, deg);
        proptest::collection::vec((0..parts.len(), -3i64..4), 1..4).prop_map(move |v| {
            SchurExpr::from_terms(v.into_iter().map(|(i, c)| (parts[i].clone(), c)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn rho_is_multiplicative(
            dx in 1usize..4, dy in 1usize..4, n in 1usize..3, pp in 1usize..3,
            seed_x in arb_homogeneous(3), seed_y in arb_homogeneous(3),
        ) {
            let _ = (dx, dy);
            let lhs = rho(&(&seed_x * &seed_y), n, pp).unwrap();
            let rhs = rho(&seed_x, n, pp).unwrap().mul(&rho(&seed_y, n, pp).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bischur_round_trip(
            terms in proptest::collection::vec((0usize..20, 0usize..20, -4i64..5), 1..5)
        ) {
            let l = Layout::pair(3, 3).unwrap();
            let (a, b) = (l.alphabet("A"), l.alphabet("B"));
            let parts: Vec<_> = Partition::up_to_weight(4)
                .into_iter()
                .filter(|p| p.len() <= 3)
                .collect();
            let mut x = BivariateSchurExpr::zero();
            for (i, j, c) in terms {
                x.add_term(parts[i % parts.len()].clone(), parts[j % parts.len()].clone(), c.into());
            }
            let poly = x.eval(a, b, l.nvars());
            prop_assert_eq!(to_bischur(&poly, a, b).unwrap(), x);
        }
    }
}
