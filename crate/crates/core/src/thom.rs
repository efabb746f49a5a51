//! Thom polynomials of the second-order Thom-Boardman classes `Σ^{i,j}(r)`.
//!
//! Two closed-form families (`r = -i+1`, and `j = 1`), the local classes
//! `[Σ^{•,j}(A^i, B^h)]` they come from, a Grassmannian pushforward that
//! produces the local class for every `(i, j, h)`, and the lift from the
//! local class to the universal Thom polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabets::{
    euler_hom_bischur, schur_on_roots, to_multischur, AlphabetPoly, BivariateSchurExpr, Layout,
};
use crate::detforms::{e_det, f_det, lascoux_line_expand, lascoux_tensor_expand};
use crate::error::{Error, Result};
use crate::exec;
use crate::partitions::{straighten, Partition};
use crate::schur::{pieri_row, SchurExpr};

/// Parameters `(i, j, r)` of `Σ^{i,j}(r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularityParams {
    pub i: usize,
    pub j: usize,
    pub r: i64,
}

impl SingularityParams {
    /// Validates `i ≥ 1`, `j ≤ i` and `h = r + i ≥ 1`.
    pub fn new(i: usize, j: usize, r: i64) -> Result<Self> {
        if i == 0 {
            return Err(Error::IZero);
        }
        if j > i {
            return Err(Error::JExceedsI { i, j });
        }
        if r + (i as i64) < 1 {
            return Err(Error::HTooSmall { i, r });
        }
        Ok(SingularityParams { i, j, r })
    }

    /// `h = r + i`.
    pub fn h(&self) -> usize {
        (self.r + self.i as i64) as usize
    }

    /// `k = ij - j(j-1)/2`.
    pub fn k(&self) -> usize {
        self.i * self.j - self.j * self.j.saturating_sub(1) / 2
    }
}

impl fmt::Display for SingularityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ^{{{},{}}}({})", self.i, self.j, self.r)
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn sign(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

fn merge(parts: Vec<SchurExpr>) -> SchurExpr {
    let mut out = SchurExpr::zero();
    for p in parts {
        out += &p;
    }
    out
}

fn merge_bi(parts: Vec<BivariateSchurExpr>) -> BivariateSchurExpr {
    let mut out = BivariateSchurExpr::zero();
    for p in &parts {
        out.add_assign(p);
    }
    out
}

fn check_h(i: usize, r: i64) -> Result<usize> {
    if i == 0 {
        return Err(Error::IZero);
    }
    let h = r + i as i64;
    if h < 1 {
        return Err(Error::HTooSmall { i, r });
    }
    Ok(h as usize)
}

// ---------------------------------------------------------------------------
// Closed forms

/// `[Σ^{i,j}(-i+1)] = Σ_{μ⊂δ} 2^{|μ| - j(j-1)/2} E_{δ/μ}(i) s_{(d-|μ|, μ~)}`
/// with `δ = (j, ..., 1)` and `d = i + j(j+1)/2`.
pub fn tp_main1(i: usize, j: usize) -> Result<SchurExpr> {
    if i == 0 {
        return Err(Error::IZero);
    }
    if j > i {
        return Err(Error::JExceedsI { i, j });
    }
    let delta = Partition::staircase(j);
    let d = i + delta.weight();
    let shift = j * j.saturating_sub(1) / 2;
    let mus = delta.subpartitions();
    let parts = exec::map(&mus, |mu| -> Result<SchurExpr> {
        let e = e_det(&delta, mu, i)?;
        if e.is_zero() {
            return Ok(SchurExpr::zero());
        }
        let c = if mu.weight() >= shift {
            e * pow2(mu.weight() - shift)
        } else {
            let den = pow2(shift - mu.weight());
            if !(&e % &den).is_zero() {
                return Err(Error::NonIntegral(format!("{e}/{den}")));
            }
            e / den
        };
        let lambda = Partition::row(d - mu.weight()).concat(&mu.conjugate())?;
        Ok(SchurExpr::term(lambda, c))
    });
    Ok(merge(parts.into_iter().collect::<Result<_>>()?))
}

/// Rewrites `μ` as `μ - x` over all 0-1 vectors `x` for which `μ - x` is
/// still a partition: inside each block of equal parts, `x` is `0..01..1`.
fn decrements(mu: &Partition) -> Vec<Partition> {
    let parts = mu.parts();
    let mut blocks: Vec<(usize, usize)> = Vec::new(); // (start, len)
    let mut s = 0;
    while s < parts.len() {
        let mut e = s;
        while e < parts.len() && parts[e] == parts[s] {
            e += 1;
        }
        blocks.push((s, e - s));
        s = e;
    }
    let mut out = Vec::new();
    let mut cur = parts.to_vec();
    dec_rec(&blocks, 0, &mut cur, &mut out);
    out
}

fn dec_rec(blocks: &[(usize, usize)], b: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if b == blocks.len() {
        out.push(Partition::from_sorted_unchecked(cur.clone()));
        return;
    }
    let (start, len) = blocks[b];
    for t in 0..=len {
        let tail = start + len - t..start + len;
        cur[tail.clone()].iter_mut().for_each(|x| *x -= 1);
        dec_rec(blocks, b + 1, cur, out);
        cur[tail].iter_mut().for_each(|x| *x += 1);
    }
}

/// `[Σ^{i,1}(r)] = Σ_{(λ,μ)∈J} s_{(i^h+λ, μ)} Σ_x E_{∁λ~/(μ-x)~}(i)`.
pub fn tp_main2(i: usize, r: i64) -> Result<SchurExpr> {
    let h = check_h(i, r)?;
    let total = i * h - i + 1;
    let lambdas = Partition::in_block(i, h);
    let block = Partition::block(i, h);
    let parts = exec::map(&lambdas, |lambda| -> Result<SchurExpr> {
        let mut out = SchurExpr::zero();
        if lambda.weight() > total {
            return Ok(out);
        }
        let outer = lambda.conjugate().complement(h, i)?;
        let head = block.add(lambda);
        for mu in Partition::of_weight(total - lambda.weight(), i, usize::MAX) {
            let mut coeff = BigInt::zero();
            for nu in decrements(&mu) {
                let inner = nu.conjugate();
                if outer.contains(&inner) {
                    coeff += e_det(&outer, &inner, i)?;
                }
            }
            if !coeff.is_zero() {
                out.add_term(head.concat(&mu)?, coeff);
            }
        }
        Ok(out)
    });
    Ok(merge(parts.into_iter().collect::<Result<_>>()?))
}

/// `[Σ^{i,1}(r)] = Σ_{(ν,μ)∈I} F_{ν/μ}(i) s_{(i^h + ∁ν~, μ~)}`.
pub fn tp_main2nice(i: usize, r: i64) -> Result<SchurExpr> {
    let h = check_h(i, r)?;
    let nus = Partition::in_block(h, i);
    let block = Partition::block(i, h);
    let parts = exec::map(&nus, |nu| -> Result<SchurExpr> {
        let mut out = SchurExpr::zero();
        if nu.weight() + 1 < i {
            return Ok(out);
        }
        let head = block.add(&nu.conjugate().complement(i, h)?);
        let w = nu.weight() + 1 - i;
        for mu in Partition::of_weight(w, w, i) {
            let f = f_det(nu, &mu, i)?;
            if !f.is_zero() {
                out.add_term(head.concat(&mu.conjugate())?, f);
            }
        }
        Ok(out)
    });
    Ok(merge(parts.into_iter().collect::<Result<_>>()?))
}

// ---------------------------------------------------------------------------
// Local classes [Σ^{•,j}(A^i, B^h)]

/// `2^j s_δ(A* ⊗ √L)` with `c_1(√L) = β/2`, as `Σ e s_α(A) s_(m)(B)`.
pub fn sigma_ht(i: usize, j: usize) -> Result<BivariateSchurExpr> {
    if i == 0 {
        return Err(Error::IZero);
    }
    if j > i {
        return Err(Error::JExceedsI { i, j });
    }
    let delta = Partition::staircase(j);
    let mut out = BivariateSchurExpr::zero();
    for (mu, m, e) in lascoux_line_expand(&delta, i)? {
        // 2^j (β/2)^m (-1)^{|μ|} E s_μ(A)
        let c = if j >= m {
            e * pow2(j - m)
        } else {
            let den = pow2(m - j);
            if !(&e % &den).is_zero() {
                return Err(Error::NonIntegral(format!("{e}/{den}")));
            }
            e / den
        };
        let c = c * sign(mu.weight() % 2 == 1);
        out.add_term(mu, Partition::row(m), c);
    }
    Ok(out)
}

/// `c_{ih-i+1}(A* ⊗ B - A)` in the bivariate Schur basis, for ranks `i`, `h`.
pub fn sigma_porteous(i: usize, h: usize) -> Result<BivariateSchurExpr> {
    if i == 0 {
        return Err(Error::IZero);
    }
    if h == 0 {
        return Err(Error::HTooSmall { i, r: -(i as i64) });
    }
    let total = i * h - i + 1;
    // c(A* ⊗ B): s_μ(A*) = (-1)^{|μ|} s_μ(A)
    let tensor: Vec<_> = lascoux_tensor_expand(i, h)
        .iter()
        .map(|((a, b), c)| (a.clone(), b.clone(), c.clone()))
        .collect();
    let parts = exec::map(&tensor, |(mu, beta, c)| {
        let mut out = BivariateSchurExpr::zero();
        let have = mu.weight() + beta.weight();
        if have > total {
            return out;
        }
        // c(-A) = Σ (-1)^k s_(k)(A); only one k reaches the target degree
        let k = total - have;
        let c = c * sign((mu.weight() + k) % 2 == 1);
        let prod = pieri_row(&SchurExpr::basis(mu.clone()), k, Some(i));
        for (alpha, v) in prod.iter() {
            out.add_term(alpha.clone(), beta.clone(), &c * v);
        }
        out
    });
    Ok(merge_bi(parts))
}

/// `π_*[s_μ(R) s_ν(Q)] = s_{(ν - r^q, μ)}(E)` for `R`, `Q` of ranks `r`, `q`.
pub fn gysin_push_term(mu: &Partition, nu: &Partition, r: usize, q: usize) -> (Partition, BigInt) {
    if mu.len() > r || nu.len() > q {
        return (Partition::empty(), BigInt::zero());
    }
    let mut seq: Vec<i64> = nu.padded(q).iter().map(|&x| x as i64 - r as i64).collect();
    seq.extend(mu.parts().iter().map(|&x| x as i64));
    let s = straighten(&seq);
    (s.partition, BigInt::from(s.sign))
}

/// Linear extension of [`gysin_push_term`] to `Σ c s_μ(R) s_ν(Q)`.
pub fn gysin_push<'a, I>(x: I, r: usize, q: usize) -> SchurExpr
where
    I: IntoIterator<Item = (&'a Partition, &'a Partition, &'a BigInt)>,
{
    let mut out = SchurExpr::zero();
    for (mu, nu, c) in x {
        let (lambda, s) = gysin_push_term(mu, nu, r, q);
        if !s.is_zero() {
            out.add_term(lambda, s * c);
        }
    }
    out
}

/// Weights of `W = R ⊗ Q + Sym² R` in the layout `R` then `Q`.
fn w_weights(layout: &Layout) -> Vec<AlphabetPoly> {
    let nv = layout.nvars();
    let rr = layout.alphabet("R").roots(nv);
    let qq = layout.alphabet("Q").roots(nv);
    let mut w = Vec::new();
    for x in &rr {
        for y in &qq {
            w.push(x.add(y));
        }
    }
    for a in 0..rr.len() {
        for c in a..rr.len() {
            w.push(rr[a].add(&rr[c]));
        }
    }
    w
}

/// Pushes `s_α(W)` down to `A`, with `W` over `Gr_j(A^i)`.
fn push_schur_of_w(alpha: &Partition, layout: &Layout, j: usize, q: usize) -> Result<SchurExpr> {
    let nv = layout.nvars();
    let sw = schur_on_roots(alpha, &w_weights(layout), nv);
    let expansion = to_multischur(&sw, &[layout.alphabet("R"), layout.alphabet("Q")])?;
    let mut terms = Vec::with_capacity(expansion.len());
    for (key, c) in expansion {
        terms.push((key[0].clone(), key[1].clone(), c));
    }
    Ok(gysin_push(terms.iter().map(|(a, b, c)| (a, b, c)), j, q))
}

/// `[Σ^{•,j}(A^i, B^h)] = π_* c_top(B ⊗ (R⊗Q + Sym²R)*)` over `Gr_j(A)`.
///
/// The top Chern class is expanded as `s_{(k^h)}(B - W)`; the `B` part stays
/// in the Schur basis and only `s_α(W)` is evaluated on roots of `R`, `Q`.
pub fn sigma_bullet_pushforward(i: usize, h: usize, j: usize) -> Result<BivariateSchurExpr> {
    if i == 0 {
        return Err(Error::IZero);
    }
    if j > i {
        return Err(Error::JExceedsI { i, j });
    }
    if j < 1 {
        return Err(Error::JTooSmall { j, min: 1 });
    }
    let q = i - j;
    let k = j * q + j * (j + 1) / 2;
    let layout = Layout::new(&[("R", j), ("Q", q)])?;
    let euler: Vec<_> = euler_hom_bischur(k, h)
        .iter()
        .map(|((w, b), c)| (w.clone(), b.clone(), c.clone()))
        .collect();
    let parts = exec::map(&euler, |(alpha, beta, c)| -> Result<BivariateSchurExpr> {
        let pushed = push_schur_of_w(alpha, &layout, j, q)?;
        let mut out = BivariateSchurExpr::zero();
        for (a, v) in pushed.iter() {
            out.add_term(a.clone(), beta.clone(), c * v);
        }
        Ok(out)
    });
    Ok(merge_bi(parts.into_iter().collect::<Result<_>>()?))
}

/// `Σ e_{αβ} s_α(A) s_β(B) ↦ Σ (-1)^{|α|} e_{αβ} s_{(i^h + β, α~)}`.
pub fn lift_to_universal(x: &BivariateSchurExpr, i: usize, h: usize) -> Result<SchurExpr> {
    let block = Partition::block(i, h);
    let mut out = SchurExpr::zero();
    for ((alpha, beta), c) in x.iter() {
        if alpha.len() > i {
            return Err(Error::LiftShape {
                alpha: alpha.clone(),
                beta: beta.clone(),
                reason: format!("l(α) = {} exceeds i = {i}", alpha.len()),
            });
        }
        if beta.len() > h {
            return Err(Error::LiftShape {
                alpha: alpha.clone(),
                beta: beta.clone(),
                reason: format!("l(β) = {} exceeds h = {h}", beta.len()),
            });
        }
        let lambda = block.add(beta).concat(&alpha.conjugate())?;
        out.add_term(lambda, c * sign(alpha.weight() % 2 == 1));
    }
    Ok(out)
}

/// `[Σ^{i,j}(r)]` through the pushforward and the lift.
pub fn tp_general(i: usize, j: usize, r: i64) -> Result<SchurExpr> {
    let p = SingularityParams::new(i, j, r)?;
    if j < 1 {
        return Err(Error::JTooSmall { j, min: 1 });
    }
    lift_to_universal(&sigma_bullet_pushforward(i, p.h(), j)?, i, p.h())
}

/// Formula used to compute a Thom polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Main1,
    Main2,
    Main2nice,
    General,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Main1 => "main1",
            Route::Main2 => "main2",
            Route::Main2nice => "main2nice",
            Route::General => "general",
        }
    }

    /// `main1` when `r = -i+1`, `main2nice` when `j = 1`, otherwise `general`.
    pub fn auto(p: &SingularityParams) -> Route {
        if p.h() == 1 {
            Route::Main1
        } else if p.j == 1 {
            Route::Main2nice
        } else {
            Route::General
        }
    }
}

fn inapplicable(route: Route, reason: String) -> Error {
    Error::RouteInapplicable {
        route: route.name().to_string(),
        reason,
    }
}

/// Computes `[Σ^{i,j}(r)]` with the given route.
pub fn compute(p: &SingularityParams, route: Route) -> Result<SchurExpr> {
    match route {
        Route::Main1 => {
            if p.h() != 1 {
                return Err(inapplicable(route, format!("requires r = -i+1 = {}", 1 - p.i as i64)));
            }
            tp_main1(p.i, p.j)
        }
        Route::Main2 | Route::Main2nice => {
            if p.j != 1 {
                return Err(inapplicable(route, format!("requires j = 1 (got j = {})", p.j)));
            }
            if route == Route::Main2 {
                tp_main2(p.i, p.r)
            } else {
                tp_main2nice(p.i, p.r)
            }
        }
        Route::General => {
            if p.j == 0 {
                return Err(inapplicable(route, "requires j ≥ 1".into()));
            }
            tp_general(p.i, p.j, p.r)
        }
    }
}

/// The local class matching a route: `sigma_ht` for `h = 1`, `sigma_porteous`
/// for `j = 1`, the pushforward otherwise.
pub fn bullet_class(p: &SingularityParams) -> Result<BivariateSchurExpr> {
    if p.h() == 1 {
        sigma_ht(p.i, p.j)
    } else if p.j == 1 {
        sigma_porteous(p.i, p.h())
    } else {
        sigma_bullet_pushforward(p.i, p.h(), p.j)
    }
}

// ---------------------------------------------------------------------------
// Thom series

/// Coefficients `c_γ` of `ts(Σ^{i,j}) = Σ c_γ d_γ`, with
/// `d_γ = s_{(h^{(i+k)} + γ)~}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomSeriesExpr {
    pub i: usize,
    pub j: usize,
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl ThomSeriesExpr {
    /// `i + k`.
    pub fn index_len(&self) -> usize {
        self.i + self.i * self.j - self.j * self.j.saturating_sub(1) / 2
    }

    /// `Σ c_γ d_γ` at `h = r + i`; terms with `h + γ_l < 0` are dropped.
    pub fn reconstruct(&self, r: i64) -> Result<SchurExpr> {
        let h = check_h(self.i, r)? as i64;
        let mut out = SchurExpr::zero();
        for (gamma, c) in &self.terms {
            let seq: Vec<i64> = gamma.iter().map(|g| h + g).collect();
            if seq.iter().any(|&x| x < 0) {
                continue;
            }
            out.add_term(Partition::from_signed(&seq)?.conjugate(), c.clone());
        }
        Ok(out)
    }

    /// True when `γ_l ≥ 0` for `l ≤ i` and `γ_l ≤ 0` for `l > i`, for all `γ`.
    pub fn sign_pattern_holds(&self) -> bool {
        self.terms.keys().all(|g| sign_pattern(g, self.i))
    }

    /// Restriction to indices with `γ_last ≥ -h`.
    pub fn visible_at(&self, h: usize) -> BTreeMap<Vec<i64>, BigInt> {
        self.terms
            .iter()
            .filter(|(g, _)| g.last().is_none_or(|&x| x >= -(h as i64)))
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect()
    }
}

fn sign_pattern(gamma: &[i64], i: usize) -> bool {
    gamma
        .iter()
        .enumerate()
        .all(|(l, &g)| if l < i { g >= 0 } else { g <= 0 })
}

/// Reads `c_γ` off a computed `[Σ^{i,j}(r)]` through `γ = λ~ - h`.
pub fn extract_series(x: &SchurExpr, p: &SingularityParams) -> Result<ThomSeriesExpr> {
    let len = p.i + p.k();
    let h = p.h() as i64;
    let mut terms = BTreeMap::new();
    for (lambda, c) in x.iter() {
        let conj = lambda.conjugate();
        if conj.len() > len {
            return Err(Error::Internal(format!(
                "{lambda} has more than i + k = {len} columns"
            )));
        }
        let gamma: Vec<i64> = (0..len).map(|l| conj.get(l) as i64 - h).collect();
        terms.insert(gamma, c.clone());
    }
    Ok(ThomSeriesExpr {
        i: p.i,
        j: p.j,
        terms,
    })
}

/// `ts(Σ^{i,1})` read off `[Σ^{i,1}(r_witness)]`; complete for all `γ` with
/// `γ_last ≥ -(r_witness + i)`.
pub fn thom_series(i: usize, r_witness: i64) -> Result<ThomSeriesExpr> {
    let p = SingularityParams::new(i, 1, r_witness)?;
    extract_series(&tp_main2nice(i, r_witness)?, &p)
}

/// `ts(Σ^{i,1}) = Σ_{(ν,μ)∈I'} F_{ν/μ}(i) d_{(μ, -ν_i, ..., -ν_1)}`,
/// truncated to `ν_1 ≤ bound`.
pub fn thom_series_formula(i: usize, bound: usize) -> Result<ThomSeriesExpr> {
    if i == 0 {
        return Err(Error::IZero);
    }
    let mut terms = BTreeMap::new();
    for nu in Partition::in_block(bound, i) {
        if nu.weight() + 1 < i {
            continue;
        }
        let w = nu.weight() + 1 - i;
        for mu in Partition::of_weight(w, w, i) {
            let f = f_det(&nu, &mu, i)?;
            if f.is_zero() {
                continue;
            }
            let mut gamma: Vec<i64> = mu.padded(i).iter().map(|&x| x as i64).collect();
            gamma.extend(nu.padded(i).iter().rev().map(|&x| -(x as i64)));
            terms.insert(gamma, f);
        }
    }
    Ok(ThomSeriesExpr { i, j: 1, terms })
}

/// Compares the `c_γ` read off `[Σ^{i,1}(r)]` for every `r` in `rs`, on the
/// indices visible at both values of `h`. Returns the first disagreement.
pub fn check_r_independence(i: usize, rs: &[i64]) -> Result<Option<(i64, i64, Vec<i64>)>> {
    let series = rs
        .iter()
        .map(|&r| thom_series(i, r).map(|s| (r, s)))
        .collect::<Result<Vec<_>>>()?;
    for (a, (ra, sa)) in series.iter().enumerate() {
        for (rb, sb) in &series[a + 1..] {
            let h = (ra + i as i64).min(rb + i as i64) as usize;
            let va = sa.visible_at(h);
            let vb = sb.visible_at(h);
            for g in va.keys().chain(vb.keys()) {
                if va.get(g) != vb.get(g) {
                    return Ok(Some((*ra, *rb, g.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// Smallest coefficient, if negative, with its partition.
pub fn negative_witness(x: &SchurExpr) -> Option<(Partition, BigInt)> {
    x.iter()
        .find(|(_, c)| c.is_negative())
        .map(|(l, c)| (l.clone(), c.clone()))
}
