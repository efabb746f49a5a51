//! Checks of computed Thom polynomials against the restriction equations,
//! the vanishing conditions and the closed-form examples, plus independent
//! oracles for the combinatorial kernel.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabets::{
    chern_total, euler_hom, euler_hom_bischur, rho_bischur, schur_eval, schur_on_roots, to_bischur, AlphabetPoly,
    BivariateSchurExpr, Bundle, Layout,
};
use crate::detforms::{binomial, e_det, gbinom, lascoux_line_expand, lascoux_tensor_expand};
use crate::error::Result;
use crate::partitions::Partition;
use crate::schur::{lr_coefficient, SchurExpr};
use crate::thom::{self, SingularityParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// What a check was run on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportParams {
    Singularity(SingularityParams),
    AdHoc(BTreeMap<String, String>),
}

/// Outcome of one check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: ReportParams,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl VerificationReport {
    fn new(check: &str, params: ReportParams, witness: Option<String>) -> Self {
        VerificationReport {
            check: check.to_string(),
            params,
            status: if witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ", self.check)?;
        match &self.params {
            ReportParams::Singularity(p) => write!(f, "(i={}, j={}, r={})", p.i, p.j, p.r)?,
            ReportParams::AdHoc(m) => {
                let items: Vec<_> = m.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "({})", items.join(", "))?
            }
        }
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

fn sing(i: usize, j: usize, r: i64) -> ReportParams {
    ReportParams::Singularity(SingularityParams { i, j, r })
}

fn adhoc(items: &[(&str, String)]) -> ReportParams {
    ReportParams::AdHoc(items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
}

fn h_of(i: usize, r: i64) -> usize {
    (r + i as i64).max(0) as usize
}

fn first_term(x: &BivariateSchurExpr) -> String {
    x.iter()
        .next()
        .map(|((a, b), c)| format!("coefficient {c} of s_{a}(A) s_{b}(B)"))
        .unwrap_or_default()
}

// ---------------------------------------------------------------------------
// Restriction equations and vanishing

/// `ρ_{i-1, h-1}(x) = 0`.
pub fn check_restriction_1(x: &SchurExpr, i: usize, j: usize, r: i64) -> VerificationReport {
    let h = h_of(i, r);
    let image = rho_bischur(x, i.saturating_sub(1), h.saturating_sub(1));
    let witness = (!image.is_zero()).then(|| format!("nonzero image, {}", first_term(&image)));
    VerificationReport::new("restriction_1", sing(i, j, r), witness)
}

/// `ρ_{i, h}(x) = e(Hom(A, B)) · bullet`.
pub fn check_restriction_2(
    x: &SchurExpr,
    i: usize,
    j: usize,
    r: i64,
    bullet: &BivariateSchurExpr,
) -> VerificationReport {
    let h = h_of(i, r);
    let lhs = rho_bischur(x, i, h);
    let rhs = euler_hom_bischur(i, h).mul_bounded(bullet, Some(i), Some(h));
    let diff = lhs.sub(&rhs);
    let witness = (!diff.is_zero()).then(|| format!("difference has {}", first_term(&diff)));
    VerificationReport::new("restriction_2", sing(i, j, r), witness)
}

/// Every `λ` in `x` satisfies `i^h ⊂ λ`, `(i+1)^{h+1} ⊄ λ` and
/// `λ_1 ≤ i + k`.
pub fn check_vanishing(x: &SchurExpr, i: usize, j: usize, r: i64) -> VerificationReport {
    let h = h_of(i, r);
    let k = i * j - j * j.saturating_sub(1) / 2;
    let inner = Partition::block(i, h);
    let outer = Partition::block(i + 1, h + 1);
    let witness = x.iter().find_map(|(lambda, c)| {
        let cond = if !lambda.contains(&inner) {
            "a"
        } else if lambda.contains(&outer) {
            "b"
        } else if lambda.first() > i + k {
            "c"
        } else {
            return None;
        };
        Some(format!("condition ({cond}) violated by {c}*s{lambda}"))
    });
    VerificationReport::new("vanishing", sing(i, j, r), witness)
}

/// Coefficients of `x` are all nonnegative.
pub fn check_nonnegative(x: &SchurExpr, i: usize, j: usize, r: i64) -> VerificationReport {
    let witness = thom::negative_witness(x).map(|(l, c)| format!("coefficient {c} of s{l}"));
    VerificationReport::new("nonnegativity", sing(i, j, r), witness)
}

/// Computes `[Σ^{i,j}(r)]` with the automatic route and runs both
/// restriction equations, the vanishing conditions and nonnegativity.
pub fn check_singularity(i: usize, j: usize, r: i64) -> Result<Vec<VerificationReport>> {
    let p = SingularityParams::new(i, j, r)?;
    let x = thom::compute(&p, thom::Route::auto(&p))?;
    let bullet = thom::bullet_class(&p)?;
    Ok(vec![
        check_restriction_1(&x, i, j, r),
        check_restriction_2(&x, i, j, r, &bullet),
        check_vanishing(&x, i, j, r),
        check_nonnegative(&x, i, j, r),
    ])
}

// ---------------------------------------------------------------------------
// Golden examples

fn compare(check: &str, params: ReportParams, got: Result<SchurExpr>, expected: &SchurExpr) -> VerificationReport {
    let witness = match got {
        Err(e) => Some(e.to_string()),
        Ok(got) if &got == expected => None,
        Ok(got) => {
            let lambda = got
                .iter()
                .map(|(l, _)| l)
                .chain(expected.iter().map(|(l, _)| l))
                .find(|l| got.coeff(l) != expected.coeff(l))
                .cloned()
                .unwrap_or_default();
            Some(format!(
                "s{lambda}: computed {}, expected {}",
                got.coeff(&lambda),
                expected.coeff(&lambda)
            ))
        }
    };
    VerificationReport::new(check, params, witness)
}

/// `[Σ^{i,j}(-i+1)]` for `j ≤ 2`.
pub fn golden_main1(i: usize, j: usize) -> SchurExpr {
    let p = |v: &[usize]| Partition::of(v);
    let ii = i as i64;
    match j {
        0 => SchurExpr::term(p(&[i]), 1),
        1 => SchurExpr::from_terms([(p(&[i + 1]), ii), (p(&[i, 1]), 2)]),
        2 => SchurExpr::from_terms([
            (p(&[i + 3]), binomial(i + 1, 3)),
            (p(&[i + 2, 1]), BigInt::from(ii * ii - 1)),
            (p(&[i + 1, 2]), BigInt::from(2 * (ii + 1))),
            (p(&[i + 1, 1, 1]), BigInt::from(2 * (ii - 1))),
            (p(&[i, 2, 1]), BigInt::from(4)),
        ]),
        _ => panic!("closed form only for j ≤ 2"),
    }
}

/// `[A_2(r)] = Σ_{k=0}^{r+1} 2^k s_{(2^{r+1-k}, 1^{2k})}` for `r ≥ 0`.
pub fn golden_morin(r: usize) -> SchurExpr {
    let mut out = SchurExpr::zero();
    for k in 0..=r + 1 {
        let mut parts = vec![2; r + 1 - k];
        parts.extend(vec![1; 2 * k]);
        out.add_term(Partition::of(&parts), BigInt::one() << k);
    }
    out
}

/// `[Σ^{2,1}(r)]` as the sum over `K = {b ≤ a ≤ h, c ≤ d, c + d = a + b - 1}`.
pub fn golden_sigma21(r: usize) -> SchurExpr {
    let h = r + 2;
    let mut out = SchurExpr::zero();
    for a in 0..=h {
        for b in 0..=a {
            if a + b == 0 {
                continue;
            }
            let s = a + b - 1;
            for c in 0..=s / 2 {
                let d = s - c;
                let coeff = gbinom(a + 1, d as i64 + 1) * gbinom(b, c as i64)
                    - gbinom(a + 1, c as i64) * gbinom(b, d as i64 + 1);
                if coeff.is_zero() {
                    continue;
                }
                let seq = [h + d, h + c, h - b, h - a];
                let lambda = Partition::new(seq.to_vec()).expect("nonincreasing").conjugate();
                out.add_term(lambda, coeff);
            }
        }
    }
    out
}

/// The closed-form examples: `Σ^{i,j}(-i+1)` for `j ≤ 2`, `i ≤ 5`; Morin
/// `A_2(r)` for `r ≤ 4`; `Σ^{2,1}(r)` for `r ≤ 3`.
pub fn golden_examples() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for i in 1..=5usize {
        for j in 0..=2usize.min(i) {
            out.push(compare(
                "golden_main1",
                sing(i, j, 1 - i as i64),
                thom::tp_main1(i, j),
                &golden_main1(i, j),
            ));
        }
    }
    for r in 0..=4usize {
        out.push(compare(
            "golden_morin",
            sing(1, 1, r as i64),
            thom::tp_main2nice(1, r as i64),
            &golden_morin(r),
        ));
    }
    for r in 0..=3usize {
        out.push(compare(
            "golden_sigma21",
            sing(2, 1, r as i64),
            thom::tp_main2nice(2, r as i64),
            &golden_sigma21(r),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson oracle

type Monomials = HashMap<Vec<u8>, i64>;

/// Monomial expansion of `s_ν(x_1..x_n)` by enumerating semistandard
/// tableaux row by row.
fn ssyt_monomials(nu: &Partition, n: usize) -> Monomials {
    let mut out = Monomials::new();
    if nu.len() > n {
        return out;
    }
    let shape = nu.parts().to_vec();
    let mut rows: Vec<Vec<u8>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut content = vec![0u8; n];
    fill(&shape, 0, 0, n as u8, &mut rows, &mut content, &mut out);
    out
}

fn fill(
    shape: &[usize],
    row: usize,
    col: usize,
    n: u8,
    rows: &mut Vec<Vec<u8>>,
    content: &mut Vec<u8>,
    out: &mut Monomials,
) {
    if row == shape.len() {
        *out.entry(content.clone()).or_insert(0) += 1;
        return;
    }
    if col == shape[row] {
        fill(shape, row + 1, 0, n, rows, content, out);
        return;
    }
    let left = if col > 0 { rows[row][col - 1] } else { 1 };
    let above = if row > 0 { rows[row - 1][col] + 1 } else { 1 };
    // leave room for the strictly increasing entries below in this column
    let below = shape[row + 1..].iter().filter(|&&l| l > col).count();
    let lo = left.max(above);
    if below >= n as usize {
        return;
    }
    let hi = n - below as u8;
    for v in lo..=hi {
        rows[row][col] = v;
        content[v as usize - 1] += 1;
        fill(shape, row, col + 1, n, rows, content, out);
        content[v as usize - 1] -= 1;
    }
}

/// `c^λ_{μν}` as the coefficient of `x^{λ+δ}` in `a_{μ+δ} · s_ν`, computed
/// in `l(λ) + 1` variables from the monomial expansion of `s_ν`.
pub fn lr_bruteforce(mu: &Partition, nu: &Partition, lambda: &Partition) -> BigInt {
    let n = lambda.len() + 1;
    lr_bruteforce_with(&ssyt_monomials(nu, n), mu, lambda, n)
}

fn lr_bruteforce_with(s_nu: &Monomials, mu: &Partition, lambda: &Partition, n: usize) -> BigInt {
    if mu.len() > n || mu.weight() > lambda.weight() {
        return BigInt::zero();
    }
    let target: Vec<i64> = (0..n).map(|k| (lambda.get(k) + n - 1 - k) as i64).collect();
    let mu_delta: Vec<i64> = (0..n).map(|k| (mu.get(k) + n - 1 - k) as i64).collect();
    let mut total = 0i64;
    for (m, c) in s_nu {
        // λ + δ - m must be a permutation σ of μ + δ; add sgn(σ)·c
        let mut v: Vec<i64> = (0..n).map(|k| target[k] - m[k] as i64).collect();
        if v.iter().any(|&x| x < 0) {
            continue;
        }
        let mut inversions = 0usize;
        for a in 0..n {
            for b in a + 1..n {
                if v[a] < v[b] {
                    inversions += 1;
                }
            }
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v == mu_delta {
            total += if inversions.is_multiple_of(2) { *c } else { -*c };
        }
    }
    BigInt::from(total)
}

/// Compares the tableau LR coefficients with [`lr_bruteforce`] for every
/// triple with `|λ| = |μ| + |ν| ≤ max_weight`.
pub fn check_lr(max_weight: usize) -> VerificationReport {
    let mut witness = None;
    let mut cache: HashMap<(Partition, usize), Monomials> = HashMap::new();
    'outer: for w in 0..=max_weight {
        for lambda in Partition::of_weight(w, w, w) {
            let n = lambda.len() + 1;
            for wm in 0..=w {
                for mu in Partition::of_weight(wm, wm, wm) {
                    for nu in Partition::of_weight(w - wm, w - wm, w - wm) {
                        let s_nu = cache
                            .entry((nu.clone(), n))
                            .or_insert_with(|| ssyt_monomials(&nu, n));
                        let brute = lr_bruteforce_with(s_nu, &mu, &lambda, n);
                        let tableau = lr_coefficient(&mu, &nu, &lambda);
                        if brute != tableau {
                            witness = Some(format!(
                                "c^{lambda}_{{{mu},{nu}}}: tableau {tableau}, oracle {brute}"
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    VerificationReport::new(
        "lr_oracle",
        adhoc(&[("max_weight", max_weight.to_string())]),
        witness,
    )
}

// ---------------------------------------------------------------------------
// Determinantal kernel

/// Both Lascoux expansions against root-variable evaluation: `c(A ⊗ B)` for
/// `n, p ≤ n_max, p_max`, and `s_λ(A ⊗ L)` for `l(λ) ≤ n ≤ n_max`,
/// `|λ| ≤ max_weight`.
pub fn check_lascoux(n_max: usize, p_max: usize, max_weight: usize) -> Result<VerificationReport> {
    let mut witness = None;
    'tensor: for n in 1..=n_max {
        for p in 1..=p_max {
            let l = Layout::pair(n, p)?;
            let (a, b) = (l.alphabet("A"), l.alphabet("B"));
            let c = chern_total(&Bundle::of(a).tensor(Bundle::of(b)), l.nvars(), n * p)?;
            if to_bischur(&c, a, b)? != lascoux_tensor_expand(n, p) {
                witness = Some(format!("c(A⊗B) expansion, n={n} p={p}"));
                break 'tensor;
            }
        }
    }
    if witness.is_none() {
        'line: for n in 1..=n_max {
            let l = Layout::new(&[("A", n), ("L", 1)])?;
            let (a, line) = (l.alphabet("A"), l.alphabet("L"));
            let nv = l.nvars();
            let t = AlphabetPoly::var(nv, line.offset);
            let shifted: Vec<_> = a.roots(nv).iter().map(|x| x.add(&t)).collect();
            for lambda in Partition::up_to_weight(max_weight).into_iter().filter(|x| x.len() <= n) {
                let lhs = schur_on_roots(&lambda, &shifted, nv);
                let mut rhs = AlphabetPoly::zero(nv);
                for (mu, power, c) in lascoux_line_expand(&lambda, n)? {
                    rhs.add_assign(&schur_eval(&mu, a, nv).mul(&t.pow(power)).scale_int(&c));
                }
                if lhs != rhs {
                    witness = Some(format!("s_{lambda}(A⊗L) expansion, n={n}"));
                    break 'line;
                }
            }
        }
    }
    Ok(VerificationReport::new(
        "lascoux",
        adhoc(&[
            ("n_max", n_max.to_string()),
            ("p_max", p_max.to_string()),
            ("max_weight", max_weight.to_string()),
        ]),
        witness,
    ))
}

/// First rows of the `gbinom` triangle as printed in the literature.
pub const GBINOM_TRIANGLE: [&[i64]; 6] = [
    &[1],
    &[1, 2],
    &[1, 3, 4],
    &[1, 4, 7, 8],
    &[1, 5, 11, 15, 16],
    &[1, 6, 16, 26, 31, 32],
];

pub fn check_gbinom_triangle() -> VerificationReport {
    let mut witness = None;
    'rows: for (n, row) in GBINOM_TRIANGLE.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            let got = gbinom(n, k as i64);
            if got != BigInt::from(v) {
                witness = Some(format!("gbinom({n},{k}) = {got}, expected {v}"));
                break 'rows;
            }
        }
    }
    VerificationReport::new("gbinom_triangle", adhoc(&[("rows", GBINOM_TRIANGLE.len().to_string())]), witness)
}

/// `E_{λ/λ}(n) = 1`, `E ≥ 0`, and `E_{λ/μ}(n) = 0` for `μ ⊄ λ`, over all
/// `λ, μ ⊂ (b^b)` and `max(l(λ), l(μ), 1) ≤ n ≤ b`.
pub fn check_e_properties(b: usize) -> Result<VerificationReport> {
    let parts = Partition::in_block(b, b);
    let mut witness = None;
    'outer: for lambda in &parts {
        for mu in &parts {
            for n in lambda.len().max(mu.len()).max(1)..=b {
                let e = e_det(lambda, mu, n)?;
                let bad = (lambda == mu && !e.is_one())
                    || e.is_negative()
                    || (!lambda.contains(mu) && !e.is_zero());
                if bad {
                    witness = Some(format!("E({lambda}/{mu}, {n}) = {e}"));
                    break 'outer;
                }
            }
        }
    }
    Ok(VerificationReport::new("e_properties", adhoc(&[("block", b.to_string())]), witness))
}

// ---------------------------------------------------------------------------
// Supersymmetric factorization

/// Splits `λ ⊃ n^p` as `(n^p + β, α)`; `None` if `(n+1)^{p+1} ⊂ λ`.
fn split_block(lambda: &Partition, n: usize, p: usize) -> Option<(Partition, Partition)> {
    if lambda.contains(&Partition::block(n + 1, p + 1)) {
        return None;
    }
    let beta = Partition::new((0..p).map(|k| lambda.get(k) - n).collect()).ok()?;
    let alpha = Partition::new(lambda.parts().iter().skip(p).copied().collect()).ok()?;
    Some((alpha, beta))
}

/// Kernel and factorization properties of `ρ_{n,p}` for all `1 ≤ n ≤ n_max`,
/// `1 ≤ p ≤ p_max` and `|λ| ≤ deg_max`, compared in root variables.
pub fn check_factorization_suite(n_max: usize, p_max: usize, deg_max: usize) -> Vec<VerificationReport> {
    let lambdas = Partition::up_to_weight(deg_max);
    let mut out = Vec::new();
    for n in 1..=n_max {
        for p in 1..=p_max {
            let params = adhoc(&[
                ("n", n.to_string()),
                ("p", p.to_string()),
                ("deg_max", deg_max.to_string()),
            ]);
            let block = Partition::block(n, p);
            let small = Layout::pair(n - 1, p - 1).expect("few variables");
            let layout = Layout::pair(n, p).expect("few variables");
            let nv = layout.nvars();
            let (a, b) = (layout.alphabet("A"), layout.alphabet("B"));
            let euler = euler_hom(a, b, nv);
            let mut kernel_witness = None;
            let mut factor_witness = None;
            for lambda in lambdas.iter().filter(|l| l.contains(&block)) {
                let x = SchurExpr::basis(lambda.clone());
                if kernel_witness.is_none() {
                    let image = rho_bischur(&x, n - 1, p - 1)
                        .eval(small.alphabet("A"), small.alphabet("B"), small.nvars());
                    if !image.is_zero() {
                        kernel_witness = Some(format!("ρ_{{{},{}}}(s{lambda}) ≠ 0", n - 1, p - 1));
                    }
                }
                if factor_witness.is_none() {
                    let lhs = rho_bischur(&x, n, p).eval(a, b, nv);
                    let rhs = match split_block(lambda, n, p) {
                        None => AlphabetPoly::zero(nv),
                        Some((alpha, beta)) => {
                            let s = schur_eval(&alpha.conjugate(), a, nv).mul(&schur_eval(&beta, b, nv));
                            let signed = if alpha.weight() % 2 == 0 { s } else { s.neg() };
                            euler.mul(&signed)
                        }
                    };
                    if lhs != rhs {
                        factor_witness = Some(format!("ρ_{{{n},{p}}}(s{lambda}) disagrees"));
                    }
                }
            }
            out.push(VerificationReport::new("kernel", params.clone(), kernel_witness));
            out.push(VerificationReport::new("factorization", params, factor_witness));
        }
    }
    out
}
