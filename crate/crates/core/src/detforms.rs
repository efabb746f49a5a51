//! Binomial determinants `E_{λ/μ}(n)`, `F_{λ/μ}(n)` and the tensor-product
//! expansions built from them.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::alphabets::BivariateSchurExpr;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Square matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, k: usize, l: usize) -> &BigInt {
        &self.rows[k][l]
    }

    /// Determinant by Bareiss elimination; every division is exact.
    pub fn det(&self) -> BigInt {
        let n = self.dim();
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.rows.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = &m[r][c] * &m[k][k] - &m[r][k] * &m[k][c];
                    m[r][c] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }
}

static BINOMIAL_ROWS: RwLock<Vec<Arc<Vec<BigInt>>>> = RwLock::new(Vec::new());
static GBINOM_ROWS: RwLock<Vec<Arc<Vec<BigInt>>>> = RwLock::new(Vec::new());

fn binomial_row(n: usize) -> Arc<Vec<BigInt>> {
    if let Some(row) = BINOMIAL_ROWS.read().unwrap().get(n) {
        return row.clone();
    }
    let mut rows = BINOMIAL_ROWS.write().unwrap();
    while rows.len() <= n {
        let m = rows.len();
        let mut row = Vec::with_capacity(m + 1);
        let mut c = BigInt::one();
        row.push(c.clone());
        for k in 0..m {
            c = c * BigInt::from(m - k) / BigInt::from(k + 1);
            row.push(c.clone());
        }
        rows.push(Arc::new(row));
    }
    rows[n].clone()
}

fn gbinom_row(n: usize) -> Arc<Vec<BigInt>> {
    if let Some(row) = GBINOM_ROWS.read().unwrap().get(n) {
        return row.clone();
    }
    let mut rows = GBINOM_ROWS.write().unwrap();
    while rows.len() <= n {
        let b = binomial_row(rows.len());
        let mut acc = BigInt::zero();
        let row = b
            .iter()
            .map(|x| {
                acc += x;
                acc.clone()
            })
            .collect();
        rows.push(Arc::new(row));
    }
    rows[n].clone()
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    binomial_row(n)[k as usize].clone()
}

/// Partial row sum `Σ_{j ≤ k} C(n, j)`.
pub fn gbinom(n: usize, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let row = gbinom_row(n);
    row[(k as usize).min(n)].clone()
}

fn check_len(p: &Partition, n: usize) -> Result<()> {
    if p.len() > n {
        return Err(Error::LengthExceeds {
            partition: p.clone(),
            len: p.len(),
            n,
        });
    }
    Ok(())
}

fn shifted_det(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
    entry: fn(usize, i64) -> BigInt,
) -> Result<BigInt> {
    check_len(lambda, n)?;
    check_len(mu, n)?;
    let rows = (0..n)
        .map(|k| {
            (0..n)
                .map(|l| entry(lambda.get(k) + n - 1 - k, (mu.get(l) + n - 1 - l) as i64))
                .collect()
        })
        .collect();
    Ok(IntMatrix::new(rows).det())
}

/// `E_{λ/μ}(n) = det[C(λ_k + n - k, μ_l + n - l)]`.
pub fn e_det(lambda: &Partition, mu: &Partition, n: usize) -> Result<BigInt> {
    shifted_det(lambda, mu, n, binomial)
}

/// `F_{λ/μ}(n) = det[gbinom(λ_k + n - k, μ_l + n - l)]`.
pub fn f_det(lambda: &Partition, mu: &Partition, n: usize) -> Result<BigInt> {
    shifted_det(lambda, mu, n, gbinom)
}

/// Total Chern class of `A ⊗ B` for ranks `n`, `p`:
/// `Σ_{μ⊂λ⊂p^n} E_{λ/μ}(n) s_μ(A) s_{∁λ~}(B)`, complement in `(n^p)`.
pub fn lascoux_tensor_expand(n: usize, p: usize) -> BivariateSchurExpr {
    let mut out = BivariateSchurExpr::zero();
    for lambda in Partition::in_block(p, n) {
        let comp = lambda
            .conjugate()
            .complement(n, p)
            .expect("conjugate lies in the transposed block");
        for mu in lambda.subpartitions() {
            let e = e_det(&lambda, &mu, n).expect("lengths bounded by n");
            out.add_term(mu, comp.clone(), e);
        }
    }
    out
}

/// `s_λ(A ⊗ L) = Σ_{μ⊂λ} E_{λ/μ}(n) c_1(L)^{|λ|-|μ|} s_μ(A)`, as triples
/// `(μ, power of c_1(L), coefficient)`; zero coefficients are dropped.
pub fn lascoux_line_expand(lambda: &Partition, n: usize) -> Result<Vec<(Partition, usize, BigInt)>> {
    check_len(lambda, n)?;
    let mut out = Vec::new();
    for mu in lambda.subpartitions() {
        let e = e_det(lambda, &mu, n)?;
        if !e.is_zero() {
            let power = lambda.weight() - mu.weight();
            out.push((mu, power, e));
        }
    }
    Ok(out)
}

/// With `B[k][l] = A[k][l+1]` and last column zero, checks
/// `det(A + βB) = det(A)`.
pub fn det_shift_invariance_check(a: &IntMatrix, beta: &BigInt) -> bool {
    let n = a.dim();
    let rows = (0..n)
        .map(|k| {
            (0..n)
                .map(|l| {
                    let shifted = if l + 1 < n {
                        a.get(k, l + 1).clone()
                    } else {
                        BigInt::zero()
                    };
                    a.get(k, l) + beta * shifted
                })
                .collect()
        })
        .collect();
    IntMatrix::new(rows).det() == a.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabets::{chern_total, schur_on_roots, to_bischur, AlphabetPoly, Bundle, Layout};
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::of(parts)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn gbinom_triangle() {
        let rows: [&[i64]; 6] = [
            &[1],
            &[1, 2],
            &[1, 3, 4],
            &[1, 4, 7, 8],
            &[1, 5, 11, 15, 16],
            &[1, 6, 16, 26, 31, 32],
        ];
        for (n, row) in rows.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(gbinom(n, k as i64), big(v), "({n},{k})");
            }
            assert_eq!(gbinom(n, n as i64 + 3), big(1 << n));
            assert_eq!(gbinom(n, -1), big(0));
        }
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(IntMatrix::new(vec![]).det(), big(1));
        let m = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), big(-1));
        let m = IntMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det(), big(4));
        let m = IntMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.det(), big(0));
    }

    fn leibniz(m: &IntMatrix) -> BigInt {
        fn rec(m: &IntMatrix, row: usize, used: &mut Vec<bool>) -> BigInt {
            let n = m.dim();
            if row == n {
                return BigInt::one();
            }
            let mut acc = BigInt::zero();
            let mut pos = 0;
            for c in 0..n {
                if used[c] {
                    continue;
                }
                used[c] = true;
                let t = m.get(row, c) * rec(m, row + 1, used);
                used[c] = false;
                if pos % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
                pos += 1;
            }
            acc
        }
        rec(m, 0, &mut vec![false; m.dim()])
    }

    #[test]
    fn e_examples() {
        for n in 1..5 {
            assert_eq!(e_det(&p(&[1]), &p(&[]), n).unwrap(), big(n as i64));
            for lambda in Partition::up_to_weight(5).into_iter().filter(|l| l.len() <= n) {
                assert_eq!(e_det(&lambda, &lambda, n).unwrap(), big(1));
            }
        }
        assert_eq!(e_det(&p(&[1]), &p(&[2]), 2).unwrap(), big(0));
        assert!(matches!(
            e_det(&p(&[1, 1, 1]), &p(&[]), 2),
            Err(Error::LengthExceeds { .. })
        ));
        assert!(matches!(
            f_det(&p(&[1]), &p(&[1, 1, 1]), 2),
            Err(Error::LengthExceeds { .. })
        ));
    }

    #[test]
    fn f_examples() {
        for m in 0..6 {
            assert_eq!(f_det(&p(&[m]), &p(&[m]), 1).unwrap(), big(1 << m));
        }
        let expected = gbinom(3, 3) * gbinom(1, 1) - gbinom(3, 1) * gbinom(1, 3);
        assert_eq!(f_det(&p(&[2, 1]), &p(&[2, 1]), 2).unwrap(), expected);
        for n in 1..5 {
            assert_eq!(f_det(&p(&[]), &p(&[]), n).unwrap(), big(1));
        }
    }

    #[test]
    fn e_nonnegative_and_vanishing() {
        let parts = Partition::in_block(5, 5);
        for lambda in &parts {
            for mu in &parts {
                for n in lambda.len().max(mu.len()).max(1)..=5 {
                    let e = e_det(lambda, mu, n).unwrap();
                    assert!(e >= BigInt::zero(), "E({lambda}/{mu}, {n}) = {e}");
                    if !lambda.contains(mu) {
                        assert!(e.is_zero(), "E({lambda}/{mu}, {n}) = {e}");
                    }
                }
            }
        }
    }

    fn padded_leibniz(lambda: &Partition, mu: &Partition, n: usize, f: fn(usize, i64) -> BigInt) -> BigInt {
        let lp = lambda.padded(n);
        let mp = mu.padded(n);
        let rows = (0..n)
            .map(|k| (0..n).map(|l| f(lp[k] + n - 1 - k, (mp[l] + n - 1 - l) as i64)).collect())
            .collect();
        leibniz(&IntMatrix::new(rows))
    }

    #[test]
    fn padding_is_explicit_zero_extension() {
        for lambda in Partition::up_to_weight(5) {
            for mu in lambda.subpartitions() {
                let n0 = lambda.len().max(1);
                for n in n0..=n0 + 2 {
                    let e = e_det(&lambda, &mu, n).unwrap();
                    let f = f_det(&lambda, &mu, n).unwrap();
                    assert_eq!(e, padded_leibniz(&lambda, &mu, n, binomial));
                    assert_eq!(f, padded_leibniz(&lambda, &mu, n, gbinom));
                    if mu == lambda {
                        assert_eq!(e, big(1));
                    }
                }
            }
        }
        // the value itself depends on n
        assert_eq!(e_det(&p(&[1]), &p(&[]), 3).unwrap(), big(3));
        assert_eq!(f_det(&p(&[1]), &p(&[1]), 2).unwrap(), big(3));
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let lambda = p(&[4, 2, 1]);
        let mu = p(&[2, 1]);
        let n = 4;
        let rows = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| gbinom(lambda.get(k) + n - 1 - k, (mu.get(l) + n - 1 - l) as i64))
                    .collect()
            })
            .collect();
        let m = IntMatrix::new(rows);
        assert_eq!(m.det(), leibniz(&m));
    }

    #[test]
    fn tensor_expand_small() {
        let mut expected = BivariateSchurExpr::one();
        expected.add_term(p(&[1]), p(&[]), big(1));
        expected.add_term(p(&[]), p(&[1]), big(1));
        assert_eq!(lascoux_tensor_expand(1, 1), expected);
    }

    #[test]
    fn tensor_expand_matches_roots() {
        for n in 1..=3 {
            for pp in 1..=3 {
                let l = Layout::pair(n, pp).unwrap();
                let (a, b) = (l.alphabet("A"), l.alphabet("B"));
                let bundle = Bundle::of(a).tensor(Bundle::of(b));
                let c = chern_total(&bundle, l.nvars(), n * pp).unwrap();
                assert_eq!(
                    to_bischur(&c, a, b).unwrap(),
                    lascoux_tensor_expand(n, pp),
                    "n={n} p={pp}"
                );
            }
        }
    }

    #[test]
    fn line_expand_examples() {
        let got = lascoux_line_expand(&p(&[1]), 1).unwrap();
        assert_eq!(got, vec![(p(&[]), 1, big(1)), (p(&[1]), 0, big(1))]);
        for i in 1..5 {
            let got = lascoux_line_expand(&p(&[1]), i).unwrap();
            assert!(got.contains(&(p(&[]), 1, big(i as i64))));
        }
        assert!(lascoux_line_expand(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn line_expand_matches_roots() {
        for n in 1..=3 {
            let l = Layout::new(&[("A", n), ("L", 1)]).unwrap();
            let (a, line) = (l.alphabet("A"), l.alphabet("L"));
            let nv = l.nvars();
            let t = AlphabetPoly::var(nv, line.offset);
            let shifted: Vec<_> = a.roots(nv).iter().map(|x| x.add(&t)).collect();
            for lambda in Partition::up_to_weight(6).into_iter().filter(|x| x.len() <= n) {
                let lhs = schur_on_roots(&lambda, &shifted, nv);
                let mut rhs = AlphabetPoly::zero(nv);
                for (mu, power, c) in lascoux_line_expand(&lambda, n).unwrap() {
                    let term = crate::alphabets::schur_eval(&mu, a, nv).mul(&t.pow(power));
                    rhs.add_assign(&term.scale_int(&c));
                }
                assert_eq!(lhs, rhs, "{lambda} n={n}");
            }
        }
    }

    #[test]
    fn shift_invariance_trivial() {
        let a = IntMatrix::from_i64(&[vec![3, 1], vec![4, 1]]);
        assert!(det_shift_invariance_check(&a, &big(0)));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(proptest::collection::vec(-20i64..21, n), n)
            .prop_map(|rows| IntMatrix::from_i64(&rows))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn shift_invariance_3x3(a in arb_matrix(3)) {
            prop_assert!(det_shift_invariance_check(&a, &big(1)));
        }

        #[test]
        fn shift_invariance_4x4(a in arb_matrix(4)) {
            prop_assert!(det_shift_invariance_check(&a, &big(-7)));
        }

        #[test]
        fn bareiss_agrees_with_leibniz(a in arb_matrix(4)) {
            prop_assert_eq!(a.det(), leibniz(&a));
        }
    }
}
