//! Determinants over commutative rings without division.

/// Minimal ring interface needed for cofactor determinants.
pub trait DetRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
}

/// Determinant by Laplace expansion with memoized minors, `O(2^n n)` ring
/// multiplications. Meant for the small polynomial-entry matrices of the
/// Jacobi-Trudi identities. `one` supplies the multiplicative identity for
/// the empty matrix.
pub fn laplace_det<R: DetRing>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    if n == 0 {
        return one.one_like();
    }
    assert!(n < 24, "matrix too large for cofactor expansion");
    let size = 1usize << n;
    let mut dp: Vec<Option<R>> = vec![None; size];
    dp[0] = Some(one.one_like());
    let mut masks: Vec<usize> = (1..size).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = one.zero_like();
        let mut pos = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let entry = &m[row][c];
            if !entry.is_zero() {
                if let Some(minor) = dp[mask ^ (1 << c)].as_ref() {
                    if !minor.is_zero() {
                        let t = entry.mul_ref(minor);
                        if (row + pos).is_multiple_of(2) {
                            acc.add_assign_ref(&t);
                        } else {
                            acc.sub_assign_ref(&t);
                        }
                    }
                }
            }
            pos += 1;
        }
        dp[mask] = Some(acc);
    }
    dp[size - 1].take().unwrap()
}
