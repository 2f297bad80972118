//! Integer-only eigenvalue counting for characteristic polynomials of graphs.
//!
//! A characteristic polynomial of a symmetric matrix has only real roots, and
//! for such polynomials Descartes' rule of signs is exact: the number of sign
//! changes in the coefficients of `p(y + q)` equals the number of roots
//! greater than `q`, with multiplicity. This avoids Sturm chains in the hot
//! loops of the enumerations; the general routines in [`super::sturm`] remain
//! the reference and the two are cross-checked in tests.

/// Coefficients of `p(y + s)` (constant first), or `None` on overflow.
fn shifted(c: &[i64], s: i64) -> Option<Vec<i128>> {
    let mut a: Vec<i128> = c.iter().map(|&x| x as i128).collect();
    let s = s as i128;
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            a[j] = a[j].checked_add(a[j + 1].checked_mul(s)?)?;
        }
    }
    Some(a)
}

fn sign_changes(a: impl Iterator<Item = i128>) -> usize {
    let mut last = 0i128;
    let mut count = 0;
    for x in a.filter(|&x| x != 0) {
        if last != 0 && (x > 0) != (last > 0) {
            count += 1;
        }
        last = x;
    }
    count
}

/// Number of roots greater than `q` of a real-rooted polynomial.
pub fn real_rooted_above(c: &[i64], q: i64) -> Option<usize> {
    Some(sign_changes(shifted(c, q)?.into_iter()))
}

/// Number of roots less than `q` of a real-rooted polynomial.
pub fn real_rooted_below(c: &[i64], q: i64) -> Option<usize> {
    // roots of p(-y) above -q
    let reflected: Vec<i64> = c.iter().enumerate().map(|(k, &x)| if k % 2 == 1 { -x } else { x }).collect();
    real_rooted_above(&reflected, -q)
}

/// Eigenvalues of the graph above 2, given its characteristic polynomial.
pub fn eigs_above_two(c: &[i64]) -> usize {
    real_rooted_above(c, 2).expect("characteristic polynomial shift overflowed")
}

/// Eigenvalues of the graph below -2, given its characteristic polynomial.
pub fn eigs_below_minus_two(c: &[i64]) -> usize {
    real_rooted_below(c, -2).expect("characteristic polynomial shift overflowed")
}

/// All eigenvalues lie in `[-2, 2]`.
pub fn cyclotomic_poly(c: &[i64]) -> bool {
    eigs_above_two(c) == 0 && eigs_below_minus_two(c) == 0
}
