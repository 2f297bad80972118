//! Characteristic and reciprocal polynomials of graphs.

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use super::poly::IntPoly;
use crate::graph::{bits, Graph};

/// Ring operations needed by the division-free Berkowitz recurrence.
trait Ring: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul {}
impl<T: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul> Ring for T {}

/// One Berkowitz step: extends the characteristic polynomial of the leading
/// `k x k` block (`prev`, highest degree first) to the `(k+1) x (k+1)` block.
/// The graph has no loops, so the new diagonal entry is zero.
fn berkowitz_step<T: Ring>(rows: &[u64], k: usize, prev: &[T]) -> Option<Vec<T>> {
    debug_assert_eq!(prev.len(), k + 1);
    let low = (1u64 << k) - 1;
    let col = rows[k] & low;
    // t = [1, 0, -r c, -r A c, ..., -r A^(k-1) c] with r = c (symmetric)
    let mut t = Vec::with_capacity(k + 2);
    t.push(T::one());
    t.push(T::zero());
    let mut v: Vec<T> = (0..k).map(|i| if col >> i & 1 == 1 { T::one() } else { T::zero() }).collect();
    for step in 0..k {
        let mut dot = T::zero();
        for i in bits(col) {
            dot = dot.checked_add(&v[i])?;
        }
        t.push(T::zero().checked_sub(&dot)?);
        if step + 1 < k {
            let mut next = vec![T::zero(); k];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = T::zero();
                for j in bits(rows[i] & low) {
                    acc = acc.checked_add(&v[j])?;
                }
                *slot = acc;
            }
            v = next;
        }
    }
    let mut out = vec![T::zero(); k + 2];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = T::zero();
        for j in 0..=i.min(k) {
            if let Some(tj) = t.get(i - j) {
                if !tj.is_zero() && !prev[j].is_zero() {
                    acc = acc.checked_add(&tj.checked_mul(&prev[j])?)?;
                }
            }
        }
        *slot = acc;
    }
    Some(out)
}

fn berkowitz<T: Ring>(g: &Graph) -> Option<Vec<T>> {
    let mut p = vec![T::one()];
    for k in 0..g.n() {
        p = berkowitz_step(g.rows(), k, &p)?;
    }
    p.reverse();
    Some(p)
}

/// Coefficients (constant first) of `det(xI - A)` in `i64`, or `None` on
/// overflow.
pub fn char_poly_i64(g: &Graph) -> Option<Vec<i64>> {
    berkowitz::<i64>(g)
}

/// Extends the characteristic polynomial of `rows[..k]` (constant first) to
/// that of `rows[..=k]`. Returns `None` on overflow.
pub fn extend_char_poly_i64(rows: &[u64], k: usize, prev: &[i64]) -> Option<Vec<i64>> {
    let mut hi_first: Vec<i64> = prev.iter().rev().copied().collect();
    hi_first = berkowitz_step(rows, k, &hi_first)?;
    hi_first.reverse();
    Some(hi_first)
}

/// Exact characteristic polynomial `det(xI - A)`, computed with the
/// division-free Berkowitz recurrence.
pub fn char_poly(g: &Graph) -> IntPoly {
    if let Some(c) = berkowitz::<i128>(g) {
        return IntPoly::new(c.into_iter().map(BigInt::from).collect());
    }
    IntPoly::new(berkowitz::<BigInt>(g).expect("BigInt arithmetic cannot overflow"))
}

/// Which transform [`reciprocal_poly_with`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReciprocalForm {
    /// `z^(n/2) chi(sqrt z + 1/sqrt z)` for bipartite graphs, otherwise
    /// `z^n chi(z + 1/z)`.
    Auto,
    /// Always `z^n chi(z + 1/z)`.
    NonBipartite,
}

/// Reciprocal polynomial of `g`, choosing the form by bipartiteness.
pub fn reciprocal_poly(g: &Graph) -> IntPoly {
    reciprocal_poly_with(g, ReciprocalForm::Auto)
}

pub fn reciprocal_poly_with(g: &Graph, form: ReciprocalForm) -> IntPoly {
    let chi = char_poly(g);
    if form == ReciprocalForm::Auto && g.is_bipartite() {
        reciprocal_bipartite(&chi)
    } else {
        reciprocal_general(&chi)
    }
}

/// `z^d p(z + 1/z) = sum c_k (z^2 + 1)^k z^(d-k)`.
pub fn reciprocal_general(p: &IntPoly) -> IntPoly {
    let d = p.degree();
    let base = IntPoly::from_i64(&[1, 0, 1]);
    let mut out = IntPoly::zero();
    let mut power = IntPoly::one();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let term = &(&power * &IntPoly::monomial(d - k)) * &IntPoly::new(vec![c.clone()]);
            out = &out + &term;
        }
        power = &power * &base;
    }
    out
}

/// `z^(d/2) p(sqrt z + 1/sqrt z) = sum c_k (z + 1)^k z^((d-k)/2)` for a
/// polynomial whose nonzero coefficients all have the parity of `d`.
pub fn reciprocal_bipartite(p: &IntPoly) -> IntPoly {
    let d = p.degree();
    let base = IntPoly::from_i64(&[1, 1]);
    let mut out = IntPoly::zero();
    let mut power = IntPoly::one();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            assert_eq!((d - k) % 2, 0, "polynomial is not even or odd");
            let term = &(&power * &IntPoly::monomial((d - k) / 2)) * &IntPoly::new(vec![c.clone()]);
            out = &out + &term;
        }
        power = &power * &base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn det_k_minus_a(g: &Graph, k: i64) -> BigInt {
        let a = g.adjacency_matrix();
        let m = (0..g.n())
            .map(|i| (0..g.n()).map(|j| BigInt::from(if i == j { k } else { 0 } - a[i][j])).collect())
            .collect();
        bareiss_det(m)
    }

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn small_examples() {
        assert_eq!(char_poly(&Graph::complete(3).unwrap()), IntPoly::from_i64(&[-2, -3, 0, 1]));
        assert_eq!(char_poly(&Graph::empty(1).unwrap()), IntPoly::from_i64(&[0, 1]));
        assert_eq!(char_poly(&Graph::cycle(4).unwrap()), IntPoly::from_i64(&[0, 0, -4, 0, 1]));
        assert_eq!(char_poly(&Graph::empty(0).unwrap()), IntPoly::one());
        assert_eq!(char_poly(&Graph::path(4).unwrap()), IntPoly::from_i64(&[1, 0, -3, 0, 1]));
    }

    #[test]
    fn agrees_with_bareiss_determinant() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..=12);
            let density = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, density);
            let k = rng.gen_range(-6..=6);
            let chi = char_poly(&g);
            assert!(chi.is_monic() && chi.degree() == n);
            assert_eq!(chi.eval_int(&BigInt::from(k)), det_k_minus_a(&g, k), "{g:?} at {k}");
        }
    }

    #[test]
    fn bigint_fallback_matches_on_large_graph() {
        let mut rng = StdRng::seed_from_u64(5);
        let g = random_graph(&mut rng, 40, 0.5);
        let chi = char_poly(&g);
        for k in [-3i64, 0, 2, 7] {
            assert_eq!(chi.eval_int(&BigInt::from(k)), det_k_minus_a(&g, k));
        }
        let big = IntPoly::new(berkowitz::<BigInt>(&g).unwrap());
        assert_eq!(big, chi);
    }

    #[test]
    fn incremental_extension_matches() {
        let mut rng = StdRng::seed_from_u64(3);
        let g = random_graph(&mut rng, 10, 0.4);
        let mut p = vec![1i64];
        for k in 0..10 {
            p = extend_char_poly_i64(g.rows(), k, &p).unwrap();
            let prefix = g.induced((1u64 << (k + 1)) - 1).unwrap();
            assert_eq!(Some(p.clone()), char_poly_i64(&prefix));
        }
    }

    #[test]
    fn bipartite_spectral_symmetry() {
        let mut rng = StdRng::seed_from_u64(9);
        let mut seen = 0;
        while seen < 50 {
            let n = rng.gen_range(2..=10);
            let g = random_graph(&mut rng, n, 0.35);
            if !g.is_bipartite() {
                continue;
            }
            seen += 1;
            let chi = char_poly(&g);
            let n = g.n();
            assert!(chi.coeffs().iter().enumerate().all(|(k, c)| (n - k) % 2 == 0 || c.is_zero()));
        }
    }

    #[test]
    fn reciprocal_examples() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(reciprocal_poly(&k1), IntPoly::from_i64(&[1, 1]));
        let k3 = Graph::complete(3).unwrap();
        let r = reciprocal_poly(&k3);
        assert_eq!(r.degree(), 6);
        // eigenvalue 2 (simple) gives z = 1 as a double root of z^2 - 2z + 1
        assert!(r.eval_int(&BigInt::one()).is_zero());
        let r_over = r.exact_div(&IntPoly::from_i64(&[1, -2, 1])).unwrap();
        assert!(!r_over.eval_int(&BigInt::one()).is_zero());
        // palindromic
        let c = r.coeffs();
        assert!((0..=6).all(|i| c[i] == c[6 - i]));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(reciprocal_poly(&c4).degree(), 4);
        assert_eq!(reciprocal_poly_with(&c4, ReciprocalForm::NonBipartite).degree(), 8);
    }

    #[test]
    fn cyclotomic_graphs_have_unimodular_reciprocal_roots() {
        // P5 and C6 are cyclotomic: every root of R lies on the unit circle,
        // so R divides a product of z^k - 1 factors.
        for g in [Graph::path(5).unwrap(), Graph::cycle(6).unwrap(), Graph::cycle(5).unwrap()] {
            let mut r = reciprocal_poly(&g);
            let mut changed = true;
            while r.degree() > 0 && changed {
                changed = false;
                for m in 1..=2 * g.n() + 2 {
                    let mut f = IntPoly::monomial(m);
                    f = &f - &IntPoly::one();
                    let gcd = r.gcd(&f);
                    if gcd.degree() > 0 {
                        r = r.exact_div(&gcd).unwrap();
                        changed = true;
                    }
                }
            }
            assert_eq!(r.degree(), 0, "{g:?}");
            assert!(r.leading().abs().is_one());
        }
    }
}
