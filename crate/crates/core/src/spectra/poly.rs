//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, constant term first. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    /// `x - r`.
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(q)` for a rational `q`, computed without fractions.
    pub fn sign_at(&self, q: &BigRational) -> i8 {
        let (num, den) = (q.numer(), q.denom());
        // sum c_k num^k den^(d-k); den > 0 so the sign is that of p(q)
        let d = self.degree();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        let mut terms: Vec<BigInt> = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(den_pow.clone());
            den_pow *= den;
        }
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * num + c * &terms[d - k];
        }
        sign(&acc)
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    /// Divides out the (positive) content, keeping signs.
    pub fn primitive_keep_sign(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        IntPoly { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Pseudo-remainder scaled by a positive factor, so its sign structure
    /// matches the true remainder of `self / divisor`.
    pub fn positive_pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero());
        let mut r = self.coeffs.clone();
        let dv = divisor.degree();
        let lc = divisor.leading().abs();
        let lc_signed = divisor.leading();
        while r.len() > dv && !r.is_empty() {
            let shift = r.len() - 1 - dv;
            let top = r.last().cloned().unwrap();
            // r <- |lc| * r - sign(lc) * top * x^shift * divisor
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let factor = if lc_signed.is_negative() { -top } else { top };
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                r[k + shift] -= &factor * dc;
            }
            debug_assert!(r.last().unwrap().is_zero());
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Exact division over the integers; `None` if `divisor` does not divide.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero());
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dv = divisor.degree();
        let lc = divisor.leading();
        let mut q = vec![BigInt::zero(); r.len() - dv];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + dv];
            let (quo, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                r[k + shift] -= &quo * dc;
            }
            q[shift] = quo;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() || a.is_zero() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Square-free factorization `p = c * prod f_i^i` by repeated gcds with
    /// the derivative. Returns the pairs `(f_i, i)` for nonconstant `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        assert!(!self.is_zero());
        let mut f = self.primitive();
        // radicals[i] = product of the distinct factors of multiplicity > i
        let mut radicals = Vec::new();
        while f.degree() > 0 {
            let g = f.gcd(&f.derivative());
            radicals.push(f.exact_div(&g).expect("gcd divides").primitive());
            f = g;
        }
        let mut out = Vec::new();
        for i in 0..radicals.len() {
            let part = match radicals.get(i + 1) {
                Some(next) => radicals[i].exact_div(next).expect("radicals nest").primitive(),
                None => radicals[i].clone(),
            };
            if part.degree() > 0 {
                out.push((part, i + 1));
            }
        }
        out
    }

    /// The square-free part `p / gcd(p, p')`, primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        let f = self.primitive();
        if f.degree() == 0 {
            return f;
        }
        f.exact_div(&f.gcd(&f.derivative())).expect("gcd divides").primitive()
    }

    /// `p(x + s)`.
    pub fn taylor_shift(&self, s: i64) -> IntPoly {
        let mut c = self.coeffs.clone();
        let s = BigInt::from(s);
        let n = c.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let t = &c[k + 1] * &s;
                c[k] += t;
            }
        }
        IntPoly::new(c)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Renders as space-separated integers `c0 c1 ... cd`.
    pub fn to_coefficient_list(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_coefficient_list(s: &str) -> Option<IntPoly> {
        s.split_whitespace()
            .map(|t| t.parse::<BigInt>().ok())
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

pub(crate) fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{}]", self.to_coefficient_list())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), 1);
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]); // x - 1
        let b = p(&[1, 1]); // x + 1
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&a), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).exact_div(&a), None);
        assert_eq!(a.pow(3), p(&[-1, 3, -3, 1]));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-2)(x+1)^2 and (x+1)(x-3)
        let f = p(&[-2, -3, 0, 1]);
        let g = p(&[-3, -2, 1]);
        assert_eq!(f.gcd(&g), p(&[1, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[-2, 1]), 1), (p(&[1, 1]), 2)]);
        // x^4 (x-1)^3 (2x+1)
        let h = &(&p(&[0, 0, 0, 0, 1]) * &p(&[-1, 1]).pow(3)) * &p(&[1, 2]);
        let dec = h.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[1, 2]), 1), (p(&[-1, 1]), 3), (p(&[0, 1]), 4)]);
    }

    #[test]
    fn signs_and_shifts() {
        let f = p(&[-2, 0, 1]); // x^2 - 2
        let q = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(f.sign_at(&q), 1);
        let q = BigRational::new(BigInt::from(7), BigInt::from(5));
        assert_eq!(f.sign_at(&q), -1);
        assert_eq!(f.taylor_shift(1), p(&[-1, 2, 1]));
        assert_eq!(p(&[1, 2, 3]).reflect(), p(&[1, -2, 3]));
    }

    #[test]
    fn coefficient_list_round_trip() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.to_coefficient_list(), "-2 0 1");
        assert_eq!(IntPoly::parse_coefficient_list("-2 0 1"), Some(f.clone()));
        assert_eq!(f.to_string(), "x^2 - 2");
    }
}
