//! Exact real-root counting with Sturm chains and bisection enclosures.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Closed interval with exact rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        decimal(&self.midpoint(), digits)
    }

    /// Approximate midpoint as `f64`, for display only.
    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] (~{})", self.lo, self.hi, self.to_decimal(8))
    }
}

/// Truncating decimal rendering of a rational.
pub fn decimal(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (ax.numer() * &scale) / ax.denom();
    let int_part = &scaled / &scale;
    let frac = (&scaled % &scale).to_string();
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac:0>digits$}")
    }
}

/// Parses `p/q`, an integer, or a decimal like `1e-6` / `0.001`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if shift >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-shift) as usize))
    })
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain `p, p', -rem(p, p'), ...`; `p` must be square-free
    /// and nonzero.
    pub fn new(p: &IntPoly) -> Self {
        assert!(!p.is_zero());
        let mut chain = vec![p.primitive_keep_sign()];
        if p.degree() == 0 {
            return SturmChain { chain };
        }
        chain.push(p.derivative().primitive_keep_sign());
        loop {
            let n = chain.len();
            let r = chain[n - 2].positive_pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-&r).primitive_keep_sign());
        }
        SturmChain { chain }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, q: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(q)))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| super::poly::sign(&p.leading())))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = super::poly::sign(&p.leading());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots strictly greater than `q`.
    pub fn count_above(&self, q: &BigRational) -> usize {
        self.variations_at(q) - self.variations_at_pos_inf()
    }

    /// Distinct real roots strictly less than `q`.
    pub fn count_below(&self, q: &BigRational) -> usize {
        let at_root = usize::from(self.chain[0].sign_at(q) == 0);
        self.variations_at_neg_inf() - self.variations_at(q) - at_root
    }

    /// Distinct real roots in total.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Real-root counter honoring multiplicities, built from a square-free
/// decomposition with one Sturm chain per factor.
#[derive(Clone, Debug)]
pub struct RootCounter {
    parts: Vec<(SturmChain, usize)>,
    degree: usize,
}

impl RootCounter {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let parts = p
            .squarefree_decomposition()
            .into_iter()
            .map(|(f, m)| (SturmChain::new(&f), m))
            .collect();
        Ok(RootCounter { parts, degree: p.degree() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn above(&self, q: &BigRational) -> usize {
        self.parts.iter().map(|(c, m)| m * c.count_above(q)).sum()
    }

    pub fn below(&self, q: &BigRational) -> usize {
        self.parts.iter().map(|(c, m)| m * c.count_below(q)).sum()
    }

    pub fn multiplicity_at(&self, q: &BigRational) -> usize {
        self.parts.iter().filter(|(c, _)| c.poly().sign_at(q) == 0).map(|(_, m)| m).sum()
    }

    pub fn real_roots(&self) -> usize {
        self.parts.iter().map(|(c, m)| m * c.count_real()).sum()
    }
}

/// Number of real roots of `p` strictly greater than `q`, with multiplicity.
pub fn count_roots_above(p: &IntPoly, q: &BigRational) -> Result<usize> {
    Ok(RootCounter::new(p)?.above(q))
}

/// Number of real roots of `p` strictly less than `q`, with multiplicity.
pub fn count_roots_below(p: &IntPoly, q: &BigRational) -> Result<usize> {
    Ok(RootCounter::new(p)?.below(q))
}

/// Multiplicity of `q` as a root of `p` (0 if not a root).
pub fn multiplicity_at(p: &IntPoly, q: &BigRational) -> Result<usize> {
    Ok(RootCounter::new(p)?.multiplicity_at(q))
}

/// Cauchy bound: every root has absolute value below `1 + max |c_i / c_d|`.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.degree()].iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::one() + BigRational::new(m, lc)
}

/// Encloses the largest real root of `p` in an interval of width at most
/// `tol`, starting from the Cauchy bracket.
pub fn largest_root_enclosure(p: &IntPoly, tol: &BigRational) -> Result<RationalInterval> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let b = cauchy_bound(p);
    largest_root_enclosure_in(p, -b.clone(), b, tol)
}

/// Bisection for the largest real root of `p`, which must lie in
/// `(lo, hi]`. Halves the bracket until its width is at most `tol`.
pub fn largest_root_enclosure_in(
    p: &IntPoly,
    lo: BigRational,
    hi: BigRational,
    tol: &BigRational,
) -> Result<RationalInterval> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = SturmChain::new(&p.squarefree_part());
    if chain.count_above(&lo) == 0 {
        return Err(Error::NoRealRoot);
    }
    if chain.count_above(&hi) != 0 {
        return Err(Error::Precondition("upper end of bracket is below the largest root"));
    }
    let (mut lo, mut hi) = (lo, hi);
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if chain.count_above(&mid) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RationalInterval::new(lo, hi))
}

/// Returns `k` if the largest real root of `p` is the integer `k`; the caller
/// supplies an integer upper bound for the real roots.
pub fn integer_largest_root(p: &IntPoly, upper_bound: i64) -> Option<i64> {
    let counter = RootCounter::new(p).ok()?;
    if counter.real_roots() == 0 {
        return None;
    }
    let b = cauchy_bound(p).floor().to_integer().to_i64()?;
    let (mut lo, mut hi) = (-b - 1, upper_bound.max(-b));
    if counter.above(&int(hi)) != 0 {
        return None;
    }
    // smallest integer k with no roots above k
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if counter.above(&int(mid)) == 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (p.eval_int(&BigInt::from(hi)).is_zero()).then_some(hi)
}
