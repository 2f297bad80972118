//! Exact characteristic polynomials, root counting, and enclosures of the
//! largest eigenvalue and of the associated Salem number.

pub mod charpoly;
pub mod fast;
pub mod poly;
pub mod sturm;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use charpoly::{
    char_poly, char_poly_i64, extend_char_poly_i64, reciprocal_poly, reciprocal_poly_with, ReciprocalForm,
};
pub use poly::IntPoly;
pub use sturm::{
    count_roots_above, count_roots_below, integer_largest_root, largest_root_enclosure,
    largest_root_enclosure_in, multiplicity_at, RationalInterval, RootCounter,
};

/// Encloses the largest eigenvalue of `g`, bisecting from the bracket
/// `(-1, n]`.
pub fn lambda1_enclosure(g: &Graph, tol: &BigRational) -> Result<RationalInterval> {
    if g.n() == 0 {
        return Err(Error::NoRealRoot);
    }
    largest_root_enclosure_in(&char_poly(g), sturm::int(-1), sturm::int(g.n() as i64), tol)
}

/// True when `g` satisfies the spectral conditions of a Salem graph: exactly
/// one eigenvalue above 2 and, unless `g` is bipartite, none below -2.
pub fn salem_spectrum(g: &Graph, chi: &IntPoly) -> Result<bool> {
    let counter = RootCounter::new(chi)?;
    let two = sturm::int(2);
    Ok(counter.above(&two) == 1 && (g.is_bipartite() || counter.below(&-two) == 0))
}

/// Encloses the Salem number `tau(g)` as the largest real root of the
/// reciprocal polynomial, bisecting from `(1, lambda1_hi^2 + 1]`.
pub fn compute_tau(g: &Graph, tol: &BigRational) -> Result<RationalInterval> {
    let chi = char_poly(g);
    if !salem_spectrum(g, &chi)? {
        return Err(Error::NotSalem);
    }
    let lambda = largest_root_enclosure_in(&chi, sturm::int(-1), sturm::int(g.n() as i64), &sturm::rat(1, 4))?;
    let hi = &lambda.hi * &lambda.hi + BigRational::from_integer(BigInt::from(1));
    let r = if g.is_bipartite() {
        charpoly::reciprocal_bipartite(&chi)
    } else {
        charpoly::reciprocal_general(&chi)
    };
    largest_root_enclosure_in(&r, sturm::int(1), hi, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sturm::{int, rat};

    #[test]
    fn tau_of_k4() {
        let tol = rat(1, 1 << 30);
        let tau = compute_tau(&Graph::complete(4).unwrap(), &tol).unwrap();
        // (3 + sqrt 5) / 2 = 2.6180339887...
        assert!(tau.lo > rat(261803398, 100_000_000) && tau.hi < rat(261803399, 100_000_000));
        assert!(tau.width() <= tol);
    }

    #[test]
    fn tau_rejects_non_salem() {
        let tol = rat(1, 1000);
        assert_eq!(compute_tau(&Graph::cycle(5).unwrap(), &tol), Err(Error::NotSalem));
        // two copies of K4 joined by an edge have two eigenvalues above 2
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3), (4, 5), (5, 6), (4, 6), (4, 7), (5, 7), (6, 7), (3, 4)]).unwrap();
        assert_eq!(compute_tau(&g, &tol), Err(Error::NotSalem));
    }

    #[test]
    fn tau_for_bipartite_star() {
        // K_{1,5}: lambda1 = sqrt 5, tau solves sqrt t + 1/sqrt t = sqrt 5,
        // i.e. t + 2 + 1/t = 5, t = (3 + sqrt 5) / 2
        let tau = compute_tau(&Graph::star(5).unwrap(), &rat(1, 1 << 30)).unwrap();
        assert!(tau.lo > rat(261803398, 100_000_000) && tau.hi < rat(261803399, 100_000_000));
    }

    #[test]
    fn lambda1_of_edgeless_graph_is_zero() {
        let iv = lambda1_enclosure(&Graph::empty(3).unwrap(), &rat(1, 100)).unwrap();
        assert!(iv.contains(&int(0)));
    }

    #[test]
    fn interval_decimal() {
        let iv = RationalInterval::new(rat(5, 2), rat(5, 2));
        assert_eq!(iv.to_decimal(3), "2.500");
    }
}
