use salem_core::spectra::sturm::{int, parse_rational, rat};
use salem_core::spectra::{
    char_poly, compute_tau, count_roots_above, count_roots_below, integer_largest_root, largest_root_enclosure,
    reciprocal_poly, IntPoly,
};
use salem_core::Graph;

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

#[test]
fn characteristic_polynomials() {
    assert_eq!(char_poly(&Graph::complete(3).unwrap()), poly(&[-2, -3, 0, 1]));
    assert_eq!(char_poly(&Graph::empty(1).unwrap()), poly(&[0, 1]));
    assert_eq!(char_poly(&Graph::cycle(4).unwrap()), poly(&[0, 0, -4, 0, 1]));
    assert_eq!(char_poly(&Graph::complete(3).unwrap()).to_coefficient_list(), "-2 -3 0 1");
}

#[test]
fn reciprocal_forms() {
    assert_eq!(reciprocal_poly(&Graph::empty(1).unwrap()), poly(&[1, 1]));
    // K3: eigenvalue 2 gives z = 1 with multiplicity 2
    let r = reciprocal_poly(&Graph::complete(3).unwrap());
    assert_eq!(r.degree(), 6);
    let z1 = poly(&[-1, 1]);
    let once = r.exact_div(&z1).unwrap();
    let twice = once.exact_div(&z1).unwrap();
    assert!(twice.exact_div(&z1).is_none());
}

#[test]
fn root_counts() {
    let k4 = char_poly(&Graph::complete(4).unwrap());
    let c4 = char_poly(&Graph::cycle(4).unwrap());
    assert_eq!(count_roots_above(&k4, &int(2)).unwrap(), 1);
    assert_eq!(count_roots_above(&c4, &int(2)).unwrap(), 0);
    assert_eq!(count_roots_above(&poly(&[0, 0, 1]), &int(-1)).unwrap(), 2);
    assert_eq!(count_roots_below(&c4, &int(-2)).unwrap(), 0);
    assert_eq!(count_roots_below(&poly(&[-9, 0, 1]), &int(0)).unwrap(), 1);
}

#[test]
fn enclosures() {
    let tol = rat(1, 1 << 20);
    let e = largest_root_enclosure(&char_poly(&Graph::complete(4).unwrap()), &tol).unwrap();
    assert!(e.contains(&int(3)) && e.width() <= tol);
    let s = largest_root_enclosure(&poly(&[-2, 0, 1]), &parse_rational("1e-6").unwrap()).unwrap();
    assert!(s.contains(&parse_rational("1.4142135").unwrap()) || s.lo > parse_rational("1.414213").unwrap());
    assert!(s.hi < parse_rational("1.414214").unwrap());
}

#[test]
fn integer_roots() {
    assert_eq!(integer_largest_root(&char_poly(&Graph::complete(4).unwrap()), 4), Some(3));
    assert_eq!(integer_largest_root(&char_poly(&Graph::path(4).unwrap()), 4), None);
    assert_eq!(integer_largest_root(&poly(&[-5, 1]), 10), Some(5));
}

#[test]
fn tau_of_k4() {
    // z + 1/z = 3 at z = (3 + sqrt 5) / 2 = 2.6180339887...
    let t = compute_tau(&Graph::complete(4).unwrap(), &rat(1, 1_000_000)).unwrap();
    assert!(t.contains(&parse_rational("2.61803").unwrap()) || t.lo > parse_rational("2.618033").unwrap());
    assert!(t.hi < parse_rational("2.618035").unwrap());
}
