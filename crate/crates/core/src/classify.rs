//! Spectral classification: cyclotomic graphs, Salem graphs and their
//! triviality, the m-Salem index, and the M/A/H vertex partition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::spectra::sturm::{int, rat};
use crate::spectra::{
    char_poly, char_poly_i64, compute_tau, fast, integer_largest_root, largest_root_enclosure_in, IntPoly,
    RationalInterval, RootCounter,
};

/// Default width of the enclosures reported by [`salem_classify`].
pub fn default_tolerance() -> BigRational {
    rat(1, 1 << 40)
}

/// Numbers of eigenvalues strictly above 2 and strictly below -2.
pub fn eigs_outside(g: &Graph) -> (usize, usize) {
    if let Some(c) = char_poly_i64(g) {
        if let (Some(a), Some(b)) = (fast::real_rooted_above(&c, 2), fast::real_rooted_below(&c, -2)) {
            return (a, b);
        }
    }
    let counter = RootCounter::new(&char_poly(g)).expect("characteristic polynomial is monic");
    (counter.above(&int(2)), counter.below(&int(-2)))
}

/// All eigenvalues lie in `[-2, 2]`.
pub fn is_cyclotomic(g: &Graph) -> bool {
    eigs_outside(g) == (0, 0)
}

/// Whether the induced subgraph on `mask` is cyclotomic.
pub fn is_cyclotomic_on(g: &Graph, mask: u64) -> bool {
    is_cyclotomic(&g.induced_unchecked(mask))
}

/// The spectral conditions of a Salem graph: exactly one eigenvalue above 2,
/// and for non-bipartite graphs none below -2.
pub fn has_salem_spectrum(g: &Graph) -> bool {
    let (above, below) = eigs_outside(g);
    above == 1 && (below == 0 || g.is_bipartite())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SalemKind {
    Cyclotomic,
    SalemTrivial,
    SalemNontrivial,
    NotSalem,
}

impl SalemKind {
    pub fn is_salem(self) -> bool {
        matches!(self, SalemKind::SalemTrivial | SalemKind::SalemNontrivial)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SalemKind::Cyclotomic => "cyclotomic",
            SalemKind::SalemTrivial => "salem-trivial",
            SalemKind::SalemNontrivial => "salem-nontrivial",
            SalemKind::NotSalem => "not-salem",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: SalemKind,
    /// Enclosure of the largest eigenvalue; absent for cyclotomic graphs.
    pub lambda1: Option<RationalInterval>,
    /// Enclosure of the Salem number; present for Salem kinds.
    pub tau: Option<RationalInterval>,
    /// The m-Salem index, when requested for a connected Salem graph.
    pub m_index: Option<usize>,
}

/// Classifies `g` with enclosures of the default width.
pub fn salem_classify(g: &Graph) -> Classification {
    salem_classify_with(g, &default_tolerance(), false).expect("default tolerance is positive")
}

/// Classifies `g`; enclosures have width at most `tol`. With `with_index`
/// the m-Salem index is computed for connected Salem graphs.
pub fn salem_classify_with(g: &Graph, tol: &BigRational, with_index: bool) -> Result<Classification> {
    if tol <= &BigRational::zero() {
        return Err(Error::NonPositiveTolerance);
    }
    if is_cyclotomic(g) {
        return Ok(Classification { kind: SalemKind::Cyclotomic, lambda1: None, tau: None, m_index: None });
    }
    let chi = char_poly(g);
    let lambda1 = largest_root_enclosure_in(&chi, int(-1), int(g.n() as i64), tol)?;
    if !has_salem_spectrum(g) {
        return Ok(Classification { kind: SalemKind::NotSalem, lambda1: Some(lambda1), tau: None, m_index: None });
    }
    let trivial = if g.is_bipartite() {
        let even = even_part(&chi)?;
        integer_largest_root(&even, (g.n() * g.n()) as i64).is_some()
    } else {
        integer_largest_root(&chi, g.n() as i64).is_some()
    };
    let kind = if trivial { SalemKind::SalemTrivial } else { SalemKind::SalemNontrivial };
    let tau = compute_tau(g, tol)?;
    let m_index = if with_index && g.is_connected() { Some(m_salem_index(g)?) } else { None };
    Ok(Classification { kind, lambda1: Some(lambda1), tau: Some(tau), m_index })
}

/// For `chi(x) = x^a p(x^2)`, returns `p`.
fn even_part(chi: &IntPoly) -> Result<IntPoly> {
    let c = chi.coeffs();
    let a = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    let mut out = Vec::new();
    for (k, x) in c.iter().enumerate().skip(a) {
        if (k - a) % 2 == 0 {
            out.push(x.clone());
        } else if !x.is_zero() {
            return Err(Error::Precondition("characteristic polynomial of a bipartite graph is not even"));
        }
    }
    Ok(IntPoly::new(out))
}

/// Visits the `m`-subsets of the vertices of an `n`-vertex graph in
/// increasing numeric order.
fn subsets_of_size(n: usize, m: usize) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let first = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    let mut next = (m <= n).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let n2 = if r == 0 { None } else { Some((((r ^ cur) >> 2) / c) | r) };
            n2.filter(|&x| x & !limit == 0)
        };
        Some(cur)
    })
}

/// Shrinks `mask` to a minimal vertex set whose induced subgraph is not
/// cyclotomic. `mask` must induce a non-cyclotomic graph.
fn minimal_non_cyclotomic(g: &Graph, mut mask: u64) -> u64 {
    loop {
        let shrunk = bits(mask).into_iter().map(|v| mask & !(1 << v)).find(|&m| !is_cyclotomic_on(g, m));
        match shrunk {
            Some(m) => mask = m,
            None => return mask,
        }
    }
}

/// The least `m` such that deleting some `m` vertices leaves a cyclotomic
/// graph. Subsets are tried by increasing size; a subset is skipped unless it
/// meets every minimal non-cyclotomic vertex set found so far.
pub fn m_salem_index(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !has_salem_spectrum(g) {
        return Err(Error::NotSalem);
    }
    let all = g.all_vertices();
    let mut blockers: Vec<u64> = vec![minimal_non_cyclotomic(g, all)];
    for m in 1..=g.n() {
        for s in subsets_of_size(g.n(), m) {
            if blockers.iter().any(|&b| b & s == 0) {
                continue;
            }
            let rest = all & !s;
            if is_cyclotomic_on(g, rest) {
                return Ok(m);
            }
            blockers.push(minimal_non_cyclotomic(g, rest));
        }
    }
    unreachable!("deleting every vertex leaves the empty graph, which is cyclotomic")
}

/// Vertex partition `V = M ∪ A ∪ H` as vertex masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MahPartition {
    pub m: u64,
    pub a: u64,
    pub h: u64,
}

/// Splits a graph with exactly one eigenvalue above 2 into a minimal
/// non-cyclotomic core `M`, its neighbourhood `A`, and the rest `H`.
/// `M` is found by deleting vertices in label order while the largest
/// eigenvalue stays above 2, so it depends on the labeling.
pub fn mah_partition(g: &Graph) -> Result<MahPartition> {
    let above = |mask: u64| eigs_outside(&g.induced_unchecked(mask)).0;
    if above(g.all_vertices()) != 1 {
        return Err(Error::Precondition("exactly one eigenvalue above 2"));
    }
    let mut m = g.all_vertices();
    loop {
        let before = m;
        for v in 0..g.n() {
            if m >> v & 1 == 1 && above(m & !(1 << v)) > 0 {
                m &= !(1 << v);
            }
        }
        if m == before {
            break;
        }
    }
    let a = bits(m).into_iter().fold(0u64, |acc, v| acc | g.neighbors(v)) & !m;
    let h = g.all_vertices() & !m & !a;
    Ok(MahPartition { m, a, h })
}

/// The connected graphs all of whose eigenvalues lie in `[-2, 2]` with `k`
/// vertices are induced subgraphs of the maximal ones on `k` or `k + 1`
/// vertices: cycles, the graphs D~ (a path with two leaves at each end, or
/// the star K_{1,4}), and E~6, E~7, E~8.
fn maximal_cyclotomic_of_order(k: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if k >= 3 {
        out.push(Graph::cycle(k).expect("order fits"));
    }
    if k == 5 {
        out.push(Graph::star(4).expect("order fits"));
    }
    if k >= 6 {
        let core = k - 4;
        let mut edges: Vec<(usize, usize)> = (1..core).map(|i| (i - 1, i)).collect();
        edges.extend([(0, core), (0, core + 1), (core - 1, core + 2), (core - 1, core + 3)]);
        out.push(Graph::from_edges(k, &edges).expect("valid edges"));
    }
    let extended: &[(usize, &[(usize, usize)])] = &[
        (7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]),
        (8, &[(6, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 7), (2, 5)]),
        (9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 6), (6, 7), (7, 8), (2, 5)]),
    ];
    for &(order, edges) in extended {
        if order == k {
            out.push(Graph::from_edges(k, edges).expect("valid edges"));
        }
    }
    out
}

/// Structural test for connected cyclotomic graphs by comparison with the
/// maximal connected cyclotomic graphs; independent of any eigenvalue
/// computation.
pub fn cyclotomic_structural_oracle(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n <= 2 {
        return Ok(true);
    }
    let target: CanonicalCode = canonical_form(g);
    for k in [n, n + 1] {
        for host in maximal_cyclotomic_of_order(k) {
            let full = host.all_vertices();
            let hit = if k == n {
                canonical_form(&host) == target
            } else {
                (0..k).any(|v| canonical_form(&host.induced_unchecked(full & !(1 << v))) == target)
            };
            if hit {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `lambda1^2` for bipartite graphs and `lambda1` otherwise, if that value
/// is an integer.
pub fn trivial_value(g: &Graph) -> Option<BigInt> {
    let chi = char_poly(g);
    let v = if g.is_bipartite() {
        integer_largest_root(&even_part(&chi).ok()?, (g.n() * g.n()) as i64)?
    } else {
        integer_largest_root(&chi, g.n() as i64)?
    };
    Some(BigInt::from(v))
}
