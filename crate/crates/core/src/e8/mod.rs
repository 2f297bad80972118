//! The root system E8 in doubled coordinates, its reflections, Gram graphs
//! of root subsets, and the symmetry-pruned search for graphs represented in
//! E8.

pub mod search;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use search::{
    census_partitions, census_predicate, enumerate_hereditary, one_salem_census, one_salem_census_with, survivor_filter, Census,
    CensusConfig, SearchStats,
};

pub const ROOT_COUNT: usize = 240;

/// Index strings of the half-sum roots (1-based coordinates).
pub const HALF_SUM_STRINGS: [[usize; 4]; 14] = [
    [1, 2, 3, 4],
    [1, 2, 5, 6],
    [1, 2, 7, 8],
    [1, 3, 5, 7],
    [1, 3, 6, 8],
    [1, 4, 5, 8],
    [1, 4, 6, 7],
    [2, 3, 5, 8],
    [2, 3, 6, 7],
    [2, 4, 5, 7],
    [2, 4, 6, 8],
    [3, 4, 5, 6],
    [3, 4, 7, 8],
    [5, 6, 7, 8],
];

/// A root in doubled coordinates over an orthogonal basis whose vectors have
/// squared length 2: `±e_i` is `±2` in one slot, a half-sum is `±1` in four.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub [i8; 8]);

impl RootVec {
    /// Inner product in true units.
    pub fn dot(&self, other: &RootVec) -> i32 {
        let s: i32 = self.0.iter().zip(&other.0).map(|(&a, &b)| a as i32 * b as i32).sum();
        s / 2
    }

    pub fn neg(&self) -> RootVec {
        RootVec(self.0.map(|x| -x))
    }

    /// Reflection of `self` in the hyperplane orthogonal to `r`.
    pub fn reflect(&self, r: &RootVec) -> RootVec {
        let k = self.dot(r) as i8;
        let mut out = self.0;
        for (o, &x) in out.iter_mut().zip(&r.0) {
            *o -= k * x;
        }
        RootVec(out)
    }
}

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The 240 roots in increasing lexicographic order of doubled coordinates.
pub fn e8_roots() -> Vec<RootVec> {
    let mut out = Vec::with_capacity(ROOT_COUNT);
    for i in 0..8 {
        for s in [2i8, -2] {
            let mut d = [0i8; 8];
            d[i] = s;
            out.push(RootVec(d));
        }
    }
    for idx in HALF_SUM_STRINGS {
        for signs in 0..16u32 {
            let mut d = [0i8; 8];
            for (k, &i) in idx.iter().enumerate() {
                d[i - 1] = if signs >> k & 1 == 1 { -1 } else { 1 };
            }
            out.push(RootVec(d));
        }
    }
    out.sort();
    out
}

/// A set of 240 roots as four machine words.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootSet(pub [u64; 4]);

impl RootSet {
    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, o: &RootSet) -> RootSet {
        RootSet([self.0[0] & o.0[0], self.0[1] & o.0[1], self.0[2] & o.0[2], self.0[3] & o.0[3]])
    }

    /// Members with index greater than `i`.
    pub fn above(&self, i: usize) -> RootSet {
        let mut out = *self;
        let w = i / 64;
        for x in out.0.iter_mut().take(w) {
            *x = 0;
        }
        let shift = i % 64 + 1;
        out.0[w] &= if shift == 64 { 0 } else { u64::MAX << shift };
        out
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |w| {
            let mut word = self.0[w];
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// An isometry of the root system, stored as the permutation it induces on
/// root indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub perm: Vec<u8>,
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry(0 -> {}, 1 -> {}, ...)", self.perm[0], self.perm[1])
    }
}

impl Isometry {
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn compose(&self, inner: &Isometry) -> Isometry {
        Isometry { perm: inner.perm.iter().map(|&i| self.perm[i as usize]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }
}

/// Roots with their pairwise inner products and compatibility sets.
pub struct E8 {
    pub roots: Vec<RootVec>,
    ip: Vec<i8>,
    /// Roots at inner product 1 with each root.
    pub adjacent: Vec<RootSet>,
    /// Roots at inner product 0 with each root.
    pub orthogonal: Vec<RootSet>,
}

impl E8 {
    fn build() -> E8 {
        let roots = e8_roots();
        let mut ip = vec![0i8; ROOT_COUNT * ROOT_COUNT];
        let mut adjacent = vec![RootSet::default(); ROOT_COUNT];
        let mut orthogonal = vec![RootSet::default(); ROOT_COUNT];
        for i in 0..ROOT_COUNT {
            for j in 0..ROOT_COUNT {
                let d = roots[i].dot(&roots[j]);
                ip[i * ROOT_COUNT + j] = d as i8;
                match d {
                    1 => adjacent[i].insert(j),
                    0 => orthogonal[i].insert(j),
                    _ => {}
                }
            }
        }
        E8 { roots, ip, adjacent, orthogonal }
    }

    pub fn get() -> &'static E8 {
        static TABLE: OnceLock<E8> = OnceLock::new();
        TABLE.get_or_init(E8::build)
    }

    pub fn ip(&self, i: usize, j: usize) -> i32 {
        self.ip[i * ROOT_COUNT + j] as i32
    }

    pub fn index_of(&self, r: &RootVec) -> Option<usize> {
        self.roots.binary_search(r).ok()
    }

    /// The permutation of root indices induced by a map on vectors, if the
    /// map sends roots to roots bijectively.
    pub fn permutation_of(&self, f: impl Fn(&RootVec) -> RootVec) -> Option<Isometry> {
        let mut perm = Vec::with_capacity(ROOT_COUNT);
        let mut hit = [false; ROOT_COUNT];
        for r in &self.roots {
            let j = self.index_of(&f(r))?;
            if std::mem::replace(&mut hit[j], true) {
                return None;
            }
            perm.push(j as u8);
        }
        Some(Isometry { perm })
    }

    /// Whether `iso` preserves every pairwise inner product.
    pub fn preserves_inner_products(&self, iso: &Isometry) -> bool {
        (0..ROOT_COUNT).all(|i| (0..ROOT_COUNT).all(|j| self.ip(i, j) == self.ip(iso.apply(i), iso.apply(j))))
    }
}

/// One reflection per antipodal pair of roots, in order of the positive
/// representative's index.
pub fn reflections() -> Vec<Isometry> {
    let e8 = E8::get();
    let mut out = Vec::with_capacity(ROOT_COUNT / 2);
    for (i, r) in e8.roots.iter().enumerate() {
        let minus = e8.index_of(&r.neg()).expect("root system is symmetric");
        if i < minus {
            out.push(e8.permutation_of(|v| v.reflect(r)).expect("reflections permute the roots"));
        }
    }
    out
}

/// Which extra isometries to add to the reflections in the pruning set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Extras {
    /// Reflections only.
    None,
    /// Products of reflection pairs, `count` of them.
    #[default]
    Default,
    Products(usize),
}

/// Number of default extra isometries.
pub const DEFAULT_EXTRAS: usize = 42;

/// The reflections followed by the requested extra isometries.
///
/// Extras are products `s_a s_b` of the reflections in roots `a` and `b` at
/// inner product 1 (rotations of order 3), taken with `a` and `b` among the
/// lowest-indexed roots. Such products move the small indices that lead the
/// sorted lists, which is where a strictly smaller image can appear.
pub fn isometry_set(extras: Extras) -> Vec<Isometry> {
    let refl = reflections();
    let count = match extras {
        Extras::None => 0,
        Extras::Default => DEFAULT_EXTRAS,
        Extras::Products(k) => k,
    };
    let e8 = E8::get();
    // reflection by root index, either sign
    let by_root = |i: usize| -> &Isometry {
        let r = e8.roots[i];
        let minus = e8.index_of(&r.neg()).expect("symmetric");
        let pos = i.min(minus);
        let k = (0..pos).filter(|&j| j < e8.index_of(&e8.roots[j].neg()).expect("symmetric")).count();
        &refl[k]
    };
    let mut extras_out: Vec<Isometry> = Vec::with_capacity(count);
    'outer: for b in 0..ROOT_COUNT {
        for a in 0..b {
            if extras_out.len() == count {
                break 'outer;
            }
            if e8.ip(a, b) == 1 {
                let p = by_root(a).compose(by_root(b));
                if !p.is_identity() && !extras_out.contains(&p) && !refl.contains(&p) {
                    extras_out.push(p);
                }
            }
        }
    }
    let mut out = refl;
    out.extend(extras_out);
    out
}

/// Graph whose adjacency matrix plus `2I` is the Gram matrix of the roots.
pub fn gram_graph(roots: &[RootVec]) -> Result<Graph> {
    let n = roots.len();
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        for j in i + 1..n {
            match roots[i].dot(&roots[j]) {
                0 => {}
                1 => g.add_edge(i, j)?,
                ip => return Err(Error::NotSimpleGram { i, j, ip }),
            }
        }
    }
    Ok(g)
}

/// A root index for each vertex of `g` realizing it in E8, found by
/// backtracking; `None` if `g` is not represented.
pub fn is_representable(g: &Graph) -> Option<Vec<usize>> {
    let e8 = E8::get();
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    // visit vertices so that each one after the first in its component has
    // an earlier neighbor
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let start = (0..n).find(|&v| placed >> v & 1 == 0).expect("unplaced vertex");
        let mut queue = vec![start];
        placed |= 1 << start;
        while let Some(v) = queue.first().copied() {
            queue.remove(0);
            order.push(v);
            for u in crate::graph::bits(g.neighbors(v) & !placed) {
                placed |= 1 << u;
                queue.push(u);
            }
        }
    }
    let mut assignment = vec![usize::MAX; n];
    let mut used = RootSet::default();
    // the Weyl group is transitive on roots, so the first vertex may take
    // root 0
    fn go(g: &Graph, e8: &E8, order: &[usize], k: usize, assignment: &mut [usize], used: &mut RootSet) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        let mut cand = if k == 0 {
            let mut s = RootSet::default();
            s.insert(0);
            s
        } else {
            RootSet([u64::MAX; 4])
        };
        for &u in &order[..k] {
            let r = assignment[u];
            cand = cand.and(if g.has_edge(u, v) { &e8.adjacent[r] } else { &e8.orthogonal[r] });
        }
        let cands: Vec<usize> = cand.iter().filter(|&r| !used.contains(r)).collect();
        for r in cands {
            assignment[v] = r;
            used.insert(r);
            if go(g, e8, order, k + 1, assignment, used) {
                return true;
            }
            used.0[r / 64] &= !(1 << (r % 64));
        }
        assignment[v] = usize::MAX;
        false
    }
    go(g, e8, &order, 0, &mut assignment, &mut used).then_some(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn root_system_shape() {
        let roots = e8_roots();
        assert_eq!(roots.len(), 240);
        assert_eq!(roots.iter().collect::<HashSet<_>>().len(), 240);
        assert_eq!(HALF_SUM_STRINGS.len() * 16, 224);
        for a in &roots {
            assert_eq!(a.dot(a), 2);
            for b in &roots {
                assert!((-2..=2).contains(&a.dot(b)));
            }
        }
        assert!(roots.windows(2).all(|w| w[0] < w[1]));
        let e8 = E8::get();
        for i in 0..240 {
            assert_eq!(e8.adjacent[i].len(), 56);
            assert_eq!(e8.orthogonal[i].len(), 126);
        }
    }

    #[test]
    fn reflections_permute_and_square_to_identity() {
        let refl = reflections();
        assert_eq!(refl.len(), 120);
        let e8 = E8::get();
        let distinct: HashSet<&Isometry> = refl.iter().collect();
        assert_eq!(distinct.len(), 120);
        for s in &refl {
            assert!(s.compose(s).is_identity());
            // fixes the 126 orthogonal roots, swaps the pair it reflects in
            let fixed = (0..240).filter(|&i| s.apply(i) == i).count();
            assert_eq!(fixed, 126);
            assert!(e8.preserves_inner_products(s));
        }
    }

    #[test]
    fn extra_isometries_are_valid() {
        let set = isometry_set(Extras::Default);
        assert_eq!(set.len(), 120 + DEFAULT_EXTRAS);
        let e8 = E8::get();
        for iso in &set[120..] {
            assert!(e8.preserves_inner_products(iso));
            assert!(!iso.compose(iso).is_identity());
        }
        assert_eq!(isometry_set(Extras::None).len(), 120);
    }

    #[test]
    fn gram_examples() {
        let e = |i: usize| {
            let mut d = [0i8; 8];
            d[i] = 2;
            RootVec(d)
        };
        assert_eq!(gram_graph(&[e(0), e(1), e(2)]).unwrap().edge_count(), 0);
        let h = |idx: [usize; 4]| {
            let mut d = [0i8; 8];
            for i in idx {
                d[i] = 1;
            }
            RootVec(d)
        };
        let k3 = gram_graph(&[h([0, 1, 2, 3]), h([0, 1, 4, 5]), h([0, 1, 6, 7])]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert!(matches!(gram_graph(&[e(0), e(0).neg()]), Err(Error::NotSimpleGram { ip: -2, .. })));
    }

    #[test]
    fn representability() {
        assert!(is_representable(&Graph::complete(1).unwrap()).is_some());
        let k3 = Graph::complete(3).unwrap();
        let w = is_representable(&k3).unwrap();
        let e8 = E8::get();
        let roots: Vec<RootVec> = w.iter().map(|&i| e8.roots[i]).collect();
        assert_eq!(gram_graph(&roots).unwrap(), k3);
        assert!(is_representable(&Graph::star(9).unwrap()).is_none());
        // eight pairwise orthogonal roots exist, nine do not
        assert!(is_representable(&Graph::empty(8).unwrap()).is_some());
        assert!(is_representable(&Graph::empty(9).unwrap()).is_none());
    }
}
