//! Backtracking over increasing lists of E8 roots with pairwise inner
//! products in {0, 1}. A list is extended only while its Gram graph keeps a
//! hereditary property, and an extension is dropped when some isometry in
//! the pruning set maps the list to one that sorts strictly earlier.
//!
//! Soundness: if `L` is the lexicographically least sorted image of a root
//! list under the group generated by the pruning set, no member of the set
//! maps `L`, or any prefix of `L`, to something smaller. A smaller image of
//! a prefix would give a smaller image of `L`, since the first `k` entries of
//! a sorted image of `L` are bounded entrywise by the sorted image of its
//! first `k` entries. The reflections generate the whole Weyl group, which is
//! transitive on roots, so `L` may also be assumed to start at root 0.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{isometry_set, Extras, Isometry, RootSet, E8, ROOT_COUNT};
use crate::canon::{canonical_form, CanonicalCode};
use crate::classify::{eigs_outside, is_cyclotomic_on, m_salem_index};
use crate::error::{Error, Result};
use crate::glg::recognize_glg;
use crate::graph::{bits, Graph};
use crate::spectra::{extend_char_poly_i64, fast::real_rooted_above};

/// Longest list the search handles; graphs represented in E8 with the
/// census property are far smaller.
const MAX_DEPTH: usize = 24;

/// Node counts of a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Accepted lists, the empty list excluded.
    pub nodes: u64,
    pub symmetry_rejections: u64,
    pub predicate_rejections: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.symmetry_rejections += o.symmetry_rejections;
        self.predicate_rejections += o.predicate_rejections;
    }
}

/// A hereditary property evaluated incrementally along a list.
pub trait Hereditary: Sync {
    type State: Clone + Send;
    fn empty(&self) -> Self::State;
    /// State of `g`, whose last vertex is new, or `None` if `g` fails.
    fn extend(&self, parent: &Self::State, g: &Graph) -> Option<Self::State>;
}

struct Plain<F>(F);

impl<F: Fn(&Graph) -> bool + Sync> Hereditary for Plain<F> {
    type State = ();
    fn empty(&self) {}
    fn extend(&self, _: &(), g: &Graph) -> Option<()> {
        (self.0)(g).then_some(())
    }
}

/// The census property: at most one eigenvalue above 2, and the graph is
/// cyclotomic or becomes so after deleting one vertex. Graphs represented
/// in E8 have no eigenvalue below -2, which the incremental test relies on.
pub struct CensusPredicate;

#[derive(Clone, Debug)]
pub struct CensusState {
    pub poly: Vec<i64>,
    pub above: usize,
    /// Vertices whose deletion leaves a cyclotomic graph.
    pub good: u64,
}

/// `det(2I - A)` of the subgraph on `keep`, by fraction-free elimination.
fn det_two_minus(g: &Graph, keep: u64) -> i128 {
    let verts = bits(keep);
    let n = verts.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = verts
        .iter()
        .map(|&u| verts.iter().map(|&v| if u == v { 2 } else { -i128::from(g.has_edge(u, v)) }).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

impl Hereditary for CensusPredicate {
    type State = CensusState;

    fn empty(&self) -> CensusState {
        CensusState { poly: vec![1], above: 0, good: 0 }
    }

    fn extend(&self, parent: &CensusState, g: &Graph) -> Option<CensusState> {
        let n = g.n();
        let poly = extend_char_poly_i64(g.rows(), n - 1, &parent.poly).expect("small graphs do not overflow");
        let above = real_rooted_above(&poly, 2).expect("small graphs do not overflow");
        let all = g.all_vertices();
        let good = match above {
            0 => all,
            1 => {
                // g - v has at most one eigenvalue above 2 and none below
                // -2, so the sign of det(2I - A(g - v)) decides unless 2 is
                // itself an eigenvalue
                let mut good = if parent.above == 0 { 1 << (n - 1) } else { 0 };
                for v in bits(parent.good & !(1 << (n - 1))) {
                    let keep = all & !(1 << v);
                    let cyclotomic = match det_two_minus(g, keep) {
                        d if d > 0 => true,
                        d if d < 0 => false,
                        _ => is_cyclotomic_on(g, keep),
                    };
                    if cyclotomic {
                        good |= 1 << v;
                    }
                }
                good
            }
            _ => 0,
        };
        (good != 0).then_some(CensusState { poly, above, good })
    }
}

/// The census property evaluated from scratch, for checks.
pub fn census_predicate(g: &Graph) -> bool {
    let (above, below) = eigs_outside(g);
    if above > 1 || below > 0 {
        return above <= 1 && below == 0;
    }
    above == 0 || (0..g.n()).any(|v| eigs_outside(&g.delete_vertex(v)) == (0, 0))
}

struct Frame<S> {
    list: Vec<usize>,
    g: Graph,
    state: S,
    /// Roots compatible with every list member.
    compatible: RootSet,
    /// Sorted image of the list under each isometry.
    images: Vec<Vec<u8>>,
}

/// Shared search parameters.
pub struct Searcher<'a, P: Hereditary> {
    pub pred: &'a P,
    pub isometries: &'a [Isometry],
    pub max_vertices: usize,
    /// Start every list at root 0.
    pub fix_first: bool,
}

impl<P: Hereditary> Searcher<'_, P> {
    fn root_frame(&self) -> Frame<P::State> {
        Frame {
            list: Vec::new(),
            g: Graph::empty(0).expect("empty"),
            state: self.pred.empty(),
            compatible: RootSet([u64::MAX, u64::MAX, u64::MAX, u64::MAX >> (256 - ROOT_COUNT)]),
            images: vec![Vec::new(); self.isometries.len()],
        }
    }

    /// The frame for `parent` extended by root `r`, if accepted.
    fn child(&self, parent: &Frame<P::State>, r: usize, stats: &mut SearchStats) -> Option<Frame<P::State>> {
        let mut list = parent.list.clone();
        list.push(r);
        let mut images = Vec::with_capacity(self.isometries.len());
        for (iso, img) in self.isometries.iter().zip(&parent.images) {
            let x = iso.apply(r) as u8;
            let pos = img.partition_point(|&y| y < x);
            let mut next = Vec::with_capacity(img.len() + 1);
            next.extend_from_slice(&img[..pos]);
            next.push(x);
            next.extend_from_slice(&img[pos..]);
            if next.iter().zip(&list).map(|(&a, &b)| (a as usize).cmp(&b)).find(|o| o.is_ne()) == Some(std::cmp::Ordering::Less) {
                stats.symmetry_rejections += 1;
                return None;
            }
            images.push(next);
        }
        let e8 = E8::get();
        let mut g = parent.g.clone();
        let nbrs: u64 = parent.list.iter().enumerate().filter(|&(_, &s)| e8.ip(s, r) == 1).map(|(i, _)| 1u64 << i).sum();
        g.add_vertex(nbrs).expect("bounded depth");
        let Some(state) = self.pred.extend(&parent.state, &g) else {
            stats.predicate_rejections += 1;
            return None;
        };
        let compatible = parent.compatible.and(&RootSet([
            e8.adjacent[r].0[0] | e8.orthogonal[r].0[0],
            e8.adjacent[r].0[1] | e8.orthogonal[r].0[1],
            e8.adjacent[r].0[2] | e8.orthogonal[r].0[2],
            e8.adjacent[r].0[3] | e8.orthogonal[r].0[3],
        ]));
        stats.nodes += 1;
        Some(Frame { list, g, state, compatible, images })
    }

    fn dfs(&self, frame: &Frame<P::State>, stats: &mut SearchStats, visit: &mut dyn FnMut(&Graph, &P::State)) {
        visit(&frame.g, &frame.state);
        if frame.list.len() >= self.max_vertices.min(MAX_DEPTH) {
            return;
        }
        let last = *frame.list.last().expect("non-empty below the top level");
        for r in frame.compatible.above(last).iter() {
            if let Some(child) = self.child(frame, r, stats) {
                self.dfs(&child, stats, visit);
            }
        }
    }

    /// Top-level branches: the second root when the first is fixed,
    /// otherwise the first.
    pub fn partitions(&self) -> Vec<usize> {
        let mut stats = SearchStats::default();
        let root = self.root_frame();
        if self.fix_first {
            match self.child(&root, 0, &mut stats) {
                Some(first) if self.max_vertices >= 2 => first.compatible.above(0).iter().collect(),
                _ => Vec::new(),
            }
        } else {
            (0..ROOT_COUNT).collect()
        }
    }

    /// Visits the empty list and, with a fixed first root, the one-root list.
    pub fn run_top(&self, visit: &mut dyn FnMut(&Graph, &P::State)) -> SearchStats {
        let mut stats = SearchStats::default();
        let root = self.root_frame();
        visit(&root.g, &root.state);
        if self.fix_first && self.max_vertices >= 1 {
            if let Some(first) = self.child(&root, 0, &mut stats) {
                visit(&first.g, &first.state);
            }
        }
        stats
    }

    /// Searches the subtree of one top-level branch.
    pub fn run_partition(&self, p: usize, visit: &mut dyn FnMut(&Graph, &P::State)) -> SearchStats {
        let mut stats = SearchStats::default();
        let root = self.root_frame();
        let prefix = if self.fix_first { vec![0, p] } else { vec![p] };
        if prefix.len() > self.max_vertices {
            return stats;
        }
        let mut frame = root;
        for &r in &prefix {
            if !frame.compatible.contains(r) {
                return stats;
            }
            match self.child(&frame, r, &mut stats) {
                Some(f) => frame = f,
                None => return stats,
            }
        }
        // the prefix nodes above the partition root are counted by run_top
        if self.fix_first {
            stats.nodes -= 1;
        }
        self.dfs(&frame, &mut stats, visit);
        stats
    }
}

/// Canonical codes of every graph with property `pred` represented in E8
/// with at most `max_vertices` vertices. Every visited graph is also checked
/// for hereditariness: deleting any vertex must keep the property.
pub fn enumerate_hereditary<F>(pred: F, max_vertices: usize, isometries: &[Isometry], fix_first: bool) -> Result<(HashSet<CanonicalCode>, SearchStats)>
where
    F: Fn(&Graph) -> bool + Sync,
{
    if !pred(&Graph::empty(0)?) {
        return Err(Error::NotHereditary("the empty graph fails the property".into()));
    }
    let plain = Plain(&pred);
    let searcher = Searcher { pred: &plain, isometries, max_vertices, fix_first };
    let mut codes = HashSet::new();
    let mut violation: Option<String> = None;
    let mut visit = |g: &Graph, _: &()| {
        if violation.is_none() {
            if let Some(v) = (0..g.n()).find(|&v| !pred(&g.delete_vertex(v))) {
                violation = Some(format!("{g:?} has the property but not after deleting vertex {v}"));
            }
        }
        codes.insert(canonical_form(g));
    };
    let mut stats = searcher.run_top(&mut visit);
    for p in searcher.partitions() {
        stats.add(&searcher.run_partition(p, &mut visit));
    }
    match violation {
        Some(msg) => Err(Error::NotHereditary(msg)),
        None => Ok((codes, stats)),
    }
}

/// Final filters of the census: connected, non-bipartite, exactly one
/// eigenvalue above 2 and none below -2, m-Salem index 1, and not a
/// generalized line graph.
pub fn survivor_filter(g: &Graph) -> bool {
    g.is_connected()
        && !g.is_bipartite()
        && eigs_outside(g) == (1, 0)
        && m_salem_index(g) == Ok(1)
        && recognize_glg(g).expect("connected").is_none()
}

/// Census parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub max_vertices: usize,
    pub extras: Extras,
    /// Reject lists with a smaller image under the isometry set.
    pub prune: bool,
    pub fix_first: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { max_vertices: MAX_DEPTH, extras: Extras::Default, prune: true, fix_first: true }
    }
}

/// Survivors of one or more partitions, keyed by canonical code.
#[derive(Clone, Debug, Default)]
pub struct Census {
    pub survivors: HashMap<CanonicalCode, Graph>,
    pub stats: SearchStats,
}

impl Census {
    /// Survivor counts by vertex count.
    pub fn histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut h = std::collections::BTreeMap::new();
        for g in self.survivors.values() {
            *h.entry(g.n()).or_insert(0) += 1;
        }
        h
    }

    pub fn total(&self) -> usize {
        self.survivors.len()
    }

    pub fn merge(&mut self, other: Census) {
        self.stats.add(&other.stats);
        self.survivors.extend(other.survivors);
    }
}

/// Runs the census search over the given partitions (all when `None`),
/// calling `on_done` after each finished partition with its survivors.
pub fn one_salem_census_with(
    config: &CensusConfig,
    only: Option<&[usize]>,
    on_done: &(dyn Fn(usize, &Census) + Sync),
) -> Census {
    let isometries = if config.prune { isometry_set(config.extras) } else { Vec::new() };
    let searcher = Searcher { pred: &CensusPredicate, isometries: &isometries, max_vertices: config.max_vertices, fix_first: config.fix_first };
    let parts = match only {
        Some(p) => p.to_vec(),
        None => searcher.partitions(),
    };
    let mut top = Census::default();
    if only.is_none() {
        top.stats = searcher.run_top(&mut |_, _| {});
    }
    let results: Vec<Census> = parts
        .par_iter()
        .map(|&p| {
            let mut census = Census::default();
            let mut verdicts: HashMap<CanonicalCode, bool> = HashMap::new();
            let mut visit = |g: &Graph, s: &CensusState| {
                if s.above != 1 || !g.is_connected() || g.is_bipartite() {
                    return;
                }
                let code = canonical_form(g);
                if let Some(&keep) = verdicts.get(&code) {
                    if keep {
                        census.survivors.entry(code).or_insert_with(|| g.clone());
                    }
                    return;
                }
                let keep = survivor_filter(g);
                verdicts.insert(code.clone(), keep);
                if keep {
                    census.survivors.insert(code, g.clone());
                }
            };
            census.stats = searcher.run_partition(p, &mut visit);
            on_done(p, &census);
            census
        })
        .collect();
    for r in results {
        top.merge(r);
    }
    top
}

/// The census with default settings and no vertex cap.
pub fn one_salem_census() -> Census {
    one_salem_census_with(&CensusConfig::default(), None, &|_, _| {})
}

/// The top-level partitions for a configuration.
pub fn census_partitions(config: &CensusConfig) -> Vec<usize> {
    let isometries = if config.prune { isometry_set(config.extras) } else { Vec::new() };
    Searcher { pred: &CensusPredicate, isometries: &isometries, max_vertices: config.max_vertices, fix_first: config.fix_first }
        .partitions()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e8::{gram_graph, is_representable};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn determinant_minor_matches_char_poly_at_two() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..200 {
            let n = rng.gen_range(1..=9);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let c = crate::spectra::char_poly_i64(&g).unwrap();
            let at_two: i128 = c.iter().rev().fold(0i128, |acc, &x| acc * 2 + x as i128);
            assert_eq!(det_two_minus(&g, g.all_vertices()), at_two);
        }
    }

    #[test]
    fn incremental_predicate_matches_direct() {
        let mut rng = StdRng::seed_from_u64(5);
        let e8 = E8::get();
        for _ in 0..300 {
            // a random compatible root list
            let mut list: Vec<usize> = vec![rng.gen_range(0..240)];
            let mut state = CensusPredicate.empty();
            let first = Graph::empty(1).unwrap();
            state = CensusPredicate.extend(&state, &first).unwrap();
            let mut g = first;
            for _ in 0..10 {
                let cands: Vec<usize> =
                    (0..240).filter(|&r| !list.contains(&r) && list.iter().all(|&s| matches!(e8.ip(s, r), 0 | 1))).collect();
                if cands.is_empty() {
                    break;
                }
                let r = cands[rng.gen_range(0..cands.len())];
                let nbrs: u64 = list.iter().enumerate().filter(|&(_, &s)| e8.ip(s, r) == 1).map(|(i, _)| 1u64 << i).sum();
                let mut h = g.clone();
                h.add_vertex(nbrs).unwrap();
                let direct = census_predicate(&h);
                match CensusPredicate.extend(&state, &h) {
                    Some(s) => {
                        assert!(direct, "{h:?}");
                        state = s;
                        g = h;
                        list.push(r);
                    }
                    None => {
                        assert!(!direct, "{h:?}");
                        break;
                    }
                }
            }
            let roots: Vec<_> = list.iter().map(|&i| e8.roots[i]).collect();
            assert_eq!(gram_graph(&roots).unwrap(), g);
        }
    }

    #[test]
    fn edgeless_lists_stop_at_eight() {
        let refl = isometry_set(Extras::None);
        let (codes, _) = enumerate_hereditary(|g| g.edge_count() == 0, 12, &refl, true).unwrap();
        let mut orders: Vec<usize> = codes.iter().map(|c| c.order()).collect();
        orders.sort();
        assert_eq!(orders, (0..=8).collect::<Vec<_>>());
    }

    #[test]
    fn non_hereditary_property_is_reported() {
        let refl = isometry_set(Extras::None);
        // "connected" fails on deleting the middle of a path
        let r = enumerate_hereditary(|g| g.n() <= 1 || g.is_connected(), 3, &refl, true);
        assert!(matches!(r, Err(Error::NotHereditary(_))));
    }

    #[test]
    fn small_census_survivors_round_trip() {
        let config = CensusConfig { max_vertices: 6, ..CensusConfig::default() };
        let census = one_salem_census_with(&config, None, &|_, _| {});
        assert_eq!(census.histogram().get(&6), Some(&10));
        for g in census.survivors.values() {
            assert!(survivor_filter(g));
            assert!(is_representable(g).is_some());
            assert_eq!(eigs_outside(g).1, 0);
        }
    }
}
