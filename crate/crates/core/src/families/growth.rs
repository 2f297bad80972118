//! The minimal non-cyclotomic generalized line graphs and the growth of
//! `G|_{M ∪ A}` around them, where `A` is the neighbourhood of `M`.

use std::collections::{HashMap, HashSet};

use crate::canon::{canonical_form, canonical_form_coloured, CanonicalCode};
use crate::classify::{is_cyclotomic, is_cyclotomic_on};
use crate::glg::{gcp, recognize_glg_all, GcpBlock, GcpPartition};
use crate::graph::{bits, Graph};

/// The three graphs obtained by attaching one vertex to a triangle: a
/// pendant edge, `K4` minus an edge, and `K4`.
pub fn minimal_graphs() -> [Graph; 3] {
    let m1 = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).expect("valid");
    let m2 = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3), (1, 3)]).expect("valid");
    let m3 = Graph::complete(4).expect("valid");
    [m1, m2, m3]
}

/// The GCPs that can be attached or expanded to, with the number of
/// vertices of maximal degree in each.
pub fn attachable_gcps() -> Vec<(Graph, usize)> {
    [(2, 0), (3, 1), (3, 0), (4, 1), (4, 0), (5, 2)]
        .into_iter()
        .map(|(n, m)| (gcp(n, m).expect("valid size"), n - 2 * m))
        .collect()
}

/// A graph with its GCP blocks; vertices `0..4` form `M`.
#[derive(Clone, Debug)]
struct State {
    g: Graph,
    blocks: Vec<u64>,
}

const M: u64 = 0b1111;

impl State {
    fn block_count(&self, v: usize) -> usize {
        self.blocks.iter().filter(|&&b| b >> v & 1 == 1).count()
    }

    fn maximal_in(&self, v: usize, block: u64) -> bool {
        block & !self.g.neighbors(v) & !(1 << v) == 0
    }

    /// In exactly one block and of maximal degree there.
    fn free(&self, v: usize) -> bool {
        let mut owners = self.blocks.iter().filter(|&&b| b >> v & 1 == 1);
        match (owners.next(), owners.next()) {
            (Some(&b), None) => self.maximal_in(v, b),
            _ => false,
        }
    }

    fn partition(&self) -> GcpPartition {
        GcpPartition { blocks: self.blocks.iter().map(|&b| GcpBlock::of(&self.g, b)).collect() }
    }

    fn is_valid(&self) -> bool {
        self.partition().is_valid_for(&self.g)
    }

    /// Canonical code of the vertex/block incidence structure.
    fn key(&self) -> CanonicalCode {
        let n = self.g.n();
        let mut h = self.g.clone();
        let mut colours: Vec<u32> = (0..n).map(|v| if v < 4 { 0 } else { 1 }).collect();
        for &b in &self.blocks {
            h.add_vertex(b).expect("small enough");
            colours.push(2);
        }
        canonical_form_coloured(&h, &colours)
    }

    /// `G - v` is cyclotomic for some `v` in `M`.
    fn is_one_salem(&self) -> bool {
        let all = self.g.all_vertices();
        !is_cyclotomic(&self.g) && (0..4).any(|v| is_cyclotomic_on(&self.g, all & !(1 << v)))
    }

    /// Labelled form with the vertices from `first_new` on sorted by their
    /// neighbourhoods among the older vertices; removes the duplicates that
    /// differ only in the order new vertices were created.
    fn normalized(&self, first_new: usize) -> (Vec<u64>, Vec<u64>) {
        let n = self.g.n();
        let old_mask = (1u64 << first_new) - 1;
        let mut order: Vec<usize> = (0..n).collect();
        order[first_new..].sort_by_key(|&v| (self.g.neighbors(v) & old_mask, self.g.neighbors(v).count_ones()));
        let g = self.g.permute(&inverse(&order));
        let relabel = |b: u64| bits(b).into_iter().map(|v| 1u64 << order.iter().position(|&w| w == v).expect("present")).sum();
        let mut blocks: Vec<u64> = self.blocks.iter().map(|&b| relabel(b)).collect();
        blocks.sort_unstable();
        (g.rows().to_vec(), blocks)
    }

    fn expansions(&self, out: &mut Vec<State>) {
        for (bi, &block) in self.blocks.iter().enumerate() {
            if block & M == 0 {
                continue;
            }
            let old: Vec<usize> = bits(block);
            let mut local: HashSet<(Vec<u64>, Vec<u64>)> = HashSet::new();
            let shared: Vec<bool> = old.iter().map(|&v| self.block_count(v) == 2).collect();
            for (target, _) in attachable_gcps() {
                let t = target.n();
                if t <= old.len() {
                    continue;
                }
                for image in injections(old.len(), t) {
                    let induced = old.iter().enumerate().all(|(i, &u)| {
                        old.iter().enumerate().all(|(j, &v)| i == j || self.g.has_edge(u, v) == target.has_edge(image[i], image[j]))
                    });
                    let degrees_kept = (0..old.len()).all(|i| !shared[i] || target.degree(image[i]) == t - 1);
                    if !induced || !degrees_kept {
                        continue;
                    }
                    let mut g = self.g.clone();
                    let mut placed: Vec<Option<usize>> = vec![None; t];
                    for (i, &v) in old.iter().enumerate() {
                        placed[image[i]] = Some(v);
                    }
                    let mut new_block = block;
                    let mut reaches_m = true;
                    for x in 0..t {
                        if placed[x].is_some() {
                            continue;
                        }
                        let nbrs: u64 = (0..t).filter(|&y| target.has_edge(x, y)).filter_map(|y| placed[y]).map(|v| 1u64 << v).sum();
                        reaches_m &= nbrs & M != 0;
                        let v = g.add_vertex(nbrs).expect("small enough");
                        placed[x] = Some(v);
                        new_block |= 1 << v;
                    }
                    // new vertices adjacent to each other as in the target
                    for x in 0..t {
                        for y in x + 1..t {
                            let (px, py) = (placed[x].expect("placed"), placed[y].expect("placed"));
                            if target.has_edge(x, y) && !g.has_edge(px, py) {
                                g.add_edge(px, py).expect("in range");
                            }
                        }
                    }
                    if !reaches_m {
                        continue;
                    }
                    let mut blocks = self.blocks.clone();
                    blocks[bi] = new_block;
                    let state = State { g, blocks };
                    if local.insert(state.normalized(self.g.n())) {
                        out.push(state);
                    }
                }
            }
        }
    }

    fn attachments(&self, out: &mut Vec<State>) {
        for x in bits(M).into_iter().filter(|&x| self.free(x)) {
            for (target, _) in attachable_gcps() {
                let t = target.n();
                // the maximal vertices of a GCP are all alike
                if let Some(pivot) = (0..t).find(|&p| target.degree(p) == t - 1) {
                    let mut g = self.g.clone();
                    let mut placed = vec![x; t];
                    let mut block = 1u64 << x;
                    for y in (0..t).filter(|&y| y != pivot) {
                        placed[y] = g.add_vertex(0).expect("small enough");
                        block |= 1 << placed[y];
                    }
                    for a in 0..t {
                        for b in a + 1..t {
                            if target.has_edge(a, b) {
                                g.add_edge(placed[a], placed[b]).expect("in range");
                            }
                        }
                    }
                    let mut blocks = self.blocks.clone();
                    blocks.push(block);
                    out.push(State { g, blocks });
                }
            }
        }
    }

    fn joins(&self, out: &mut Vec<State>) {
        let candidates: Vec<usize> = (4..self.g.n()).filter(|&v| self.free(v)).collect();
        for (i, &u) in candidates.iter().enumerate() {
            for &v in &candidates[i + 1..] {
                let same_block = self.blocks.iter().any(|&b| b >> u & 1 == 1 && b >> v & 1 == 1);
                if same_block || self.g.has_edge(u, v) {
                    continue;
                }
                // a new K2
                let mut g = self.g.clone();
                g.add_edge(u, v).expect("in range");
                let mut blocks = self.blocks.clone();
                blocks.push(1 << u | 1 << v);
                out.push(State { g, blocks });
                // identify v with u
                let mut g = self.g.clone();
                for w in bits(self.g.neighbors(v)) {
                    g.add_edge(u, w).expect("in range");
                }
                let keep = g.all_vertices() & !(1 << v);
                let g = g.induced(keep).expect("subset");
                let squeeze = |b: u64| {
                    let b = if b >> v & 1 == 1 { (b & !(1 << v)) | 1 << u } else { b };
                    let low = b & ((1 << v) - 1);
                    low | (b >> (v + 1)) << v
                };
                let blocks = self.blocks.iter().map(|&b| squeeze(b)).collect();
                out.push(State { g, blocks });
            }
        }
    }
}

fn inverse(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Every injective map from `0..k` into `0..t`, as image lists.
fn injections(k: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..t {
            if !cur.contains(&x) {
                cur.push(x);
                go(k, t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, t, &mut Vec::new(), &mut out);
    out
}

/// The starting states: each minimal graph under each of its partitions.
fn seeds() -> Vec<State> {
    let mut out = Vec::new();
    for m in minimal_graphs() {
        for p in recognize_glg_all(&m).expect("connected") {
            out.push(State { g: m.clone(), blocks: p.blocks.iter().map(|b| b.vertices).collect() });
        }
    }
    out
}

/// Statistics of a growth run.
#[derive(Clone, Debug, Default)]
pub struct GrowthReport {
    /// Distinct (graph, partition, M) states visited.
    pub states: usize,
    pub candidates: usize,
    /// The 1-Salem results, one graph per isomorphism class.
    pub graphs: HashMap<CanonicalCode, Graph>,
}

impl GrowthReport {
    pub fn codes(&self) -> HashSet<CanonicalCode> {
        self.graphs.keys().cloned().collect()
    }

    pub fn max_order(&self) -> usize {
        self.graphs.values().map(Graph::n).max().unwrap_or(0)
    }
}

/// Runs the growth moves to exhaustion from every partitioned minimal graph
/// and keeps the graphs where deleting a single vertex of `M` leaves a
/// cyclotomic graph.
pub fn grow_ma_report() -> GrowthReport {
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut frontier: Vec<State> = Vec::new();
    for s in seeds() {
        if seen.insert(s.key()) {
            frontier.push(s);
        }
    }
    let mut report = GrowthReport::default();
    while let Some(state) = frontier.pop() {
        report.states += 1;
        if state.is_one_salem() {
            report.graphs.entry(canonical_form(&state.g)).or_insert_with(|| state.g.clone());
        }
        let mut next = Vec::new();
        state.expansions(&mut next);
        state.attachments(&mut next);
        state.joins(&mut next);
        report.candidates += next.len();
        for s in next {
            if seen.insert(s.key()) && s.is_valid() {
                frontier.push(s);
            }
        }
    }
    report
}

/// The graphs `G|_{M ∪ A}`, up to isomorphism.
pub fn grow_ma() -> HashSet<CanonicalCode> {
    grow_ma_report().codes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::eigs_outside;
    use crate::spectra::{char_poly, lambda1_enclosure};
    use crate::spectra::sturm::int;

    #[test]
    fn minimal_graphs_are_minimal() {
        for m in minimal_graphs() {
            assert!(!is_cyclotomic(&m));
            for v in 0..4 {
                let h = m.delete_vertex(v);
                if h.is_connected() {
                    assert!(is_cyclotomic(&h));
                }
            }
        }
        let k4 = &minimal_graphs()[2];
        let lambda = lambda1_enclosure(k4, &crate::spectra::sturm::rat(1, 1 << 20)).unwrap();
        assert!(lambda.contains(&int(3)));
        assert_eq!(char_poly(k4).coeff(0), num_bigint::BigInt::from(-3));
    }

    #[test]
    fn table_of_attachable_gcps() {
        let table = attachable_gcps();
        let counts: Vec<usize> = table.iter().map(|(_, c)| *c).collect();
        assert_eq!(counts, vec![2, 1, 3, 2, 4, 1]);
        for (g, c) in &table {
            let top = g.n() - 1;
            assert_eq!((0..g.n()).filter(|&v| g.degree(v) == top).count(), *c);
            // one vertex away from cyclotomic
            assert!((0..g.n()).any(|v| is_cyclotomic(&g.delete_vertex(v))));
        }
        // C4 is not in the table
        assert!(table.iter().all(|(g, _)| !(g.n() == 4 && g.edge_count() == 4)));
    }

    #[test]
    fn seeds_cover_both_partitions_of_m2() {
        let s = seeds();
        // M2 has a triangle-plus-two-edges partition for each of its two
        // triangles, and the GCP(4,1) one
        assert_eq!(s.len(), 5);
        let m2: Vec<&State> = s.iter().filter(|st| st.g.edge_count() == 5).collect();
        assert_eq!(m2.len(), 3);
        let keys: HashSet<CanonicalCode> = m2.iter().map(|st| st.key()).collect();
        assert_eq!(keys.len(), 2);
        assert!(s.iter().all(|st| st.is_valid() && st.is_one_salem()));
        let (above, below) = eigs_outside(&s[0].g);
        assert_eq!((above, below), (1, 0));
    }

    #[test]
    fn injections_count() {
        assert_eq!(injections(2, 5).len(), 20);
        assert_eq!(injections(0, 3).len(), 1);
    }
}
