//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine an ordered vertex partition to an
//! equitable one, individualize each vertex of the first non-singleton cell,
//! recurse. Leaves are compared by their relabeled adjacency rows and the
//! largest wins. Automorphisms discovered at equal leaves prune children that
//! lie in one orbit of the pointwise stabilizer of the current prefix.

use std::fmt;

use crate::graph::Graph;

/// Isomorphism-invariant byte code of a (vertex-coloured) graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Vertex count encoded in the code.
    pub fn order(&self) -> usize {
        self.0[0] as usize
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Canonical code of `g`; equal codes iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> CanonicalCode {
    canonical_form_coloured(g, &vec![0; g.n()])
}

/// Canonical code of `g` with a vertex colouring that isomorphisms must
/// preserve.
pub fn canonical_form_coloured(g: &Graph, colours: &[u32]) -> CanonicalCode {
    let labeling = canonical_labeling(g, colours);
    encode(g, colours, &labeling)
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.permute(&canonical_labeling(g, &vec![0; g.n()]))
}

/// `labeling[v]` is the canonical label of vertex `v`.
pub fn canonical_labeling(g: &Graph, colours: &[u32]) -> Vec<usize> {
    assert_eq!(colours.len(), g.n());
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colours[v]);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match cells.last_mut() {
            Some(c) if colours[c[0]] == colours[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut search = Search { g, best: None, autos: Vec::new() };
    let root = refine(g, cells);
    search.descend(root, &mut Vec::new());
    search.best.expect("at least one leaf").1
}

fn encode(g: &Graph, colours: &[u32], labeling: &[usize]) -> CanonicalCode {
    let n = g.n();
    let h = g.permute(labeling);
    let mut inv = vec![0usize; n];
    for (v, &l) in labeling.iter().enumerate() {
        inv[l] = v;
    }
    let mut out = Vec::with_capacity(1 + n * 4 + n * 8);
    out.push(n as u8);
    if colours.iter().any(|&c| c != 0) {
        for &v in &inv {
            out.extend_from_slice(&colours[v].to_le_bytes());
        }
    }
    let bytes_per_row = n.div_ceil(8);
    for &row in h.rows() {
        out.extend_from_slice(&row.to_le_bytes()[..bytes_per_row]);
    }
    CanonicalCode(out)
}

struct Search<'a> {
    g: &'a Graph,
    /// Best leaf so far: relabeled rows and the labeling producing them.
    best: Option<(Vec<u64>, Vec<usize>)>,
    /// Automorphisms as vertex maps.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.equivalent_to_explored(prefix, v, &explored) {
                continue;
            }
            let mut child = cells.clone();
            let mut rest = child[target].clone();
            rest.retain(|&u| u != v);
            child[target] = vec![v];
            child.insert(target + 1, rest);
            let child = refine(self.g, child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Whether `v` shares an orbit with an explored vertex under the
    /// automorphisms that fix `prefix` pointwise.
    fn equivalent_to_explored(&self, prefix: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if prefix.iter().all(|&p| a[p] == p) {
                any = true;
                for (x, &y) in a.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.n();
        let mut labeling = vec![0usize; n];
        for (i, c) in cells.iter().enumerate() {
            labeling[c[0]] = i;
        }
        let rows = self.g.permute(&labeling).rows().to_vec();
        match &self.best {
            None => self.best = Some((rows, labeling)),
            Some((best_rows, best_lab)) => match rows.cmp(best_rows) {
                std::cmp::Ordering::Greater => self.best = Some((rows, labeling)),
                std::cmp::Ordering::Equal => {
                    let mut inv = vec![0usize; n];
                    for (v, &l) in best_lab.iter().enumerate() {
                        inv[l] = v;
                    }
                    let auto: Vec<usize> = labeling.iter().map(|&l| inv[l]).collect();
                    if auto.iter().enumerate().any(|(i, &j)| i != j) {
                        self.autos.push(auto);
                    }
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
}

/// Refines an ordered partition until every cell is equitable with respect
/// to every other. Split cells keep their position; the pieces are ordered by
/// their neighbor-count signature.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(g.n());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            // an invariant fold of the per-cell neighbor counts; a collision
            // only leaves a cell coarser, which the search tolerates
            let mut keyed: Vec<(u64, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = g.neighbors(v);
                    let key = masks.iter().fold(0u64, |k, m| {
                        k.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add((row & m).count_ones() as u64 + 1)
                    });
                    (key, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}


#[cfg(test)]
mod tests {
    use super::oracle::isomorphic;
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

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

    fn all_graphs(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let edges: Vec<_> =
                    pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                Graph::from_edges(n, &edges).unwrap()
            })
            .collect()
    }

    #[test]
    fn relabeled_path_has_same_code() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let q = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        assert_ne!(canonical_form(&Graph::complete(3).unwrap()), canonical_form(&p));
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        // brute-force count of isomorphism classes via the permutation oracle
        let graphs = all_graphs(4);
        let mut reps: Vec<Graph> = Vec::new();
        for g in &graphs {
            if !reps.iter().any(|r| isomorphic(r, g)) {
                reps.push(g.clone());
            }
        }
        assert_eq!(reps.len(), 11);
        let codes: HashSet<_> = graphs.iter().map(canonical_form).collect();
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn class_counts_up_to_six_vertices() {
        // OEIS A000088: 1, 2, 4, 11, 34, 156
        let expected = [1usize, 2, 4, 11, 34, 156];
        for n in 1..=6 {
            let codes: HashSet<_> = all_graphs(n).iter().map(canonical_form).collect();
            assert_eq!(codes.len(), expected[n - 1], "n = {n}");
        }
    }

    #[test]
    fn agrees_with_permutation_oracle_exhaustively_small() {
        // every pair of graphs on 5 vertices, grouped by edge count to keep it cheap
        let graphs = all_graphs(5);
        for a in graphs.iter().step_by(7) {
            for b in graphs.iter().filter(|b| b.edge_count() == a.edge_count()) {
                assert_eq!(canonical_form(a) == canonical_form(b), isomorphic(a, b));
            }
        }
    }

    #[test]
    fn agrees_with_oracle_on_random_pairs() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut same = 0;
        for _ in 0..1000 {
            let n = rng.gen_range(1..=8);
            let a = random_graph(&mut rng, n, 0.5);
            // half the time compare against a relabeled copy
            let b = if rng.gen_bool(0.5) {
                let mut p: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    p.swap(i, rng.gen_range(0..=i));
                }
                a.permute(&p)
            } else {
                random_graph(&mut rng, n, 0.5)
            };
            let iso = isomorphic(&a, &b);
            same += usize::from(iso);
            assert_eq!(canonical_form(&a) == canonical_form(&b), iso, "{a:?} vs {b:?}");
        }
        assert!(same > 400);
    }

    #[test]
    fn relabeling_invariance_at_ten_vertices() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(9..=10);
            let density = rng.gen_range(0.2..0.8);
            let a = random_graph(&mut rng, n, density);
            let mut p: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                p.swap(i, rng.gen_range(0..=i));
            }
            assert_eq!(canonical_form(&a), canonical_form(&a.permute(&p)));
        }
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        for n in [12, 16, 20] {
            let k = Graph::complete(n).unwrap();
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&k).order(), n);
            assert_ne!(canonical_form(&k), canonical_form(&e));
        }
        let two_k4 = Graph::complete(4).unwrap().disjoint_union(&Graph::complete(4).unwrap()).unwrap();
        let c8 = Graph::cycle(8).unwrap();
        assert_ne!(canonical_form(&two_k4), canonical_form(&c8));
    }

    #[test]
    fn colours_are_respected() {
        let p = Graph::path(3).unwrap();
        let end = canonical_form_coloured(&p, &[1, 0, 0]);
        let other_end = canonical_form_coloured(&p, &[0, 0, 1]);
        let middle = canonical_form_coloured(&p, &[0, 1, 0]);
        assert_eq!(end, other_end);
        assert_ne!(end, middle);
        assert_ne!(canonical_form(&p), middle);
    }
}
