//! Independent computations that the verification suite compares against
//! the library. They favour plain exhaustive search over speed and share no
//! search code with the routines they check.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use salem_core::canon::{canonical_form, canonical_form_coloured, CanonicalCode};
use salem_core::e8::is_representable;
use salem_core::glg::recognize_glg;
use salem_core::spectra::sturm::int;
use salem_core::spectra::{char_poly, count_roots_above, count_roots_below};
use salem_core::Graph;

/// Eigenvalues above 2 and below -2, counted with Sturm chains.
pub fn sturm_outside(g: &Graph) -> (usize, usize) {
    if g.n() == 0 {
        return (0, 0);
    }
    let chi = char_poly(g);
    (count_roots_above(&chi, &int(2)).expect("nonzero"), count_roots_below(&chi, &int(-2)).expect("nonzero"))
}

pub fn sturm_cyclotomic(g: &Graph) -> bool {
    sturm_outside(g) == (0, 0)
}

/// Smallest number of vertices whose deletion leaves a cyclotomic graph,
/// trying every subset by size.
pub fn brute_force_m_index(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n;
    for s in 0u64..(1 << n) {
        let size = s.count_ones() as usize;
        if size < best && sturm_cyclotomic(&g.delete_vertices(s)) {
            best = size;
        }
    }
    best
}

/// At most one eigenvalue above 2, none below -2, and cyclotomic or
/// cyclotomic after deleting one vertex. Closed under induced subgraphs.
pub fn near_cyclotomic(g: &Graph) -> bool {
    match sturm_outside(g) {
        (0, 0) => true,
        (1, 0) => (0..g.n()).any(|v| sturm_cyclotomic(&g.delete_vertex(v))),
        _ => false,
    }
}

fn glg_connected(g: &Graph) -> bool {
    recognize_glg(g).expect("connected").is_some()
}

/// Isomorphism classes of all graphs with at most `max_n` vertices satisfying
/// the hereditary property `keep`, by adding one vertex at a time in every
/// possible way. With `connected` only connected graphs are generated, which
/// still reaches every connected member because each connected graph has a
/// vertex whose deletion leaves it connected.
pub fn vertex_closure(max_n: usize, connected: bool, keep: &dyn Fn(&Graph) -> bool) -> HashMap<CanonicalCode, Graph> {
    let mut found: HashMap<CanonicalCode, Graph> = HashMap::new();
    let start = if connected { Graph::empty(1) } else { Graph::empty(0) }.expect("small");
    if !keep(&start) {
        return found;
    }
    found.insert(canonical_form(&start), start.clone());
    let mut level = vec![start];
    while let Some(n) = level.first().map(Graph::n) {
        if n >= max_n {
            break;
        }
        let mut next = Vec::new();
        for g in &level {
            let first = u64::from(connected);
            for nbrs in first..(1u64 << n) {
                let mut h = g.clone();
                h.add_vertex(nbrs).expect("small");
                let code = canonical_form(&h);
                if found.contains_key(&code) || !keep(&h) {
                    continue;
                }
                found.insert(code, h.clone());
                next.push(h);
            }
        }
        level = next;
    }
    found
}

/// Connected non-bipartite generalized line graphs with one eigenvalue above
/// 2, none below -2, and a vertex whose deletion leaves a cyclotomic graph.
pub fn glg_one_salem_closure(max_n: usize) -> HashSet<CanonicalCode> {
    let all = vertex_closure(max_n, true, &|g| near_cyclotomic(g) && glg_connected(g));
    all.into_iter()
        .filter(|(_, g)| !g.is_bipartite() && sturm_outside(g) == (1, 0))
        .map(|(c, _)| c)
        .collect()
}

/// Graphs represented in E8 with the census property, found without any
/// symmetry pruning.
pub fn e8_closure(max_n: usize) -> HashMap<CanonicalCode, Graph> {
    vertex_closure(max_n, false, &|g| near_cyclotomic(g) && is_representable(g).is_some())
}

/// Growth from each minimal non-cyclotomic core `M` on vertices `0..4`:
/// every connected generalized line graph `X` with `V(X) = M ∪ N(M)`, one
/// eigenvalue above 2, and `X - m` cyclotomic for some `m` in `M`. New
/// vertices are added one at a time, each adjacent to `M`.
pub fn ma_closure(cores: &[Graph]) -> HashMap<CanonicalCode, Graph> {
    let colours = |g: &Graph| -> Vec<u32> { (0..g.n()).map(|v| u32::from(v < 4)).collect() };
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut found: HashMap<CanonicalCode, Graph> = HashMap::new();
    let mut level: Vec<Graph> = cores.to_vec();
    for g in &level {
        seen.insert(canonical_form_coloured(g, &colours(g)));
    }
    while !level.is_empty() {
        let mut next = Vec::new();
        for g in &level {
            found.entry(canonical_form(g)).or_insert_with(|| g.clone());
            let n = g.n();
            for m in 1u64..16 {
                for a in 0u64..(1 << (n - 4)) {
                    let mut h = g.clone();
                    h.add_vertex(m | a << 4).expect("small");
                    if sturm_outside(&h).0 != 1 || !(0..4).any(|v| sturm_cyclotomic(&h.delete_vertex(v))) {
                        continue;
                    }
                    if !seen.insert(canonical_form_coloured(&h, &colours(&h))) || !glg_connected(&h) {
                        continue;
                    }
                    next.push(h);
                }
            }
        }
        level = next;
    }
    found
}

/// A random connected graph: a random spanning tree plus each remaining
/// edge with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).expect("small");
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).expect("in range");
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).expect("small");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Connected induced subgraphs of `g` with at most `max_n` vertices, up to
/// isomorphism.
pub fn connected_induced(g: &Graph, max_n: usize) -> HashMap<CanonicalCode, Graph> {
    let mut out = HashMap::new();
    for mask in 1u64..(1 << g.n()) {
        if mask.count_ones() as usize > max_n {
            continue;
        }
        let h = g.induced(mask).expect("in range");
        if h.is_connected() {
            out.entry(canonical_form(&h)).or_insert(h);
        }
    }
    out
}

/// Graph on vertices `a, b, c, ...` from two-letter edge names.
pub fn lettered(edges: &str) -> Graph {
    let pairs: Vec<(usize, usize)> = edges
        .split_whitespace()
        .map(|e| {
            let b = e.as_bytes();
            ((b[0] - b'a') as usize, (b[1] - b'a') as usize)
        })
        .collect();
    let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::from_edges(n, &pairs).expect("valid edge list")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_index_small_cases() {
        assert_eq!(brute_force_m_index(&Graph::complete(4).unwrap()), 1);
        assert_eq!(brute_force_m_index(&Graph::complete(5).unwrap()), 2);
        assert_eq!(brute_force_m_index(&Graph::cycle(7).unwrap()), 0);
    }

    #[test]
    fn closure_counts_connected_graphs() {
        // connected graphs on 1..=5 vertices: 1, 1, 2, 6, 21
        let all = vertex_closure(5, true, &|_| true);
        let mut by_n = [0usize; 6];
        for g in all.values() {
            by_n[g.n()] += 1;
        }
        assert_eq!(by_n, [0, 1, 1, 2, 6, 21]);
        // all graphs on 0..=4 vertices: 1, 1, 2, 4, 11
        let any = vertex_closure(4, false, &|_| true);
        assert_eq!(any.len(), 1 + 1 + 2 + 4 + 11);
    }

    #[test]
    fn lettered_graph() {
        let g = lettered("ab bc ca");
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
    }
}
