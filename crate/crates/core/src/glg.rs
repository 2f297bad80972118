//! Generalized cocktail party graphs, generalized line graphs, and their
//! recognition through partitions of the edge set into GCP blocks.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// `K_n` with the matching `{0,1}, {2,3}, ...` of size `m` removed.
pub fn gcp(n: usize, m: usize) -> Result<Graph> {
    if m > n / 2 {
        return Err(Error::InvalidGcp { n, m });
    }
    let mut g = Graph::complete(n)?;
    for i in 0..m {
        g.remove_edge(2 * i, 2 * i + 1)?;
    }
    Ok(g)
}

/// Line graph of the multigraph obtained from `root` by adding `a[i]`
/// pendant 2-cycles at vertex `i`. Vertices are the original edges in
/// [`Graph::edges`] order followed by the petal edges, vertex by vertex.
/// Two vertices are adjacent when the edges share exactly one endpoint.
pub fn generalized_line_graph(root: &Graph, a: &[usize]) -> Result<Graph> {
    if a.len() != root.n() {
        return Err(Error::LengthMismatch { vertices: root.n(), given: a.len() });
    }
    // endpoints as (low, high); petal far ends get fresh labels past n
    let mut ends: Vec<(usize, usize)> = root.edges();
    let mut fresh = root.n();
    for (v, &count) in a.iter().enumerate() {
        for _ in 0..count {
            ends.push((v, fresh));
            ends.push((v, fresh));
            fresh += 1;
        }
    }
    let mut g = Graph::empty(ends.len())?;
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let (a0, a1) = ends[i];
            let (b0, b1) = ends[j];
            let shared = usize::from(a0 == b0 || a0 == b1) + usize::from(a1 == b0 || a1 == b1);
            if shared == 1 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// One GCP block: a vertex set whose induced subgraph is a complete graph
/// minus a matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GcpBlock {
    pub vertices: u64,
    /// Non-adjacent pairs inside the block.
    pub removed: Vec<(usize, usize)>,
}

impl GcpBlock {
    pub(crate) fn of(g: &Graph, vertices: u64) -> GcpBlock {
        let mut removed = Vec::new();
        for u in bits(vertices) {
            for v in bits(vertices & !g.neighbors(u)) {
                if u < v {
                    removed.push((u, v));
                }
            }
        }
        GcpBlock { vertices, removed }
    }

    /// `(n, m)` with the block isomorphic to `GCP(n, m)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.vertices.count_ones() as usize, self.removed.len())
    }

    /// Vertices of degree `n - 1` within the block.
    pub fn maximal(&self) -> u64 {
        self.removed.iter().fold(self.vertices, |acc, &(u, v)| acc & !(1 << u) & !(1 << v))
    }
}

/// Edge partition of a graph into GCP blocks satisfying the conditions of
/// the generalized line graph characterization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GcpPartition {
    pub blocks: Vec<GcpBlock>,
}

impl GcpPartition {
    /// Checks every condition against `g` from scratch.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut covered = vec![0u64; g.n()];
        for b in &self.blocks {
            if b.vertices & !g.all_vertices() != 0 || b.vertices.count_ones() < 2 {
                return false;
            }
            // a complete graph minus a matching, with at least one edge
            let mut edges = 0;
            for u in bits(b.vertices) {
                let missing = (b.vertices & !g.neighbors(u) & !(1 << u)).count_ones();
                if missing > 1 {
                    return false;
                }
                let inside = g.neighbors(u) & b.vertices;
                if covered[u] & inside != 0 {
                    return false;
                }
                covered[u] |= inside;
                edges += inside.count_ones();
            }
            if edges == 0 || GcpBlock::of(g, b.vertices) != *b {
                return false;
            }
        }
        if (0..g.n()).any(|u| covered[u] != g.neighbors(u)) {
            return false;
        }
        for (i, x) in self.blocks.iter().enumerate() {
            for y in &self.blocks[i + 1..] {
                let common = x.vertices & y.vertices;
                if common.count_ones() > 1 || common & !(x.maximal() & y.maximal()) != 0 {
                    return false;
                }
            }
        }
        (0..g.n()).all(|v| self.blocks.iter().filter(|b| b.vertices >> v & 1 == 1).count() <= 2)
    }
}

struct Search<'a> {
    g: &'a Graph,
    cliques_only: bool,
    find_all: bool,
    covered: Vec<u64>,
    count: Vec<u8>,
    /// Vertices already in a block where they are not of maximal degree.
    nonmax: u64,
    blocks: Vec<GcpBlock>,
    found: Vec<GcpPartition>,
}

impl Search<'_> {
    fn first_uncovered(&self) -> Option<(usize, usize)> {
        (0..self.g.n()).find_map(|u| {
            let open = self.g.neighbors(u) & !self.covered[u] & !((1u64 << (u + 1)) - 1);
            (open != 0).then(|| (u, open.trailing_zeros() as usize))
        })
    }

    fn run(&mut self) -> bool {
        let Some((u, v)) = self.first_uncovered() else {
            self.found.push(GcpPartition { blocks: self.blocks.clone() });
            return !self.find_all;
        };
        let g = self.g;
        let base = (1u64 << u) | (1u64 << v);
        // any further vertex is adjacent to u or v and joined by uncovered
        // edges to its block neighbours
        let pool = (g.neighbors(u) | g.neighbors(v)) & !base;
        let pool_bits = bits(pool);
        self.extend(base, &pool_bits, 0)
    }

    /// Chooses, for each pool vertex from `idx` on, whether to join the block.
    fn extend(&mut self, block: u64, pool: &[usize], idx: usize) -> bool {
        if idx == pool.len() {
            return self.try_block(block);
        }
        let w = pool[idx];
        if self.compatible(block, w) && self.extend(block | (1 << w), pool, idx + 1) {
            return true;
        }
        self.extend(block, pool, idx + 1)
    }

    fn compatible(&self, block: u64, w: usize) -> bool {
        let g = self.g;
        let nbrs = g.neighbors(w) & block;
        let missing = block & !nbrs;
        if missing.count_ones() > usize::from(!self.cliques_only) as u32 {
            return false;
        }
        if self.covered[w] & nbrs != 0 {
            return false;
        }
        // the non-neighbour must not already miss another block vertex
        if let Some(x) = bits(missing).first().copied() {
            if (block & !g.neighbors(x) & !(1 << x)) != 0 {
                return false;
            }
        }
        true
    }

    fn try_block(&mut self, block: u64) -> bool {
        let b = GcpBlock::of(self.g, block);
        let maximal = b.maximal();
        for x in bits(block) {
            if self.count[x] >= 2 {
                return false;
            }
            if self.count[x] == 1 && (maximal >> x & 1 == 0 || self.nonmax >> x & 1 == 1) {
                return false;
            }
        }
        if self.blocks.iter().any(|o| (o.vertices & block).count_ones() > 1) {
            return false;
        }
        let saved_nonmax = self.nonmax;
        for x in bits(block) {
            self.count[x] += 1;
            self.covered[x] |= self.g.neighbors(x) & block;
        }
        self.nonmax |= block & !maximal;
        self.blocks.push(b);
        let done = self.run();
        self.blocks.pop();
        self.nonmax = saved_nonmax;
        for x in bits(block) {
            self.count[x] -= 1;
            self.covered[x] &= !(self.g.neighbors(x) & block);
        }
        done
    }
}

fn search(g: &Graph, cliques_only: bool, find_all: bool) -> Result<Vec<GcpPartition>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut s = Search {
        g,
        cliques_only,
        find_all,
        covered: vec![0; g.n()],
        count: vec![0; g.n()],
        nonmax: 0,
        blocks: Vec::new(),
        found: Vec::new(),
    };
    s.run();
    Ok(s.found)
}

/// A GCP partition of `g` if `g` is a generalized line graph.
pub fn recognize_glg(g: &Graph) -> Result<Option<GcpPartition>> {
    Ok(search(g, false, false)?.into_iter().next())
}

/// Every GCP partition of `g`.
pub fn recognize_glg_all(g: &Graph) -> Result<Vec<GcpPartition>> {
    search(g, false, true)
}

/// Whether `g` is a line graph: its edges split into cliques with every
/// vertex in at most two of them.
pub fn is_line_graph(g: &Graph) -> Result<bool> {
    Ok(!search(g, true, false)?.is_empty())
}
