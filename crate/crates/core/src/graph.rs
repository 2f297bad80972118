//! Simple undirected graphs on at most 64 vertices, stored as neighbor bitsets.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph with vertices `0..n`.
///
/// Row `v` of `adj` is the bitset of neighbors of `v`. The relation is kept
/// symmetric with an empty diagonal by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list; duplicate pairs collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from neighbor bitsets, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mask = if n == 64 { u64::MAX } else { bit(n) - 1 };
        for (v, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - r.leading_zeros() as usize, n });
            }
            if r & bit(v) != 0 {
                return Err(Error::SelfLoop(v));
            }
            let mut rest = r;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rows[u] & bit(v) == 0 {
                    return Err(Error::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        let mut g = Self::path(n)?;
        if n >= 3 {
            g.add_edge(n - 1, 0)?;
        }
        Ok(g)
    }

    /// Star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Self::from_edges(k + 1, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut r = self.adj[u] & !((bit(u) << 1).wrapping_sub(1));
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Bitset with all vertices set.
    pub fn all_vertices(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    /// Appends a vertex adjacent to every vertex in `nbrs`, returning its label.
    pub fn add_vertex(&mut self, nbrs: u64) -> Result<usize> {
        let v = self.n;
        if v + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(v + 1));
        }
        if nbrs & !self.all_vertices() != 0 {
            return Err(Error::VertexOutOfRange { vertex: 63 - nbrs.leading_zeros() as usize, n: v });
        }
        self.adj.push(nbrs);
        let mut r = nbrs;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            self.adj[u] |= bit(v);
        }
        self.n += 1;
        Ok(v)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// The subgraph induced on `keep`, relabeled in increasing order of the
    /// original labels.
    pub fn induced(&self, keep: u64) -> Result<Graph> {
        if keep & !self.all_vertices() != 0 {
            return Err(Error::VertexOutOfRange { vertex: 63 - keep.leading_zeros() as usize, n: self.n });
        }
        Ok(self.induced_unchecked(keep))
    }

    pub(crate) fn induced_unchecked(&self, keep: u64) -> Graph {
        let verts = bits(keep);
        let rows = verts
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                for (j, &u) in verts.iter().enumerate() {
                    if self.adj[v] & bit(u) != 0 {
                        row |= bit(j);
                    }
                }
                row
            })
            .collect();
        Graph { n: verts.len(), adj: rows }
    }

    /// Induced subgraph on an explicit vertex list.
    pub fn induced_on(&self, keep: &[usize]) -> Result<Graph> {
        let mut mask = 0u64;
        for &v in keep {
            self.check_vertex(v)?;
            mask |= bit(v);
        }
        self.induced(mask)
    }

    /// The graph with vertex `v` deleted.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        self.induced_unchecked(self.all_vertices() & !bit(v))
    }

    /// Deletes every vertex in `set`.
    pub fn delete_vertices(&self, set: u64) -> Graph {
        self.induced_unchecked(self.all_vertices() & !set)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            let mut r = self.adj[v];
            let mut img = 0u64;
            while r != 0 {
                let u = r.trailing_zeros() as usize;
                r &= r - 1;
                img |= bit(perm[u]);
            }
            rows[perm[v]] = img;
        }
        Graph { n: self.n, adj: rows }
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj: rows })
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen & bit(v) != 0 {
                continue;
            }
            let comp = self.reach(v, self.all_vertices());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[u];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// True iff the graph has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach(0, self.all_vertices()) == self.all_vertices()
    }

    /// A 2-colouring `(side_a, side_b)` if the graph is bipartite. The least
    /// vertex of each component is placed in `side_a`.
    pub fn bipartition(&self) -> Option<(u64, u64)> {
        let mut side_a = 0u64;
        let mut side_b = 0u64;
        for comp in self.components() {
            let root = comp.trailing_zeros() as usize;
            let mut layer = bit(root);
            let mut seen = layer;
            let mut parity = false;
            while layer != 0 {
                if parity {
                    side_b |= layer;
                } else {
                    side_a |= layer;
                }
                let mut next = 0u64;
                let mut f = layer;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[u];
                }
                next &= !seen;
                seen |= next;
                layer = next;
                parity = !parity;
            }
        }
        for v in 0..self.n {
            let same = if side_a & bit(v) != 0 { side_a } else { side_b };
            if self.adj[v] & same != 0 {
                return None;
            }
        }
        Some((side_a, side_b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True iff the vertices in `set` are pairwise adjacent.
    pub fn is_clique(&self, set: u64) -> bool {
        let mut r = set;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            if self.adj[v] & set != set & !bit(v) {
                return false;
            }
        }
        true
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().iter().any(|&(u, v)| self.adj[u] & self.adj[v] != 0)
    }

    /// Adjacency matrix as `i64` rows.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| i64::from(self.has_edge(u, v))).collect())
            .collect()
    }

    /// Bit string of the upper triangle in graph6 column order, used as a
    /// compact labeled key for graphs with at most 11 vertices.
    pub fn labeled_key(&self) -> u64 {
        debug_assert!(self.n <= 11);
        let mut key = 0u64;
        let mut pos = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.adj[i] & bit(j) != 0 {
                    key |= 1 << pos;
                }
                pos += 1;
            }
        }
        key | ((self.n as u64) << 56)
    }
}

/// Vertex labels present in a bitset, ascending.
pub fn bits(mut set: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.count_ones() as usize);
    while set != 0 {
        out.push(set.trailing_zeros() as usize);
        set &= set - 1;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
