//! Bipartite 1-Salem graphs: a hub joined to one colour class subset of each
//! of several connected cyclotomic bipartite graphs.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::canon::{canonical_form, canonical_form_coloured, CanonicalCode};
use crate::classify::{has_salem_spectrum, is_cyclotomic, m_salem_index};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

/// A connected cyclotomic bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BipShape {
    /// `P_n`, `n >= 1`.
    Path(usize),
    /// `D_n`, `n >= 4`: a path on `n - 1` vertices with a leaf added next
    /// to one end.
    D(usize),
    E6,
    E7,
    E8,
    /// The cycle `C_n` (that is, `A~_{n-1}`), `n` even.
    Cycle(usize),
    /// `D~_n` on `n + 1` vertices, `n >= 4`.
    DTilde(usize),
    E6Tilde,
    E7Tilde,
    E8Tilde,
}

fn tree_with_arms(arms: &[usize]) -> Graph {
    let n = 1 + arms.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("tree fits")
}

impl BipShape {
    pub fn order(self) -> usize {
        match self {
            BipShape::Path(n) | BipShape::D(n) | BipShape::Cycle(n) => n,
            BipShape::E6 => 6,
            BipShape::E7 => 7,
            BipShape::E8 => 8,
            BipShape::DTilde(n) => n + 1,
            BipShape::E6Tilde => 7,
            BipShape::E7Tilde => 8,
            BipShape::E8Tilde => 9,
        }
    }

    fn is_valid(self) -> bool {
        match self {
            BipShape::Path(n) => n >= 1,
            BipShape::D(n) | BipShape::DTilde(n) => n >= 4,
            BipShape::Cycle(n) => n >= 4 && n % 2 == 0,
            _ => true,
        }
    }

    pub fn graph(self) -> Result<Graph> {
        if !self.is_valid() {
            return Err(Error::InvalidComponent(format!("no such shape {self}")));
        }
        Ok(match self {
            BipShape::Path(n) => Graph::path(n)?,
            BipShape::D(n) => tree_with_arms(&[1, 1, n - 3]),
            BipShape::E6 => tree_with_arms(&[1, 2, 2]),
            BipShape::E7 => tree_with_arms(&[1, 2, 3]),
            BipShape::E8 => tree_with_arms(&[1, 2, 4]),
            BipShape::Cycle(n) => Graph::cycle(n)?,
            BipShape::DTilde(4) => Graph::star(4)?,
            BipShape::DTilde(n) => {
                let core = n - 3;
                let mut edges: Vec<(usize, usize)> = (1..core).map(|i| (i - 1, i)).collect();
                edges.extend([(0, core), (0, core + 1), (core - 1, core + 2), (core - 1, core + 3)]);
                Graph::from_edges(n + 1, &edges)?
            }
            BipShape::E6Tilde => tree_with_arms(&[2, 2, 2]),
            BipShape::E7Tilde => tree_with_arms(&[1, 3, 3]),
            BipShape::E8Tilde => tree_with_arms(&[1, 2, 5]),
        })
    }

    /// Every shape with at most `max_order` vertices, each isomorphism class
    /// once (`D_n` starts at 4, `D~_n` at 4).
    pub fn all_up_to(max_order: usize) -> Vec<BipShape> {
        let mut out = Vec::new();
        out.extend((1..=max_order).map(BipShape::Path));
        out.extend((4..=max_order).map(BipShape::D));
        out.extend([BipShape::E6, BipShape::E7, BipShape::E8]);
        out.extend((4..=max_order).step_by(2).map(BipShape::Cycle));
        out.extend((4..max_order).map(BipShape::DTilde));
        out.extend([BipShape::E6Tilde, BipShape::E7Tilde, BipShape::E8Tilde]);
        out.retain(|s| s.order() <= max_order);
        out
    }

    #[cfg(test)]
    fn is_maximal(self) -> bool {
        matches!(self, BipShape::Cycle(_) | BipShape::DTilde(_) | BipShape::E6Tilde | BipShape::E7Tilde | BipShape::E8Tilde)
    }
}

impl fmt::Display for BipShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BipShape::Path(1) => write!(f, "K1"),
            BipShape::Path(2) => write!(f, "K2"),
            BipShape::Path(n) => write!(f, "P{n}"),
            BipShape::D(n) => write!(f, "D{n}"),
            BipShape::E6 => write!(f, "E6"),
            BipShape::E7 => write!(f, "E7"),
            BipShape::E8 => write!(f, "E8"),
            BipShape::Cycle(n) => write!(f, "A~{}", n - 1),
            BipShape::DTilde(n) => write!(f, "D~{n}"),
            BipShape::E6Tilde => write!(f, "E~6"),
            BipShape::E7Tilde => write!(f, "E~7"),
            BipShape::E8Tilde => write!(f, "E~8"),
        }
    }
}

/// The maximal connected cyclotomic shape isomorphic to `g`, if any.
pub fn maximal_shape_of(g: &Graph) -> Option<BipShape> {
    let n = g.n();
    let code = canonical_form(g);
    let mut candidates = vec![BipShape::E6Tilde, BipShape::E7Tilde, BipShape::E8Tilde];
    if n >= 4 && n % 2 == 0 {
        candidates.push(BipShape::Cycle(n));
    }
    if n >= 5 {
        candidates.push(BipShape::DTilde(n - 1));
    }
    candidates.into_iter().filter(|s| s.order() == n).find(|s| canonical_form(&s.graph().expect("valid shape")) == code)
}

/// One component `H_i` together with the set `S_i` of its vertices joined to
/// the hub.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BipComponentSpec {
    pub shape: BipShape,
    pub attach: u64,
}

impl BipComponentSpec {
    pub fn validate(&self) -> Result<Graph> {
        let h = self.shape.graph()?;
        let bad = |msg: &str| Error::InvalidComponent(format!("{}: {msg}", self.shape));
        if self.attach == 0 {
            return Err(bad("attach set is empty"));
        }
        if self.attach & !h.all_vertices() != 0 {
            return Err(bad("attach set names a vertex outside the component"));
        }
        let (left, right) = h.bipartition().expect("cyclotomic shapes here are bipartite");
        if self.attach & left != 0 && self.attach & right != 0 {
            return Err(bad("attach set meets both colour classes"));
        }
        Ok(h)
    }
}

/// The hub (vertex 0) joined to `S_i` in each component; components follow
/// in order.
pub fn build_bipartite(components: &[BipComponentSpec]) -> Result<Graph> {
    let mut parts = Vec::with_capacity(components.len());
    for c in components {
        parts.push(c.validate()?);
    }
    let mut g = Graph::empty(1)?;
    let mut hub_nbrs = 0u64;
    for (c, h) in components.iter().zip(&parts) {
        let offset = g.n();
        g = g.disjoint_union(h)?;
        hub_nbrs |= c.attach << offset;
    }
    for v in bits(hub_nbrs) {
        g.add_edge(0, v)?;
    }
    Ok(g)
}

/// Name of the outcome when the built graph is cyclotomic: the maximal shape
/// (`E~6`, `A~7`, `D~5`, ...) or `"cyclotomic"` for a non-maximal one. `None`
/// when the graph is not cyclotomic.
pub fn bipartite_exception_check(components: &[BipComponentSpec]) -> Result<Option<String>> {
    let g = build_bipartite(components)?;
    if !is_cyclotomic(&g) {
        return Ok(None);
    }
    Ok(Some(maximal_shape_of(&g).map_or_else(|| "cyclotomic".to_string(), |s| s.to_string())))
}

/// One row of the table of cyclotomic outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableRow {
    /// Fixed component multiset and result.
    Fixed(&'static [BipShape], BipShape),
    /// `P_n` gives `A~_n`.
    PathToCycle,
    /// `D_n` gives `D~_n`.
    DToDTilde,
    /// `D_{n1}, D_{n2}` give `D~_n`.
    DPair,
    /// `K1, K1, D_{n-2}` give `D~_n`.
    DWithTwoLeaves,
}

use BipShape::*;

pub const TABLE_ONE: &[TableRow] = &[
    TableRow::Fixed(&[E6], E6Tilde),
    TableRow::Fixed(&[Path(7)], E7Tilde),
    TableRow::Fixed(&[E7], E7Tilde),
    TableRow::Fixed(&[Path(8)], E8Tilde),
    TableRow::Fixed(&[D(8)], E8Tilde),
    TableRow::Fixed(&[E8], E8Tilde),
    TableRow::PathToCycle,
    TableRow::DToDTilde,
    TableRow::Fixed(&[Path(1), Path(5)], E6Tilde),
    TableRow::Fixed(&[Path(1), D(6)], E7Tilde),
    TableRow::Fixed(&[Path(2), Path(5)], E7Tilde),
    TableRow::Fixed(&[Path(1), Path(7)], E8Tilde),
    TableRow::Fixed(&[Path(4), Path(4)], E8Tilde),
    TableRow::Fixed(&[Path(3), D(5)], E8Tilde),
    TableRow::Fixed(&[Path(2), E6], E8Tilde),
    TableRow::Fixed(&[Path(1), E7], E8Tilde),
    TableRow::DPair,
    TableRow::Fixed(&[Path(2), Path(2), Path(2)], E6Tilde),
    TableRow::Fixed(&[Path(1), Path(3), Path(3)], E7Tilde),
    TableRow::Fixed(&[Path(1), Path(2), Path(5)], E8Tilde),
    TableRow::DWithTwoLeaves,
    TableRow::Fixed(&[Path(1), Path(1), Path(1), Path(1)], DTilde(4)),
];

/// `D_k` read with `D_3 = P_3`.
fn is_d(s: BipShape) -> bool {
    matches!(s, D(_) | Path(3))
}

impl TableRow {
    /// Whether the sorted component shapes and the result fit this row.
    pub fn matches(&self, shapes: &[BipShape], result: BipShape) -> bool {
        match *self {
            TableRow::Fixed(parts, res) => {
                let mut want = parts.to_vec();
                want.sort();
                want == shapes && res == result
            }
            TableRow::PathToCycle => matches!((shapes, result), ([Path(n)], Cycle(m)) if m == n + 1),
            TableRow::DToDTilde => matches!((shapes, result), ([D(n)], DTilde(m)) if m == *n),
            TableRow::DPair => {
                matches!(result, DTilde(_)) && shapes.len() == 2 && shapes.iter().all(|&s| is_d(s))
            }
            TableRow::DWithTwoLeaves => {
                matches!((shapes, result), ([Path(1), Path(1), d], DTilde(_)) if is_d(*d))
            }
        }
    }
}

/// The component shapes with every valid attach set, one per orbit of the
/// shape's automorphism group.
pub fn component_choices(max_order: usize) -> Vec<BipComponentSpec> {
    let mut out = Vec::new();
    for shape in BipShape::all_up_to(max_order) {
        let h = shape.graph().expect("valid shape");
        let (left, right) = h.bipartition().expect("bipartite");
        let mut seen: HashSet<CanonicalCode> = HashSet::new();
        for side in [left, right] {
            let verts = bits(side);
            for sub in 1u64..(1 << verts.len()) {
                let attach: u64 = bits(sub).into_iter().map(|i| 1u64 << verts[i]).sum();
                let colours: Vec<u32> = (0..h.n()).map(|v| u32::from(attach & (1 << v) != 0)).collect();
                if seen.insert(canonical_form_coloured(&h, &colours)) {
                    out.push(BipComponentSpec { shape, attach });
                }
            }
        }
    }
    out
}

/// Outcome of the exhaustive check over component multisets.
#[derive(Clone, Debug, Default)]
pub struct BipartiteSweep {
    pub graphs: usize,
    pub salem: usize,
    pub cyclotomic: usize,
    /// Built graphs that are neither cyclotomic nor 1-Salem.
    pub failures: Vec<String>,
    /// Maximal cyclotomic outcomes that fit no row of the table.
    pub unmatched: Vec<String>,
    /// Cyclotomic outcomes with five or more components.
    pub large_s_cyclotomic: usize,
    /// Realization count for each row of [`TABLE_ONE`].
    pub row_hits: Vec<usize>,
}

impl BipartiteSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unmatched.is_empty() && self.large_s_cyclotomic == 0 && self.row_hits.iter().all(|&h| h > 0)
    }
}

fn describe(specs: &[BipComponentSpec]) -> String {
    let parts: Vec<String> = specs.iter().map(|c| format!("{}{:?}", c.shape, bits(c.attach))).collect();
    parts.join(" + ")
}

fn multisets(items: &[BipComponentSpec], start: usize, budget: usize, cur: &mut Vec<BipComponentSpec>, out: &mut Vec<Vec<BipComponentSpec>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    for i in start..items.len() {
        let order = items[i].shape.order();
        if order <= budget {
            cur.push(items[i]);
            multisets(items, i, budget - order, cur, out);
            cur.pop();
        }
    }
}

/// Every multiset of components with at most `max_total` vertices in all,
/// excluding the hub.
pub fn component_multisets(max_total: usize) -> Vec<Vec<BipComponentSpec>> {
    let items = component_choices(max_total);
    let mut out = Vec::new();
    multisets(&items, 0, max_total, &mut Vec::new(), &mut out);
    out
}

/// Builds every hub graph over component multisets with at most `max_total`
/// vertices and checks that each is cyclotomic or 1-Salem, and that the
/// cyclotomic ones are the table's.
pub fn bipartite_sweep(max_total: usize) -> BipartiteSweep {
    let all = component_multisets(max_total);
    let partial = all
        .par_iter()
        .fold(
            || BipartiteSweep { row_hits: vec![0; TABLE_ONE.len()], ..Default::default() },
            |mut acc, specs| {
                let g = build_bipartite(specs).expect("choices are valid");
                acc.graphs += 1;
                if is_cyclotomic(&g) {
                    acc.cyclotomic += 1;
                    if specs.len() >= 5 {
                        acc.large_s_cyclotomic += 1;
                    }
                    if let Some(result) = maximal_shape_of(&g) {
                        let mut shapes: Vec<BipShape> = specs.iter().map(|c| c.shape).collect();
                        shapes.sort();
                        let mut hit = false;
                        for (k, row) in TABLE_ONE.iter().enumerate() {
                            if row.matches(&shapes, result) {
                                acc.row_hits[k] += 1;
                                hit = true;
                            }
                        }
                        if !hit {
                            acc.unmatched.push(format!("{} -> {result}", describe(specs)));
                        }
                    }
                } else if g.is_connected() && g.is_bipartite() && has_salem_spectrum(&g) && m_salem_index(&g) == Ok(1) {
                    acc.salem += 1;
                } else {
                    acc.failures.push(describe(specs));
                }
                acc
            },
        )
        .collect::<Vec<_>>();
    let mut total = BipartiteSweep { row_hits: vec![0; TABLE_ONE.len()], ..Default::default() };
    for p in partial {
        total.graphs += p.graphs;
        total.salem += p.salem;
        total.cyclotomic += p.cyclotomic;
        total.large_s_cyclotomic += p.large_s_cyclotomic;
        total.failures.extend(p.failures);
        total.unmatched.extend(p.unmatched);
        for (t, h) in total.row_hits.iter_mut().zip(p.row_hits) {
            *t += h;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::oracle::isomorphic;

    fn spec(shape: BipShape, attach: &[usize]) -> BipComponentSpec {
        BipComponentSpec { shape, attach: attach.iter().map(|&v| 1u64 << v).sum() }
    }

    #[test]
    fn shapes_are_cyclotomic_and_distinct() {
        let shapes = BipShape::all_up_to(10);
        let mut codes = HashSet::new();
        for s in &shapes {
            let g = s.graph().unwrap();
            assert_eq!(g.n(), s.order());
            assert!(g.is_connected() && g.is_bipartite() && is_cyclotomic(&g), "{s}");
            assert!(codes.insert(canonical_form(&g)), "{s} repeats");
            assert_eq!(maximal_shape_of(&g).is_some(), s.is_maximal(), "{s}");
        }
    }

    #[test]
    fn table_examples() {
        // lengthening the short arm of E6
        assert_eq!(bipartite_exception_check(&[spec(E6, &[1])]).unwrap().as_deref(), Some("E~6"));
        assert_eq!(bipartite_exception_check(&[spec(E6, &[5])]).unwrap().as_deref(), Some("cyclotomic"));
        let four = [spec(Path(1), &[0]); 4];
        assert_eq!(bipartite_exception_check(&four).unwrap().as_deref(), Some("D~4"));
        assert!(isomorphic(&build_bipartite(&four).unwrap(), &Graph::star(4).unwrap()));
        assert_eq!(
            bipartite_exception_check(&[spec(Path(1), &[0]), spec(Path(5), &[0, 4])]).unwrap(),
            None
        );
        assert_eq!(
            bipartite_exception_check(&[spec(Path(1), &[0]), spec(Path(5), &[2])]).unwrap().as_deref(),
            Some("E~6")
        );
        assert_eq!(
            bipartite_exception_check(&[spec(Path(4), &[0]), spec(Path(4), &[1])]).unwrap().as_deref(),
            Some("E~8")
        );
        assert_eq!(bipartite_exception_check(&[spec(Path(2), &[0])]).unwrap().as_deref(), Some("cyclotomic"));
        assert_eq!(bipartite_exception_check(&[spec(Path(5), &[0, 4])]).unwrap().as_deref(), Some("A~5"));
    }

    #[test]
    fn five_components_are_never_cyclotomic() {
        let five = [spec(Path(1), &[0]); 5];
        assert_eq!(bipartite_exception_check(&five).unwrap(), None);
        let g = build_bipartite(&five).unwrap();
        assert_eq!(m_salem_index(&g), Ok(1));
    }

    #[test]
    fn invalid_specs() {
        assert!(build_bipartite(&[spec(Path(3), &[0, 1])]).is_err());
        assert!(build_bipartite(&[BipComponentSpec { shape: Path(3), attach: 0 }]).is_err());
        assert!(build_bipartite(&[spec(Path(3), &[3])]).is_err());
        assert!(build_bipartite(&[spec(Cycle(5), &[0])]).is_err());
    }

    #[test]
    fn small_sweep() {
        let sweep = bipartite_sweep(6);
        assert!(sweep.failures.is_empty() && sweep.unmatched.is_empty(), "{sweep:?}");
        assert_eq!(sweep.large_s_cyclotomic, 0);
        assert_eq!(sweep.graphs, sweep.salem + sweep.cyclotomic);
    }
}
