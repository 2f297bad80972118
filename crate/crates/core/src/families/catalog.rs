//! The embedded catalog of the 25 infinite families and 6 sporadic graphs,
//! its parser, and the constructors built on it.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;

const CATALOG_TEXT: &str = include_str!("../../data/families.txt");
const FORMAT_VERSION: u32 = 1;

/// A path parameter: `length` edges, optionally ending in a hat (two extra
/// leaves on the far endpoint).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathSpec {
    pub length: usize,
    pub hatted: bool,
}

impl PathSpec {
    pub fn plain(length: usize) -> Self {
        PathSpec { length, hatted: false }
    }

    pub fn hat(length: usize) -> Self {
        PathSpec { length, hatted: true }
    }
}

impl fmt::Display for PathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.length, if self.hatted { "^" } else { "" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    /// Path hanging from `at`; `hat_min` is the lower bound for hatted
    /// paths, absent when the slot cannot carry a hat.
    Pendant { at: usize, hat_min: Option<usize> },
    /// Path joining `from` and `to`.
    Internal { from: usize, to: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    pub kind: SlotKind,
    pub min: usize,
}

impl Slot {
    fn lower_bound(&self, hatted: bool) -> Option<usize> {
        match (self.kind, hatted) {
            (_, false) => Some(self.min),
            (SlotKind::Pendant { hat_min, .. }, true) => hat_min,
            (SlotKind::Internal { .. }, true) => None,
        }
    }

    fn hat_allowed(&self) -> bool {
        matches!(self.kind, SlotKind::Pendant { hat_min: Some(_), .. })
    }

    /// Vertices this slot adds beyond the template.
    fn added_vertices(&self, p: PathSpec) -> usize {
        match self.kind {
            SlotKind::Pendant { .. } => p.length + if p.hatted { 2 } else { 0 },
            SlotKind::Internal { .. } => p.length.saturating_sub(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: String,
    pub vertex_names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub slots: Vec<Slot>,
}

impl FamilySpec {
    pub fn is_sporadic(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn check(&self, params: &[PathSpec]) -> Result<()> {
        let bounds = |reason: String| Error::ParameterBounds { family: self.id.clone(), reason };
        if params.len() != self.slots.len() {
            return Err(bounds(format!("expected {} parameters, got {}", self.slots.len(), params.len())));
        }
        for (slot, p) in self.slots.iter().zip(params) {
            match slot.lower_bound(p.hatted) {
                None => return Err(bounds(format!("{} cannot carry a hat", slot.name))),
                Some(lo) if p.length < lo => {
                    let hat = if p.hatted { " when hatted" } else { "" };
                    return Err(bounds(format!("{} must be at least {lo}{hat}", slot.name)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Vertex count of an instance, without bound checks.
    pub fn order(&self, params: &[PathSpec]) -> usize {
        self.vertex_names.len() + self.slots.iter().zip(params).map(|(s, &p)| s.added_vertices(p)).sum::<usize>()
    }

    pub fn build(&self, params: &[PathSpec]) -> Result<Graph> {
        self.check(params)?;
        let mut g = Graph::from_edges(self.vertex_names.len(), &self.edges)?;
        for (slot, &p) in self.slots.iter().zip(params) {
            match slot.kind {
                SlotKind::Pendant { at, .. } => {
                    let mut end = at;
                    for _ in 0..p.length {
                        end = g.add_vertex(1 << end)?;
                    }
                    if p.hatted {
                        g.add_vertex(1 << end)?;
                        g.add_vertex(1 << end)?;
                    }
                }
                SlotKind::Internal { from, to } => {
                    let mut end = from;
                    for _ in 1..p.length {
                        end = g.add_vertex(1 << end)?;
                    }
                    g.add_edge(end, to)?;
                }
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub families: Vec<FamilySpec>,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Result<&FamilySpec> {
        self.families.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.to_string()))
    }
}

fn catalog_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::Catalog(format!("line {line}: {msg}"))
}

/// Parses catalog text, verifying the trailing checksum line.
pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let body_end = text.trim_end_matches('\n').rfind('\n').map_or(0, |i| i + 1);
    let (body, last) = text.split_at(body_end);
    let stated = last.trim().strip_prefix("sha256 ").ok_or_else(|| Error::Catalog("missing checksum line".into()))?;
    let actual: String = Sha256::digest(body.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    if stated != actual {
        return Err(Error::Catalog(format!("checksum mismatch: file says {stated}, contents hash to {actual}")));
    }

    let mut families = Vec::new();
    let mut current: Option<FamilySpec> = None;
    let mut version = None;
    for (idx, raw) in body.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or_default();
        let args: Vec<&str> = words.collect();
        if head == "format" {
            version = args.first().and_then(|v| v.parse::<u32>().ok());
            continue;
        }
        if head == "family" {
            if current.is_some() {
                return Err(catalog_err(line_no, "family opened before the previous one ended"));
            }
            let [id] = args[..] else { return Err(catalog_err(line_no, "family takes one id")) };
            current = Some(FamilySpec { id: id.to_string(), vertex_names: vec![], edges: vec![], slots: vec![] });
            continue;
        }
        let fam = current.as_mut().ok_or_else(|| catalog_err(line_no, format!("`{head}` outside a family")))?;
        let vertex = |name: &str| {
            fam.vertex_names.iter().position(|v| v == name).ok_or_else(|| catalog_err(line_no, format!("unknown vertex `{name}`")))
        };
        match head {
            "vertices" => fam.vertex_names = args.iter().map(|s| s.to_string()).collect(),
            "edges" => {
                let mut edges = Vec::new();
                for e in &args {
                    let (u, v) = e.split_once('-').ok_or_else(|| catalog_err(line_no, format!("bad edge `{e}`")))?;
                    edges.push((vertex(u)?, vertex(v)?));
                }
                fam.edges = edges;
            }
            "pendant" | "internal" => {
                let (name, opts) = args.split_first().ok_or_else(|| catalog_err(line_no, "slot needs a name"))?;
                let mut at = None;
                let mut from = None;
                let mut to = None;
                let mut min = None;
                let mut hat_min = None;
                for opt in opts {
                    let (key, value) = opt.split_once('=').ok_or_else(|| catalog_err(line_no, format!("bad option `{opt}`")))?;
                    let number = || value.parse::<usize>().map_err(|_| catalog_err(line_no, format!("bad number `{value}`")));
                    match key {
                        "at" => at = Some(vertex(value)?),
                        "from" => from = Some(vertex(value)?),
                        "to" => to = Some(vertex(value)?),
                        "min" => min = Some(number()?),
                        "hat-min" => hat_min = Some(number()?),
                        _ => return Err(catalog_err(line_no, format!("unknown option `{key}`"))),
                    }
                }
                let min = min.ok_or_else(|| catalog_err(line_no, "slot needs min"))?;
                let kind = if head == "pendant" {
                    SlotKind::Pendant { at: at.ok_or_else(|| catalog_err(line_no, "pendant needs at"))?, hat_min }
                } else {
                    let (Some(from), Some(to)) = (from, to) else {
                        return Err(catalog_err(line_no, "internal needs from and to"));
                    };
                    if min == 0 || from == to {
                        return Err(catalog_err(line_no, "internal paths join distinct vertices with at least one edge"));
                    }
                    SlotKind::Internal { from, to }
                };
                fam.slots.push(Slot { name: name.to_string(), kind, min });
            }
            "end" => families.push(current.take().expect("checked above")),
            _ => return Err(catalog_err(line_no, format!("unknown directive `{head}`"))),
        }
    }
    if current.is_some() {
        return Err(Error::Catalog("last family is not closed".into()));
    }
    if version != Some(FORMAT_VERSION) {
        return Err(Error::Catalog(format!("unsupported format version {version:?}")));
    }
    Ok(Catalog { families })
}

/// The embedded catalog.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(CATALOG_TEXT).expect("embedded catalog is valid"))
}

/// One member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyInstance {
    pub family: String,
    pub params: Vec<PathSpec>,
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.family, params.join(","))
    }
}

pub fn build_family(inst: &FamilyInstance) -> Result<Graph> {
    catalog().get(&inst.family)?.build(&inst.params)
}

/// Every hat pattern (bitmask over the slots) the family admits.
fn hat_patterns(fam: &FamilySpec) -> Vec<u32> {
    let hatable: u32 = fam.slots.iter().enumerate().filter(|(_, s)| s.hat_allowed()).map(|(i, _)| 1 << i).sum();
    (0..1u32 << fam.slots.len()).filter(|m| m & !hatable == 0).collect()
}

fn instances_of(fam: &FamilySpec, max_vertices: usize, out: &mut Vec<FamilyInstance>) {
    for pattern in hat_patterns(fam) {
        let mut params = Vec::with_capacity(fam.slots.len());
        fill(fam, pattern, max_vertices, &mut params, out);
    }
}

fn fill(fam: &FamilySpec, pattern: u32, max_vertices: usize, params: &mut Vec<PathSpec>, out: &mut Vec<FamilyInstance>) {
    let i = params.len();
    if i == fam.slots.len() {
        out.push(FamilyInstance { family: fam.id.clone(), params: params.clone() });
        return;
    }
    let hatted = pattern & (1 << i) != 0;
    let slot = &fam.slots[i];
    let lo = slot.lower_bound(hatted).expect("pattern only hats hat-able slots");
    // the remaining slots at their minimum
    let rest: usize = fam.slots[i + 1..]
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let h = pattern & (1 << (i + 1 + j)) != 0;
            s.added_vertices(PathSpec { length: s.lower_bound(h).expect("hat-able"), hatted: h })
        })
        .sum();
    let mut length = lo;
    loop {
        params.push(PathSpec { length, hatted });
        let used = fam.vertex_names.len() + rest + (0..=i).map(|j| fam.slots[j].added_vertices(params[j])).sum::<usize>();
        if used > max_vertices {
            params.pop();
            return;
        }
        fill(fam, pattern, max_vertices, params, out);
        params.pop();
        length += 1;
    }
}

/// Every instance of every family with at most `max_vertices` vertices,
/// one per isomorphism class within each family.
pub fn enumerate_family_instances(max_vertices: usize) -> Vec<(FamilyInstance, Graph)> {
    catalog().families.iter().flat_map(|fam| enumerate_one(fam, max_vertices)).collect()
}

/// Instances of one family, one per isomorphism class.
pub fn enumerate_one(fam: &FamilySpec, max_vertices: usize) -> Vec<(FamilyInstance, Graph)> {
    let mut insts = Vec::new();
    instances_of(fam, max_vertices, &mut insts);
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut out = Vec::new();
    for inst in insts {
        let g = fam.build(&inst.params).expect("enumerated parameters are in bounds");
        if seen.insert(canonical_form(&g)) {
            out.push((inst, g));
        }
    }
    out
}

/// Number of non-isomorphic hat variants of each infinite family.
///
/// Two hat patterns are the same variant when they give isomorphic graphs
/// once every parameter takes the same large value; a symmetry of the
/// template that swaps slots then shows up as an isomorphism.
pub fn hat_variant_counts() -> Vec<(String, usize)> {
    const LENGTH: usize = 5;
    catalog()
        .families
        .iter()
        .filter(|f| !f.is_sporadic())
        .map(|fam| {
            let codes: HashSet<CanonicalCode> = hat_patterns(fam)
                .into_iter()
                .map(|pattern| {
                    let params: Vec<PathSpec> = (0..fam.slots.len())
                        .map(|i| PathSpec { length: LENGTH, hatted: pattern & (1 << i) != 0 })
                        .collect();
                    canonical_form(&fam.build(&params).expect("length exceeds every bound"))
                })
                .collect();
            (fam.id.clone(), codes.len())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_catalog_parses() {
        let cat = catalog();
        assert_eq!(cat.families.len(), 31);
        assert_eq!(cat.families.iter().filter(|f| f.is_sporadic()).count(), 6);
        let g1 = cat.get("G1").unwrap();
        assert_eq!(g1.slots[0].min, 1);
        assert_eq!(g1.slots[0].kind, SlotKind::Pendant { at: 0, hat_min: Some(0) });
    }

    #[test]
    fn tampered_catalog_is_rejected() {
        let tampered = CATALOG_TEXT.replacen("edges a-b b-c c-a", "edges a-b b-c", 1);
        assert!(matches!(parse_catalog(&tampered), Err(Error::Catalog(_))));
    }

    #[test]
    fn bounds_are_enforced() {
        let inst = |family: &str, params: Vec<PathSpec>| FamilyInstance { family: family.into(), params };
        let p = PathSpec::plain;
        assert!(build_family(&inst("G1", vec![p(0), p(0), p(0)])).is_err());
        assert!(build_family(&inst("G1", vec![PathSpec::hat(0), p(0), p(0)])).is_ok());
        assert!(build_family(&inst("G2", vec![p(0), p(1)])).is_err());
        assert!(build_family(&inst("G7", vec![p(2), p(1)])).is_err());
        assert!(build_family(&inst("G5", vec![p(1), p(1)])).is_ok());
        assert!(build_family(&inst("G2", vec![p(0), PathSpec::hat(3)])).is_err());
        assert!(build_family(&inst("G26", vec![])).is_ok());
        assert!(build_family(&inst("G26", vec![p(1)])).is_err());
        assert!(matches!(build_family(&inst("G32", vec![])), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn hat_convention() {
        // G10(1,1) and G10(1,1^)
        let plain = build_family(&FamilyInstance { family: "G10".into(), params: vec![PathSpec::plain(1); 2] }).unwrap();
        let hatted =
            build_family(&FamilyInstance { family: "G10".into(), params: vec![PathSpec::plain(1), PathSpec::hat(1)] })
                .unwrap();
        assert_eq!(plain.n(), 6);
        assert_eq!(hatted.n(), 8);
        assert_eq!(hatted.edge_count(), plain.edge_count() + 2);
        assert_eq!((0..8).filter(|&v| hatted.degree(v) == 1).count(), 3);
    }

    #[test]
    fn internal_paths_count_edges() {
        let inst = FamilyInstance { family: "G11".into(), params: vec![PathSpec::plain(2)] };
        let g = build_family(&inst).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 7));
        let g = build_family(&FamilyInstance { family: "G5".into(), params: vec![PathSpec::plain(1); 2] }).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 8));
    }

    #[test]
    fn enumeration_respects_order_and_is_unique() {
        let all = enumerate_family_instances(9);
        assert!(all.iter().all(|(_, g)| g.n() <= 9 && g.is_connected()));
        let mut per_family: HashSet<(String, CanonicalCode)> = HashSet::new();
        for (inst, g) in &all {
            assert_eq!(g, &build_family(inst).unwrap());
            assert!(per_family.insert((inst.family.clone(), canonical_form(g))));
        }
    }

    #[test]
    fn sixty_hat_variants() {
        let counts = hat_variant_counts();
        assert_eq!(counts.len(), 25);
        assert_eq!(counts.iter().map(|(_, c)| c).sum::<usize>(), 60);
    }
}
