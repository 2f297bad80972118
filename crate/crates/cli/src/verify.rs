//! The end-to-end verification suite: each check recomputes a published
//! number or property and compares it with an independent computation.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use salem_core::canon::{canonical_form, CanonicalCode};
use salem_core::classify::{cyclotomic_structural_oracle, has_salem_spectrum, is_cyclotomic, m_salem_index};
use salem_core::e8::{
    enumerate_hereditary, isometry_set, one_salem_census_with, reflections, survivor_filter, census_predicate, Census,
    CensusConfig, Extras, E8, ROOT_COUNT,
};
use salem_core::families::bipartite::{bipartite_sweep, BipShape};
use salem_core::families::{enumerate_family_instances, grow_ma_report, hat_variant_counts, minimal_graphs};
use salem_core::glg::recognize_glg;
use salem_core::spectra::sturm::{decimal, parse_rational};
use salem_core::spectra::{char_poly, count_roots_above, largest_root_enclosure, IntPoly};
use salem_core::Graph;

use crate::oracles;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Reduced bounds; finishes in a few minutes.
    Quick,
    Full,
}

impl std::str::FromStr for Scope {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Scope::Quick),
            "full" => Ok(Scope::Full),
            _ => Err(format!("unknown scope {s:?}; expected quick or full")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub id: u8,
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: expected {}; actual {}", self.id, self.name, self.expected, self.actual)
    }
}

fn histogram_string(h: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(","))
}

fn census_up_to(max_vertices: usize, extras: Extras) -> Census {
    let config = CensusConfig { max_vertices, extras, ..CensusConfig::default() };
    one_salem_census_with(&config, None, &|_, _| {})
}

pub fn check_census(scope: Scope) -> CheckLine {
    let quick_start = Instant::now();
    let quick = census_up_to(8, Extras::Default);
    let quick_time = quick_start.elapsed();
    let quick_hist = histogram_string(&quick.histogram());
    let quick_ok = quick_hist == "{6:10,7:43,8:111}" && quick_time < Duration::from_secs(600);
    let (expected, actual, passed) = match scope {
        Scope::Quick => (
            "{6:10,7:43,8:111} within 600 s".to_owned(),
            format!("{quick_hist} in {:.1} s", quick_time.as_secs_f64()),
            quick_ok,
        ),
        Scope::Full => {
            let full = census_up_to(usize::MAX, Extras::Default);
            let hist = histogram_string(&full.histogram());
            (
                "total 377 {6:10,7:43,8:111,9:153,10:58,11:2}; capped at 8: {6:10,7:43,8:111} within 600 s".to_owned(),
                format!("total {} {hist}; capped at 8: {quick_hist} in {:.1} s", full.total(), quick_time.as_secs_f64()),
                full.total() == 377 && hist == "{6:10,7:43,8:111,9:153,10:58,11:2}" && quick_ok,
            )
        }
    };
    CheckLine { id: 1, name: "E8 census", expected, actual, passed }
}

/// The two 11-vertex survivors, transcribed from their drawings.
pub fn eleven_vertex_drawings() -> [Graph; 2] {
    [
        oracles::lettered("ab ac bd cd ce de ef eg fh gi hi hj ik"),
        oracles::lettered("ab ac bd cd ce de ej ef eg ek jf fg gk fh gi"),
    ]
}

pub fn check_eleven_vertex_survivors() -> CheckLine {
    let census = census_up_to(11, Extras::Default);
    let found: HashSet<CanonicalCode> =
        census.survivors.iter().filter(|(_, g)| g.n() == 11).map(|(c, _)| c.clone()).collect();
    let drawn: HashSet<CanonicalCode> = eleven_vertex_drawings().iter().map(canonical_form).collect();
    let matched = found.intersection(&drawn).count();
    CheckLine {
        id: 2,
        name: "11-vertex survivors match the drawings",
        expected: "2 survivors, both drawings matched".into(),
        actual: format!("{} survivors, {matched} drawings matched", found.len()),
        passed: found.len() == 2 && found == drawn,
    }
}

pub fn check_grow_ma() -> CheckLine {
    let report = grow_ma_report();
    let codes = report.codes();
    let cores: HashSet<CanonicalCode> = minimal_graphs().iter().map(canonical_form).collect();
    let grown = codes.difference(&cores).count();
    let closure = oracles::ma_closure(&minimal_graphs());
    let closure_codes: HashSet<CanonicalCode> = closure.keys().cloned().collect();
    let closure_max = closure.values().map(Graph::n).max().unwrap_or(0);
    CheckLine {
        id: 3,
        name: "M∪A growth",
        expected: "224 classes, largest order 11".into(),
        actual: format!(
            "{} classes ({grown} besides the 3 minimal graphs), largest order {}; independent closure {} classes, largest order {}, sets {}",
            codes.len(),
            report.max_order(),
            closure_codes.len(),
            closure_max,
            if closure_codes == codes { "equal" } else { "differ" },
        ),
        passed: (codes.len() == 224 || grown == 224) && report.max_order() == 11,
    }
}

pub fn check_family_soundness(scope: Scope) -> CheckLine {
    let bound = if scope == Scope::Full { 16 } else { 12 };
    let start = Instant::now();
    let instances = enumerate_family_instances(bound);
    let mut bad = Vec::new();
    for (inst, g) in &instances {
        let ok = g.is_connected()
            && !g.is_bipartite()
            && recognize_glg(g).expect("connected").is_some()
            && has_salem_spectrum(g)
            && m_salem_index(g) == Ok(1);
        if !ok {
            bad.push(inst.to_string());
        }
    }
    let variants: usize = hat_variant_counts().iter().map(|(_, c)| c).sum();
    let elapsed = start.elapsed();
    CheckLine {
        id: 4,
        name: "family soundness",
        expected: format!("60 hat variants; every instance with <= {bound} vertices connected, non-bipartite, GLG, Salem, m = 1, within 1800 s"),
        actual: format!(
            "{variants} hat variants; {} instances, {} failing{} in {:.1} s",
            instances.len(),
            bad.len(),
            if bad.is_empty() { String::new() } else { format!(" ({})", bad.iter().take(5).cloned().collect::<Vec<_>>().join(", ")) },
            elapsed.as_secs_f64()
        ),
        passed: variants == 60 && bad.is_empty() && elapsed < Duration::from_secs(1800),
    }
}

pub fn check_family_completeness(scope: Scope) -> CheckLine {
    let bound = if scope == Scope::Full { 10 } else { 8 };
    let corpus: HashSet<CanonicalCode> = enumerate_family_instances(bound).iter().map(|(_, g)| canonical_form(g)).collect();
    let independent = oracles::glg_one_salem_closure(bound);
    let missing = independent.difference(&corpus).count();
    let extra = corpus.difference(&independent).count();
    CheckLine {
        id: 5,
        name: "family completeness",
        expected: format!("family corpus <= {bound} equals the independent closure"),
        actual: format!("corpus {}, closure {}, missing from corpus {missing}, not in closure {extra}", corpus.len(), independent.len()),
        passed: missing == 0 && extra == 0,
    }
}

pub fn check_bipartite(scope: Scope) -> CheckLine {
    let bound = if scope == Scope::Full { 10 } else { 8 };
    let sweep = bipartite_sweep(bound);
    let rows_hit = sweep.row_hits.iter().filter(|&&h| h > 0).count();
    CheckLine {
        id: 6,
        name: "bipartite construction",
        expected: format!(
            "total <= {bound}: every graph cyclotomic or 1-Salem, cyclotomic cases exactly the table ({} rows), none with s >= 5",
            sweep.row_hits.len()
        ),
        actual: format!(
            "{} graphs: {} 1-Salem, {} cyclotomic, {} neither, {} unmatched, {} with s >= 5, {rows_hit} rows realized",
            sweep.graphs,
            sweep.salem,
            sweep.cyclotomic,
            sweep.failures.len(),
            sweep.unmatched.len(),
            sweep.large_s_cyclotomic
        ),
        passed: sweep.passed(),
    }
}

/// Connected induced subgraphs with at most 8 vertices of the maximal
/// connected cyclotomic graphs on up to 9 vertices.
fn maximal_cyclotomic_pieces() -> Vec<Graph> {
    let mut hosts: Vec<Graph> = (3..=9).map(|n| Graph::cycle(n).expect("small")).collect();
    for shape in [
        BipShape::DTilde(4),
        BipShape::DTilde(5),
        BipShape::DTilde(6),
        BipShape::DTilde(7),
        BipShape::DTilde(8),
        BipShape::E6Tilde,
        BipShape::E7Tilde,
        BipShape::E8Tilde,
    ] {
        hosts.push(shape.graph().expect("valid shape"));
    }
    let mut pieces = std::collections::HashMap::new();
    for h in &hosts {
        pieces.extend(oracles::connected_induced(h, 8));
    }
    pieces.into_values().collect()
}

pub const LEHMER: [i64; 11] = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];

pub fn check_spectral_kernel() -> CheckLine {
    let mut rng = StdRng::seed_from_u64(0x5a1e);
    let mut graphs = maximal_cyclotomic_pieces();
    let structured = graphs.len();
    for _ in 0..5000 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.0..0.6);
        graphs.push(oracles::random_connected(&mut rng, n, p));
    }
    let disagreements = graphs
        .iter()
        .filter(|g| is_cyclotomic(g) != cyclotomic_structural_oracle(g).expect("connected"))
        .count();

    let mut interlacing_failures = 0;
    for _ in 0..5000 {
        let n = rng.gen_range(2..=9);
        let p = rng.gen_range(0.1..0.9);
        let g = oracles::random_graph(&mut rng, n, p);
        let v = rng.gen_range(0..n);
        let q = parse_rational(["-2", "0", "2"][rng.gen_range(0..3)]).expect("literal");
        let a = count_roots_above(&char_poly(&g), &q).expect("nonzero");
        let b = count_roots_above(&char_poly(&g.delete_vertex(v)), &q).expect("nonzero");
        if !(b <= a && a <= b + 1) {
            interlacing_failures += 1;
        }
    }

    let tol = parse_rational("1/1000000").expect("literal");
    let enc = largest_root_enclosure(&IntPoly::from_i64(&LEHMER), &tol).expect("real root");
    let inside = parse_rational("1.17628").expect("literal");
    let outside = parse_rational("1.17629").expect("literal");
    let lehmer_ok = enc.lo >= inside && enc.hi < outside && !enc.contains(&outside);

    CheckLine {
        id: 7,
        name: "spectral kernel",
        expected: "0 cyclotomic disagreements; 0 interlacing failures in 5000; Lehmer enclosure within [1.17628, 1.17629)".into(),
        actual: format!(
            "{disagreements} disagreements over {} graphs ({structured} structured); {interlacing_failures} interlacing failures; Lehmer enclosure [{}, {}]",
            graphs.len(),
            decimal(&enc.lo, 9),
            decimal(&enc.hi, 9)
        ),
        passed: disagreements == 0 && interlacing_failures == 0 && lehmer_ok,
    }
}

pub fn check_e8_structure() -> CheckLine {
    let e8 = E8::get();
    let mut ips_ok = true;
    for i in 0..ROOT_COUNT {
        for j in 0..ROOT_COUNT {
            // doubled coordinates: the inner product is half the dot product
            let d: i32 = e8.roots[i].0.iter().zip(&e8.roots[j].0).map(|(&a, &b)| i32::from(a) * i32::from(b)).sum();
            ips_ok &= d % 2 == 0 && (-2..=2).contains(&(d / 2));
        }
    }
    let refl = reflections();
    let distinct: HashSet<Vec<u8>> = refl.iter().map(|r| r.perm.clone()).collect();
    let permuting = refl
        .iter()
        .filter(|r| {
            let image: HashSet<u8> = r.perm.iter().copied().collect();
            image.len() == ROOT_COUNT && e8.preserves_inner_products(r)
        })
        .count();
    CheckLine {
        id: 8,
        name: "E8 structure",
        expected: "240 roots, inner products in -2..2, 120 distinct reflections each permuting the roots".into(),
        actual: format!(
            "{} roots, inner products {}, {} distinct reflections, {permuting} permuting",
            e8.roots.len(),
            if ips_ok { "in range" } else { "out of range" },
            distinct.len()
        ),
        passed: e8.roots.len() == 240 && ips_ok && distinct.len() == 120 && permuting == 120,
    }
}

pub fn check_pruning(scope: Scope) -> CheckLine {
    let bound = 7;
    let pruned = enumerate_hereditary(census_predicate, bound, &isometry_set(Extras::Default), true)
        .expect("the census property is hereditary")
        .0;
    let unpruned = oracles::e8_closure(bound);
    let unpruned_codes: HashSet<CanonicalCode> = unpruned.keys().cloned().collect();
    let survivors_pruned = census_up_to(bound, Extras::Default).survivors.into_keys().collect::<HashSet<_>>();
    let survivors_unpruned: HashSet<CanonicalCode> =
        unpruned.iter().filter(|(_, g)| survivor_filter(g)).map(|(c, _)| c.clone()).collect();

    let invariance_bound = if scope == Scope::Full { 8 } else { 7 };
    let configs = [Extras::None, Extras::Default, Extras::Products(120)];
    let corpora: Vec<HashSet<CanonicalCode>> =
        configs.iter().map(|&e| census_up_to(invariance_bound, e).survivors.into_keys().collect()).collect();
    let invariant = corpora.windows(2).all(|w| w[0] == w[1]);
    CheckLine {
        id: 9,
        name: "pruning soundness",
        expected: format!("pruned = unpruned at <= {bound}; survivors identical for 3 isometry sets at <= {invariance_bound}"),
        actual: format!(
            "graphs {} pruned vs {} unpruned ({}), survivors {} vs {}; survivor counts {:?}",
            pruned.len(),
            unpruned_codes.len(),
            if pruned == unpruned_codes { "equal" } else { "differ" },
            survivors_pruned.len(),
            survivors_unpruned.len(),
            corpora.iter().map(HashSet::len).collect::<Vec<_>>()
        ),
        passed: pruned == unpruned_codes && survivors_pruned == survivors_unpruned && invariant,
    }
}

pub fn check_m_index() -> CheckLine {
    let mut rng = StdRng::seed_from_u64(0x1e4);
    let mut checked = 0;
    let mut disagreements = 0;
    while checked < 500 {
        let n = rng.gen_range(3..=8);
        let p = rng.gen_range(0.0..0.7);
        let g = oracles::random_connected(&mut rng, n, p);
        if !has_salem_spectrum(&g) {
            continue;
        }
        checked += 1;
        if m_salem_index(&g).expect("connected Salem") != oracles::brute_force_m_index(&g) {
            disagreements += 1;
        }
    }
    CheckLine {
        id: 10,
        name: "m-Salem index oracle",
        expected: "0 disagreements on 500 random Salem graphs".into(),
        actual: format!("{disagreements} disagreements on {checked}"),
        passed: disagreements == 0,
    }
}

/// Runs every check in order, reporting each line as it completes.
pub fn run_suite(scope: Scope, report: &mut dyn FnMut(&CheckLine)) -> Vec<CheckLine> {
    let checks: Vec<Box<dyn Fn() -> CheckLine>> = vec![
        Box::new(move || check_census(scope)),
        Box::new(check_eleven_vertex_survivors),
        Box::new(check_grow_ma),
        Box::new(move || check_family_soundness(scope)),
        Box::new(move || check_family_completeness(scope)),
        Box::new(move || check_bipartite(scope)),
        Box::new(check_spectral_kernel),
        Box::new(check_e8_structure),
        Box::new(move || check_pruning(scope)),
        Box::new(check_m_index),
    ];
    checks
        .iter()
        .map(|c| {
            let line = c();
            report(&line);
            line
        })
        .collect()
}

/// The sporadic total: sporadic family members plus E8 survivors.
pub fn sporadic_total(census: &Census) -> (usize, usize) {
    let glg = salem_core::families::catalog::catalog().families.iter().filter(|f| f.is_sporadic()).count();
    (glg, census.total())
}
