//! The subcommands, written against generic readers and writers so tests
//! can drive them without a process.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Mutex;

use num_rational::BigRational;
use salem_core::canon::{canonical_form, CanonicalCode};
use salem_core::e8::{census_partitions, one_salem_census_with, CensusConfig, Extras, DEFAULT_EXTRAS};
use salem_core::families::bipartite::{build_bipartite, component_multisets};
use salem_core::families::catalog::{catalog, enumerate_one};
use salem_core::families::enumerate_family_instances;
use salem_core::graph6::{parse_graph6, write_graph6};
use salem_core::Graph;
use serde_json::json;

use crate::checkpoint::Checkpoint;
use crate::error::{CliError, Result};
use crate::record::ResultRecord;
use crate::verify::{self, CheckLine, Scope};

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifySummary {
    pub records: usize,
    pub errors: usize,
}

/// One record per non-blank input line, in input order. Bad lines are
/// reported on `errors` with their line number and skipped.
pub fn classify(input: impl BufRead, out: &mut dyn Write, errors: &mut dyn Write, tol: &BigRational) -> Result<ClassifySummary> {
    let mut summary = ClassifySummary::default();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim().trim_start_matches(GRAPH6_HEADER);
        if text.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let rec = parse_graph6(text).map_err(CliError::from).and_then(|g| ResultRecord::classify(&g, tol, format!("input:{lineno}")));
        match rec {
            Ok(r) => {
                writeln!(out, "{}", r.to_json())?;
                summary.records += 1;
            }
            Err(e) => {
                writeln!(errors, "{}", json!({ "line": lineno, "error": e.to_string() }))?;
                summary.errors += 1;
            }
        }
    }
    Ok(summary)
}

#[derive(Clone, Debug)]
pub struct CensusOptions<'a> {
    pub max_vertices: Option<usize>,
    pub workers: usize,
    pub checkpoint: Option<&'a Path>,
}

#[derive(Clone, Debug)]
pub struct CensusOutcome {
    /// Survivors sorted by graph6 string.
    pub corpus: Vec<String>,
    pub histogram: BTreeMap<usize, usize>,
    /// Partitions searched in this run (the rest came from the checkpoint).
    pub searched: usize,
    pub partitions: usize,
}

fn sorted_corpus(graphs: &HashMap<CanonicalCode, Graph>) -> Result<Vec<String>> {
    let mut lines = graphs.values().map(write_graph6).collect::<salem_core::Result<Vec<_>>>()?;
    lines.sort();
    Ok(lines)
}

/// Runs the census, resuming from and updating the checkpoint if one is
/// given. Partitions already marked done are not searched again.
pub fn census(opts: &CensusOptions) -> Result<CensusOutcome> {
    let config = CensusConfig {
        max_vertices: opts.max_vertices.unwrap_or(CensusConfig::default().max_vertices),
        extras: Extras::Default,
        ..CensusConfig::default()
    };
    let mut state = Checkpoint::new(config.max_vertices, DEFAULT_EXTRAS);
    if let Some(path) = opts.checkpoint.filter(|p| p.exists()) {
        let loaded = Checkpoint::load(path)?;
        if (loaded.max_vertices, loaded.extras) != (state.max_vertices, state.extras) {
            return Err(CliError::Checkpoint {
                path: path.to_owned(),
                message: format!(
                    "written for max-vertices {} extras {}, this run uses {} and {}",
                    loaded.max_vertices, loaded.extras, state.max_vertices, state.extras
                ),
            });
        }
        state = loaded;
    }
    let partitions = census_partitions(&config);
    let todo: Vec<usize> = partitions.iter().copied().filter(|p| !state.done.contains(p)).collect();
    let shared = Mutex::new((state, None::<CliError>));
    let on_done = |p: usize, part: &salem_core::e8::Census| {
        let mut guard = shared.lock().expect("no panics while holding the lock");
        let (cp, err) = &mut *guard;
        cp.done.insert(p);
        cp.survivors.extend(part.survivors.values().cloned());
        if let (Some(path), None) = (opts.checkpoint, err.as_ref()) {
            if let Err(e) = cp.store(path) {
                *err = Some(e);
            }
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build().map_err(|e| CliError::Config {
        path: "workers".into(),
        message: e.to_string(),
    })?;
    pool.install(|| one_salem_census_with(&config, Some(&todo), &on_done));
    let (cp, err) = shared.into_inner().expect("workers finished");
    if let Some(e) = err {
        return Err(e);
    }
    let mut survivors: HashMap<CanonicalCode, Graph> = HashMap::new();
    for g in cp.survivors {
        survivors.entry(canonical_form(&g)).or_insert(g);
    }
    let mut histogram = BTreeMap::new();
    for g in survivors.values() {
        *histogram.entry(g.n()).or_insert(0) += 1;
    }
    Ok(CensusOutcome { corpus: sorted_corpus(&survivors)?, histogram, searched: todo.len(), partitions: partitions.len() })
}

/// JSON lines for a census histogram: one per vertex count, then the total.
pub fn histogram_lines(h: &BTreeMap<usize, usize>) -> Vec<String> {
    let mut lines: Vec<String> = h.iter().map(|(n, c)| json!({ "vertices": n, "count": c }).to_string()).collect();
    lines.push(json!({ "total": h.values().sum::<usize>() }).to_string());
    lines
}

/// Graphs of the selected families with at most `max_vertices` vertices,
/// one per isomorphism class, as `(description, graph)` pairs.
///
/// Selectors: a family id such as `G10`, `all` for every catalogued family,
/// or `Bip` for the bipartite hub construction.
pub fn families(select: &str, max_vertices: usize) -> Result<Vec<(String, Graph)>> {
    let raw: Vec<(String, Graph)> = match select {
        s if s.eq_ignore_ascii_case("all") => {
            enumerate_family_instances(max_vertices).into_iter().map(|(i, g)| (i.to_string(), g)).collect()
        }
        s if s.eq_ignore_ascii_case("bip") => {
            let mut out = Vec::new();
            if max_vertices >= 2 {
                for specs in component_multisets(max_vertices - 1) {
                    let parts: Vec<String> = specs.iter().map(|c| c.shape.to_string()).collect();
                    out.push((format!("Bip({})", parts.join(",")), build_bipartite(&specs)?));
                }
            }
            out
        }
        id => {
            let fam = catalog().get(id).map_err(|_| CliError::Selector(id.to_owned()))?;
            enumerate_one(fam, max_vertices).into_iter().map(|(i, g)| (i.to_string(), g)).collect()
        }
    };
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    Ok(raw.into_iter().filter(|(_, g)| seen.insert(canonical_form(g))).collect())
}

/// Runs the verification suite, printing each line as it completes. The
/// sporadic total is printed after the numbered checks.
pub fn verify_paper(scope: Scope, out: &mut dyn Write) -> Result<Vec<CheckLine>> {
    let mut io_err = None;
    let lines = verify::run_suite(scope, &mut |line| {
        if let Err(e) = writeln!(out, "{line}").and_then(|_| out.flush()) {
            io_err.get_or_insert(e);
        }
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let census = one_salem_census_with(&CensusConfig::default(), None, &|_, _| {});
    let (glg, e8) = verify::sporadic_total(&census);
    writeln!(out, "sporadic examples: {glg} generalized line graphs + {e8} from E8 = {}", glg + e8)?;
    Ok(lines)
}
