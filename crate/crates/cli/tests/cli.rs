use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use salem_cli::checkpoint::Checkpoint;
use salem_cli::commands::{census, CensusOptions};
use salem_cli::record::ResultRecord;
use salem_core::e8::{census_partitions, one_salem_census_with, CensusConfig, DEFAULT_EXTRAS};
use salem_core::graph6::{parse_graph6, write_graph6};
use salem_core::spectra::sturm::rat;
use salem_core::Graph;

fn salemgraph(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_salemgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // a process that rejects its arguments may exit before reading
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<ResultRecord> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn classify_examples() {
    let input: String = [Graph::complete(4).unwrap(), Graph::cycle(5).unwrap(), Graph::star(3).unwrap()]
        .iter()
        .map(|g| write_graph6(g).unwrap() + "\n")
        .collect();
    let out = salemgraph(&["classify", "--tol", "1/1000"], &input);
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(recs.len(), 3);
    assert_eq!((recs[0].kind.as_str(), recs[0].m_salem_index, recs[0].glg), ("salem-trivial", Some(1), true));
    assert_eq!(recs[1].kind, "cyclotomic");
    // the claw is cyclotomic and a generalized line graph (not a line graph)
    assert_eq!((recs[2].kind.as_str(), recs[2].glg), ("cyclotomic", true));
    let l1 = recs[0].lambda1.as_ref().unwrap();
    let (lo, hi) = (salem_core::spectra::sturm::parse_rational(&l1.lo).unwrap(), salem_core::spectra::sturm::parse_rational(&l1.hi).unwrap());
    assert!(lo <= rat(3, 1) && rat(3, 1) <= hi && &hi - &lo <= rat(1, 1000));
}

#[test]
fn classify_reports_bad_lines_and_continues() {
    let out = salemgraph(&["classify"], "C~\n!!\nC~\n");
    assert!(!out.status.success());
    assert_eq!(records(&out).len(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"line\":2"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "tol = \"1/10\"\n").unwrap();
    let coarse = records(&salemgraph(&["classify", "--config", cfg.to_str().unwrap()], "C~\n"));
    let fine = records(&salemgraph(&["classify", "--config", cfg.to_str().unwrap(), "--tol", "1/1000000"], "C~\n"));
    assert_ne!(coarse[0].tau, fine[0].tau);
    let bad = salemgraph(&["classify", "--tol", "0/1"], "C~\n");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn family_corpora() {
    let out = salemgraph(&["families", "--select", "Bip", "--max-vertices", "7"], "");
    assert!(out.status.success());
    let tol = rat(1, 1000);
    for line in String::from_utf8_lossy(&out.stdout).lines() {
        let g = parse_graph6(line).unwrap();
        let r = ResultRecord::classify(&g, &tol, "bip").unwrap();
        assert!(r.kind == "cyclotomic" || (r.is_salem() && r.m_salem_index == Some(1)), "{line}");
    }
    let unknown = salemgraph(&["families", "--select", "G99", "--max-vertices", "7"], "");
    assert_eq!(unknown.status.code(), Some(2));
}

fn corpus_of(dir: &Path, args: &[&str]) -> (String, String) {
    let out_path = dir.join("corpus.g6");
    let mut all = vec!["census", "--out", out_path.to_str().unwrap()];
    all.extend_from_slice(args);
    let out = salemgraph(&all, "");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    (std::fs::read_to_string(out_path).unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn census_resumes_from_a_partial_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let (fresh, hist) = corpus_of(dir.path(), &["--max-vertices", "8", "--workers", "2"]);
    assert!(hist.contains("{\"count\":111,\"vertices\":8}") || hist.contains("{\"vertices\":8,\"count\":111}"));
    assert!(hist.contains("\"total\":164"));

    // a checkpoint holding the first half of the partitions
    let config = CensusConfig { max_vertices: 8, ..CensusConfig::default() };
    let parts = census_partitions(&config);
    let half = &parts[..parts.len() / 2];
    let partial = one_salem_census_with(&config, Some(half), &|_, _| {});
    let mut cp = Checkpoint::new(8, DEFAULT_EXTRAS);
    cp.done.extend(half.iter().copied());
    cp.survivors.extend(partial.survivors.into_values());
    let cp_path = dir.path().join("run.ckpt");
    cp.store(&cp_path).unwrap();

    let (resumed, _) = corpus_of(dir.path(), &["--max-vertices", "8", "--checkpoint", cp_path.to_str().unwrap()]);
    assert_eq!(resumed, fresh);
    let finished = Checkpoint::load(&cp_path).unwrap();
    assert_eq!(finished.done.len(), parts.len());

    // corruption is caught by the checksum
    let text = std::fs::read_to_string(&cp_path).unwrap().replacen("extras", "extraz", 1);
    std::fs::write(&cp_path, text).unwrap();
    let err = census(&CensusOptions { max_vertices: Some(8), workers: 1, checkpoint: Some(&cp_path) }).unwrap_err();
    assert!(err.to_string().contains("checksum"));
}

#[test]
fn census_corpus_round_trips_through_classify() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, hist) = corpus_of(dir.path(), &[]);
    assert!(hist.contains("\"total\":377"));
    let out = salemgraph(&["classify", "--tol", "1/1000000"], &corpus);
    let recs = records(&out);
    assert_eq!(recs.len(), 377);
    let tol = rat(1, 1_000_000);
    for r in &recs {
        assert!(r.is_salem() && r.m_salem_index == Some(1) && !r.glg, "{}", r.graph6);
        assert!(r.reproduces(&tol).unwrap());
    }
}
