use std::collections::HashSet;

use salem_core::canon::canonical_form;
use salem_core::classify::{has_salem_spectrum, m_salem_index};
use salem_core::families::bipartite::bipartite_sweep;
use salem_core::families::{build_family, enumerate_family_instances, hat_variant_counts, FamilyInstance, PathSpec};
use salem_core::glg::recognize_glg;

#[test]
fn hat_example_pair_is_enumerated() {
    let corpus: HashSet<_> = enumerate_family_instances(8).iter().map(|(_, g)| canonical_form(g)).collect();
    for second in [PathSpec::plain(1), PathSpec::hat(1)] {
        let g = build_family(&FamilyInstance { family: "G10".into(), params: vec![PathSpec::plain(1), second] }).unwrap();
        assert!(corpus.contains(&canonical_form(&g)));
    }
}

#[test]
fn small_instances_are_one_salem_glgs() {
    for (inst, g) in enumerate_family_instances(11) {
        assert!(g.is_connected() && !g.is_bipartite(), "{inst}");
        assert!(recognize_glg(&g).unwrap().is_some(), "{inst}");
        assert!(has_salem_spectrum(&g) && m_salem_index(&g) == Ok(1), "{inst}");
    }
    assert_eq!(hat_variant_counts().iter().map(|(_, c)| c).sum::<usize>(), 60);
}

#[test]
fn bipartite_sweep_small() {
    let sweep = bipartite_sweep(7);
    assert!(sweep.failures.is_empty() && sweep.unmatched.is_empty());
    assert_eq!(sweep.large_s_cyclotomic, 0);
}
