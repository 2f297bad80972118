use std::collections::HashSet;

use salem_core::classify::eigs_outside;
use salem_core::e8::{
    census_partitions, e8_roots, is_representable, isometry_set, one_salem_census_with, reflections, survivor_filter,
    CensusConfig, Extras,
};

#[test]
fn roots_and_reflections() {
    let roots = e8_roots();
    assert_eq!(roots.len(), 240);
    assert!(roots.iter().all(|r| r.dot(r) == 2));
    assert_eq!(reflections().len(), 120);
    assert!(isometry_set(Extras::Default).len() > 120);
}

#[test]
fn capped_census_and_partition_split() {
    let config = CensusConfig { max_vertices: 8, ..CensusConfig::default() };
    let whole = one_salem_census_with(&config, None, &|_, _| {});
    assert_eq!(whole.histogram().into_iter().collect::<Vec<_>>(), vec![(6, 10), (7, 43), (8, 111)]);
    for g in whole.survivors.values() {
        assert!(survivor_filter(g));
        assert_eq!(eigs_outside(g), (1, 0));
        assert!(is_representable(g).is_some());
    }
    // searching the partitions in two halves finds the same survivors
    let parts = census_partitions(&config);
    let (a, b) = parts.split_at(parts.len() / 2);
    let mut halves = one_salem_census_with(&config, Some(a), &|_, _| {});
    halves.merge(one_salem_census_with(&config, Some(b), &|_, _| {}));
    let x: HashSet<_> = whole.survivors.keys().collect();
    let y: HashSet<_> = halves.survivors.keys().collect();
    assert_eq!(x, y);
}
