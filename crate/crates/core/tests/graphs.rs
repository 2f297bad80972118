use salem_core::canon::canonical_form;
use salem_core::graph6::{parse_graph6, write_graph6};
use salem_core::{Error, Graph};
use std::collections::HashSet;

#[test]
fn construction_and_errors() {
    let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 1)]).unwrap();
    assert_eq!(k3, Graph::complete(3).unwrap());
    assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::VertexOutOfRange { .. })));
    assert!(matches!(Graph::from_edges(2, &[(1, 1)]), Err(Error::SelfLoop(1))));
    assert!(Graph::empty(65).is_err());
}

#[test]
fn induced_subgraphs_relabel_in_order() {
    let c5 = Graph::cycle(5).unwrap();
    assert_eq!(c5.induced(0b00111).unwrap(), Graph::path(3).unwrap());
    assert_eq!(Graph::complete(5).unwrap().induced(0b10101).unwrap(), Graph::complete(3).unwrap());
    assert_eq!(c5.induced(c5.all_vertices()).unwrap(), c5);
}

#[test]
fn connectivity_and_bipartitions() {
    assert!(Graph::empty(1).unwrap().is_connected());
    assert!(!Graph::empty(2).unwrap().is_connected());
    assert_eq!(Graph::cycle(4).unwrap().bipartition(), Some((0b0101, 0b1010)));
    assert_eq!(Graph::complete(3).unwrap().bipartition(), None);
    let (a, b) = Graph::path(4).unwrap().bipartition().unwrap();
    assert_eq!((a.count_ones(), b.count_ones()), (2, 2));
}

#[test]
fn eleven_classes_on_four_vertices() {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
    let codes: HashSet<_> = (0u32..64)
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            canonical_form(&Graph::from_edges(4, &edges).unwrap())
        })
        .collect();
    assert_eq!(codes.len(), 11);
}

#[test]
fn graph6_round_trips() {
    assert_eq!(write_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
    for g in [Graph::complete(4).unwrap(), Graph::cycle(5).unwrap(), Graph::star(9).unwrap()] {
        assert_eq!(parse_graph6(&write_graph6(&g).unwrap()).unwrap(), g);
    }
    assert!(parse_graph6("C").is_err());
}
