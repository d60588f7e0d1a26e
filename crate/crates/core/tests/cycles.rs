mod common;

use biparrow_core::cycles::{has_cycle, spectrum};
use biparrow_core::BipartiteGraph;
use common::{all_graphs, brute_cycle_lengths};
use proptest::prelude::*;

fn max_len(g: &BipartiteGraph) -> usize {
    2 * g.n1().min(g.n2())
}

fn agrees(g: &BipartiteGraph) -> Result<(), TestCaseError> {
    let edges: Vec<_> = g.edges().collect();
    let want: Vec<usize> = brute_cycle_lengths(g.n1(), g.n2(), &edges).into_iter().collect();
    let limit = max_len(g).max(4);
    let s = spectrum(g, limit).unwrap();
    prop_assert_eq!(s.present(), want, "{:?}", g);
    for (len, c) in &s.witnesses {
        prop_assert_eq!(c.len(), *len);
        prop_assert!(c.verify(g));
    }
    Ok(())
}

#[test]
fn spectrum_matches_oracle_on_all_small_graphs() {
    for (n1, n2) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
        for g in all_graphs(n1, n2) {
            agrees(&g).unwrap();
        }
    }
}

prop_compose! {
    fn graph(n1: usize, n2: usize)(rows in proptest::collection::vec(0u64..1 << n2, n1)) -> BipartiteGraph {
        BipartiteGraph::from_rows(n1, n2, rows).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn spectrum_matches_oracle_five_by_five(g in graph(5, 5)) {
        agrees(&g)?;
    }

    #[test]
    fn adding_edges_keeps_lengths(g in graph(6, 6), adds in proptest::collection::vec((0usize..6, 0usize..6), 1..5)) {
        let mut h = g.clone();
        let mut before = spectrum(&h, 12).unwrap().present();
        for (x, y) in adds {
            h.add_edge(x, y);
            let after = spectrum(&h, 12).unwrap().present();
            prop_assert!(before.iter().all(|l| after.contains(l)));
            before = after;
        }
    }

    #[test]
    fn every_witness_verifies(g in graph(7, 7), half in 2usize..=7) {
        if let Some(c) = has_cycle(&g, 2 * half).unwrap() {
            prop_assert_eq!(c.len(), 2 * half);
            prop_assert!(c.verify(&g));
        }
    }
}

#[test]
fn odd_or_short_lengths_are_rejected() {
    let g = BipartiteGraph::complete_bipartite(3, 3).unwrap();
    assert!(has_cycle(&g, 5).is_err());
    assert!(has_cycle(&g, 2).is_err());
}
