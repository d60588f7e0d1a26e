mod common;

use biparrow_core::matching::{components, find_connected_matching, max_connected_matching, maximum_matching};
use biparrow_core::BipartiteGraph;
use common::{brute_connected_matching, brute_matching, sorted_row_graphs};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut impl Rng, max_side: usize) -> BipartiteGraph {
    let n1 = rng.gen_range(1..=max_side);
    let n2 = rng.gen_range(1..=max_side);
    let p: f64 = rng.gen();
    let mut g = BipartiteGraph::empty(n1, n2).unwrap();
    for x in 0..n1 {
        for y in 0..n2 {
            if rng.gen_bool(p) {
                g.add_edge(x, y);
            }
        }
    }
    g
}

prop_compose! {
    fn graph(max_side: usize)(n1 in 1..=max_side, n2 in 1..=max_side)
        (rows in proptest::collection::vec(any::<u64>(), n1), n1 in Just(n1), n2 in Just(n2)) -> BipartiteGraph {
        let mask = (1u64 << n2) - 1;
        BipartiteGraph::from_rows(n1, n2, rows.into_iter().map(|r| r & mask).collect()).unwrap()
    }
}

#[test]
fn konig_on_ten_thousand_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..10_000 {
        let g = random_graph(&mut rng, 12);
        let r = maximum_matching(&g);
        assert!(r.is_valid_matching(&g), "{g:?}");
        assert_eq!(r.size, r.matching.len());
        assert_eq!(r.size, r.cover_size(), "{g:?}");
        assert!(r.cover_touches_all(&g), "{g:?}");
    }
}

/// Matching number is invariant under permuting X, so sorted-row tuples cover
/// every graph up to 5+5.
#[test]
fn matching_agrees_with_brute_force_up_to_five_by_five() {
    let mut checked = 0usize;
    for n1 in 1..=5 {
        for n2 in 1..=5 {
            for g in sorted_row_graphs(n1, n2) {
                let edges: Vec<_> = g.edges().collect();
                assert_eq!(maximum_matching(&g).size, brute_matching(n1, n2, &edges), "{g:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 376_992);
}

#[test]
fn connected_matching_agrees_with_brute_force_up_to_four_by_four() {
    for n1 in 1..=4 {
        for n2 in 1..=4 {
            for g in sorted_row_graphs(n1, n2) {
                let edges: Vec<_> = g.edges().collect();
                assert_eq!(
                    max_connected_matching(&g).size,
                    brute_connected_matching(n1, n2, &edges),
                    "{g:?}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn connected_matching_matches_oracle(g in graph(6)) {
        let edges: Vec<_> = g.edges().collect();
        let want = brute_connected_matching(g.n1(), g.n2(), &edges);
        let cm = max_connected_matching(&g);
        prop_assert_eq!(cm.size, want);
        for k in 0..=want + 1 {
            let found = find_connected_matching(&g, k);
            prop_assert_eq!(found.is_some(), k <= want);
            if let Some(pairs) = found {
                prop_assert_eq!(pairs.len(), k);
                let comps = components(&g);
                prop_assert!(pairs.iter().all(|&(x, y)| g.has_edge(x, y)));
                prop_assert!(pairs.windows(2).all(|w| comps.comp_x[w[0].0] == comps.comp_x[w[1].0]));
            }
        }
    }

    #[test]
    fn connected_matching_at_most_matching(g in graph(12)) {
        let mm = maximum_matching(&g).size;
        let cm = max_connected_matching(&g).size;
        prop_assert!(cm <= mm);
        let nontrivial = components(&g).members.iter().filter(|&&(xs, ys)| xs != 0 && ys != 0).count();
        if nontrivial <= 1 {
            prop_assert_eq!(cm, mm);
        }
    }

    #[test]
    fn deleting_edges_never_increases(g in graph(10), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        let mut h = g.clone();
        for pick in picks {
            let edges: Vec<_> = h.edges().collect();
            if edges.is_empty() {
                break;
            }
            let (x, y) = edges[pick.index(edges.len())];
            let before = (maximum_matching(&h).size, max_connected_matching(&h).size);
            h.remove_edge(x, y);
            let after = (maximum_matching(&h).size, max_connected_matching(&h).size);
            prop_assert!(after.0 <= before.0 && after.1 <= before.1);
        }
    }
}
