//! Flow-based connectivity against exhaustive enumeration on small graphs.

use proptest::prelude::*;
use spanbip::connectivity::{disjoint_paths, local_vertex_connectivity, min_edge_cut, min_separator};
use spanbip::graph::components;
use spanbip::oracle::brute;
use spanbip::{edge_connectivity, is_k_connected, vertex_connectivity, Graph};

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(proptest::bool::weighted(0.55), pairs))
    })
    .prop_map(|(n, bits)| {
        let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let edges: Vec<(usize, usize)> = all.into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
        Graph::new(n, &edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vertex_connectivity_matches_enumeration(g in small_graph(9)) {
        prop_assert_eq!(vertex_connectivity(&g), brute::vertex_connectivity(&g));
    }

    #[test]
    fn edge_cut_matches_enumeration(g in small_graph(9)) {
        let (lambda, side) = min_edge_cut(&g);
        prop_assert_eq!(lambda, brute::edge_connectivity(&g));
        prop_assert_eq!(edge_connectivity(&g), lambda);
        prop_assert!(!side.is_empty() && side.len() < g.n());
        let mut inside = vec![false; g.n()];
        for &v in &side {
            inside[v] = true;
        }
        prop_assert_eq!(g.edges().filter(|&(u, v)| inside[u] != inside[v]).count(), lambda);
    }

    #[test]
    fn menger_for_every_non_adjacent_pair(g in small_graph(9)) {
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                if g.has_edge(a, b) {
                    continue;
                }
                let (size, _) = brute::min_separator(&g, a, b);
                let cut = min_separator(&g, a, b).unwrap();
                let paths = disjoint_paths(&g, a, b, usize::MAX, false).unwrap();
                prop_assert_eq!(cut.len(), size);
                prop_assert_eq!(paths.system.paths.len(), size);
                prop_assert_eq!(local_vertex_connectivity(&g, a, b).unwrap(), size);
                prop_assert!(paths.system.is_valid_for(&g));
                let comps = components(&g, &cut.vertices);
                prop_assert!(comps.iter().all(|c| !(c.contains(&a) && c.contains(&b))));
            }
        }
    }

    #[test]
    fn k_connectivity_test_agrees_with_kappa(g in small_graph(9), k in 1usize..6) {
        let kappa = brute::vertex_connectivity(&g);
        let verdict = is_k_connected(&g, k);
        prop_assert_eq!(verdict.is_connected(), kappa >= k && g.n() > k);
        if let Some(w) = verdict.witness() {
            prop_assert!(w.len() < k);
            prop_assert!(w.is_valid_for(&g));
        }
    }
}

#[test]
fn named_graphs() {
    for n in 3..=12 {
        assert_eq!(vertex_connectivity(&Graph::complete(n)), n - 1);
    }
    for n in 4..=12 {
        assert_eq!(vertex_connectivity(&Graph::cycle(n)), 2);
    }
    let p = Graph::petersen();
    assert_eq!(vertex_connectivity(&p), 3);
    assert_eq!(brute::vertex_connectivity(&p), 3);
    assert_eq!(edge_connectivity(&p), 3);
    assert_eq!(vertex_connectivity(&Graph::complete_bipartite(3, 5)), 3);
}
