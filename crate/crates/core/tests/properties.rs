//! Property tests for the graph layer: codec laws, arithmetic identities of
//! join and disjoint union, and matching equivalences.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fk_turan::canon::{canonical_label, relabel};
use fk_turan::graph::Graph;
use fk_turan::graph6;

/// An arbitrary graph on up to `max_n` vertices.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_predicate(n, |_, _| it.next().unwrap())
        })
    })
}

/// Independent brute-force matching number.
fn brute_force_nu(g: &Graph) -> usize {
    fn rec(g: &Graph, alive: &mut Vec<bool>) -> usize {
        let v = match (0..g.n()).find(|&v| alive[v] && g.neighbors(v).any(|u| alive[u])) {
            Some(v) => v,
            None => return 0,
        };
        alive[v] = false;
        let mut best = rec(g, alive);
        let nbrs: Vec<usize> = g.neighbors(v).filter(|&u| alive[u]).collect();
        for u in nbrs {
            alive[u] = false;
            best = best.max(1 + rec(g, alive));
            alive[u] = true;
        }
        alive[v] = true;
        best
    }
    rec(g, &mut vec![true; g.n()])
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(30)) {
        let enc = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&enc).unwrap(), g);
    }

    #[test]
    fn adjacency_json_round_trip(g in arb_graph(20)) {
        let text = graph6::to_adjacency_json(&g);
        prop_assert_eq!(graph6::from_adjacency_json(&text).unwrap(), g);
    }

    #[test]
    fn join_edge_arithmetic(a in arb_graph(12), b in arb_graph(12)) {
        let j = a.join(&b);
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.n() * b.n());
        let u = a.disjoint_union(&b);
        prop_assert_eq!(u.edge_count(), a.edge_count() + b.edge_count());
        prop_assert_eq!(u.triangle_count(), a.triangle_count() + b.triangle_count());
    }

    #[test]
    fn matching_number_is_additive_over_unions(a in arb_graph(8), b in arb_graph(8)) {
        let u = a.disjoint_union(&b);
        prop_assert_eq!(u.nu(), a.nu() + b.nu());
    }

    #[test]
    fn matching_threshold_matches_full_value(g in arb_graph(10)) {
        let nu = g.nu();
        prop_assert_eq!(nu, brute_force_nu(&g));
        for k in 0..=g.n() / 2 + 1 {
            prop_assert_eq!(g.has_matching_of_size(k), nu >= k);
        }
    }

    #[test]
    fn triangle_count_matches_triple_loop(g in arb_graph(25)) {
        let mut naive = 0u64;
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                for w in (v + 1)..g.n() {
                    if g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w) {
                        naive += 1;
                    }
                }
            }
        }
        prop_assert_eq!(g.triangle_count(), naive);
    }

    #[test]
    fn canonical_label_is_relabeling_invariant(g in arb_graph(9), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let shuffled = relabel(&g, &perm);
        prop_assert_eq!(canonical_label(&g), canonical_label(&shuffled));
    }
}

#[test]
fn graph6_round_trip_thousand_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x67726636);
    for _ in 0..1000 {
        let n = rng.random_range(0..=30usize);
        let p: f64 = rng.random_range(0.0..1.0);
        let g = Graph::from_predicate(n, |_, _| rng.random_bool(p));
        assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }
}

#[test]
fn matching_brute_force_on_eight_vertex_sample() {
    // Random sample of edge sets on up to 8 vertices.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d617463);
    for _ in 0..10_000 {
        let n = rng.random_range(0..=8usize);
        let p: f64 = rng.random_range(0.0..1.0);
        let g = Graph::from_predicate(n, |_, _| rng.random_bool(p));
        assert_eq!(g.nu(), brute_force_nu(&g));
    }
}
