//! Property-based invariants: writer/parser roundtrip, totality and
//! idempotence of structural validation, monoid idempotence and
//! reachability on validated graphs, and word arithmetic in the tables.

use proptest::prelude::*;

use orbitweave::cartan::CartanDatum;
use orbitweave::graph::{EdgeType, GraphSpec, OrbitGraph, OrbitVertex};
use orbitweave::io::{parse_graph_json, write_graph_json};
use orbitweave::weyl::WeylGroupTable;

const LABELS: [&str; 5] = ["A1", "A2", "B2", "A1+A1", "A3"];

fn arb_edge_type() -> impl Strategy<Value = EdgeType> {
    prop_oneof![Just(EdgeType::U), Just(EdgeType::T), Just(EdgeType::N)]
}

/// Well-formed (not necessarily certifiable) graphs: layered vertices,
/// edges only between consecutive layers, deduplicated edge triples.
fn arb_graph() -> impl Strategy<Value = OrbitGraph> {
    (0usize..LABELS.len(), prop::collection::vec(1usize..4, 1..4)).prop_flat_map(
        |(label_idx, layer_sizes)| {
            let cartan = CartanDatum::from_label(LABELS[label_idx]).unwrap();
            let rank = cartan.rank();
            let mut vertices = Vec::new();
            for (level, &count) in layer_sizes.iter().enumerate() {
                for k in 0..count {
                    vertices.push((format!("v{level}_{k}"), level as i64));
                }
            }
            // candidate edges between consecutive layers
            let mut candidates = Vec::new();
            for (src_id, src_dim) in &vertices {
                for (dst_id, dst_dim) in &vertices {
                    if *dst_dim == src_dim + 1 {
                        for label in 0..rank {
                            candidates.push((src_id.clone(), dst_id.clone(), label));
                        }
                    }
                }
            }
            let n_candidates = candidates.len();
            (
                Just(cartan),
                Just(vertices),
                Just(candidates),
                prop::collection::vec((any::<bool>(), arb_edge_type()), n_candidates),
                prop::collection::vec(prop::option::of(0i64..3), layer_sizes.iter().sum::<usize>()),
                prop::option::of(0i64..3),
            )
        },
    )
    .prop_map(|(cartan, vertices, candidates, picks, ranks, rank_of_top)| {
        let vertices: Vec<OrbitVertex> = vertices
            .into_iter()
            .zip(ranks)
            .map(|((id, dim), rank)| OrbitVertex { id, dim, rank })
            .collect();
        let edges: Vec<(String, String, usize, EdgeType)> = candidates
            .into_iter()
            .zip(picks)
            .filter(|(_, (keep, _))| *keep)
            .map(|((src, dst, label), (_, ty))| (src, dst, label, ty))
            .collect();
        OrbitGraph::new(GraphSpec { cartan, rank_of_top, vertices, edges })
            .expect("generated graphs are well formed")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn writer_and_parser_roundtrip(g in arb_graph()) {
        let bytes = write_graph_json(&g);
        let back = parse_graph_json(&bytes).unwrap();
        prop_assert_eq!(g.cartan(), back.cartan());
        prop_assert_eq!(g.rank_of_top(), back.rank_of_top());
        prop_assert_eq!(g.vertices(), back.vertices());
        prop_assert_eq!(g.edges(), back.edges());
        // the canonical writer is a fixed point
        prop_assert_eq!(bytes, write_graph_json(&back));
    }

    #[test]
    fn validation_is_total_and_idempotent(g in arb_graph()) {
        let first = g.validate_structure(false);
        let second = g.validate_structure(false);
        prop_assert_eq!(first.passed, second.passed);
        prop_assert_eq!(first.failures, second.failures);
        let truncated = g.validate_structure(true);
        // allowing truncation can only turn failures into warnings
        prop_assert!(first.passed <= truncated.passed);
    }

    #[test]
    fn monoid_raise_idempotent_on_validated_graphs(g in arb_graph()) {
        if !g.validate_structure(true).passed {
            return Ok(());
        }
        for v in g.vertices() {
            for label in 0..g.cartan().rank() {
                let once = g.monoid_raise(&v.id, label).unwrap();
                let twice = g.monoid_raise(&once, label).unwrap();
                prop_assert_eq!(&once, &twice);
            }
        }
    }

    #[test]
    fn every_vertex_reaches_its_top_on_validated_graphs(g in arb_graph()) {
        if !g.validate_structure(true).passed {
            return Ok(());
        }
        for v in 0..g.vertex_count() {
            let top = g.top_of_component(v).unwrap();
            // follow any raising chain: it must terminate at the top
            let mut cur = v;
            let mut steps = 0;
            while let Some(e) = g.out_edges(cur).next() {
                cur = e.dst;
                steps += 1;
                prop_assert!(steps <= g.vertex_count(), "raising chain does not terminate");
            }
            prop_assert_eq!(cur, top);
        }
    }

    #[test]
    fn word_arithmetic(label_idx in 0usize..LABELS.len(), raw in prop::collection::vec(0usize..8, 0..10)) {
        let w = WeylGroupTable::new(CartanDatum::from_label(LABELS[label_idx]).unwrap()).unwrap();
        let word: Vec<usize> = raw.into_iter().map(|i| i % w.rank()).collect();
        let e = w.word_to_elem(&word).unwrap();
        prop_assert!(w.length(e) <= word.len());
        prop_assert_eq!(w.length(e) % 2, word.len() % 2);
        prop_assert_eq!(w.multiply(e, w.invert(e)), w.identity());
        prop_assert_eq!(w.length(w.invert(e)), w.length(e));
        // the invariant form is preserved
        let alpha = {
            let mut v = vec![0i64; w.rank()];
            v[0] = 1;
            v
        };
        prop_assert_eq!(
            w.form(&w.apply_vec(e, &alpha), &w.apply_vec(e, &alpha)),
            w.form(&alpha, &alpha)
        );
    }
}
