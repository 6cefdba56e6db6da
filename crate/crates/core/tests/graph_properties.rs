use proptest::prelude::*;
use severi_core::{Edge, LongEdgeGraph};

fn edge() -> impl Strategy<Value = Edge> {
    (0u32..10, 1u32..=4, 1u32..=3)
        .prop_filter("short edge", |&(_, l, w)| !(l == 1 && w == 1))
        .prop_map(|(s, l, w)| Edge::new(s, s + l, w).unwrap())
}

fn graph_with_cogenus(max: u32) -> impl Strategy<Value = LongEdgeGraph> {
    prop::collection::vec(edge(), 0..=max as usize)
        .prop_map(LongEdgeGraph::from_edges)
        .prop_filter("cogenus bound", move |g| g.cogenus() <= max)
}

proptest! {
    #[test]
    fn offset_invariance(g in graph_with_cogenus(5), k in 0u32..8) {
        let h = g.offset(k);
        prop_assert_eq!(h.cogenus(), g.cogenus());
        prop_assert_eq!(h.multiplicity(), g.multiplicity());
        prop_assert_eq!(h.automorphism_count(), g.automorphism_count());
        let (wg, wh) = (g.weight_profile(), h.weight_profile());
        for i in 0..g.right_end() + 2 {
            prop_assert_eq!(wh.get(i + k), wg.get(i));
        }
        for i in 0..k {
            prop_assert_eq!(wh.get(i), 0);
        }
    }

    #[test]
    fn allowability_is_monotone(g in graph_with_cogenus(4), d in 1u32..20) {
        if g.is_allowable(d) {
            prop_assert!(g.is_allowable(d + 1));
        }
    }

    #[test]
    fn edges_bounded_by_cogenus(g in graph_with_cogenus(6)) {
        prop_assert!(g.edge_count() as u32 <= g.cogenus());
        for e in g.edges() {
            prop_assert!(e.cogenus() >= 1);
        }
    }

    #[test]
    fn union_is_additive(a in graph_with_cogenus(3), b in graph_with_cogenus(3)) {
        let u = LongEdgeGraph::disjoint_union([&a, &b]);
        prop_assert_eq!(u.cogenus(), a.cogenus() + b.cogenus());
        prop_assert_eq!(u.multiplicity(), a.multiplicity() * b.multiplicity());
        if a.edges().iter().all(|e| !b.edges().contains(e)) {
            prop_assert_eq!(u.automorphism_count(), a.automorphism_count() * b.automorphism_count());
        }
    }

    #[test]
    fn text_roundtrip(g in graph_with_cogenus(5)) {
        prop_assert_eq!(LongEdgeGraph::parse(&g.to_text()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn decompose_then_reassemble(g in graph_with_cogenus(5)) {
        let parts = g.decompose();
        for (t, _) in &parts {
            prop_assert!(t.is_template(), "{} is not a template", t);
        }
        let shifted: Vec<LongEdgeGraph> = parts.iter().map(|(t, k)| t.offset(*k)).collect();
        prop_assert_eq!(LongEdgeGraph::disjoint_union(shifted.iter()), g);
    }
}
