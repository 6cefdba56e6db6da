use std::collections::BTreeSet;

use severi_core::{enumerate_graphs, enumerate_templates, Edge, LongEdgeGraph};

/// Every long edge inside `[0, hi]` contributing at most `max_cogenus`.
fn box_edges(hi: u32, max_cogenus: u32) -> Vec<Edge> {
    let mut out = Vec::new();
    for s in 0..hi {
        for e in s + 1..=hi {
            for w in 1..=max_cogenus + 1 {
                if e - s == 1 && w == 1 {
                    continue;
                }
                if (e - s) * w - 1 <= max_cogenus {
                    out.push(Edge::new(s, e, w).unwrap());
                }
            }
        }
    }
    out
}

/// All multisets over `pool` with total cogenus exactly `delta`.
fn multisets(pool: &[Edge], delta: u32) -> Vec<LongEdgeGraph> {
    fn go(pool: &[Edge], i: usize, left: u32, cur: &mut Vec<Edge>, out: &mut Vec<LongEdgeGraph>) {
        if left == 0 {
            out.push(LongEdgeGraph::from_edges(cur.clone()));
            return;
        }
        if i == pool.len() {
            return;
        }
        let c = pool[i].cogenus();
        let mut taken = 0;
        while taken * c <= left {
            go(pool, i + 1, left - taken * c, cur, out);
            cur.push(pool[i]);
            taken += 1;
        }
        cur.truncate(cur.len() - taken as usize);
    }
    let mut out = Vec::new();
    go(pool, 0, delta, &mut Vec::new(), &mut out);
    out
}

fn brute_templates(delta: u32) -> BTreeSet<LongEdgeGraph> {
    multisets(&box_edges(delta + 1, delta), delta)
        .into_iter()
        .filter(LongEdgeGraph::is_template)
        .collect()
}

fn brute_graphs(delta: u32, d: u32) -> BTreeSet<LongEdgeGraph> {
    multisets(&box_edges(d + 1, delta), delta)
        .into_iter()
        .filter(|g| g.is_allowable(d))
        .collect()
}

#[test]
fn template_catalog_matches_generate_and_filter() {
    for delta in 0..=4 {
        let fast: BTreeSet<_> = enumerate_templates(delta)
            .templates()
            .iter()
            .cloned()
            .collect();
        assert_eq!(
            fast.len(),
            enumerate_templates(delta).len(),
            "duplicates at {delta}"
        );
        assert_eq!(fast, brute_templates(delta), "delta = {delta}");
    }
}

#[test]
fn template_counts() {
    // Counts produced by the generate-and-filter oracle above.
    let counts: Vec<usize> = (1..=4).map(|d| brute_templates(d).len()).collect();
    assert_eq!(counts, vec![2, 7, 26, 102]);
}

#[test]
fn graph_enumeration_is_complete() {
    for delta in 0..=3 {
        for d in 1..=6 {
            let fast = enumerate_graphs(delta, d);
            let set: BTreeSet<_> = fast.iter().cloned().collect();
            assert_eq!(set.len(), fast.len(), "duplicates at ({delta}, {d})");
            assert_eq!(set, brute_graphs(delta, d), "(delta, d) = ({delta}, {d})");
        }
    }
}

#[test]
fn cogenus_two_degree_four() {
    assert_eq!(enumerate_graphs(2, 4).len(), brute_graphs(2, 4).len());
}

#[test]
fn one_node_degree_three() {
    let got: BTreeSet<_> = enumerate_graphs(1, 3).into_iter().collect();
    let want: BTreeSet<_> = [vec![(1, 3, 1)], vec![(2, 4, 1)], vec![(2, 3, 2)]]
        .into_iter()
        .map(|t| LongEdgeGraph::from_triples(t).unwrap())
        .collect();
    assert_eq!(got, want);
}
