//! Ordering counts of extended graphs and the Severi degree sum.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumerate::GraphEnumerator;
use crate::error::{Error, Result};
use crate::graph::{edges_allowable, Distribution, Edge, LongEdgeGraph, WeightProfile};
use crate::util::falling_factorial;

/// Default cap on midpoints the brute-force ordering oracle will place.
pub const ORACLE_MIDPOINT_BOUND: usize = 12;

/// Orderings of the subdivided extended graph consistent with `dist`, edges
/// labeled: the product over gaps of `(i - w_i + m_i)` falling `m_i`.
///
/// Zero when the graph is not allowable for `d`.
pub fn n_star(graph: &LongEdgeGraph, dist: &Distribution, d: u32) -> BigUint {
    n_star_edges(graph.edges(), dist.gaps(), d)
}

pub(crate) fn n_star_edges(edges: &[Edge], gaps: &[u32], d: u32) -> BigUint {
    debug_assert_eq!(edges.len(), gaps.len());
    if !edges_allowable(edges, d) {
        return BigUint::zero();
    }
    let profile = WeightProfile::of_edges(edges);
    let mut m = vec![0u32; profile.len() as usize];
    for &gap in gaps {
        m[gap as usize] += 1;
    }
    let mut acc = BigInt::one();
    for (i, &mi) in m.iter().enumerate() {
        if mi == 0 {
            continue;
        }
        let free = i as i64 - profile.get(i as u32) as i64;
        acc *= falling_factorial(free + mi as i64, mi);
    }
    acc.to_biguint()
        .expect("falling factorials of an allowable graph are positive")
}

/// Labeled ordering count: `n_star` summed over every labeled distribution.
pub fn n_star_total(graph: &LongEdgeGraph, d: u32) -> BigUint {
    if !graph.is_allowable(d) {
        return BigUint::zero();
    }
    graph
        .distributions()
        .iter()
        .map(|dist| n_star(graph, dist, d))
        .sum()
}

/// `N^{d,G} = mu(G) / alpha(G) * N_*^{d,G}`.
///
/// # Panics
///
/// If `alpha(G)` does not divide `mu(G) * N_*`; the automorphism action on
/// labeled orderings is free, so this signals a bug.
pub fn n_graph(graph: &LongEdgeGraph, d: u32) -> BigUint {
    let total = graph.multiplicity() * n_star_total(graph, d);
    let alpha = graph.automorphism_count();
    let (q, r) = total.div_rem(&alpha);
    assert!(
        r.is_zero(),
        "alpha(G) = {alpha} does not divide mu * N_* = {total} for {graph} at d = {d}"
    );
    q
}

/// `N^{d,G}` summed over unlabeled distributions with the per-distribution
/// weights `mu(G) / alpha(G, Delta)`.
pub fn n_graph_unlabeled(graph: &LongEdgeGraph, d: u32) -> BigUint {
    let mu = BigInt::from(graph.multiplicity());
    let sum: BigRational = graph
        .unlabeled_distributions()
        .iter()
        .map(|dist| {
            let weight = BigRational::new(
                mu.clone(),
                BigInt::from(graph.automorphism_count_with(dist)),
            );
            weight * BigInt::from(n_star(graph, dist, d))
        })
        .sum();
    assert!(
        sum.is_integer(),
        "non-integral unlabeled sum {sum} for {graph}"
    );
    sum.to_integer()
        .to_biguint()
        .expect("ordering counts are nonnegative")
}

/// The Severi degree `N^{d,delta}` as a sum over allowable long-edge graphs.
pub fn severi_degree(d: u32, delta: u32) -> BigUint {
    GraphEnumerator::new(delta, d).par_sum(|g| n_graph(g, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Token {
    Vertex(u32),
    Short,
    Mid(usize),
}

/// Counts labeled orderings of the subdivided extended graph by explicit
/// enumeration, using the default midpoint bound.
pub fn orderings_oracle(graph: &LongEdgeGraph, d: u32) -> Result<BigUint> {
    orderings_oracle_with_bound(graph, d, ORACLE_MIDPOINT_BOUND)
}

/// Builds every linear order of the vertices and midpoints inside the
/// graph's span (short-edge midpoints indistinct, long-edge midpoints
/// labeled and strictly between their endpoints) and counts the distinct
/// sequences.
pub fn orderings_oracle_with_bound(graph: &LongEdgeGraph, d: u32, bound: usize) -> Result<BigUint> {
    if !graph.is_allowable(d) {
        return Ok(BigUint::zero());
    }
    let Some(lo) = graph.left_end() else {
        return Ok(BigUint::one());
    };
    let hi = graph.right_end();
    let profile = graph.weight_profile();
    let shorts: Vec<usize> = (lo..hi).map(|i| (i - profile.get(i)) as usize).collect();
    let midpoints = shorts.iter().sum::<usize>() + graph.edge_count();
    if midpoints > bound {
        return Err(Error::OracleTooLarge { midpoints, bound });
    }

    let mut seen: HashSet<Vec<Token>> = HashSet::new();
    let edges = graph.edges();
    let mut assignment = vec![0u32; edges.len()];
    assign_gaps(edges, 0, &mut assignment, &mut |assignment| {
        let per_gap: Vec<Vec<Vec<Token>>> = (lo..hi)
            .map(|gap| {
                let mut short = shorts[(gap - lo) as usize];
                let mids: Vec<usize> = (0..edges.len()).filter(|&j| assignment[j] == gap).collect();
                let mut out = Vec::new();
                let mut remaining = mids.clone();
                arrangements(&mut short, &mut remaining, &mut Vec::new(), &mut out);
                out
            })
            .collect();
        let mut seq = Vec::new();
        interleave(lo, &per_gap, 0, &mut seq, &mut |seq| {
            debug_assert!(midpoints_between_endpoints(edges, seq));
            seen.insert(seq.to_vec());
        });
    });
    Ok(BigUint::from(seen.len()))
}

fn assign_gaps(edges: &[Edge], j: usize, assignment: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if j == edges.len() {
        f(assignment);
        return;
    }
    for gap in edges[j].gaps() {
        assignment[j] = gap;
        assign_gaps(edges, j + 1, assignment, f);
    }
}

/// Every distinct sequence of `short` indistinct tokens and the labeled `mids`.
fn arrangements(
    short: &mut usize,
    mids: &mut Vec<usize>,
    prefix: &mut Vec<Token>,
    out: &mut Vec<Vec<Token>>,
) {
    if *short == 0 && mids.is_empty() {
        out.push(prefix.clone());
        return;
    }
    if *short > 0 {
        *short -= 1;
        prefix.push(Token::Short);
        arrangements(short, mids, prefix, out);
        prefix.pop();
        *short += 1;
    }
    for idx in 0..mids.len() {
        let m = mids.remove(idx);
        prefix.push(Token::Mid(m));
        arrangements(short, mids, prefix, out);
        prefix.pop();
        mids.insert(idx, m);
    }
}

fn interleave(
    lo: u32,
    per_gap: &[Vec<Vec<Token>>],
    gap: usize,
    seq: &mut Vec<Token>,
    f: &mut impl FnMut(&[Token]),
) {
    seq.push(Token::Vertex(lo + gap as u32));
    if gap == per_gap.len() {
        f(seq);
    } else {
        for arrangement in &per_gap[gap] {
            let len = seq.len();
            seq.extend_from_slice(arrangement);
            interleave(lo, per_gap, gap + 1, seq, f);
            seq.truncate(len);
        }
    }
    seq.pop();
}

fn midpoints_between_endpoints(edges: &[Edge], seq: &[Token]) -> bool {
    let pos = |t: Token| seq.iter().position(|&s| s == t);
    edges.iter().enumerate().all(|(j, e)| {
        let (Some(a), Some(m), Some(b)) = (
            pos(Token::Vertex(e.start())),
            pos(Token::Mid(j)),
            pos(Token::Vertex(e.end())),
        ) else {
            return false;
        };
        a < m && m < b
    })
}
