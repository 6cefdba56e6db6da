//! Logarithmic quantities: set-partition alternating sums over long-edge
//! graphs, the template sum for `Q^{d,delta}`, and the formal-logarithm route.
//!
//! Also home to the auxiliary-graph sums `sigma(H)` and the chromatic
//! polynomial derivative they coincide with.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::counting::{n_graph, n_star_edges, severi_degree};
use crate::enumerate::enumerate_templates;
use crate::error::{Error, Result};
use crate::graph::{Distribution, LongEdgeGraph};
use crate::series;
use crate::util::{binomial, factorial};

/// Largest ground set the partition sums will enumerate (Bell(12) = 4213597).
pub const MAX_PARTITION_SIZE: usize = 12;

/// An unordered partition of `{0, .., n-1}`, blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<u64>,
}

impl SetPartition {
    /// Blocks as bitmasks over the ground set.
    pub fn masks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|&m| (0..64).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }
}

fn check_partition_size(n: usize) -> Result<()> {
    if n > MAX_PARTITION_SIZE {
        return Err(Error::Guard {
            what: "partition ground set size",
            value: n as u64,
            limit: MAX_PARTITION_SIZE as u64,
        });
    }
    Ok(())
}

/// Calls `f` with the block masks of every set partition of `n` elements,
/// via restricted growth strings in lexicographic order.
pub fn for_each_set_partition<F: FnMut(&[u64])>(n: usize, mut f: F) -> Result<()> {
    check_partition_size(n)?;
    let mut blocks: Vec<u64> = Vec::with_capacity(n);
    fn rec<F: FnMut(&[u64])>(i: usize, n: usize, blocks: &mut Vec<u64>, f: &mut F) {
        if i == n {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] |= 1 << i;
            rec(i + 1, n, blocks, f);
            blocks[b] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, n, blocks, f);
        blocks.pop();
    }
    rec(0, n, &mut blocks, &mut f);
    Ok(())
}

pub fn set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    let mut out = Vec::new();
    for_each_set_partition(n, |b| out.push(SetPartition { blocks: b.to_vec() }))?;
    Ok(out)
}

/// `(-1)^(p-1) (p-1)!`, the coefficient of a `p`-block partition.
pub fn partition_sign(p: usize) -> BigInt {
    let magnitude = BigInt::from(factorial(p as u32 - 1));
    if p % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// `Q_*^{d,(G,Delta)}`: the partition sum of products of block ordering counts.
pub fn q_star(graph: &LongEdgeGraph, dist: &Distribution, d: u32) -> Result<BigInt> {
    let n = graph.edge_count();
    check_partition_size(n)?;
    let edges = graph.edges();
    let gaps = dist.gaps();
    let mut memo: HashMap<u64, BigInt> = HashMap::new();
    let mut block_count = |mask: u64| -> BigInt {
        memo.entry(mask)
            .or_insert_with(|| {
                let (es, gs): (Vec<_>, Vec<_>) = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| (edges[i], gaps[i]))
                    .unzip();
                BigInt::from(n_star_edges(&es, &gs, d))
            })
            .clone()
    };
    let mut total = BigInt::zero();
    for_each_set_partition(n, |blocks| {
        let mut term = partition_sign(blocks.len());
        for &b in blocks {
            if term.is_zero() {
                break;
            }
            term *= block_count(b);
        }
        total += term;
    })?;
    Ok(total)
}

/// `Q^{d,G} = mu(G)/alpha(G) * sum over labeled Delta of Q_*^{d,(G,Delta)}`.
pub fn q_graph(graph: &LongEdgeGraph, d: u32) -> Result<BigRational> {
    let mut sum = BigInt::zero();
    for dist in graph.distributions() {
        sum += q_star(graph, &dist, d)?;
    }
    Ok(BigRational::new(
        BigInt::from(graph.multiplicity()) * sum,
        BigInt::from(graph.automorphism_count()),
    ))
}

/// `Q^{d,G}` in its automorphism-weighted form:
/// `1/alpha(G) * sum_P (-1)^(p-1) (p-1)! prod_E alpha(E) N^{d,E}`.
pub fn q_graph_weighted(graph: &LongEdgeGraph, d: u32) -> Result<BigRational> {
    let mut memo: HashMap<u64, BigInt> = HashMap::new();
    let mut total = BigInt::zero();
    for_each_set_partition(graph.edge_count(), |blocks| {
        let mut term = partition_sign(blocks.len());
        for &b in blocks {
            let value = memo.entry(b).or_insert_with(|| {
                let sub = graph.subgraph(b);
                BigInt::from(sub.automorphism_count() * n_graph(&sub, d))
            });
            term *= &*value;
        }
        total += term;
    })?;
    Ok(BigRational::new(
        total,
        BigInt::from(graph.automorphism_count()),
    ))
}

/// `Q^{d,(G,Delta)} = mu(G)/alpha(G,Delta) * Q_*` for each unlabeled distribution.
pub fn q_graph_by_distribution(
    graph: &LongEdgeGraph,
    d: u32,
) -> Result<Vec<(Distribution, BigRational)>> {
    let mu = BigInt::from(graph.multiplicity());
    graph
        .unlabeled_distributions()
        .into_iter()
        .map(|dist| {
            let q = q_star(graph, &dist, d)?;
            let alpha = BigInt::from(graph.automorphism_count_with(&dist));
            Ok((dist, BigRational::new(&mu * q, alpha)))
        })
        .collect()
}

/// `Q^{d,delta}` as a sum of `Q^{d,Gamma[k]}` over templates `Gamma` of
/// cogenus `delta` and every offset `0 <= k <= d + 1`.
///
/// Offsets where `Gamma[k]` itself is not allowable still contribute when
/// some partition has only allowable blocks, so the range is not cut to the
/// allowable offsets.
pub fn q_delta_templates(d: u32, delta: u32) -> Result<BigRational> {
    let catalog = enumerate_templates(delta);
    let jobs: Vec<(usize, u32)> = (0..catalog.len())
        .flat_map(|t| (0..=d + 1).map(move |k| (t, k)))
        .collect();
    let parts: Vec<BigRational> = jobs
        .par_iter()
        .map(|&(t, k)| q_graph(&catalog.templates()[t].offset(k), d))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().sum())
}

/// `Q^{d,delta}` as the coefficient of `x^delta` in `log sum N^{d,i} x^i`.
pub fn q_delta_log(d: u32, delta: u32) -> BigRational {
    q_log_table(d, delta)[delta as usize].clone()
}

/// `[0, Q^{d,1}, .., Q^{d,delta}]` from the formal logarithm.
pub fn q_log_table(d: u32, delta: u32) -> Vec<BigRational> {
    let n: Vec<BigRational> = (0..=delta)
        .map(|i| BigRational::from_integer(BigInt::from(severi_degree(d, i))))
        .collect();
    series::log(&n)
}

/// Recovers `N^{d,delta}` from `q[i - 1] = Q^{d,i}`, `i = 1..=delta`, as the
/// sum over ordered partitions of `delta` of `(1/p!) prod Q^{d,delta_i}`.
pub fn exp_recover_n(delta: usize, q: &[BigRational]) -> Result<BigUint> {
    if delta == 0 {
        return Ok(BigUint::one());
    }
    if q.len() < delta {
        return Err(Error::MissingValue(q.len() + 1));
    }
    // by_parts[p][s]: sum over compositions of s into p parts of the products
    let mut by_parts: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); delta + 1]];
    by_parts[0][0] = BigRational::one();
    let mut total = BigRational::zero();
    for p in 1..=delta {
        let prev = &by_parts[p - 1];
        let mut row = vec![BigRational::zero(); delta + 1];
        for (s, slot) in row.iter_mut().enumerate().skip(p) {
            for first in 1..=s - (p - 1) {
                if !prev[s - first].is_zero() {
                    *slot += &q[first - 1] * &prev[s - first];
                }
            }
        }
        total += &row[delta] / BigRational::from_integer(BigInt::from(factorial(p as u32)));
        by_parts.push(row);
    }
    if !total.is_integer() || total.is_negative() {
        return Err(Error::NotInteger(total.to_string()));
    }
    Ok(total.to_integer().to_biguint().unwrap())
}

/// A simple graph on `0..n`, loops allowed, parallel edges collapsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraphH {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraphH {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Guard {
                what: "auxiliary graph vertex count (must be at least 1)",
                value: 0,
                limit: 1,
            });
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let (u, v) = (a.min(b), a.max(b));
            if v >= n {
                return Err(Error::Guard {
                    what: "auxiliary graph vertex index",
                    value: v as u64,
                    limit: n as u64 - 1,
                });
            }
            set.insert((u, v));
        }
        Ok(Self { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(u, v)| u == v)
    }

    fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }
}

/// `sigma(H)`: `(-1)^(p-1) (p-1)!` summed over vertex partitions in which no
/// block contains two adjacent vertices.
pub fn sigma(h: &SimpleGraphH) -> Result<BigInt> {
    check_partition_size(h.n)?;
    if h.has_loop() {
        return Ok(BigInt::zero());
    }
    let adj = h.adjacency();
    let mut total = BigInt::zero();
    for_each_set_partition(h.n, |blocks| {
        let compatible = blocks
            .iter()
            .all(|&b| (0..h.n).all(|v| b >> v & 1 == 0 || (adj[v] as u64) & b == 0));
        if compatible {
            total += partition_sign(blocks.len());
        }
    })?;
    Ok(total)
}

/// Chromatic polynomial coefficients, constant term first, by deletion and
/// contraction. A loop makes the polynomial zero.
pub fn chromatic_polynomial(h: &SimpleGraphH) -> Result<Vec<BigInt>> {
    check_partition_size(h.n)?;
    if h.has_loop() {
        return Ok(vec![BigInt::zero()]);
    }
    let mut memo = HashMap::new();
    Ok(chromatic_rec(h.adjacency(), &mut memo))
}

fn chromatic_rec(adj: Vec<u32>, memo: &mut HashMap<Vec<u32>, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&adj) {
        return p.clone();
    }
    let n = adj.len();
    let edge = (0..n).find_map(|u| {
        let higher = adj[u] & !((2u32 << u) - 1);
        (higher != 0).then(|| (u, higher.trailing_zeros() as usize))
    });
    let result = match edge {
        None => {
            let mut p = vec![BigInt::zero(); n + 1];
            p[n] = BigInt::one();
            p
        }
        Some((u, v)) => {
            let mut deleted = adj.clone();
            deleted[u] &= !(1 << v);
            deleted[v] &= !(1 << u);
            let contracted = contract(&deleted, u, v);
            let a = chromatic_rec(deleted, memo);
            let b = chromatic_rec(contracted, memo);
            let mut out = a;
            for (i, c) in b.into_iter().enumerate() {
                out[i] -= c;
            }
            out
        }
    };
    memo.insert(adj, result.clone());
    result
}

/// Merges `v` into `u` and removes `v`, reindexing the vertices above it.
fn contract(adj: &[u32], u: usize, v: usize) -> Vec<u32> {
    let squeeze = |mask: u32| -> u32 {
        let low = mask & ((1 << v) - 1);
        let high = (mask >> (v + 1)) << v;
        low | high
    };
    let mut merged = adj.to_vec();
    merged[u] |= adj[v];
    merged[u] &= !(1 << u);
    for (w, row) in merged.iter_mut().enumerate() {
        if *row & (1 << v) != 0 && w != u {
            *row |= 1 << u;
        }
    }
    merged
        .iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &row)| squeeze(row & !(1 << v)))
        .collect()
}

/// `C_H'(0)`: the linear coefficient of the chromatic polynomial.
pub fn chromatic_derivative_at_zero(h: &SimpleGraphH) -> Result<BigInt> {
    Ok(chromatic_polynomial(h)?
        .get(1)
        .cloned()
        .unwrap_or_else(BigInt::zero))
}

/// Largest block count accepted by [`pair_identity`].
pub const MAX_PAIR_BLOCKS: u32 = 20;

/// `sum_q (-1)^(a+b-q-1) (a+b-q-1)! C(a,q) C(b,q) q!`, which vanishes for
/// all `a, b >= 1`.
pub fn pair_identity(a: u32, b: u32) -> Result<BigInt> {
    for v in [a, b] {
        if v == 0 || v > MAX_PAIR_BLOCKS {
            return Err(Error::Guard {
                what: "pairing identity block count (1..=20)",
                value: v as u64,
                limit: MAX_PAIR_BLOCKS as u64,
            });
        }
    }
    let mut total = BigInt::zero();
    for q in 0..=a.min(b) {
        let p = a + b - q;
        let term = partition_sign(p as usize)
            * BigInt::from(binomial(a, q) * binomial(b, q) * factorial(q));
        total += term;
    }
    Ok(total)
}
