//! Floor diagrams: weighted directed multigraphs on the ordered vertices
//! `1..=d` with divergence at most 1, and their translation to and from
//! long-edge graphs.
//!
//! A diagram keeps its short edges. Going to a long-edge graph we first add
//! the virtual vertex `d + 1` with `1 - div(v)` weight-1 edges from each `v`,
//! which brings every divergence to exactly 1, and then erase all short
//! edges. Going back we add `i - w_i` short edges over each gap `i` and erase
//! vertex `d + 1`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::counting::n_star_total;
use crate::error::{DiagramError, Error, ParseError, ParseErrorKind, Result};
use crate::graph::{Edge, LongEdgeGraph};

/// Largest degree the direct diagram enumeration accepts.
pub const MAX_FLOOR_DEGREE: u32 = 5;
/// Largest cogenus the direct diagram enumeration accepts.
pub const MAX_FLOOR_COGENUS: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramEdge {
    pub source: u32,
    pub target: u32,
    pub weight: u32,
}

impl DiagramEdge {
    fn is_short(&self) -> bool {
        self.target - self.source == 1 && self.weight == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FloorDiagram {
    d: u32,
    edges: Vec<DiagramEdge>,
}

impl FloorDiagram {
    pub fn new(d: u32, mut edges: Vec<DiagramEdge>) -> Result<Self, DiagramError> {
        if d == 0 {
            return Err(DiagramError::ZeroDegree);
        }
        for e in &edges {
            if e.source == 0 || e.source >= e.target || e.target > d {
                return Err(DiagramError::BadEndpoints {
                    from: e.source,
                    to: e.target,
                    d,
                });
            }
            if e.weight == 0 {
                return Err(DiagramError::ZeroWeight {
                    from: e.source,
                    to: e.target,
                });
            }
        }
        edges.sort_unstable();
        let diagram = Self { d, edges };
        for v in 1..=d {
            let div = diagram.divergence(v);
            if div > 1 {
                return Err(DiagramError::Divergence { vertex: v, div });
            }
        }
        Ok(diagram)
    }

    pub fn from_triples(d: u32, triples: &[(u32, u32, u32)]) -> Result<Self, DiagramError> {
        Self::new(
            d,
            triples
                .iter()
                .map(|&(source, target, weight)| DiagramEdge {
                    source,
                    target,
                    weight,
                })
                .collect(),
        )
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    /// Outgoing minus incoming weight at `v`.
    pub fn divergence(&self, v: u32) -> i64 {
        self.edges.iter().fold(0i64, |acc, e| {
            if e.source == v {
                acc + e.weight as i64
            } else if e.target == v {
                acc - e.weight as i64
            } else {
                acc
            }
        })
    }

    /// The edges plus `1 - div(v)` weight-1 edges from each `v` to `d + 1`.
    pub fn with_virtual_vertex(&self) -> Vec<DiagramEdge> {
        let mut out = self.edges.clone();
        for v in 1..=self.d {
            let missing = 1 - self.divergence(v);
            for _ in 0..missing {
                out.push(DiagramEdge {
                    source: v,
                    target: self.d + 1,
                    weight: 1,
                });
            }
        }
        out.sort_unstable();
        out
    }

    /// Adds the short edges `ext_d(G)` needs and drops vertex `d + 1`.
    pub fn from_long_edge(graph: &LongEdgeGraph, d: u32) -> Result<Self, DiagramError> {
        if !graph.is_allowable(d) {
            return Err(DiagramError::NotAllowable { d });
        }
        let top = d + 1;
        let mut edges: Vec<DiagramEdge> = graph
            .edges()
            .iter()
            .filter(|e| e.end() != top)
            .map(|e| DiagramEdge {
                source: e.start(),
                target: e.end(),
                weight: e.weight(),
            })
            .collect();
        let profile = graph.weight_profile();
        for gap in 1..d {
            for _ in profile.get(gap)..gap {
                edges.push(DiagramEdge {
                    source: gap,
                    target: gap + 1,
                    weight: 1,
                });
            }
        }
        Self::new(d, edges)
    }

    /// Restores the virtual vertex and erases every short edge.
    pub fn to_long_edge(&self) -> LongEdgeGraph {
        LongEdgeGraph::from_edges(
            self.with_virtual_vertex()
                .into_iter()
                .filter(|e| !e.is_short())
                .map(|e| Edge::new(e.source, e.target, e.weight).expect("long edge"))
                .collect(),
        )
    }

    /// Connected components of the underlying graph on `1..=d`, each as
    /// `(vertex count, edge count, smallest vertex)`.
    fn components(&self) -> Vec<(u64, u64, u32)> {
        let n = self.d as usize + 1;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.source as usize);
            let b = find(&mut parent, e.target as usize);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut stats: Vec<(u64, u64, u32)> = vec![(0, 0, 0); n];
        for v in 1..n {
            let root = find(&mut parent, v);
            if stats[root].0 == 0 {
                stats[root].2 = v as u32;
            }
            stats[root].0 += 1;
        }
        for e in &self.edges {
            let root = find(&mut parent, e.source as usize);
            stats[root].1 += 1;
        }
        stats.into_iter().filter(|s| s.0 > 0).collect()
    }

    /// Cogenus: `(d_j - 1)(d_j - 2)/2 - g_j` per component plus
    /// `d_j d_j'` for each pair of components.
    pub fn cogenus(&self) -> Result<u32, DiagramError> {
        let comps = self.components();
        let mut total: i64 = 0;
        for &(dj, ej, vertex) in &comps {
            let genus = ej as i64 - dj as i64 + 1;
            let cogenus = (dj as i64 - 1) * (dj as i64 - 2) / 2 - genus;
            if cogenus < 0 {
                return Err(DiagramError::NegativeCogenus { vertex });
            }
            total += cogenus;
        }
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                total += (a.0 * b.0) as i64;
            }
        }
        Ok(total as u32)
    }

    /// Product of the squared weights of all edges.
    pub fn multiplicity(&self) -> BigUint {
        self.edges
            .iter()
            .fold(BigUint::from(1u32), |acc, e| acc * (e.weight as u64).pow(2))
    }

    /// Equivalence classes of markings, counted as classes of orderings of
    /// the associated long-edge graph.
    pub fn marking_count(&self) -> BigUint {
        let graph = self.to_long_edge();
        let labeled = n_star_total(&graph, self.d);
        let (q, r) = labeled.div_rem(&graph.automorphism_count());
        assert!(r.is_zero(), "automorphisms do not act freely on {graph}");
        q
    }

    /// Parses `d=<n>` followed by `source target weight` lines.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut d = None;
        let mut edges = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(degree) = d else {
                let value = line
                    .strip_prefix("d=")
                    .and_then(|v| v.trim().parse::<u32>().ok())
                    .ok_or(ParseError {
                        line: line_no,
                        kind: ParseErrorKind::Header,
                    })?;
                d = Some(value);
                continue;
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::FieldCount(fields.len()),
                });
            }
            let mut nums = [0u32; 3];
            for (slot, field) in nums.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| ParseError {
                    line: line_no,
                    kind: ParseErrorKind::NotAnInteger(field.to_string()),
                })?;
            }
            if nums[0] == 0 || nums[0] >= nums[1] || nums[1] > degree || nums[2] == 0 {
                let err = FloorDiagram::from_triples(degree, &[(nums[0], nums[1], nums[2])])
                    .err()
                    .unwrap_or(DiagramError::ZeroDegree);
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::Diagram(err),
                });
            }
            edges.push(DiagramEdge {
                source: nums[0],
                target: nums[1],
                weight: nums[2],
            });
        }
        let d = d.ok_or(ParseError {
            line: last_line.max(1),
            kind: ParseErrorKind::Header,
        })?;
        FloorDiagram::new(d, edges).map_err(|e| ParseError {
            line: last_line.max(1),
            kind: ParseErrorKind::Diagram(e),
        })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FloorDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d={}", self.d)?;
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.source, e.target, e.weight)?;
        }
        Ok(())
    }
}

fn check_scale(d: u32, delta: u32) -> Result<()> {
    if d > MAX_FLOOR_DEGREE {
        return Err(Error::Guard {
            what: "floor diagram degree",
            value: d as u64,
            limit: MAX_FLOOR_DEGREE as u64,
        });
    }
    if delta > MAX_FLOOR_COGENUS {
        return Err(Error::Guard {
            what: "floor diagram cogenus",
            value: delta as u64,
            limit: MAX_FLOOR_COGENUS as u64,
        });
    }
    Ok(())
}

/// Every floor diagram of degree `d` and cogenus `delta`, found directly
/// from edge multisets on `1..=d` (not through long-edge graphs).
///
/// The weight crossing gap `[i, i + 1]` equals `sum_{v <= i} div(v) <= i`,
/// which bounds the search.
pub fn enumerate_floor_diagrams(d: u32, delta: u32) -> Result<Vec<FloorDiagram>> {
    check_scale(d, delta)?;
    if d == 0 {
        return Err(DiagramError::ZeroDegree.into());
    }
    let mut candidates = Vec::new();
    for source in 1..d {
        for target in source + 1..=d {
            for weight in 1..=source {
                candidates.push(DiagramEdge {
                    source,
                    target,
                    weight,
                });
            }
        }
    }
    let mut crossing = vec![0u32; d as usize + 1];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    search_diagrams(
        d,
        delta,
        &candidates,
        0,
        &mut crossing,
        &mut chosen,
        &mut out,
    );
    out.sort();
    Ok(out)
}

fn search_diagrams(
    d: u32,
    delta: u32,
    candidates: &[DiagramEdge],
    from: usize,
    crossing: &mut [u32],
    chosen: &mut Vec<DiagramEdge>,
    out: &mut Vec<FloorDiagram>,
) {
    if let Ok(diagram) = FloorDiagram::new(d, chosen.clone()) {
        if diagram.cogenus() == Ok(delta) {
            out.push(diagram);
        }
    }
    for (idx, &e) in candidates.iter().enumerate().skip(from) {
        let fits = (e.source..e.target).all(|gap| crossing[gap as usize] + e.weight <= gap);
        if !fits {
            continue;
        }
        for gap in e.source..e.target {
            crossing[gap as usize] += e.weight;
        }
        chosen.push(e);
        search_diagrams(d, delta, candidates, idx, crossing, chosen, out);
        chosen.pop();
        for gap in e.source..e.target {
            crossing[gap as usize] -= e.weight;
        }
    }
}

/// `N^{d,delta}` as the sum of `mu(D) nu(D)` over floor diagrams.
pub fn fmcount(d: u32, delta: u32) -> Result<BigUint> {
    Ok(enumerate_floor_diagrams(d, delta)?
        .iter()
        .map(|diagram| diagram.multiplicity() * diagram.marking_count())
        .sum())
}
