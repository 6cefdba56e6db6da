//! Long-edge graphs: weighted multigraphs on the vertex line `0, 1, 2, ...`
//! whose edges all run left to right and are never short (length 1, weight 1).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{GraphError, ParseError, ParseErrorKind};
use crate::util::factorial;

/// A single weighted edge `start -> end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    start: u32,
    end: u32,
    weight: u32,
}

impl Edge {
    pub fn new(start: u32, end: u32, weight: u32) -> Result<Self, GraphError> {
        if start == end {
            return Err(GraphError::Loop { vertex: start });
        }
        if end < start {
            return Err(GraphError::Reversed { start, end });
        }
        if weight == 0 {
            return Err(GraphError::NonPositiveWeight {
                start,
                end,
                weight: 0,
            });
        }
        if end - start == 1 && weight == 1 {
            return Err(GraphError::ShortEdge { start, end });
        }
        Ok(Self { start, end, weight })
    }

    #[inline]
    pub fn start(&self) -> u32 {
        self.start
    }

    #[inline]
    pub fn end(&self) -> u32 {
        self.end
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.weight
    }

    #[inline]
    pub fn length(&self) -> u32 {
        self.end - self.start
    }

    /// `length * weight - 1`, always at least 1.
    #[inline]
    pub fn cogenus(&self) -> u32 {
        self.length() * self.weight - 1
    }

    /// Whether the edge lies over the unit interval `[gap, gap + 1]`.
    #[inline]
    pub fn spans_gap(&self, gap: u32) -> bool {
        self.start <= gap && gap < self.end
    }

    /// The gaps this edge lies over, left to right.
    pub fn gaps(&self) -> std::ops::Range<u32> {
        self.start..self.end
    }

    pub fn shifted(&self, k: u32) -> Self {
        Self {
            start: self.start + k,
            end: self.end + k,
            weight: self.weight,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.start, self.end, self.weight)
    }
}

/// A finite multiset of long edges, stored sorted by `(start, end, weight)`.
///
/// Two graphs compare equal iff their sorted edge lists agree. The position of
/// an edge in [`LongEdgeGraph::edges`] is its label for everything that needs
/// labeled edges (distributions, set partitions).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LongEdgeGraph {
    edges: Vec<Edge>,
}

impl LongEdgeGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_edges(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        Self { edges }
    }

    /// Builds a graph from `(start, end, weight)` triples in any order.
    pub fn from_triples<I>(triples: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (i64, i64, i64)>,
    {
        let mut edges = Vec::new();
        for (start, end, weight) in triples {
            if start < 0 || end < 0 {
                return Err(GraphError::NegativeVertex { start, end });
            }
            if weight <= 0 {
                return Err(GraphError::NonPositiveWeight {
                    start: start as u32,
                    end: end as u32,
                    weight,
                });
            }
            let narrow = |v: i64| u32::try_from(v).map_err(|_| GraphError::TooLarge(v));
            edges.push(Edge::new(narrow(start)?, narrow(end)?, narrow(weight)?)?);
        }
        Ok(Self::from_edges(edges))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn cogenus(&self) -> u32 {
        self.edges.iter().map(Edge::cogenus).sum()
    }

    /// Product of the squared edge weights.
    pub fn multiplicity(&self) -> BigUint {
        self.edges
            .iter()
            .fold(BigUint::one(), |acc, e| acc * (e.weight as u64).pow(2))
    }

    /// Leftmost vertex touched by an edge.
    pub fn left_end(&self) -> Option<u32> {
        self.edges.first().map(Edge::start)
    }

    /// The smallest vertex with every vertex to its right of degree zero.
    pub fn right_end(&self) -> u32 {
        self.edges.iter().map(Edge::end).max().unwrap_or(0)
    }

    pub fn weight_profile(&self) -> WeightProfile {
        WeightProfile::of_edges(&self.edges)
    }

    /// Checks the three allowability criteria for degree `d`.
    pub fn is_allowable(&self, d: u32) -> bool {
        edges_allowable(&self.edges, d)
    }

    pub fn offset(&self, k: u32) -> Self {
        Self {
            edges: self.edges.iter().map(|e| e.shifted(k)).collect(),
        }
    }

    /// Shift left by `k`; `None` if some edge would start left of vertex 0.
    pub fn unshift(&self, k: u32) -> Option<Self> {
        if self.left_end().is_some_and(|s| s < k) {
            return None;
        }
        Some(Self {
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    start: e.start - k,
                    end: e.end - k,
                    weight: e.weight,
                })
                .collect(),
        })
    }

    /// Automorphisms fixing every vertex: permutations of identical edges.
    pub fn automorphism_count(&self) -> BigUint {
        group_factorials(self.edges.iter().copied())
    }

    /// Automorphisms that also respect the gap assignment of `dist`.
    pub fn automorphism_count_with(&self, dist: &Distribution) -> BigUint {
        debug_assert_eq!(dist.len(), self.edges.len());
        group_factorials(self.edges.iter().copied().zip(dist.gaps().iter().copied()))
    }

    /// Nonempty, starts at vertex 0, every internal vertex covered.
    pub fn is_template(&self) -> bool {
        if self.left_end() != Some(0) {
            return false;
        }
        let right = self.right_end();
        (1..right).all(|v| self.edges.iter().any(|e| e.start < v && v < e.end))
    }

    /// A template translated by some offset.
    pub fn is_offset_template(&self) -> bool {
        match self.left_end() {
            Some(k) => self.unshift(k).is_some_and(|g| g.is_template()),
            None => false,
        }
    }

    /// Unique splitting into offset templates, left to right.
    ///
    /// The graph is cut at every vertex not covered by an edge; each piece is
    /// returned as `(template, offset)`. The empty graph has no pieces.
    pub fn decompose(&self) -> Vec<(LongEdgeGraph, u32)> {
        let mut pieces = Vec::new();
        let mut current: Vec<Edge> = Vec::new();
        let mut reach = 0;
        for &e in &self.edges {
            if !current.is_empty() && e.start >= reach {
                pieces.push(std::mem::take(&mut current));
            }
            if current.is_empty() {
                reach = e.end;
            }
            reach = reach.max(e.end);
            current.push(e);
        }
        if !current.is_empty() {
            pieces.push(current);
        }
        pieces
            .into_iter()
            .map(|edges| {
                let g = LongEdgeGraph { edges };
                let k = g.left_end().unwrap();
                (g.unshift(k).unwrap(), k)
            })
            .collect()
    }

    /// Multiset union of the edge sets.
    pub fn disjoint_union<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a LongEdgeGraph>,
    {
        Self::from_edges(
            parts
                .into_iter()
                .flat_map(|g| g.edges.iter().copied())
                .collect(),
        )
    }

    /// Subgraph on the edges whose labels are set in `mask`.
    pub fn subgraph(&self, mask: u64) -> Self {
        Self {
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect(),
        }
    }

    /// All labeled distributions: every edge independently picks a gap in
    /// its span. There are `prod length(e)` of them.
    pub fn distributions(&self) -> Vec<Distribution> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.edges.len());
        fn rec(edges: &[Edge], current: &mut Vec<u32>, out: &mut Vec<Distribution>) {
            match edges.split_first() {
                None => out.push(Distribution {
                    gaps: current.clone(),
                }),
                Some((e, rest)) => {
                    for gap in e.gaps() {
                        current.push(gap);
                        rec(rest, current, out);
                        current.pop();
                    }
                }
            }
        }
        rec(&self.edges, &mut current, &mut out);
        out
    }

    /// One representative per orbit of labeled distributions under the
    /// automorphisms: within a run of identical edges the gaps are
    /// nondecreasing.
    pub fn unlabeled_distributions(&self) -> Vec<Distribution> {
        self.distributions()
            .into_iter()
            .filter(|dist| {
                self.edges
                    .windows(2)
                    .zip(dist.gaps.windows(2))
                    .all(|(e, g)| e[0] != e[1] || g[0] <= g[1])
            })
            .collect()
    }

    /// Parses the edge text format: one `start end weight` per line,
    /// `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut triples = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::FieldCount(fields.len()),
                });
            }
            let mut nums = [0i64; 3];
            for (slot, field) in nums.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| ParseError {
                    line: line_no,
                    kind: ParseErrorKind::NotAnInteger(field.to_string()),
                })?;
            }
            LongEdgeGraph::from_triples([(nums[0], nums[1], nums[2])]).map_err(|e| ParseError {
                line: line_no,
                kind: ParseErrorKind::Graph(e),
            })?;
            triples.push((nums[0], nums[1], nums[2]));
        }
        Ok(LongEdgeGraph::from_triples(triples).expect("validated line by line"))
    }

    /// Renders the edge text format.
    pub fn to_text(&self) -> String {
        self.edges.iter().map(|e| format!("{e}\n")).collect()
    }
}

impl fmt::Display for LongEdgeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{},{})", e.start, e.end, e.weight)?;
        }
        f.write_str("}")
    }
}

fn group_factorials<T: Ord>(items: impl Iterator<Item = T>) -> BigUint {
    let mut counts: BTreeMap<T, u32> = BTreeMap::new();
    for item in items {
        *counts.entry(item).or_default() += 1;
    }
    counts
        .values()
        .fold(BigUint::one(), |acc, &c| acc * factorial(c))
}

pub(crate) fn edges_allowable(edges: &[Edge], d: u32) -> bool {
    let top = d + 1;
    for e in edges {
        if e.end > top || (e.end == top && e.weight != 1) {
            return false;
        }
    }
    let profile = WeightProfile::of_edges(edges);
    profile
        .weights
        .iter()
        .enumerate()
        .all(|(i, &w)| w as usize <= i)
}

/// Total weight `w_i` over each gap `[i, i + 1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightProfile {
    weights: Vec<u32>,
}

impl WeightProfile {
    pub(crate) fn of_edges(edges: &[Edge]) -> Self {
        let len = edges.iter().map(Edge::end).max().unwrap_or(0) as usize;
        let mut weights = vec![0u32; len];
        for e in edges {
            for gap in e.gaps() {
                weights[gap as usize] += e.weight;
            }
        }
        Self { weights }
    }

    /// `w_i`; zero outside the graph's span.
    pub fn get(&self, gap: u32) -> u32 {
        self.weights.get(gap as usize).copied().unwrap_or(0)
    }

    /// Gaps with nonzero weight, in increasing order.
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(i, &w)| (i as u32, w))
    }

    /// One past the last gap that can carry weight.
    pub fn len(&self) -> u32 {
        self.weights.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }
}

/// A gap assignment for each labeled edge of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distribution {
    gaps: Vec<u32>,
}

impl Distribution {
    /// Checks every gap against the span of the matching edge.
    pub fn new(graph: &LongEdgeGraph, gaps: Vec<u32>) -> Result<Self, GraphError> {
        if gaps.len() != graph.edge_count() {
            return Err(GraphError::DistributionLength {
                expected: graph.edge_count(),
                got: gaps.len(),
            });
        }
        for (e, &gap) in graph.edges().iter().zip(&gaps) {
            if !e.spans_gap(gap) {
                return Err(GraphError::GapOutsideEdge {
                    start: e.start,
                    end: e.end,
                    gap,
                });
            }
        }
        Ok(Self { gaps })
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// `m_i`: number of edges assigned to each gap.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &g in &self.gaps {
            *m.entry(g).or_default() += 1;
        }
        m
    }

    pub fn offset(&self, k: u32) -> Self {
        Self {
            gaps: self.gaps.iter().map(|g| g + k).collect(),
        }
    }

    pub fn restrict(&self, mask: u64) -> Self {
        Self {
            gaps: self
                .gaps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, g)| *g)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(triples: &[(i64, i64, i64)]) -> LongEdgeGraph {
        LongEdgeGraph::from_triples(triples.iter().copied()).unwrap()
    }

    fn gex() -> LongEdgeGraph {
        g(&[(3, 5, 1), (4, 5, 2), (4, 6, 1)])
    }

    #[test]
    fn construction_errors_are_distinct() {
        assert!(matches!(
            LongEdgeGraph::from_triples([(2, 3, 1)]),
            Err(GraphError::ShortEdge { .. })
        ));
        assert!(matches!(
            LongEdgeGraph::from_triples([(2, 2, 3)]),
            Err(GraphError::Loop { .. })
        ));
        assert!(matches!(
            LongEdgeGraph::from_triples([(1, 3, 0)]),
            Err(GraphError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            LongEdgeGraph::from_triples([(1, 3, -2)]),
            Err(GraphError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            LongEdgeGraph::from_triples([(-1, 3, 1)]),
            Err(GraphError::NegativeVertex { .. })
        ));
        assert!(matches!(
            LongEdgeGraph::from_triples([(4, 2, 1)]),
            Err(GraphError::Reversed { .. })
        ));
    }

    #[test]
    fn input_order_is_irrelevant() {
        assert_eq!(gex(), g(&[(4, 6, 1), (3, 5, 1), (4, 5, 2)]));
        assert_eq!(LongEdgeGraph::from_triples([]).unwrap().edge_count(), 0);
    }

    #[test]
    fn example_graph_numbers() {
        let gex = gex();
        assert_eq!(gex.cogenus(), 3);
        assert_eq!(gex.multiplicity(), BigUint::from(4u32));
        let w = gex.weight_profile();
        let profile: Vec<u32> = (0..8).map(|i| w.get(i)).collect();
        assert_eq!(profile, vec![0, 0, 0, 1, 4, 1, 0, 0]);
        assert_eq!(gex.automorphism_count(), BigUint::one());
    }

    #[test]
    fn cogenus_one_shapes() {
        for k in 0..6 {
            let cyc = g(&[(k, k + 2, 1)]);
            let stub = g(&[(k, k + 1, 2)]);
            assert_eq!(cyc.cogenus(), 1);
            assert_eq!(stub.cogenus(), 1);
            assert_eq!(stub.multiplicity(), BigUint::from(4u32));
        }
        let empty = LongEdgeGraph::empty();
        assert_eq!(empty.cogenus(), 0);
        assert_eq!(empty.multiplicity(), BigUint::one());
        assert!(empty.weight_profile().is_empty());
        let w = g(&[(0, 2, 1)]).weight_profile();
        assert_eq!((w.get(0), w.get(1), w.get(2)), (1, 1, 0));
    }

    #[test]
    fn allowability() {
        assert!(gex().is_allowable(5));
        assert!(!gex().is_allowable(4));
        for d in 1..10u32 {
            for k in 0..12i64 {
                let stub = g(&[(k, k + 1, 2)]);
                let cyc = g(&[(k, k + 2, 1)]);
                let kk = k as u32;
                assert_eq!(stub.is_allowable(d), 2 <= kk && kk < d, "stub k={k} d={d}");
                assert_eq!(cyc.is_allowable(d), 1 <= kk && kk < d, "cyc k={k} d={d}");
            }
        }
        assert!(LongEdgeGraph::empty().is_allowable(1));
    }

    #[test]
    fn automorphisms() {
        // three identical weight-1 edges and two identical weight-2 edges
        let fig = g(&[(1, 3, 1), (1, 3, 1), (1, 3, 1), (2, 3, 2), (2, 3, 2)]);
        assert_eq!(fig.multiplicity(), BigUint::from(16u32));
        assert_eq!(fig.automorphism_count(), BigUint::from(12u32));

        let k = 5;
        let gq = g(&[(k, k + 1, 2), (k, k + 2, 1), (k, k + 2, 1)]);
        assert_eq!(gq.automorphism_count(), BigUint::from(2u32));
        let split = Distribution::new(&gq, vec![5, 5, 6]).unwrap();
        assert_eq!(gq.automorphism_count_with(&split), BigUint::one());
        let together = Distribution::new(&gq, vec![5, 6, 6]).unwrap();
        assert_eq!(gq.automorphism_count_with(&together), BigUint::from(2u32));
        assert_eq!(gq.distributions().len(), 4);
        assert_eq!(gq.unlabeled_distributions().len(), 3);
    }

    #[test]
    fn templates() {
        assert!(g(&[(0, 2, 1)]).is_template());
        assert!(!g(&[(0, 2, 1), (3, 5, 1)]).is_template());
        assert!(!LongEdgeGraph::empty().is_template());
        assert!(!g(&[(1, 3, 1)]).is_template());
        assert!(g(&[(1, 3, 1)]).is_offset_template());
        assert!(!g(&[(0, 1, 2), (1, 2, 2)]).is_template());
        assert!(g(&[(0, 2, 1), (1, 2, 2)]).is_template());
    }

    #[test]
    fn decomposition_examples() {
        let parts = g(&[(2, 4, 1), (5, 6, 2)]).decompose();
        assert_eq!(parts, vec![(g(&[(0, 2, 1)]), 2), (g(&[(0, 1, 2)]), 5)]);
        assert_eq!(g(&[(3, 5, 1)]).decompose(), vec![(g(&[(0, 2, 1)]), 3)]);
        assert_eq!(
            gex().decompose(),
            vec![(g(&[(0, 2, 1), (1, 2, 2), (1, 3, 1)]), 3)]
        );
        // touching at a shared uncovered vertex
        assert_eq!(
            g(&[(1, 3, 1), (3, 5, 1)]).decompose(),
            vec![(g(&[(0, 2, 1)]), 1), (g(&[(0, 2, 1)]), 3)]
        );
        assert!(LongEdgeGraph::empty().decompose().is_empty());
    }

    #[test]
    fn unions() {
        let cyc1 = g(&[(1, 3, 1)]);
        let stub4 = g(&[(4, 5, 2)]);
        assert_eq!(
            LongEdgeGraph::disjoint_union([&LongEdgeGraph::empty(), &gex()]),
            gex()
        );
        let doubled = LongEdgeGraph::disjoint_union([&cyc1, &cyc1]);
        assert_eq!(doubled.edge_count(), 2);
        assert_eq!(doubled.cogenus(), 2);
        assert_eq!(doubled.automorphism_count(), BigUint::from(2u32));
        let mixed = LongEdgeGraph::disjoint_union([&cyc1, &stub4]);
        assert_eq!(mixed.cogenus(), 2);
        assert_eq!(mixed.multiplicity(), BigUint::from(4u32));
    }

    #[test]
    fn offsets() {
        let cyc = g(&[(0, 2, 1)]);
        assert_eq!(cyc.offset(4), g(&[(4, 6, 1)]));
        assert_eq!(gex().offset(0), gex());
        assert_eq!(gex().offset(2).offset(3), gex().offset(5));
        assert_eq!(gex().offset(3).unshift(3), Some(gex()));
        assert_eq!(gex().unshift(4), None);
    }

    #[test]
    fn distribution_checks() {
        let gex = gex();
        assert_eq!(gex.distributions().len(), 4);
        assert_eq!(
            LongEdgeGraph::empty().distributions(),
            vec![Distribution::default()]
        );
        assert!(Distribution::new(&gex, vec![3, 4, 4]).is_ok());
        assert!(matches!(
            Distribution::new(&gex, vec![5, 4, 4]),
            Err(GraphError::GapOutsideEdge { .. })
        ));
        assert!(matches!(
            Distribution::new(&gex, vec![3]),
            Err(GraphError::DistributionLength { .. })
        ));
    }

    #[test]
    fn text_format() {
        let text = "# G_ex\n4 6 1\n3 5 1\n\n4 5 2\n";
        assert_eq!(LongEdgeGraph::parse(text).unwrap(), gex());
        assert_eq!(LongEdgeGraph::parse("").unwrap(), LongEdgeGraph::empty());
        assert_eq!(LongEdgeGraph::parse(&gex().to_text()).unwrap(), gex());
        let err = LongEdgeGraph::parse("1 3 1\n2 3 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = LongEdgeGraph::parse("1 3\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = LongEdgeGraph::parse("1 3 x\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::NotAnInteger(_)));
    }
}
