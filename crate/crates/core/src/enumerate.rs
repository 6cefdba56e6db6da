//! Templates of a fixed cogenus and the allowable graphs built from them.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::graph::{Edge, LongEdgeGraph};

/// Every template of one cogenus, in canonical (sorted) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateCatalog {
    cogenus: u32,
    templates: Vec<LongEdgeGraph>,
}

impl TemplateCatalog {
    pub fn cogenus(&self) -> u32 {
        self.cogenus
    }

    pub fn templates(&self) -> &[LongEdgeGraph] {
        &self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }
}

/// Edges that can occur in a template of cogenus `delta`: start at most
/// `delta`, end at most `delta + 1`, and `length * weight <= delta + 1`.
pub(crate) fn template_candidate_edges(delta: u32) -> Vec<Edge> {
    let mut out = Vec::new();
    for start in 0..=delta {
        for end in start + 1..=delta + 1 {
            let len = end - start;
            for weight in 1..=(delta + 1) / len {
                if let Ok(e) = Edge::new(start, end, weight) {
                    out.push(e);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// All templates of cogenus `delta`.
///
/// Edges are chosen in canonical order so each multiset is produced once. A
/// new start vertex `s > 0` is only accepted while `s` is still strictly
/// below the reach of the edges chosen so far, which is exactly the covering
/// condition for every internal vertex.
pub fn enumerate_templates(delta: u32) -> TemplateCatalog {
    let mut templates = Vec::new();
    if delta > 0 {
        let candidates = template_candidate_edges(delta);
        let mut chosen = Vec::new();
        grow_template(&candidates, 0, delta, 0, &mut chosen, &mut templates);
        templates.sort();
    }
    TemplateCatalog {
        cogenus: delta,
        templates,
    }
}

fn grow_template(
    candidates: &[Edge],
    from: usize,
    budget: u32,
    reach: u32,
    chosen: &mut Vec<Edge>,
    out: &mut Vec<LongEdgeGraph>,
) {
    if budget == 0 {
        out.push(LongEdgeGraph::from_edges(chosen.clone()));
        return;
    }
    for (idx, &e) in candidates.iter().enumerate().skip(from) {
        if chosen.is_empty() {
            if e.start() != 0 {
                break;
            }
        } else if e.start() >= reach {
            break;
        }
        if e.cogenus() > budget {
            continue;
        }
        chosen.push(e);
        grow_template(
            candidates,
            idx,
            budget - e.cogenus(),
            reach.max(e.end()),
            chosen,
            out,
        );
        chosen.pop();
    }
}

/// Smallest offset `k` for which every gap satisfies `w_i <= i`.
pub fn min_allowable_offset(template: &LongEdgeGraph) -> u32 {
    template
        .weight_profile()
        .nonzero()
        .map(|(i, w)| w.saturating_sub(i))
        .max()
        .unwrap_or(0)
}

/// Offsets `k` for which `template[k]` is allowable for `d`, or `None`.
pub fn allowable_offsets(template: &LongEdgeGraph, d: u32) -> Option<RangeInclusive<u32>> {
    let lo = min_allowable_offset(template) as i64;
    let right = template.right_end();
    let mut hi = d as i64 + 1 - right as i64;
    let heavy_at_right = template
        .edges()
        .iter()
        .any(|e| e.end() == right && e.weight() > 1);
    if heavy_at_right {
        hi -= 1;
    }
    (lo <= hi).then_some(lo as u32..=hi as u32)
}

#[derive(Clone, Debug)]
struct Placed {
    cogenus: u32,
    template: LongEdgeGraph,
    right_end: u32,
    offsets: Option<RangeInclusive<u32>>,
}

/// Allowable long-edge graphs of a given cogenus for a given `d`, produced
/// as left-to-right sequences of offset templates.
///
/// Consecutive pieces may share a boundary vertex: the next offset is at
/// least the previous piece's right end. Since allowability is checked gap by
/// gap and the pieces are gap-disjoint, the union is allowable iff each
/// piece is.
#[derive(Clone, Debug)]
pub struct GraphEnumerator {
    cogenus: u32,
    d: u32,
    placed: Vec<Placed>,
}

/// A first-level choice: template index and offset.
type Root = (usize, u32);

impl GraphEnumerator {
    pub fn new(cogenus: u32, d: u32) -> Self {
        let mut placed = Vec::new();
        for c in 1..=cogenus {
            for t in enumerate_templates(c).templates {
                placed.push(Placed {
                    cogenus: c,
                    right_end: t.right_end(),
                    offsets: allowable_offsets(&t, d),
                    template: t,
                });
            }
        }
        Self { cogenus, d, placed }
    }

    pub fn cogenus(&self) -> u32 {
        self.cogenus
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Visits every graph in deterministic order without collecting them.
    pub fn for_each<F: FnMut(&LongEdgeGraph)>(&self, mut f: F) {
        let mut stack = Vec::new();
        self.walk(self.cogenus, 0, &mut stack, &mut f);
    }

    /// Sums `f` over all graphs, splitting the work over the first template
    /// placement. Exact sums make the result independent of scheduling.
    pub fn par_sum<T, F>(&self, f: F) -> T
    where
        T: Send + std::iter::Sum<T> + Default,
        F: Fn(&LongEdgeGraph) -> T + Sync,
    {
        if self.cogenus == 0 {
            return f(&LongEdgeGraph::empty());
        }
        let roots = self.roots();
        roots
            .par_iter()
            .map(|&(idx, k)| {
                let p = &self.placed[idx];
                let mut stack = vec![p.template.offset(k)];
                let mut parts: Vec<T> = Vec::new();
                self.walk(
                    self.cogenus - p.cogenus,
                    k + p.right_end,
                    &mut stack,
                    &mut |g| parts.push(f(g)),
                );
                parts.into_iter().sum::<T>()
            })
            .collect::<Vec<T>>()
            .into_iter()
            .sum()
    }

    fn roots(&self) -> Vec<Root> {
        let mut roots = Vec::new();
        for (idx, p) in self.placed.iter().enumerate() {
            if let Some(range) = &p.offsets {
                for k in range.clone() {
                    roots.push((idx, k));
                }
            }
        }
        roots
    }

    fn walk<F: FnMut(&LongEdgeGraph)>(
        &self,
        budget: u32,
        min_offset: u32,
        stack: &mut Vec<LongEdgeGraph>,
        f: &mut F,
    ) {
        if budget == 0 {
            f(&LongEdgeGraph::disjoint_union(stack.iter()));
            return;
        }
        for p in &self.placed {
            if p.cogenus > budget {
                continue;
            }
            let Some(range) = &p.offsets else { continue };
            for k in (*range.start()).max(min_offset)..=*range.end() {
                stack.push(p.template.offset(k));
                self.walk(budget - p.cogenus, k + p.right_end, stack, f);
                stack.pop();
            }
        }
    }
}

/// All allowable long-edge graphs of cogenus `delta` for `d`.
pub fn enumerate_graphs(delta: u32, d: u32) -> Vec<LongEdgeGraph> {
    let mut out = Vec::new();
    GraphEnumerator::new(delta, d).for_each(|g| out.push(g.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(triples: &[(i64, i64, i64)]) -> LongEdgeGraph {
        LongEdgeGraph::from_triples(triples.iter().copied()).unwrap()
    }

    #[test]
    fn cogenus_one_templates() {
        let cat = enumerate_templates(1);
        assert_eq!(cat.templates(), &[g(&[(0, 1, 2)]), g(&[(0, 2, 1)])]);
        assert!(enumerate_templates(0).is_empty());
    }

    #[test]
    fn catalog_members_are_templates() {
        for delta in 1..=5 {
            let cat = enumerate_templates(delta);
            for t in cat.templates() {
                assert!(t.is_template(), "{t}");
                assert_eq!(t.cogenus(), delta);
                assert!(t.right_end() <= delta + 1);
            }
            let mut dedup = cat.templates().to_vec();
            dedup.dedup();
            assert_eq!(dedup.len(), cat.len());
        }
    }

    #[test]
    fn offsets_of_named_templates() {
        let cyc = g(&[(0, 2, 1)]);
        let stub = g(&[(0, 1, 2)]);
        let gq = g(&[(0, 1, 2), (0, 2, 1), (0, 2, 1)]);
        assert_eq!(min_allowable_offset(&cyc), 1);
        assert_eq!(min_allowable_offset(&stub), 2);
        assert_eq!(min_allowable_offset(&gq), 4);
        for d in 1..12 {
            let expect = |lo: u32, hi: i64| (lo as i64 <= hi).then_some(lo..=hi as u32);
            assert_eq!(allowable_offsets(&cyc, d), expect(1, d as i64 - 1));
            assert_eq!(allowable_offsets(&stub, d), expect(2, d as i64 - 1));
        }
        assert_eq!(allowable_offsets(&cyc, 1), None);
    }

    #[test]
    fn offset_ranges_match_allowability() {
        for delta in 1..=3 {
            for t in enumerate_templates(delta).templates() {
                for d in 1..=10 {
                    let range = allowable_offsets(t, d);
                    for k in 0..=d + 2 {
                        let inside = range.as_ref().is_some_and(|r| r.contains(&k));
                        assert_eq!(t.offset(k).is_allowable(d), inside, "{t} k={k} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn cogenus_one_graphs_for_d3() {
        let mut got = enumerate_graphs(1, 3);
        got.sort();
        let mut want = vec![g(&[(1, 3, 1)]), g(&[(2, 4, 1)]), g(&[(2, 3, 2)])];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(enumerate_graphs(0, 5), vec![LongEdgeGraph::empty()]);
    }

    #[test]
    fn par_sum_matches_sequential_count() {
        for delta in 0..=3 {
            for d in 1..=7 {
                let e = GraphEnumerator::new(delta, d);
                let mut n = 0usize;
                e.for_each(|_| n += 1);
                assert_eq!(e.par_sum(|_| 1usize), n);
            }
        }
    }
}
