//! Immutable simple undirected graphs plus the recoverable-value functional.

use std::collections::BTreeSet;

use crate::ratio::{rat, Rational};

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric, and contain no self-loops or
/// duplicates. All edits (merges, deletions) produce new graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("self-loop ({0}, {0}) rejected")]
    SelfLoop(usize),
    #[error("vertices {0} and {1} are adjacent; merge requires non-adjacent endpoints")]
    MergeAdjacent(usize, usize),
    #[error("cannot merge vertex {0} with itself")]
    MergeSameVertex(usize),
    #[error("set {0:?} is not independent: edge ({1}, {2}) inside it")]
    NotIndependent(Vec<usize>, usize, usize),
}

/// Builds a graph from an edge list. Duplicate edges (in either orientation)
/// are collapsed; self-loops and out-of-range endpoints are rejected.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::EndpointOutOfRange(u, v, n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        adj[u].insert(v);
        adj[v].insert(u);
    }
    Ok(Graph {
        adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
    })
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn edgeless(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Exact average degree `2|E|/n`. Panics on the empty graph.
    pub fn avg_degree(&self) -> Rational {
        assert!(self.n() > 0, "average degree of the empty graph");
        rat(2 * self.edge_count() as i128, self.n() as i128)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n()
    }

    /// Induced subgraph on `vertices` (deduplicated, any order). Returns the
    /// subgraph (ids `0..k`) and the map from new id to old id (sorted).
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let new_to_old: Vec<usize> = keep.iter().copied().collect();
        let mut old_to_new = vec![usize::MAX; self.n()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let adj = new_to_old
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter(|&&u| keep.contains(&u))
                    .map(|&u| old_to_new[u])
                    .collect()
            })
            .collect();
        (Graph { adj }, new_to_old)
    }

    /// New graph with `removed` deleted. Returns the old-to-new id map
    /// (`None` for removed vertices).
    pub fn remove_vertices(&self, removed: &BTreeSet<usize>) -> (Graph, Vec<Option<usize>>) {
        let survivors: Vec<usize> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        let (g, new_to_old) = self.induced(&survivors);
        let mut old_to_new = vec![None; self.n()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        (g, old_to_new)
    }

    #[cfg(test)]
    pub(crate) fn assert_invariants(&self) {
        for v in 0..self.n() {
            let mut prev: Option<usize> = None;
            for &u in &self.adj[v] {
                assert!(u < self.n());
                assert_ne!(u, v, "self-loop at {v}");
                assert!(prev.is_none_or(|p| p < u), "unsorted/duplicate at {v}");
                assert!(self.has_edge(u, v), "asymmetric edge ({v}, {u})");
                prev = Some(u);
            }
        }
    }
}

/// Merges two non-adjacent vertices `v` and `w` into a single vertex adjacent
/// to `N(v) ∪ N(w)` (parallel edges collapsed). Returns the new graph and the
/// old-to-new id map; `v` and `w` map to the same new id.
pub fn merge_vertices(g: &Graph, v: usize, w: usize) -> Result<(Graph, Vec<usize>), GraphError> {
    if v == w {
        return Err(GraphError::MergeSameVertex(v));
    }
    if g.has_edge(v, w) {
        return Err(GraphError::MergeAdjacent(v, w));
    }
    let (lo, hi) = (v.min(w), v.max(w));
    // Survivor keeps `lo`'s slot; every id above `hi` shifts down by one.
    let mut old_to_new = vec![0usize; g.n()];
    let mut next = 0;
    for u in 0..g.n() {
        if u == hi {
            old_to_new[u] = old_to_new[lo];
        } else {
            old_to_new[u] = next;
            next += 1;
        }
    }
    let merged = old_to_new[lo];
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n() - 1];
    for (u, x) in g.edges() {
        let (a, b) = (old_to_new[u], old_to_new[x]);
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    debug_assert!(adj[merged].len() <= g.degree(v) + g.degree(w));
    Ok((
        Graph {
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        },
        old_to_new,
    ))
}

/// Per-vertex non-negative rational weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWeights(Vec<Rational>);

impl VertexWeights {
    pub fn new(w: Vec<Rational>) -> VertexWeights {
        assert!(w.iter().all(|x| *x >= rat(0, 1)), "negative weight");
        VertexWeights(w)
    }

    pub fn unit(n: usize) -> VertexWeights {
        VertexWeights(vec![rat(1, 1); n])
    }

    pub fn get(&self, v: usize) -> Rational {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

/// A set of vertices claimed to be pairwise non-adjacent in some graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndependentSet {
    members: BTreeSet<usize>,
}

impl IndependentSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> IndependentSet {
        IndependentSet {
            members: members.into_iter().collect(),
        }
    }

    pub fn empty() -> IndependentSet {
        IndependentSet::default()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    /// Checks pairwise non-adjacency in `g`; returns a witnessing edge on
    /// failure.
    pub fn check_independent(&self, g: &Graph) -> Result<(), GraphError> {
        for &v in &self.members {
            for &u in g.neighbors(v) {
                if u > v && self.members.contains(&u) {
                    return Err(GraphError::NotIndependent(self.to_vec(), v, u));
                }
            }
        }
        Ok(())
    }

    pub fn is_independent(&self, g: &Graph) -> bool {
        self.check_independent(g).is_ok()
    }

    pub fn weight(&self, w: &VertexWeights) -> Rational {
        self.members.iter().map(|&v| w.get(v)).sum()
    }
}

impl FromIterator<usize> for IndependentSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndependentSet::new(iter)
    }
}

/// Recoverable-value accounting for a reference independent set: each member
/// `v` contributes `min(1, rho/(d(v)+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RVReport {
    pub rho: Rational,
    pub reference_set: IndependentSet,
    pub per_vertex: Vec<(usize, Rational)>,
    pub total: Rational,
}

/// The per-vertex recoverable value `min(1, rho/(d+1))`.
pub fn rv_term(rho: Rational, degree: usize) -> Rational {
    let one = rat(1, 1);
    (rho / rat(degree as i128 + 1, 1)).min(one)
}

/// Builds the recoverable-value report of `i` against `g` at parameter `rho`.
pub fn recoverable_value(
    g: &Graph,
    i: &IndependentSet,
    rho: Rational,
) -> Result<RVReport, GraphError> {
    i.check_independent(g)?;
    let per_vertex: Vec<(usize, Rational)> =
        i.members().map(|v| (v, rv_term(rho, g.degree(v)))).collect();
    let total = per_vertex.iter().map(|(_, c)| *c).sum();
    Ok(RVReport {
        rho,
        reference_set: i.clone(),
        per_vertex,
        total,
    })
}

/// `Σ_{v∈s} min(1, k/(d(v)+1))`: the exact probability mass that a uniformly
/// random permutation places each vertex of `s` among the first `k` layers.
pub fn expected_capture(g: &Graph, s: &BTreeSet<usize>, k: usize) -> Rational {
    assert!(k >= 1);
    s.iter()
        .map(|&v| rv_term(rat(k as i128, 1), g.degree(v)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        build_graph(n, &edges).unwrap()
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        build_graph(a + b, &edges).unwrap()
    }

    #[test]
    fn build_k2() {
        let g = build_graph(2, &[(0, 1)]).unwrap();
        assert_eq!((g.degree(0), g.degree(1)), (1, 1));
        g.assert_invariants();
    }

    #[test]
    fn build_c5() {
        let g = cycle(5);
        assert!((0..5).all(|v| g.degree(v) == 2));
        assert_eq!(g.edge_count(), 5);
        g.assert_invariants();
    }

    #[test]
    fn build_dedups_edges() {
        let g = build_graph(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            build_graph(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange(0, 2, 2))
        );
        assert_eq!(build_graph(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = complete_bipartite(3, 7);
        let degsum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(degsum, 2 * g.edge_count());
        assert_eq!(g.avg_degree(), rat(21, 5));
    }

    #[test]
    fn rv_on_c5() {
        let g = cycle(5);
        let i = IndependentSet::new([0, 2]);
        let r = recoverable_value(&g, &i, rat(7, 3)).unwrap();
        assert_eq!(r.total, rat(14, 9));
        assert!(r.per_vertex.iter().all(|(_, c)| *c == rat(7, 9)));
    }

    #[test]
    fn rv_caps_at_one() {
        let g = Graph::edgeless(1);
        let r = recoverable_value(&g, &IndependentSet::new([0]), rat(5, 1)).unwrap();
        assert_eq!(r.total, rat(1, 1));
    }

    #[test]
    fn rv_k37_seven_side() {
        let g = complete_bipartite(3, 7);
        let i = IndependentSet::new(3..10);
        let r = recoverable_value(&g, &i, rat(2, 1)).unwrap();
        assert_eq!(r.total, rat(7, 2));
    }

    #[test]
    fn rv_rejects_dependent_set() {
        let g = cycle(5);
        let err = recoverable_value(&g, &IndependentSet::new([0, 1]), rat(1, 1)).unwrap_err();
        assert!(matches!(err, GraphError::NotIndependent(_, 0, 1)));
    }

    #[test]
    fn expected_capture_examples() {
        // d=2, k=3 -> 1; d=4, k=3 -> 3/5.
        let g = cycle(5);
        assert_eq!(expected_capture(&g, &BTreeSet::from([0]), 3), rat(1, 1));
        let star = complete_bipartite(1, 4);
        assert_eq!(expected_capture(&star, &BTreeSet::from([0]), 3), rat(3, 5));
        let g = complete_bipartite(3, 7);
        let seven: BTreeSet<usize> = (3..10).collect();
        assert_eq!(expected_capture(&g, &seven, 2), rat(7, 2));
    }

    #[test]
    fn merge_path_endpoints() {
        // a-b-c-d-e; remove c, merge b and d.
        let path = build_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (without_c, map) = path.remove_vertices(&BTreeSet::from([2]));
        let b = map[1].unwrap();
        let d = map[3].unwrap();
        let (g, m) = merge_vertices(&without_c, b, d).unwrap();
        let merged = m[b];
        let mut nbrs: Vec<usize> = g.neighbors(merged).to_vec();
        nbrs.sort_unstable();
        assert_eq!(nbrs, vec![m[map[0].unwrap()], m[map[4].unwrap()]]);
        g.assert_invariants();
    }

    #[test]
    fn merge_collapses_parallel_edges() {
        // C4 = u-v-x-w-u; remove u, merge v and w -> single edge to x.
        let c4 = cycle(4);
        let (g, map) = c4.remove_vertices(&BTreeSet::from([0]));
        let (v, x, w) = (map[1].unwrap(), map[2].unwrap(), map[3].unwrap());
        let (merged_g, m) = merge_vertices(&g, v, w).unwrap();
        assert_eq!(merged_g.edge_count(), 1);
        assert!(merged_g.has_edge(m[v], m[x]));
        merged_g.assert_invariants();
    }

    #[test]
    fn merge_star_centers() {
        // Two disjoint stars; merging the centers unions the leaf sets.
        let g = build_graph(6, &[(0, 1), (0, 2), (3, 4), (3, 5)]).unwrap();
        let (merged, m) = merge_vertices(&g, 0, 3).unwrap();
        assert_eq!(merged.degree(m[0]), 4);
        merged.assert_invariants();
    }

    #[test]
    fn merge_rejects_adjacent() {
        let g = cycle(4);
        assert_eq!(merge_vertices(&g, 0, 1), Err(GraphError::MergeAdjacent(0, 1)));
        assert_eq!(merge_vertices(&g, 2, 2), Err(GraphError::MergeSameVertex(2)));
    }
}
