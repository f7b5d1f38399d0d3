//! MIS approximation on k-colored graphs: exact bipartite MIS via maximum
//! matching, the best-color-pair 2/k algorithm, and the LP-plus-largest-class
//! 2/k algorithm. Also produces proper colorings of prefix graphs by
//! first-fit along the permutation.

use crate::graph::{Graph, IndependentSet, VertexWeights};
use crate::layered::{prefix_graph, LayerDecomposition, PrefixGraph};
use crate::lp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub k: usize,
    /// Class id in `[0, k)` per vertex.
    pub color: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KColoredError {
    #[error("coloring is not proper: edge ({u}, {v}) joins two vertices of class {class}")]
    ImproperColoring { u: usize, v: usize, class: usize },
    #[error("bipartition is not proper: edge ({u}, {v}) stays within one side")]
    ImproperBipartition { u: usize, v: usize },
    #[error("coloring covers {got} vertices but the graph has {expected}")]
    SizeMismatch { got: usize, expected: usize },
}

impl Coloring {
    pub fn check_proper(&self, g: &Graph) -> Result<(), KColoredError> {
        if self.color.len() != g.n() {
            return Err(KColoredError::SizeMismatch { got: self.color.len(), expected: g.n() });
        }
        for (u, v) in g.edges() {
            if self.color[u] == self.color[v] {
                return Err(KColoredError::ImproperColoring { u, v, class: self.color[u] });
            }
        }
        Ok(())
    }

    pub fn class(&self, i: usize) -> Vec<usize> {
        (0..self.color.len()).filter(|&v| self.color[v] == i).collect()
    }
}

/// Proper coloring of the prefix graph `G_k` with at most `k` colors by
/// first-fit along the permutation. A vertex of layer `l <= k` has at most
/// `l - 1 <= k - 1` earlier neighbors, so first-fit never needs color `k`;
/// exceeding it is an invariant breach and aborts.
pub fn color_from_permutation(
    g: &Graph,
    d: &LayerDecomposition,
    k: usize,
) -> (PrefixGraph, Coloring) {
    let prefix = prefix_graph(g, d, k);
    let n = prefix.graph.n();
    let mut slot_of = vec![usize::MAX; g.n()];
    for (slot, &orig) in prefix.vertices.iter().enumerate() {
        slot_of[orig] = slot;
    }
    let mut color = vec![usize::MAX; n];
    for &orig in d.permutation.iter().filter(|&&v| slot_of[v] != usize::MAX) {
        let v = slot_of[orig];
        let mut used = vec![false; k + 1];
        for &u in prefix.graph.neighbors(v) {
            if color[u] != usize::MAX {
                used[color[u]] = true;
            }
        }
        let c = (0..).find(|&c| !used[c]).unwrap();
        assert!(c < k, "first-fit exceeded {k} colors on a prefix graph");
        color[v] = c;
    }
    (prefix, Coloring { k, color })
}

/// Maximum matching in a bipartite graph by repeated phases of
/// vertex-disjoint shortest augmenting paths (Hopcroft-Karp). Returns the
/// matched partner of each vertex.
pub fn bipartite_matching(g: &Graph, sides: &[bool]) -> Result<Vec<Option<usize>>, KColoredError> {
    check_bipartition(g, sides)?;
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    loop {
        // BFS from free left vertices, levels over left vertices only.
        let mut dist = vec![usize::MAX; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| !sides[v] && mate[v].is_none()).collect();
        for &v in &queue {
            dist[v] = 0;
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &r in g.neighbors(u) {
                match mate[r] {
                    None => found = true,
                    Some(next) => {
                        if dist[next] == usize::MAX {
                            dist[next] = dist[u] + 1;
                            queue.push(next);
                        }
                    }
                }
            }
        }
        if !found {
            return Ok(mate);
        }
        fn try_augment(
            g: &Graph,
            u: usize,
            mate: &mut Vec<Option<usize>>,
            dist: &mut Vec<usize>,
        ) -> bool {
            for i in 0..g.neighbors(u).len() {
                let r = g.neighbors(u)[i];
                let ok = match mate[r] {
                    None => true,
                    Some(next) => {
                        dist[next] == dist[u] + 1 && try_augment(g, next, mate, dist)
                    }
                };
                if ok {
                    mate[r] = Some(u);
                    mate[u] = Some(r);
                    return true;
                }
            }
            dist[u] = usize::MAX; // dead end for this phase
            false
        }
        for u in (0..n).filter(|&v| !sides[v]) {
            if mate[u].is_none() && dist[u] == 0 {
                try_augment(g, u, &mut mate, &mut dist);
            }
        }
    }
}

fn check_bipartition(g: &Graph, sides: &[bool]) -> Result<(), KColoredError> {
    if sides.len() != g.n() {
        return Err(KColoredError::SizeMismatch { got: sides.len(), expected: g.n() });
    }
    for (u, v) in g.edges() {
        if sides[u] == sides[v] {
            return Err(KColoredError::ImproperBipartition { u, v });
        }
    }
    Ok(())
}

/// Exact maximum independent set of a bipartite graph: the complement of a
/// minimum vertex cover obtained from a maximum matching by alternating
/// reachability. Size equals `n - |maximum matching|`.
pub fn bipartite_mis_exact(g: &Graph, sides: &[bool]) -> Result<IndependentSet, KColoredError> {
    let mate = bipartite_matching(g, sides)?;
    let n = g.n();
    // Alternating reachability from free left vertices: left-to-right along
    // non-matching edges, right-to-left along matching edges.
    let mut reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| !sides[v] && mate[v].is_none()).collect();
    for &v in &stack {
        reached[v] = true;
    }
    while let Some(u) = stack.pop() {
        if !sides[u] {
            for &r in g.neighbors(u) {
                if mate[u] != Some(r) && !reached[r] {
                    reached[r] = true;
                    stack.push(r);
                }
            }
        } else if let Some(l) = mate[u] {
            if !reached[l] {
                reached[l] = true;
                stack.push(l);
            }
        }
    }
    // Minimum cover = (left unreached) + (right reached); take the rest.
    let mis = IndependentSet::new(
        (0..n).filter(|&v| if sides[v] { !reached[v] } else { reached[v] }),
    );
    debug_assert!(mis.is_independent(g));
    Ok(mis)
}

/// 2/k approximation: exact bipartite MIS on every pair of color classes,
/// keeping the best (ties broken by lexicographic class-pair order).
pub fn best_pair_approx(g: &Graph, c: &Coloring) -> Result<IndependentSet, KColoredError> {
    c.check_proper(g)?;
    if c.k < 2 {
        return Ok(IndependentSet::new(0..g.n()));
    }
    let mut best: Option<IndependentSet> = None;
    for i in 0..c.k {
        for j in (i + 1)..c.k {
            let members: Vec<usize> =
                (0..g.n()).filter(|&v| c.color[v] == i || c.color[v] == j).collect();
            let (sub, new_to_old) = g.induced(&members);
            let sides: Vec<bool> = new_to_old.iter().map(|&v| c.color[v] == j).collect();
            let mis = bipartite_mis_exact(&sub, &sides)?;
            let lifted = IndependentSet::new(mis.members().map(|v| new_to_old[v]));
            if best.as_ref().is_none_or(|b| lifted.len() > b.len()) {
                best = Some(lifted);
            }
        }
    }
    Ok(best.unwrap())
}

/// 2/k approximation: half-integral LP, then the ones plus the largest
/// color class inside the half-valued vertices (lowest class id on ties).
pub fn lp_largest_class_approx(g: &Graph, c: &Coloring) -> Result<IndependentSet, KColoredError> {
    c.check_proper(g)?;
    let sol = lp::nt_solve(g, &VertexWeights::unit(g.n()));
    let halves = sol.halves();
    let best_class = (0..c.k.max(1))
        .max_by_key(|&i| {
            (
                halves.iter().filter(|&&v| c.color[v] == i).count(),
                usize::MAX - i, // prefer the lowest class id on ties
            )
        })
        .unwrap();
    let mut members = sol.ones();
    members.extend(halves.iter().copied().filter(|&v| c.color[v] == best_class));
    let out = IndependentSet::new(members);
    debug_assert!(out.is_independent(g));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::layered::decomposition_from_permutation;
    use crate::oracle::mis_exact;
    use rand::{Rng, SeedableRng};

    fn cycle(n: usize) -> Graph {
        build_graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete_bipartite(a: usize, b: usize) -> (Graph, Vec<bool>) {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..(a + b) {
                edges.push((u, v));
            }
        }
        let g = build_graph(a + b, &edges).unwrap();
        let sides = (0..a + b).map(|v| v >= a).collect();
        (g, sides)
    }

    /// First-fit coloring in id order; used to fabricate proper colorings.
    fn greedy_coloring(g: &Graph, k_min: usize) -> Coloring {
        let mut color = vec![usize::MAX; g.n()];
        let mut k = k_min;
        for v in 0..g.n() {
            let mut c = 0;
            while g.neighbors(v).iter().any(|&u| color[u] == c) {
                c += 1;
            }
            color[v] = c;
            k = k.max(c + 1);
        }
        Coloring { k, color }
    }

    #[test]
    fn prefix_colorings_are_proper() {
        let g = cycle(5);
        let d = decomposition_from_permutation(&g, &[0, 1, 2, 3, 4]);
        let (p1, c1) = color_from_permutation(&g, &d, 1);
        assert_eq!(p1.graph.n(), 1);
        assert_eq!(c1.color, vec![0]);
        let (p2, c2) = color_from_permutation(&g, &d, 2);
        c2.check_proper(&p2.graph).unwrap();
        assert!(c2.color.iter().all(|&c| c < 2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for trial in 0..20 {
            let n = 5 + trial % 7;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(n, &edges).unwrap();
            let d = crate::layered::layer_decompose(&g, trial as u64);
            let (p3, c3) = color_from_permutation(&g, &d, 3);
            c3.check_proper(&p3.graph).unwrap();
        }
    }

    #[test]
    fn bipartite_mis_examples() {
        let (g, sides) = complete_bipartite(3, 7);
        assert_eq!(bipartite_mis_exact(&g, &sides).unwrap().len(), 7);

        let p4 = build_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let sides = vec![false, true, false, true];
        assert_eq!(bipartite_mis_exact(&p4, &sides).unwrap().len(), 2);

        let c6 = cycle(6);
        let sides: Vec<bool> = (0..6).map(|v| v % 2 == 1).collect();
        assert_eq!(bipartite_mis_exact(&c6, &sides).unwrap().len(), 3);
    }

    #[test]
    fn improper_bipartition_rejected_with_edge() {
        let g = cycle(3);
        let err = bipartite_mis_exact(&g, &[false, true, false]).unwrap_err();
        assert_eq!(err, KColoredError::ImproperBipartition { u: 0, v: 2 });
    }

    #[test]
    fn koenig_identity_on_random_bipartite() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let a = rng.random_range(1..8);
            let b = rng.random_range(1..8);
            let mut edges = Vec::new();
            for u in 0..a {
                for v in a..(a + b) {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(a + b, &edges).unwrap();
            let sides: Vec<bool> = (0..a + b).map(|v| v >= a).collect();
            let mate = bipartite_matching(&g, &sides).unwrap();
            let matching = mate.iter().flatten().count() / 2;
            let mis = bipartite_mis_exact(&g, &sides).unwrap();
            assert!(mis.is_independent(&g));
            assert_eq!(matching + mis.len(), g.n());
            assert_eq!(mis.len(), mis_exact(&g).unwrap().len());
        }
    }

    #[test]
    fn two_colored_best_pair_is_exact() {
        let g = cycle(6);
        let c = Coloring { k: 2, color: vec![0, 1, 0, 1, 0, 1] };
        assert_eq!(best_pair_approx(&g, &c).unwrap().len(), 3);
    }

    #[test]
    fn improper_coloring_rejected() {
        let g = cycle(3);
        let c = Coloring { k: 2, color: vec![0, 0, 1] };
        assert_eq!(
            best_pair_approx(&g, &c).unwrap_err(),
            KColoredError::ImproperColoring { u: 0, v: 1, class: 0 }
        );
    }

    #[test]
    fn c5_lp_largest_class() {
        let g = cycle(5);
        let c = Coloring { k: 3, color: vec![0, 1, 0, 1, 2] };
        let out = lp_largest_class_approx(&g, &c).unwrap();
        assert!(out.is_independent(&g));
        assert!(out.len() >= 2);
    }

    #[test]
    fn both_algorithms_meet_two_over_k() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let n = rng.random_range(3..13);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(n, &edges).unwrap();
            let c = greedy_coloring(&g, 2);
            let opt = mis_exact(&g).unwrap().len();
            let pair = best_pair_approx(&g, &c).unwrap();
            assert!(pair.is_independent(&g));
            assert!(c.k * pair.len() >= 2 * opt, "pair {} k {} opt {}", pair.len(), c.k, opt);
            let lp = lp_largest_class_approx(&g, &c).unwrap();
            assert!(lp.is_independent(&g));
            assert!(c.k * lp.len() >= 2 * opt, "lp {} k {} opt {}", lp.len(), c.k, opt);
        }
    }
}
