//! Permutation layer decompositions, prefix graphs with structure
//! certification, the fast randomized MWIS algorithm, algorithm PLG and its
//! refinements, and the degeneracy pipeline skeleton.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::avg2;
use crate::classic;
use crate::graph::{Graph, IndependentSet, VertexWeights};
use crate::lp;
use crate::ratio::rat;
use crate::reductions::{reduce_low_degree, ReduceOptions};

/// A vertex permutation plus per-vertex layer index: `layer(v)` is one plus
/// the number of neighbors of `v` appearing earlier in the permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub permutation: Vec<usize>,
    pub layer: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayeredError {
    #[error("vertex {v} has degree {d}, below the required minimum degree {required}")]
    MinDegree { v: usize, d: usize, required: usize },
    #[error("forest solver requires an acyclic graph")]
    Cyclic,
}

/// Seeded uniformly random permutation with its layer indices.
pub fn layer_decompose(g: &Graph, seed: u64) -> LayerDecomposition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng);
    decomposition_from_permutation(g, &perm)
}

pub fn decomposition_from_permutation(g: &Graph, perm: &[usize]) -> LayerDecomposition {
    assert_eq!(perm.len(), g.n());
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let layer = (0..g.n())
        .map(|v| 1 + g.neighbors(v).iter().filter(|&&u| pos[u] < pos[v]).count())
        .collect();
    LayerDecomposition { permutation: perm.to_vec(), layer }
}

/// Induced subgraph on the first `k` layers, with its certification: `G_1`
/// is edgeless, `G_2` is a forest, and `G_k` is `(k-1)`-degenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixGraph {
    pub graph: Graph,
    /// Original id of each prefix-graph vertex.
    pub vertices: Vec<usize>,
}

/// Builds `G_k` and certifies its structure. A certification failure is an
/// invariant breach and aborts.
pub fn prefix_graph(g: &Graph, d: &LayerDecomposition, k: usize) -> PrefixGraph {
    assert!(k >= 1);
    let members: Vec<usize> = (0..g.n()).filter(|&v| d.layer[v] <= k).collect();
    let (graph, vertices) = g.induced(&members);
    if k == 2 {
        assert!(is_forest(&graph), "prefix graph G_2 must be a forest");
    }
    assert!(
        is_degenerate(&graph, k - 1),
        "prefix graph G_{k} must be {}-degenerate",
        k - 1
    );
    PrefixGraph { graph, vertices }
}

/// Degeneracy check by repeated minimum-degree peeling.
pub fn is_degenerate(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut removed = 0;
    loop {
        let next = (0..n).find(|&v| alive[v] && deg[v] <= k);
        match next {
            Some(v) => {
                alive[v] = false;
                removed += 1;
                for &u in g.neighbors(v) {
                    if alive[u] {
                        deg[u] -= 1;
                    }
                }
            }
            None => return removed == n,
        }
    }
}

pub fn is_forest(g: &Graph) -> bool {
    // acyclic iff |E| = n - #components
    let n = g.n();
    let mut seen = vec![false; n];
    let mut components = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    g.edge_count() == n - components
}

/// Exact MWIS on a forest by two-state tree dynamic programming.
pub fn forest_mwis(g: &Graph, w: &VertexWeights) -> Result<IndependentSet, LayeredError> {
    if !is_forest(g) {
        return Err(LayeredError::Cyclic);
    }
    let n = g.n();
    let zero = rat(0, 1);
    let mut take = vec![zero; n];
    let mut skip = vec![zero; n];
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut picked = Vec::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // iterative post-order
        let mut order = Vec::new();
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &u in g.neighbors(v) {
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        for &v in order.iter().rev() {
            take[v] = w.get(v);
            skip[v] = zero;
            for &u in g.neighbors(v) {
                if parent[u] == v {
                    take[v] += skip[u];
                    skip[v] = skip[v] + take[u].max(skip[u]);
                }
            }
        }
        // reconstruct top-down; prefer take on ties
        let mut stack = vec![(root, false)];
        while let Some((v, banned)) = stack.pop() {
            let chosen = !banned && take[v] >= skip[v];
            if chosen {
                picked.push(v);
            }
            for &u in g.neighbors(v) {
                if parent[u] == v {
                    stack.push((u, chosen));
                }
            }
        }
    }
    Ok(IndependentSet::new(picked))
}

/// Fast randomized MWIS: exact MWIS on the forest `G_2` of a seeded random
/// permutation. Expected weight is at least `Σ_{v∈I} 2·w_v/(d(v)+1)` for
/// every independent set `I`.
pub fn fast_randomized_mwis(g: &Graph, w: &VertexWeights, seed: u64) -> IndependentSet {
    let d = layer_decompose(g, seed);
    let prefix = prefix_graph(g, &d, 2);
    let pw = VertexWeights::new(prefix.vertices.iter().map(|&v| w.get(v)).collect());
    let inner = forest_mwis(&prefix.graph, &pw).expect("G_2 is a forest");
    IndependentSet::new(inner.members().map(|v| prefix.vertices[v]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlgVariant {
    /// Permute, LP, greedy on `G_3`; expected size at least
    /// `(15/7)·Σ_{v∈I} 1/(d(v)+1)` when the minimum degree is at least 2.
    G3Hr,
    /// 2-eliminate to minimum degree 3, run PLG on `G_4`, lift; recoverable
    /// value 20/9.
    G4After2Elim,
    /// Pendant-eliminate to minimum degree 2, solve `G_3` with the
    /// average-degree-2 solver, lift; recoverable value 7/3.
    G3Avg2,
}

/// Algorithm PLG and its refinements.
pub fn plg(g: &Graph, seed: u64, variant: PlgVariant) -> Result<IndependentSet, LayeredError> {
    match variant {
        PlgVariant::G3Hr => {
            if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 2) {
                return Err(LayeredError::MinDegree { v, d: g.degree(v), required: 2 });
            }
            Ok(plg_core(g, &layer_decompose(g, seed)))
        }
        PlgVariant::G4After2Elim => {
            let red = reduce_low_degree(
                g,
                &VertexWeights::unit(g.n()),
                ReduceOptions::mis_with_rho(rat(20, 9)),
            );
            let d = layer_decompose(&red.graph, seed);
            let prefix = prefix_graph(&red.graph, &d, 4);
            let inner = lp_greedy_on(&prefix.graph);
            let in_reduced =
                IndependentSet::new(inner.members().map(|v| prefix.vertices[v]));
            Ok(red.lift(&in_reduced).expect("independent by construction"))
        }
        PlgVariant::G3Avg2 => {
            let red = reduce_low_degree(
                g,
                &VertexWeights::unit(g.n()),
                ReduceOptions::mis_pendant_only(),
            );
            let d = layer_decompose(&red.graph, seed);
            let prefix = prefix_graph(&red.graph, &d, 3);
            let inner = avg2::solve_avg2(&prefix.graph).set;
            let in_reduced =
                IndependentSet::new(inner.members().map(|v| prefix.vertices[v]));
            Ok(red.lift(&in_reduced).expect("independent by construction"))
        }
    }
}

/// PLG step 2+3 on a fixed decomposition (exposed so tests can couple seeds
/// across components).
pub fn plg_core(g: &Graph, d: &LayerDecomposition) -> IndependentSet {
    let prefix = prefix_graph(g, d, 3);
    let inner = lp_greedy_on(&prefix.graph);
    IndependentSet::new(inner.members().map(|v| prefix.vertices[v]))
}

fn lp_greedy_on(g: &Graph) -> IndependentSet {
    let sol = lp::nt_solve(g, &VertexWeights::unit(g.n()));
    let mut members = sol.ones();
    let (h, new_to_old) = g.induced(&sol.halves());
    members.extend(classic::greedy(&h).members().map(|v| new_to_old[v]));
    IndependentSet::new(members)
}

/// Runs an injected solver on `G_{δ+1}` for `δ` the minimum degree. With the
/// default greedy inner solver this is a pipeline skeleton only; no
/// recoverable-value bound is claimed.
pub fn degeneracy_pipeline(
    g: &Graph,
    w: &VertexWeights,
    seed: u64,
    inner: impl Fn(&Graph, &VertexWeights) -> IndependentSet,
) -> IndependentSet {
    if g.n() == 0 {
        return IndependentSet::empty();
    }
    let delta = g.min_degree();
    let d = layer_decompose(g, seed);
    let prefix = prefix_graph(g, &d, delta + 1);
    let pw = VertexWeights::new(prefix.vertices.iter().map(|&v| w.get(v)).collect());
    let picked = inner(&prefix.graph, &pw);
    let out = IndependentSet::new(picked.members().map(|v| prefix.vertices[v]));
    debug_assert!(out.is_independent(g));
    out
}

/// Default inner solver: greedy along a degeneracy (min-degree peeling)
/// order.
pub fn greedy_on_degeneracy_order(g: &Graph, _w: &VertexWeights) -> IndependentSet {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        alive[v] = false;
        order.push(v);
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    let mut picked = vec![false; n];
    for &v in &order {
        if !g.neighbors(v).iter().any(|&u| picked[u]) {
            picked[v] = true;
        }
    }
    IndependentSet::new((0..n).filter(|&v| picked[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::oracle::{mis_exact, mwis_weight};
    use rand::{Rng, SeedableRng};

    fn cycle(n: usize) -> Graph {
        build_graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn c5_identity_layers() {
        let g = cycle(5);
        let d = decomposition_from_permutation(&g, &[0, 1, 2, 3, 4]);
        assert_eq!(d.layer, vec![1, 2, 2, 2, 3]);
    }

    #[test]
    fn k4_identity_layers() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in (u + 1)..4 {
                edges.push((u, v));
            }
        }
        let g = build_graph(4, &edges).unwrap();
        let d = decomposition_from_permutation(&g, &[0, 1, 2, 3]);
        assert_eq!(d.layer, vec![1, 2, 3, 4]);
    }

    #[test]
    fn first_vertex_is_layer_one_and_g1_edgeless() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for trial in 0..20 {
            let n = 3 + trial % 8;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(n, &edges).unwrap();
            let d = layer_decompose(&g, trial as u64);
            assert_eq!(d.layer[d.permutation[0]], 1);
            let g1 = prefix_graph(&g, &d, 1);
            assert_eq!(g1.graph.edge_count(), 0);
        }
    }

    #[test]
    fn c5_prefix_two_is_path() {
        let g = cycle(5);
        let d = decomposition_from_permutation(&g, &[0, 1, 2, 3, 4]);
        let p = prefix_graph(&g, &d, 2);
        assert_eq!(p.vertices, vec![0, 1, 2, 3]);
        assert!(is_forest(&p.graph));
        assert_eq!(p.graph.edge_count(), 3);
    }

    #[test]
    fn prefix_graphs_are_degenerate_for_all_k() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for trial in 0..15 {
            let n = 6 + trial % 6;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(n, &edges).unwrap();
            for seed in 0..4u64 {
                let d = layer_decompose(&g, seed);
                for k in 1..=5 {
                    let p = prefix_graph(&g, &d, k); // certifies internally
                    assert!(is_degenerate(&p.graph, k - 1));
                }
            }
        }
    }

    #[test]
    fn forest_mwis_examples() {
        let p3 = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let w = VertexWeights::new(vec![rat(1, 1), rat(5, 1), rat(1, 1)]);
        let s = forest_mwis(&p3, &w).unwrap();
        assert_eq!(s.to_vec(), vec![1]);

        let two_edges = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(forest_mwis(&two_edges, &VertexWeights::unit(4)).unwrap().len(), 2);

        assert_eq!(forest_mwis(&cycle(3), &VertexWeights::unit(3)), Err(LayeredError::Cyclic));
    }

    #[test]
    fn forest_mwis_matches_oracle_on_random_forests() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let n = rng.random_range(1..15);
            // random forest: each vertex v > 0 attaches to a random earlier
            // vertex with probability 0.8
            let mut edges = Vec::new();
            for v in 1..n {
                if rng.random_bool(0.8) {
                    edges.push((rng.random_range(0..v), v));
                }
            }
            let g = build_graph(n, &edges).unwrap();
            let w = VertexWeights::new(
                (0..n).map(|_| rat(rng.random_range(0..9), rng.random_range(1..4))).collect(),
            );
            let s = forest_mwis(&g, &w).unwrap();
            assert!(s.is_independent(&g));
            assert_eq!(s.weight(&w), mwis_weight(&g, &w).unwrap());
        }
    }

    #[test]
    fn fast_randomized_is_independent_and_seed_stable() {
        let g = cycle(7);
        let w = VertexWeights::unit(7);
        for seed in 0..10 {
            let s = fast_randomized_mwis(&g, &w, seed);
            assert!(s.is_independent(&g));
            assert_eq!(s, fast_randomized_mwis(&g, &w, seed));
        }
    }

    #[test]
    fn plg_g3hr_requires_min_degree_two() {
        let p3 = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            plg(&p3, 0, PlgVariant::G3Hr),
            Err(LayeredError::MinDegree { v: 0, d: 1, required: 2 })
        );
    }

    #[test]
    fn plg_c5_avg2_always_optimal() {
        let g = cycle(5);
        for seed in 0..30 {
            let s = plg(&g, seed, PlgVariant::G3Avg2).unwrap();
            assert!(s.is_independent(&g));
            assert_eq!(s.len(), 2);
        }
    }

    #[test]
    fn plg_variants_return_independent_sets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for trial in 0..15 {
            let n = 5 + trial % 8;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(n, &edges).unwrap();
            for variant in [PlgVariant::G4After2Elim, PlgVariant::G3Avg2] {
                let s = plg(&g, trial as u64, variant).unwrap();
                assert!(s.is_independent(&g), "{variant:?} on trial {trial}");
            }
            if g.min_degree() >= 2 {
                let s = plg(&g, trial as u64, PlgVariant::G3Hr).unwrap();
                assert!(s.is_independent(&g));
            }
        }
    }

    #[test]
    fn plg_decomposes_over_components() {
        // Coupled seeds: a fixed permutation of the disjoint union, restricted
        // to each component, gives the same output as running per component.
        let a = cycle(5);
        let b = cycle(4);
        let mut edges = a.edges();
        edges.extend(b.edges().iter().map(|&(u, v)| (u + 5, v + 5)));
        let g = build_graph(9, &edges).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..9).collect();
            perm.shuffle(&mut rng);
            let d = decomposition_from_permutation(&g, &perm);
            let joint = plg_core(&g, &d);

            let perm_a: Vec<usize> = perm.iter().copied().filter(|&v| v < 5).collect();
            let perm_b: Vec<usize> =
                perm.iter().copied().filter(|&v| v >= 5).map(|v| v - 5).collect();
            let da = decomposition_from_permutation(&a, &perm_a);
            let db = decomposition_from_permutation(&b, &perm_b);
            let mut split: Vec<usize> = plg_core(&a, &da).to_vec();
            split.extend(plg_core(&b, &db).members().map(|v| v + 5));
            split.sort_unstable();
            assert_eq!(joint.to_vec(), split);
        }
    }

    #[test]
    fn degeneracy_pipeline_smoke() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        // random 4-regular-ish graph on 20 vertices via gnp fallback
        let mut edges = Vec::new();
        for u in 0..20 {
            for v in (u + 1)..20 {
                if rng.random_bool(0.2) {
                    edges.push((u, v));
                }
            }
        }
        let g = build_graph(20, &edges).unwrap();
        let w = VertexWeights::unit(20);
        let s = degeneracy_pipeline(&g, &w, 3, greedy_on_degeneracy_order);
        assert!(s.is_independent(&g));
        assert!(!s.is_empty());
    }

    #[test]
    fn plg_output_sane_vs_oracle_on_c7() {
        let g = cycle(7);
        let opt = mis_exact(&g).unwrap().len();
        for seed in 0..10 {
            let s = plg(&g, seed, PlgVariant::G3Avg2).unwrap();
            assert!(s.len() <= opt);
            assert!(!s.is_empty());
        }
    }
}
