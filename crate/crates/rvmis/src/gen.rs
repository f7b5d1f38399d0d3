//! Instance generators: the k-copy hardness product, the layered greedy
//! counterexample, the tight weighted instance for the LP rounding bound,
//! and seeded random/structured families for benchmarks and tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{build_graph, Graph, VertexWeights};
use crate::kcolored::Coloring;
use crate::ratio::rat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("hardness product requires k >= 3, got {0}")]
    ProductK(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("no simple {d}-regular graph on {n} vertices (need n*d even and d < n)")]
    BadRegular { n: usize, d: usize },
    #[error("cycle length {0} is below 3")]
    ShortCycle(usize),
}

/// The k-copy product: classes `0..k-1` each hold a copy of V; between two
/// such classes, copies of `v` and `u` are adjacent exactly when `(v, u)` is
/// an edge; the final class `k-1` is matched to every other copy of the
/// same vertex. Ids are class-major (`class * n + v`). The optimum satisfies
/// `alpha(G') = n + (k-2) * alpha(G)`.
pub fn gen_hardness_product(g: &Graph, k: usize) -> Result<(Graph, Coloring), GenError> {
    if k < 3 {
        return Err(GenError::ProductK(k));
    }
    let n = g.n();
    let mut edges = Vec::new();
    for i in 0..(k - 1) {
        for j in (i + 1)..(k - 1) {
            for (v, u) in g.edges() {
                edges.push((i * n + v, j * n + u));
                edges.push((i * n + u, j * n + v));
            }
        }
    }
    for v in 0..n {
        for i in 0..(k - 1) {
            edges.push((i * n + v, (k - 1) * n + v));
        }
    }
    let product = build_graph(k * n, &edges).expect("product edges are valid");
    let color = (0..k * n).map(|id| id / n.max(1)).collect();
    Ok((product, Coloring { k, color }))
}

/// Three-layer construction on which greedy (and LP-plus-greedy) find only
/// `k + 1` vertices while the second layer alone has `d * k`: `k` first-layer
/// vertices with `d` private neighbors each in layer 2; each layer-2 vertex
/// has `d - 1` private neighbors in layer 3; layer 3 is a clique. First-layer
/// ids are lowest so the deterministic greedy tie-break reproduces the bad
/// run.
pub fn gen_layered_counterexample(k: usize, d: usize) -> Graph {
    assert!(d >= 2);
    let l2 = k * d;
    let l3 = k * d * (d - 1);
    let n = k + l2 + l3;
    let mut edges = Vec::new();
    for i in 0..k {
        for a in 0..d {
            edges.push((i, k + i * d + a));
        }
    }
    for j in 0..l2 {
        for b in 0..(d - 1) {
            edges.push((k + j, k + l2 + j * (d - 1) + b));
        }
    }
    for x in 0..l3 {
        for y in (x + 1)..l3 {
            edges.push((k + l2 + x, k + l2 + y));
        }
    }
    build_graph(n, &edges).expect("construction is simple")
}

/// A clique of size `k` (weights `2k/(k+1)`) joined completely to an
/// independent set of size `k` (unit weights). The maximum-weight
/// independent set is the unit side, of weight `k`, while the degree-aware
/// LP rounding is drawn toward the heavy clique.
pub fn gen_rvlp_tight(k: usize) -> (Graph, VertexWeights) {
    assert!(k >= 1);
    let mut edges = Vec::new();
    for u in 0..k {
        for v in (u + 1)..k {
            edges.push((u, v));
        }
        for v in k..(2 * k) {
            edges.push((u, v));
        }
    }
    let g = build_graph(2 * k, &edges).expect("construction is simple");
    let clique_w = rat(2 * k as i128, k as i128 + 1);
    let w = (0..2 * k).map(|v| if v < k { clique_w } else { rat(1, 1) }).collect();
    (g, VertexWeights::new(w))
}

#[derive(Debug, Clone, PartialEq)]
pub enum RandomKind {
    Gnp { n: usize, p: f64 },
    Regular { n: usize, d: usize },
    CompleteBipartite { a: usize, b: usize },
    /// Disjoint union of the listed cycles and paths, in order.
    CyclesAndPaths { cycles: Vec<usize>, paths: Vec<usize> },
}

pub fn gen_random(kind: &RandomKind, seed: u64) -> Result<Graph, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        RandomKind::Gnp { n, p } => {
            if !(0.0..=1.0).contains(p) {
                return Err(GenError::BadProbability(*p));
            }
            let mut edges = Vec::new();
            for u in 0..*n {
                for v in (u + 1)..*n {
                    if rng.random_bool(*p) {
                        edges.push((u, v));
                    }
                }
            }
            Ok(build_graph(*n, &edges).expect("gnp edges are valid"))
        }
        RandomKind::Regular { n, d } => {
            let (n, d) = (*n, *d);
            if n * d % 2 != 0 || (d > 0 && d >= n) {
                return Err(GenError::BadRegular { n, d });
            }
            // pairing model, rejecting self-loops and parallel edges
            let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
            loop {
                stubs.shuffle(&mut rng);
                let mut edges = Vec::with_capacity(n * d / 2);
                let mut ok = true;
                for pair in stubs.chunks(2) {
                    let (u, v) = (pair[0], pair[1]);
                    if u == v || edges.contains(&(u.min(v), u.max(v))) {
                        ok = false;
                        break;
                    }
                    edges.push((u.min(v), u.max(v)));
                }
                if ok {
                    return Ok(build_graph(n, &edges).expect("pairing edges are valid"));
                }
            }
        }
        RandomKind::CompleteBipartite { a, b } => {
            let mut edges = Vec::new();
            for u in 0..*a {
                for v in *a..(*a + *b) {
                    edges.push((u, v));
                }
            }
            Ok(build_graph(a + b, &edges).expect("biclique edges are valid"))
        }
        RandomKind::CyclesAndPaths { cycles, paths } => {
            let mut edges = Vec::new();
            let mut base = 0;
            for &len in cycles {
                if len < 3 {
                    return Err(GenError::ShortCycle(len));
                }
                for i in 0..len {
                    edges.push((base + i, base + (i + 1) % len));
                }
                base += len;
            }
            for &len in paths {
                for i in 0..len.saturating_sub(1) {
                    edges.push((base + i, base + i + 1));
                }
                base += len;
            }
            Ok(build_graph(base, &edges).expect("union edges are valid"))
        }
    }
}

/// All labeled graphs on `n` vertices, by edge bitmask. Intended for
/// exhaustive checks at small `n`.
pub fn enumerate_all(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    assert!(m < 40, "enumeration is only meant for small n");
    (0u64..(1u64 << m)).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        build_graph(n, &edges).expect("mask edges are valid")
    })
}

/// All labeled connected graphs on `n` vertices.
pub fn enumerate_connected(n: usize) -> impl Iterator<Item = Graph> {
    enumerate_all(n).filter(|g| g.is_connected())
}

/// Recognizable fixed graphs used across tests and benchmarks.
pub fn petersen() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    build_graph(10, &edges).expect("Petersen graph is simple")
}

pub fn cycle(n: usize) -> Graph {
    gen_random(&RandomKind::CyclesAndPaths { cycles: vec![n], paths: vec![] }, 0)
        .expect("cycle length checked by caller")
}

pub fn path(n: usize) -> Graph {
    gen_random(&RandomKind::CyclesAndPaths { cycles: vec![], paths: vec![n] }, 0)
        .expect("paths are always valid")
}
