//! Baseline algorithms: greedy, weighted greedy, random permutation, and
//! LP+greedy.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, IndependentSet, VertexWeights};
use crate::lp;
use crate::ratio::rat;

/// Minimum-degree greedy: repeatedly pick a vertex of minimum degree in the
/// shrinking graph (lowest id on ties), add it, delete its closed
/// neighborhood. Output size is at least `Σ_v 1/(d(v)+1)`.
pub fn greedy(g: &Graph) -> IndependentSet {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut picked = Vec::new();
    loop {
        let v = match (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) {
            Some(v) => v,
            None => break,
        };
        picked.push(v);
        remove_closed_neighborhood(g, v, &mut alive, &mut deg);
    }
    IndependentSet::new(picked)
}

/// Weighted greedy: repeatedly pick a vertex maximizing `w_v/(d(v)+1)` in the
/// surviving graph (lowest id on ties), add it, delete its closed
/// neighborhood. Output weight is at least `Σ_v w_v/(d(v)+1)`.
pub fn weighted_greedy(g: &Graph, w: &VertexWeights) -> IndependentSet {
    let n = g.n();
    assert_eq!(w.len(), n);
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut picked = Vec::new();
    loop {
        let v = match (0..n)
            .filter(|&v| alive[v])
            .max_by(|&a, &b| {
                let ra = w.get(a) / rat(deg[a] as i128 + 1, 1);
                let rb = w.get(b) / rat(deg[b] as i128 + 1, 1);
                ra.cmp(&rb).then(b.cmp(&a)) // ties: lowest id wins
            }) {
            Some(v) => v,
            None => break,
        };
        picked.push(v);
        remove_closed_neighborhood(g, v, &mut alive, &mut deg);
    }
    IndependentSet::new(picked)
}

fn remove_closed_neighborhood(g: &Graph, v: usize, alive: &mut [bool], deg: &mut [usize]) {
    let mut gone = vec![v];
    gone.extend(g.neighbors(v).iter().copied().filter(|&u| alive[u]));
    for &u in &gone {
        alive[u] = false;
    }
    for &u in &gone {
        for &x in g.neighbors(u) {
            if alive[x] {
                deg[x] -= 1;
            }
        }
    }
}

/// First layer of a seeded uniformly random permutation: all vertices that
/// appear before every neighbor. Expected weight is at least
/// `Σ_v w_v/(d(v)+1)`.
pub fn random_permutation_is(g: &Graph, seed: u64) -> IndependentSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng);
    first_layer(g, &perm)
}

/// The vertices appearing before all their neighbors in `perm`.
pub fn first_layer(g: &Graph, perm: &[usize]) -> IndependentSet {
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    IndependentSet::new(
        (0..g.n()).filter(|&v| g.neighbors(v).iter().all(|&u| pos[u] > pos[v])),
    )
}

/// LP+greedy: keep the LP's ONE vertices, drop ZERO, run greedy on the
/// HALF-induced subgraph. On graphs of average degree at least 2 this
/// approximates MIS within `5/(2·d_avg + 3)`.
pub fn lp_plus_greedy(g: &Graph) -> IndependentSet {
    let sol = lp::nt_solve(g, &VertexWeights::unit(g.n()));
    let mut members = sol.ones();
    let (h, new_to_old) = g.induced(&sol.halves());
    members.extend(greedy(&h).members().map(|v| new_to_old[v]));
    let out = IndependentSet::new(members);
    debug_assert!(out.is_independent(g));
    out
}
