//! Brute-force / branch-and-bound ground truth for MIS, MWIS and the
//! half-integral LP optimum. Used by tests and acceptance criteria; refuses
//! instances above its size limits rather than degrading to a heuristic.

use crate::graph::{Graph, IndependentSet, VertexWeights};
use crate::ratio::{rat, Rational};

/// Hard size limit for the branch-and-bound solver.
pub const DEFAULT_MWIS_LIMIT: usize = 40;

/// Enumeration limit for the 3^n half-integral LP brute force.
pub const LP_BRUTEFORCE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the exact-solver limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("weight vector length {0} does not match vertex count {1}")]
    WeightMismatch(usize, usize),
}

/// Exact maximum-weight independent set by branch and bound.
///
/// Branches on a maximum-degree vertex (include branch first), prunes with a
/// greedy clique-cover bound, and among equal-weight optima returns the
/// lexicographically smallest member set.
pub fn mwis_exact(g: &Graph, w: &VertexWeights) -> Result<IndependentSet, OracleError> {
    mwis_exact_with_limit(g, w, DEFAULT_MWIS_LIMIT)
}

/// Unit-weight convenience wrapper.
pub fn mis_exact(g: &Graph) -> Result<IndependentSet, OracleError> {
    mwis_exact(g, &VertexWeights::unit(g.n()))
}

pub fn mwis_exact_with_limit(
    g: &Graph,
    w: &VertexWeights,
    limit: usize,
) -> Result<IndependentSet, OracleError> {
    let n = g.n();
    if n > limit.min(64) {
        return Err(OracleError::TooLarge { n, limit: limit.min(64) });
    }
    if w.len() != n {
        return Err(OracleError::WeightMismatch(w.len(), n));
    }
    let solver = BnB::new(g, w);
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let target = solver.max_weight(full);

    // Lexicographically smallest optimum: commit vertices in ascending id
    // order whenever the remainder can still reach the optimal weight, and
    // stop as soon as the target is met (shorter sets sort first).
    let mut members = Vec::new();
    let mut acc = rat(0, 1);
    let mut mask = full;
    for v in 0..n {
        if acc == target {
            break;
        }
        if mask & (1 << v) == 0 {
            continue;
        }
        let after = mask & !solver.closed[v];
        if acc + w.get(v) + solver.max_weight(after & !((1u64 << v) - 1)) == target {
            members.push(v);
            acc += w.get(v);
            mask = after;
        } else {
            mask &= !(1 << v);
        }
    }
    debug_assert_eq!(acc, target);
    Ok(IndependentSet::new(members))
}

/// Exact optimal weight of an MWIS instance (same limits as [`mwis_exact`]).
pub fn mwis_weight(g: &Graph, w: &VertexWeights) -> Result<Rational, OracleError> {
    let n = g.n();
    if n > DEFAULT_MWIS_LIMIT.min(64) {
        return Err(OracleError::TooLarge { n, limit: DEFAULT_MWIS_LIMIT });
    }
    if w.len() != n {
        return Err(OracleError::WeightMismatch(w.len(), n));
    }
    let solver = BnB::new(g, w);
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(solver.max_weight(full))
}

struct BnB<'a> {
    adj: Vec<u64>,
    closed: Vec<u64>,
    w: &'a VertexWeights,
}

impl<'a> BnB<'a> {
    fn new(g: &Graph, w: &'a VertexWeights) -> BnB<'a> {
        let adj: Vec<u64> = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect();
        let closed = adj.iter().enumerate().map(|(v, m)| m | (1 << v)).collect();
        BnB { adj, closed, w }
    }

    fn max_weight(&self, mask: u64) -> Rational {
        let mut best = rat(0, 1);
        self.search(mask, rat(0, 1), &mut best);
        best
    }

    fn search(&self, mask: u64, acc: Rational, best: &mut Rational) {
        if acc > *best {
            *best = acc;
        }
        if mask == 0 {
            return;
        }
        if acc + self.clique_cover_bound(mask) <= *best {
            return;
        }
        // Branch vertex: maximum degree within the remaining set, lowest id
        // on ties.
        let mut pick = usize::MAX;
        let mut pick_deg = 0usize;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let deg = (self.adj[v] & mask).count_ones() as usize;
            if pick == usize::MAX || deg > pick_deg {
                pick = v;
                pick_deg = deg;
            }
        }
        self.search(mask & !self.closed[pick], acc + self.w.get(pick), best);
        self.search(mask & !(1 << pick), acc, best);
    }

    /// Upper bound: greedily partition the remaining vertices into cliques;
    /// each clique contributes its maximum weight.
    fn clique_cover_bound(&self, mask: u64) -> Rational {
        let mut clique_masks: Vec<u64> = Vec::new();
        let mut clique_max: Vec<Rational> = Vec::new();
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let mut placed = false;
            for (i, cm) in clique_masks.iter_mut().enumerate() {
                if *cm & !self.adj[v] == 0 {
                    *cm |= 1 << v;
                    if self.w.get(v) > clique_max[i] {
                        clique_max[i] = self.w.get(v);
                    }
                    placed = true;
                    break;
                }
            }
            if !placed {
                clique_masks.push(1 << v);
                clique_max.push(self.w.get(v));
            }
        }
        clique_max.into_iter().sum()
    }
}

/// Maximum of `Σ w_i·x_i` over feasible half-integral assignments
/// `x ∈ {0, 1/2, 1}^n` with `x_i + x_j ≤ 1` on every edge, by enumerating
/// all `3^n` assignments.
pub fn lp_half_bruteforce(g: &Graph, w: &VertexWeights) -> Result<Rational, OracleError> {
    let n = g.n();
    if n > LP_BRUTEFORCE_LIMIT {
        return Err(OracleError::TooLarge { n, limit: LP_BRUTEFORCE_LIMIT });
    }
    if w.len() != n {
        return Err(OracleError::WeightMismatch(w.len(), n));
    }
    let edges = g.edges();
    let mut x = vec![0u8; n]; // value in halves: 0, 1, 2
    let mut best = rat(0, 1);
    loop {
        if edges.iter().all(|&(u, v)| x[u] + x[v] <= 2) {
            let obj: Rational = (0..n).map(|v| w.get(v) * rat(x[v] as i128, 2)).sum();
            if obj > best {
                best = obj;
            }
        }
        // base-3 increment
        let mut i = 0;
        loop {
            if i == n {
                return Ok(best);
            }
            if x[i] == 2 {
                x[i] = 0;
                i += 1;
            } else {
                x[i] += 1;
                break;
            }
        }
    }
}
