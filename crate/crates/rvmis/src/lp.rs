//! Exact optimal half-integral solutions to the MWIS LP relaxation
//! (Nemhauser–Trotter) and the recoverable-value LP rounding.
//!
//! The LP optimum is computed exactly via a max-flow/min-cut computation on
//! the bipartite double cover: each vertex splits into two sides, each edge
//! is duplicated across sides, and weights become integer capacities after
//! common-denominator scaling. `x_v = 1 - (side-A cut value + side-B cut
//! value)/2`, which is always half-integral.

use num_integer::lcm;

use crate::classic;
use crate::graph::{Graph, IndependentSet, VertexWeights};
use crate::ratio::{rat, Rational};

/// A feasible half-integral assignment `x ∈ {0, 1/2, 1}^V` with
/// `x_u + x_v ≤ 1` on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegralSolution {
    /// Per-vertex value in halves: 0, 1 or 2.
    halves: Vec<u8>,
    pub objective: Rational,
}

impl HalfIntegralSolution {
    pub fn value(&self, v: usize) -> Rational {
        rat(self.halves[v] as i128, 2)
    }

    pub fn ones(&self) -> Vec<usize> {
        self.class(2)
    }

    pub fn halves(&self) -> Vec<usize> {
        self.class(1)
    }

    pub fn zeros(&self) -> Vec<usize> {
        self.class(0)
    }

    fn class(&self, h: u8) -> Vec<usize> {
        (0..self.halves.len()).filter(|&v| self.halves[v] == h).collect()
    }

    pub fn is_feasible(&self, g: &Graph) -> bool {
        g.edges().iter().all(|&(u, v)| self.halves[u] + self.halves[v] <= 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("vertex {0} is isolated; pre-include isolated vertices before rounding")]
    IsolatedVertex(usize),
}

/// Optimal half-integral solution of the MWIS LP relaxation.
///
/// Deterministic: takes the minimum cut closest to the source, then applies
/// a repair loop (a ZERO vertex with no ONE neighbor moves to HALF, which
/// can only happen for zero-weight vertices and preserves the objective).
pub fn nt_solve(g: &Graph, w: &VertexWeights) -> HalfIntegralSolution {
    assert_eq!(w.len(), g.n());
    let n = g.n();
    let scale: i128 = w
        .as_slice()
        .iter()
        .fold(1i128, |acc, r| lcm(acc, *r.denom()));
    let caps: Vec<i128> = (0..n).map(|v| (w.get(v) * rat(scale, 1)).to_integer()).collect();

    // Nodes: 0 = source, 1..=n side A, n+1..=2n side B, 2n+1 = sink.
    let source = 0;
    let sink = 2 * n + 1;
    let mut flow = Dinic::new(2 * n + 2);
    let inf: i128 = caps.iter().sum::<i128>() * 2 + 1;
    for v in 0..n {
        flow.add_edge(source, 1 + v, caps[v]);
        flow.add_edge(1 + n + v, sink, caps[v]);
    }
    for (u, v) in g.edges() {
        flow.add_edge(1 + u, 1 + n + v, inf);
        flow.add_edge(1 + v, 1 + n + u, inf);
    }
    flow.max_flow(source, sink);
    let reach = flow.residual_reachable(source);

    let mut halves = vec![0u8; n];
    for v in 0..n {
        let cover_a = !reach[1 + v] as u8; // edge source->A_v crosses the cut
        let cover_b = reach[1 + n + v] as u8; // edge B_v->sink crosses the cut
        halves[v] = 2 - (cover_a + cover_b);
    }

    // Repair: every ZERO vertex must have a ONE neighbor.
    loop {
        let fix = (0..n).find(|&v| {
            halves[v] == 0 && !g.neighbors(v).iter().any(|&u| halves[u] == 2)
        });
        match fix {
            Some(v) => halves[v] = 1,
            None => break,
        }
    }

    let objective: Rational = (0..n).map(|v| w.get(v) * rat(halves[v] as i128, 2)).sum();
    let sol = HalfIntegralSolution { halves, objective };
    debug_assert!(sol.is_feasible(g));
    sol
}

/// Recoverable-value LP rounding: solve the LP with weights `w_v/(d(v)+1)`,
/// keep ONE, drop ZERO, run weighted greedy on the HALF-induced subgraph.
///
/// Output weight is at least twice the RV-LP optimum, hence at least
/// `Σ_{v∈I} 2·w_v/(d(v)+1)` for every independent set `I`, and also at least
/// `Σ_{v∈V} w_v/(d(v)+1)`.
pub fn rv_lp_round(g: &Graph, w: &VertexWeights) -> Result<IndependentSet, LpError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(LpError::IsolatedVertex(v));
    }
    let rv_weights = VertexWeights::new(
        (0..g.n()).map(|v| w.get(v) / rat(g.degree(v) as i128 + 1, 1)).collect(),
    );
    let sol = nt_solve(g, &rv_weights);
    let mut members: Vec<usize> = sol.ones();
    let half = sol.halves();
    let (h, new_to_old) = g.induced(&half);
    let hw = VertexWeights::new(new_to_old.iter().map(|&v| w.get(v)).collect());
    let picked = classic::weighted_greedy(&h, &hw);
    members.extend(picked.members().map(|v| new_to_old[v]));
    let out = IndependentSet::new(members);
    debug_assert!(out.is_independent(g));
    Ok(out)
}

struct Edge {
    to: usize,
    cap: i128,
    rev: usize,
}

struct Dinic {
    adj: Vec<Vec<Edge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Dinic {
        Dinic {
            adj: (0..n).map(|_| Vec::new()).collect(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i128) {
        let fwd = self.adj[to].len();
        let bwd = self.adj[from].len();
        self.adj[from].push(Edge { to, cap, rev: fwd });
        self.adj[to].push(Edge { to: from, cap: 0, rev: bwd });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for e in &self.adj[v] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, f: i128) -> i128 {
        if v == t {
            return f;
        }
        while self.iter[v] < self.adj[v].len() {
            let i = self.iter[v];
            let (to, cap, rev) = {
                let e = &self.adj[v][i];
                (e.to, e.cap, e.rev)
            };
            if cap > 0 && self.level[v] < self.level[to] {
                let d = self.dfs(to, t, f.min(cap));
                if d > 0 {
                    self.adj[v][i].cap -= d;
                    self.adj[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual graph; the source side of
    /// the minimum cut closest to the source.
    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for e in &self.adj[v] {
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}
