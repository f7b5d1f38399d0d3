//! The 7/9-approximation for graphs of average degree at most 2: a
//! simplification loop (0/1/2-elimination plus half-integral LP fixing)
//! that partitions the vertices into V1 and V2, a constructively maximum
//! independent set I2 in H2 with no edges to V1, greedy on H1, and an
//! equal-size lift back through the edge rewirings.

use std::collections::BTreeSet;

use crate::classic;
use crate::graph::{build_graph, Graph, IndependentSet, VertexWeights};
use crate::lp;
use crate::ratio::{rat, Rational};

/// One simplification step. Vertices keep their original ids throughout;
/// only `Rewire` changes the graph itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Avg2Event {
    /// Isolated vertex moved to V2 and designated.
    Move0 { v: usize },
    /// Degree-1 vertex `u` and its neighbor `v` moved; `u` designated.
    Move1 { u: usize, v: usize },
    /// Degree-2 vertex `v1` with adjacent neighbors; all three moved; `v1`
    /// designated.
    Triangle { v1: usize, v2: usize, v3: usize },
    /// Degree-2 vertex `v1` with non-adjacent neighbors; `v1` and `v2` (the
    /// lower id) moved, `v2` designated, and `v2`'s edges into V1 (`moved`)
    /// transferred to the surviving neighbor `v3`.
    Rewire { v1: usize, v2: usize, v3: usize, moved: Vec<usize> },
    /// Integrally-valued vertices of the half-integral LP on H1 moved; the
    /// ones designated.
    NtFix { ones: Vec<usize>, zeros: Vec<usize> },
}

/// Terminal state of the simplification loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition12 {
    /// The rewired graph G', on the original vertex ids.
    pub rewired: Graph,
    /// Membership in V1 (the surviving side).
    pub in_v1: Vec<bool>,
    /// I2: the designated maximum independent set of H2, with no edges to V1.
    pub designated: IndependentSet,
    pub events: Vec<Avg2Event>,
}

impl Partition12 {
    pub fn v1(&self) -> Vec<usize> {
        (0..self.rewired.n()).filter(|&v| self.in_v1[v]).collect()
    }

    pub fn v2(&self) -> Vec<usize> {
        (0..self.rewired.n()).filter(|&v| !self.in_v1[v]).collect()
    }

    pub fn h1(&self) -> (Graph, Vec<usize>) {
        self.rewired.induced(&self.v1())
    }

    pub fn h2(&self) -> (Graph, Vec<usize>) {
        self.rewired.induced(&self.v2())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Avg2Result {
    pub set: IndependentSet,
    /// True when the input's average degree is at most 2, the range for
    /// which the 7/9 ratio is proved.
    pub guarantee_applies: bool,
}

/// Runs simplifications to a fixpoint: lowest-numbered applicable rule
/// first (0-elim, 1-elim, 2-elim, LP fixing), lowest-id vertex first.
/// Terminal H1 has minimum degree at least 3 and an all-half LP optimum.
pub fn simplify(g: &Graph) -> Partition12 {
    let n = g.n();
    let mut edges: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    let mut in_v1 = vec![true; n];
    let mut designated: BTreeSet<usize> = BTreeSet::new();
    let mut events = Vec::new();

    let h1_degree = |edges: &BTreeSet<(usize, usize)>, in_v1: &[bool], v: usize| -> usize {
        edges
            .iter()
            .filter(|&&(a, b)| (a == v || b == v) && in_v1[a] && in_v1[b])
            .count()
    };
    let h1_neighbors = |edges: &BTreeSet<(usize, usize)>, in_v1: &[bool], v: usize| -> Vec<usize> {
        edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v && in_v1[b] {
                    Some(b)
                } else if b == v && in_v1[a] {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    };

    loop {
        let low = (0..n)
            .filter(|&v| in_v1[v])
            .map(|v| (h1_degree(&edges, &in_v1, v), v))
            .filter(|&(d, _)| d <= 2)
            .min();
        match low {
            Some((0, v)) => {
                in_v1[v] = false;
                designated.insert(v);
                events.push(Avg2Event::Move0 { v });
            }
            Some((1, u)) => {
                let v = h1_neighbors(&edges, &in_v1, u)[0];
                in_v1[u] = false;
                in_v1[v] = false;
                designated.insert(u);
                events.push(Avg2Event::Move1 { u, v });
            }
            Some((2, v1)) => {
                let nb = h1_neighbors(&edges, &in_v1, v1);
                let (a, b) = (nb[0].min(nb[1]), nb[0].max(nb[1]));
                if edges.contains(&(a, b)) {
                    in_v1[v1] = false;
                    in_v1[a] = false;
                    in_v1[b] = false;
                    designated.insert(v1);
                    events.push(Avg2Event::Triangle { v1, v2: a, v3: b });
                } else {
                    let (v2, v3) = (a, b);
                    in_v1[v1] = false;
                    in_v1[v2] = false;
                    let moved: Vec<usize> = h1_neighbors(&edges, &in_v1, v2);
                    for &x in &moved {
                        edges.remove(&(v2.min(x), v2.max(x)));
                        edges.insert((v3.min(x), v3.max(x))); // collapses parallels
                    }
                    designated.insert(v2);
                    events.push(Avg2Event::Rewire { v1, v2, v3, moved });
                }
            }
            _ => {
                // LP fixing on H1.
                let members: Vec<usize> = (0..n).filter(|&v| in_v1[v]).collect();
                if members.is_empty() {
                    break;
                }
                let cur = build_graph(n, &edges.iter().copied().collect::<Vec<_>>())
                    .expect("simplification preserves a simple graph");
                let (h1, new_to_old) = cur.induced(&members);
                let sol = lp::nt_solve(&h1, &VertexWeights::unit(h1.n()));
                let ones = sol.ones();
                let zeros = sol.zeros();
                if ones.is_empty() && zeros.is_empty() {
                    break;
                }
                let ones: Vec<usize> = ones.into_iter().map(|v| new_to_old[v]).collect();
                let zeros: Vec<usize> = zeros.into_iter().map(|v| new_to_old[v]).collect();
                for &v in ones.iter().chain(zeros.iter()) {
                    in_v1[v] = false;
                }
                designated.extend(ones.iter().copied());
                events.push(Avg2Event::NtFix { ones, zeros });
            }
        }
    }

    let rewired = build_graph(n, &edges.into_iter().collect::<Vec<_>>())
        .expect("simplification preserves a simple graph");
    let designated = IndependentSet::new(designated);
    debug_assert!(designated.is_independent(&rewired));
    debug_assert!(designated
        .members()
        .all(|v| rewired.neighbors(v).iter().all(|&u| !in_v1[u])));
    Partition12 { rewired, in_v1, designated, events }
}

/// MIS with ratio at least 7/9 on graphs of average degree at most 2:
/// greedy on the terminal H1, the designated set on H2, and an equal-size
/// lift back through the rewirings.
pub fn solve_avg2(g: &Graph) -> Avg2Result {
    let p = simplify(g);
    let (h1, new_to_old) = p.h1();
    let mut set: BTreeSet<usize> = classic::greedy(&h1)
        .members()
        .map(|v| new_to_old[v])
        .collect();
    set.extend(p.designated.members());

    for event in p.events.iter().rev() {
        if let Avg2Event::Rewire { v1, v2, v3, .. } = event {
            let hits = [*v1, *v2, *v3]
                .iter()
                .filter(|v| set.contains(v))
                .count();
            if hits == 1 {
                set.remove(v1);
                set.remove(v2);
                set.remove(v3);
                set.insert(*v1);
            }
            // hits == 0 or hits == {v2, v3}: the set is unchanged.
        }
    }

    let set = IndependentSet::new(set);
    assert!(set.is_independent(g), "lifted solution must be independent");
    // average degree 2m/n is at most 2 exactly when m <= n
    let guarantee_applies = g.edge_count() <= g.n();
    Avg2Result { set, guarantee_applies }
}

/// The polynomial `g(x, y) = 4x^2 + 2y^2 - 2x - 12xy - 9y + 7`, nonnegative
/// on `[3/2, inf) x [0, 1/2]` with equality at `(3/2, 1/2)`; this certifies
/// the 7/9 ratio.
pub fn g_poly(x: Rational, y: Rational) -> Rational {
    rat(4, 1) * x * x + rat(2, 1) * y * y - rat(2, 1) * x - rat(12, 1) * x * y
        - rat(9, 1) * y
        + rat(7, 1)
}
