//! DIMACS graph reader/writer with a weight extension line
//! `w <vertex> <p>/<q>` (1-indexed vertex, exact rational weight).

use rvmis::graph::{build_graph, Graph, VertexWeights};
use rvmis::ratio::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimacsError {
    #[error("line {line}: edge or weight line before the problem line")]
    EdgeBeforeProblem { line: usize },
    #[error("line {line}: malformed {what} line")]
    Malformed { line: usize, what: &'static str },
    #[error("line {line}: duplicate problem line")]
    DuplicateProblem { line: usize },
    #[error("line {line}: vertex {v} outside 1..={n}")]
    VertexRange { line: usize, v: usize, n: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("no problem line found")]
    MissingProblem,
}

/// Parses DIMACS text: `c` comments, one `p edge <n> <m>` line, `e <u> <v>`
/// edges and optional `w <v> <p>/<q>` weights. An `m` that disagrees with
/// the number of distinct edges is tolerated. Returns weights only when at
/// least one `w` line is present; unlisted vertices default to weight 1.
pub fn parse_dimacs(text: &str) -> Result<(Graph, Option<VertexWeights>), DimacsError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut weights: Vec<(usize, Rational)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => {}
            Some(&"p") => {
                if n.is_some() {
                    return Err(DimacsError::DuplicateProblem { line });
                }
                let parsed = (tokens.len() == 4 && tokens[1] == "edge")
                    .then(|| tokens[2].parse::<usize>().ok())
                    .flatten();
                match parsed {
                    Some(v) => n = Some(v),
                    None => return Err(DimacsError::Malformed { line, what: "problem" }),
                }
            }
            Some(&"e") => {
                let n = n.ok_or(DimacsError::EdgeBeforeProblem { line })?;
                if tokens.len() != 3 {
                    return Err(DimacsError::Malformed { line, what: "edge" });
                }
                let u: usize = tokens[1]
                    .parse()
                    .map_err(|_| DimacsError::Malformed { line, what: "edge" })?;
                let v: usize = tokens[2]
                    .parse()
                    .map_err(|_| DimacsError::Malformed { line, what: "edge" })?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(DimacsError::VertexRange { line, v: x, n });
                    }
                }
                if u == v {
                    return Err(DimacsError::SelfLoop { line, v: u });
                }
                edges.push((u - 1, v - 1));
            }
            Some(&"w") => {
                let n = n.ok_or(DimacsError::EdgeBeforeProblem { line })?;
                if tokens.len() != 3 {
                    return Err(DimacsError::Malformed { line, what: "weight" });
                }
                let v: usize = tokens[1]
                    .parse()
                    .map_err(|_| DimacsError::Malformed { line, what: "weight" })?;
                if v == 0 || v > n {
                    return Err(DimacsError::VertexRange { line, v, n });
                }
                let w = parse_rational(tokens[2])
                    .map_err(|_| DimacsError::Malformed { line, what: "weight" })?;
                weights.push((v - 1, w));
            }
            Some(_) => return Err(DimacsError::Malformed { line, what: "unknown" }),
        }
    }
    let n = n.ok_or(DimacsError::MissingProblem)?;
    let g = build_graph(n, &edges).expect("range and loops already checked");
    let w = if weights.is_empty() {
        None
    } else {
        let mut all = vec![rvmis::ratio::rat(1, 1); n];
        for (v, w) in weights {
            all[v] = w;
        }
        Some(VertexWeights::new(all))
    };
    Ok((g, w))
}

pub fn emit_dimacs(g: &Graph, w: Option<&VertexWeights>) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.n(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    if let Some(w) = w {
        for v in 0..g.n() {
            out.push_str(&format!("w {} {}\n", v + 1, format_rational(w.get(v))));
        }
    }
    out
}
