//! Experiment orchestration: named instance families, a named-algorithm
//! registry, and a deterministic trial runner.
//!
//! Seed scheme: the trial at position `t` of algorithm `a` on instance `i`
//! runs with `seed = master_seed + 1_000_003 * i + 1_009 * a + t`. This
//! makes every report reproducible from the config alone and keeps seeds
//! across instances/algorithms disjoint for the trial counts in use.

use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use rvmis::classic;
use rvmis::gen::{self, RandomKind};
use rvmis::graph::{recoverable_value, Graph, IndependentSet, VertexWeights};
use rvmis::kcolored::{self, Coloring};
use rvmis::layered::{self, PlgVariant};
use rvmis::lp;
use rvmis::oracle;
use rvmis::ratio::{format_rational, parse_rational, rat, Rational};
use rvmis::reductions::{reduce_low_degree, ReduceOptions};
use rvmis::avg2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown algorithm '{0}'")]
    UnknownAlgorithm(String),
    #[error("unknown instance family '{0}'")]
    UnknownFamily(String),
    #[error("family '{family}' is missing parameter '{param}'")]
    MissingParam { family: String, param: &'static str },
    #[error("invalid parameters for family '{family}': {message}")]
    BadParams { family: String, message: String },
    #[error("invalid rho '{0}'")]
    BadRho(String),
    #[error("algorithm '{algo}' cannot run on this instance: {message}")]
    Inapplicable { algo: String, message: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: String,
    #[serde(default)]
    pub params: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceSpec>,
    pub algorithms: Vec<String>,
    /// Recoverable-value parameter, as "p/q" or "p"; defaults to 7/3.
    #[serde(default)]
    pub rho: Option<String>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub master_seed: u64,
}

fn default_trials() -> u64 {
    1
}

/// Exact and decimal views of one rational quantity; reports carry both.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExactValue {
    pub exact: String,
    pub decimal: f64,
}

impl ExactValue {
    pub fn of(x: Rational) -> ExactValue {
        ExactValue {
            exact: format_rational(x),
            decimal: x.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub family: String,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub algorithm: String,
    pub n: usize,
    pub edges: usize,
    pub trials: u64,
    pub seed_first: u64,
    pub seed_last: u64,
    pub mean_weight: ExactValue,
    pub min_weight: ExactValue,
    pub max_weight: ExactValue,
    /// 99% normal-approximation confidence interval; equals the mean for
    /// deterministic algorithms.
    pub ci99_low: f64,
    pub ci99_high: f64,
    pub oracle_weight: Option<ExactValue>,
    /// mean / oracle, present when the oracle ran; always at most 1.
    pub ratio_to_oracle: Option<f64>,
    pub rho: ExactValue,
    /// Recoverable value of the oracle optimum at rho, when available.
    pub rv_of_optimum: Option<ExactValue>,
    pub duration_ms: u64,
}

/// Largest instance the exact oracle is asked to solve inside reports.
pub const ORACLE_REPORT_LIMIT: usize = 26;

pub fn build_instance(spec: &InstanceSpec) -> Result<(Graph, Option<VertexWeights>), ConfigError> {
    let f = spec.family.as_str();
    let get = |key: &'static str| -> Result<u64, ConfigError> {
        spec.params
            .get(key)
            .and_then(|v| v.as_u64())
            .ok_or(ConfigError::MissingParam { family: f.to_string(), param: key })
    };
    let bad = |message: String| ConfigError::BadParams { family: f.to_string(), message };
    let seed = spec.params.get("seed").and_then(|v| v.as_u64()).unwrap_or(0);
    match f {
        "gnp" => {
            let n = get("n")? as usize;
            let p = spec
                .params
                .get("p")
                .and_then(|v| v.as_f64())
                .ok_or(ConfigError::MissingParam { family: f.to_string(), param: "p" })?;
            let g = gen::gen_random(&RandomKind::Gnp { n, p }, seed)
                .map_err(|e| bad(e.to_string()))?;
            Ok((g, None))
        }
        "regular" => {
            let (n, d) = (get("n")? as usize, get("d")? as usize);
            let g = gen::gen_random(&RandomKind::Regular { n, d }, seed)
                .map_err(|e| bad(e.to_string()))?;
            Ok((g, None))
        }
        "complete-bipartite" => {
            let (a, b) = (get("a")? as usize, get("b")? as usize);
            let g = gen::gen_random(&RandomKind::CompleteBipartite { a, b }, seed)
                .map_err(|e| bad(e.to_string()))?;
            Ok((g, None))
        }
        "cycle" => Ok((gen::cycle(get("n")? as usize), None)),
        "path" => Ok((gen::path(get("n")? as usize), None)),
        "petersen" => Ok((gen::petersen(), None)),
        "layered-counterexample" => {
            let (k, d) = (get("k")? as usize, get("d")? as usize);
            if d < 2 {
                return Err(bad("d must be at least 2".to_string()));
            }
            Ok((gen::gen_layered_counterexample(k, d), None))
        }
        "rvlp-tight" => {
            let k = get("k")? as usize;
            if k < 1 {
                return Err(bad("k must be at least 1".to_string()));
            }
            let (g, w) = gen::gen_rvlp_tight(k);
            Ok((g, Some(w)))
        }
        "hardness-product" => {
            let k = get("k")? as usize;
            let base = spec
                .params
                .get("base")
                .ok_or(ConfigError::MissingParam { family: f.to_string(), param: "base" })?;
            let base: InstanceSpec = serde_json::from_value(base.clone())
                .map_err(|e| bad(format!("base: {e}")))?;
            let (bg, _) = build_instance(&base)?;
            let (g, _) = gen::gen_hardness_product(&bg, k).map_err(|e| bad(e.to_string()))?;
            Ok((g, None))
        }
        other => Err(ConfigError::UnknownFamily(other.to_string())),
    }
}

pub const ALGORITHMS: &[&str] = &[
    "greedy",
    "weighted-greedy",
    "lp-greedy",
    "rv-lp-round",
    "random-permutation",
    "fast-randomized",
    "plg-g3hr",
    "plg-g4",
    "plg-g3avg2",
    "avg2",
    "best-pair",
    "lp-largest-class",
    "reduce-oracle",
    "oracle",
];

pub fn is_randomized(algo: &str) -> bool {
    matches!(
        algo,
        "random-permutation" | "fast-randomized" | "plg-g3hr" | "plg-g4" | "plg-g3avg2"
    )
}

/// Runs one named algorithm. Unit weights are used when the instance
/// carries none. The seed is ignored by deterministic algorithms.
pub fn run_algorithm(
    algo: &str,
    g: &Graph,
    w: Option<&VertexWeights>,
    seed: u64,
) -> Result<IndependentSet, ConfigError> {
    let unit = VertexWeights::unit(g.n());
    let w = w.unwrap_or(&unit);
    let inapplicable = |message: String| ConfigError::Inapplicable {
        algo: algo.to_string(),
        message,
    };
    match algo {
        "greedy" => Ok(classic::greedy(g)),
        "weighted-greedy" => Ok(classic::weighted_greedy(g, w)),
        "lp-greedy" => Ok(classic::lp_plus_greedy(g)),
        "rv-lp-round" => lp::rv_lp_round(g, w).map_err(|e| inapplicable(e.to_string())),
        "random-permutation" => Ok(classic::random_permutation_is(g, seed)),
        "fast-randomized" => Ok(layered::fast_randomized_mwis(g, w, seed)),
        "plg-g3hr" => layered::plg(g, seed, PlgVariant::G3Hr)
            .map_err(|e| inapplicable(e.to_string())),
        "plg-g4" => layered::plg(g, seed, PlgVariant::G4After2Elim)
            .map_err(|e| inapplicable(e.to_string())),
        "plg-g3avg2" => layered::plg(g, seed, PlgVariant::G3Avg2)
            .map_err(|e| inapplicable(e.to_string())),
        "avg2" => Ok(avg2::solve_avg2(g).set),
        "best-pair" => kcolored::best_pair_approx(g, &first_fit_coloring(g))
            .map_err(|e| inapplicable(e.to_string())),
        "lp-largest-class" => kcolored::lp_largest_class_approx(g, &first_fit_coloring(g))
            .map_err(|e| inapplicable(e.to_string())),
        "reduce-oracle" => {
            let red = reduce_low_degree(g, w, ReduceOptions::mwis());
            let inner = oracle::mwis_exact(&red.graph, &red.weights)
                .map_err(|e| inapplicable(e.to_string()))?;
            red.lift(&inner).map_err(|e| inapplicable(e.to_string()))
        }
        "oracle" => oracle::mwis_exact(g, w).map_err(|e| inapplicable(e.to_string())),
        other => Err(ConfigError::UnknownAlgorithm(other.to_string())),
    }
}

/// First-fit coloring in id order, used when an algorithm needs a coloring
/// and the instance does not carry one.
pub fn first_fit_coloring(g: &Graph) -> Coloring {
    let mut color = vec![usize::MAX; g.n()];
    let mut k = 1;
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

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentResult>, ConfigError> {
    for algo in &config.algorithms {
        if !ALGORITHMS.contains(&algo.as_str()) {
            return Err(ConfigError::UnknownAlgorithm(algo.clone()));
        }
    }
    let rho = match &config.rho {
        None => rat(7, 3),
        Some(s) => parse_rational(s).map_err(|_| ConfigError::BadRho(s.clone()))?,
    };
    let mut instances = Vec::new();
    for spec in &config.instances {
        instances.push((spec.clone(), build_instance(spec)?));
    }

    let mut results = Vec::new();
    for (i, (spec, (g, w))) in instances.iter().enumerate() {
        let oracle_sol = if g.n() <= ORACLE_REPORT_LIMIT {
            oracle::mwis_exact_with_limit(g, &weights_or_unit(g, w.as_ref()), ORACLE_REPORT_LIMIT)
                .ok()
        } else {
            None
        };
        for (a, algo) in config.algorithms.iter().enumerate() {
            let trials = if is_randomized(algo) { config.trials.max(1) } else { 1 };
            let start = Instant::now();
            let mut weights_seen: Vec<Rational> = Vec::new();
            let base = config
                .master_seed
                .wrapping_add(1_000_003u64.wrapping_mul(i as u64))
                .wrapping_add(1_009u64.wrapping_mul(a as u64));
            for t in 0..trials {
                let sol = run_algorithm(algo, g, w.as_ref(), base.wrapping_add(t))?;
                weights_seen.push(sol.weight(&weights_or_unit(g, w.as_ref())));
            }
            let duration_ms = start.elapsed().as_millis() as u64;
            let count = rat(weights_seen.len() as i128, 1);
            let mean: Rational = weights_seen.iter().copied().sum::<Rational>() / count;
            let min = weights_seen.iter().copied().min().unwrap();
            let max = weights_seen.iter().copied().max().unwrap();
            let (ci99_low, ci99_high) = normal_ci99(&weights_seen);
            let oracle_weight = oracle_sol
                .as_ref()
                .map(|s| s.weight(&weights_or_unit(g, w.as_ref())));
            let rv_of_optimum = oracle_sol.as_ref().map(|s| {
                recoverable_value(g, s, rho)
                    .expect("oracle output is independent")
                    .total
            });
            results.push(ExperimentResult {
                family: spec.family.clone(),
                params: spec.params.clone(),
                algorithm: algo.clone(),
                n: g.n(),
                edges: g.edge_count(),
                trials,
                seed_first: base,
                seed_last: base.wrapping_add(trials - 1),
                mean_weight: ExactValue::of(mean),
                min_weight: ExactValue::of(min),
                max_weight: ExactValue::of(max),
                ci99_low,
                ci99_high,
                oracle_weight: oracle_weight.map(ExactValue::of),
                ratio_to_oracle: oracle_weight.map(|o| {
                    (mean / o).to_f64().unwrap_or(f64::NAN)
                }),
                rho: ExactValue::of(rho),
                rv_of_optimum: rv_of_optimum.map(ExactValue::of),
                duration_ms,
            });
        }
    }
    Ok(results)
}

fn weights_or_unit(g: &Graph, w: Option<&VertexWeights>) -> VertexWeights {
    w.cloned().unwrap_or_else(|| VertexWeights::unit(g.n()))
}

fn normal_ci99(samples: &[Rational]) -> (f64, f64) {
    let xs: Vec<f64> = samples.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, mean);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let se = (var / n).sqrt();
    const Z99: f64 = 2.5758293035489004;
    (mean - Z99 * se, mean + Z99 * se)
}
