use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rvmis::graph::{recoverable_value, VertexWeights};
use rvmis::oracle;
use rvmis::ratio::{format_rational, parse_rational, rat};
use rvmis::{avg2, lp};

use rvmis_cli::dimacs::{emit_dimacs, parse_dimacs};
use rvmis_cli::experiment::{
    build_instance, run_algorithm, run_experiment, ExperimentConfig, InstanceSpec, ALGORITHMS,
};
use rvmis_cli::report::{emit_report, ReportFormat};

#[derive(Parser)]
#[command(name = "rvmis", about = "Independent-set approximation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file in DIMACS format (with `w` weight lines
    /// for weighted families).
    Gen {
        /// Instance family (e.g. cycle, gnp, regular, complete-bipartite,
        /// layered-counterexample, rvlp-tight, hardness-product, petersen)
        #[arg(long)]
        family: String,
        /// Family parameters as a JSON object, e.g. '{"n": 5}'
        #[arg(long, default_value = "{}")]
        params: String,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one algorithm on a DIMACS instance file.
    Solve {
        file: PathBuf,
        #[arg(long)]
        algo: String,
        /// Recoverable-value parameter for the report, as "p/q"
        #[arg(long, default_value = "7/3")]
        rho: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the oracle-backed invariant suite on every instance file in a
    /// directory. Exits 2 if any invariant is breached.
    Verify { dir: PathBuf },
    /// Run an experiment config (JSON) and emit a report.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "json")]
        format: String,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Gen { family, params, out } => {
            let params: serde_json::Map<String, serde_json::Value> =
                serde_json::from_str(&params).map_err(|e| format!("--params: {e}"))?;
            let spec = InstanceSpec { family, params };
            let (g, w) = build_instance(&spec).map_err(|e| e.to_string())?;
            let text = emit_dimacs(&g, w.as_ref());
            write_out(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { file, algo, rho, seed } => {
            if !ALGORITHMS.contains(&algo.as_str()) {
                return Err(format!(
                    "unknown algorithm '{algo}'; available: {}",
                    ALGORITHMS.join(", ")
                ));
            }
            let rho = parse_rational(&rho).map_err(|e| format!("--rho: {e}"))?;
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            let (g, w) = parse_dimacs(&text).map_err(|e| e.to_string())?;
            let sol = run_algorithm(&algo, &g, w.as_ref(), seed).map_err(|e| e.to_string())?;
            let unit = VertexWeights::unit(g.n());
            let weights = w.as_ref().unwrap_or(&unit);
            println!("algorithm: {algo}");
            println!("size: {}", sol.len());
            println!("weight: {}", format_rational(sol.weight(weights)));
            let rv = recoverable_value(&g, &sol, rho).expect("solution is independent");
            println!("rv(rho={}): {}", format_rational(rho), format_rational(rv.total));
            println!(
                "members: {}",
                sol.to_vec().iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { dir } => {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
                .map_err(|e| format!("{}: {e}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            entries.sort();
            if entries.is_empty() {
                return Err(format!("{}: no instance files found", dir.display()));
            }
            let mut breached = false;
            for path in entries {
                match verify_file(&path) {
                    Ok(()) => println!("ok   {}", path.display()),
                    Err(problem) => {
                        breached = true;
                        println!("FAIL {}: {problem}", path.display());
                    }
                }
            }
            Ok(if breached { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Bench { config, format, out } => {
            let format: ReportFormat = format.parse()?;
            let text = std::fs::read_to_string(&config)
                .map_err(|e| format!("{}: {e}", config.display()))?;
            let config: ExperimentConfig =
                serde_json::from_str(&text).map_err(|e| format!("config: {e}"))?;
            let results = run_experiment(&config).map_err(|e| e.to_string())?;
            write_out(out.as_deref(), &emit_report(&results, format))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
    }
}

/// Oracle-backed checks on one instance file: every deterministic algorithm
/// returns an independent set that the exact solver cannot beat by less
/// than its own weight; the LP solver matches brute force on small inputs;
/// the average-degree-2 solver meets its ratio when it applies.
fn verify_file(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let (g, w) = parse_dimacs(&text).map_err(|e| e.to_string())?;
    let unit = VertexWeights::unit(g.n());
    let weights = w.as_ref().unwrap_or(&unit);

    let oracle_sol = if g.n() <= 24 {
        Some(oracle::mwis_exact(&g, weights).map_err(|e| e.to_string())?)
    } else {
        None
    };

    for algo in ["greedy", "weighted-greedy", "lp-greedy", "avg2", "best-pair", "lp-largest-class"]
    {
        let sol = match run_algorithm(algo, &g, w.as_ref(), 0) {
            Ok(sol) => sol,
            Err(_) => continue, // inapplicable on this instance
        };
        sol.check_independent(&g).map_err(|e| format!("{algo}: {e}"))?;
        if let Some(opt) = &oracle_sol {
            if sol.weight(weights) > opt.weight(weights) {
                return Err(format!("{algo}: output beats the exact optimum"));
            }
        }
    }

    if g.n() <= 12 {
        let nt = lp::nt_solve(&g, weights);
        let brute = oracle::lp_half_bruteforce(&g, weights).map_err(|e| e.to_string())?;
        if nt.objective != brute {
            return Err(format!(
                "half-integral LP objective {} differs from brute force {}",
                format_rational(nt.objective),
                format_rational(brute)
            ));
        }
    }

    if let Some(opt) = &oracle_sol {
        let r = avg2::solve_avg2(&g);
        if r.guarantee_applies && rat(9, 1) * rat(r.set.len() as i128, 1)
            < rat(7, 1) * rat(opt.len() as i128, 1)
        {
            return Err("average-degree-2 solver misses its 7/9 ratio".to_string());
        }
    }
    Ok(())
}
