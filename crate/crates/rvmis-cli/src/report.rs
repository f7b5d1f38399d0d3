//! Report rendering: JSON (schema = `ExperimentResult`), CSV, and a plain
//! text table. Field order is fixed so identical runs emit identical bytes.

use crate::experiment::ExperimentResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "table" => Ok(ReportFormat::Table),
            other => Err(format!("unknown report format '{other}'")),
        }
    }
}

pub fn emit_report(results: &[ExperimentResult], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(results).expect("results serialize") + "\n"
        }
        ReportFormat::Csv => emit_csv(results),
        ReportFormat::Table => emit_table(results),
    }
}

const CSV_HEADER: &str = "family,params,algorithm,n,edges,trials,seed_first,seed_last,\
mean_exact,mean_decimal,min,max,ci99_low,ci99_high,oracle,ratio_to_oracle,rho,\
rv_of_optimum,duration_ms";

fn emit_csv(results: &[ExperimentResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in results {
        let params = serde_json::to_string(&r.params).expect("params serialize");
        out.push_str(&format!(
            "{},{:?},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.family,
            params,
            r.algorithm,
            r.n,
            r.edges,
            r.trials,
            r.seed_first,
            r.seed_last,
            r.mean_weight.exact,
            r.mean_weight.decimal,
            r.min_weight.exact,
            r.max_weight.exact,
            r.ci99_low,
            r.ci99_high,
            r.oracle_weight.as_ref().map(|v| v.exact.clone()).unwrap_or_default(),
            r.ratio_to_oracle.map(|v| v.to_string()).unwrap_or_default(),
            r.rho.exact,
            r.rv_of_optimum.as_ref().map(|v| v.exact.clone()).unwrap_or_default(),
            r.duration_ms,
        ));
    }
    out
}

fn emit_table(results: &[ExperimentResult]) -> String {
    let mut out = format!(
        "{:<24} {:<18} {:>5} {:>7} {:>12} {:>10} {:>10} {:>8}\n",
        "instance", "algorithm", "n", "trials", "mean", "oracle", "rv(opt)", "ratio"
    );
    for r in results {
        out.push_str(&format!(
            "{:<24} {:<18} {:>5} {:>7} {:>12} {:>10} {:>10} {:>8}\n",
            r.family,
            r.algorithm,
            r.n,
            r.trials,
            format!("{} ({:.4})", r.mean_weight.exact, r.mean_weight.decimal),
            r.oracle_weight.as_ref().map(|v| v.exact.clone()).unwrap_or_else(|| "-".into()),
            r.rv_of_optimum.as_ref().map(|v| v.exact.clone()).unwrap_or_else(|| "-".into()),
            r.ratio_to_oracle.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into()),
        ));
    }
    out
}
