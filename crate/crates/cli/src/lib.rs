//! Parameter sweeps over the `holder-ivp` solver: TOML configuration, a
//! parallel but order-preserving runner, CSV output and slope fitting.

pub mod config;
pub mod sweep;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use holder_ivp::{estimate_cost_exponent, estimate_order, SolveMode, SweepRow};

pub use config::{ConfigError, ExperimentConfig, Overrides, StepGrid};
pub use sweep::{jobs, read_csv, run_job, run_sweep, write_csv, Job};

/// Cost exponent in `n` predicted for an oracle-backed mode.
pub fn predicted_cost_exponent(mode: SolveMode, r: usize, rho: f64) -> Option<f64> {
    mode.oracle_kind().map(|k| 1.0 + 1.0 / k.rate_denominator(r, rho))
}

/// Fitted slopes for one `(problem, mode, r, rho)` group.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub problem: String,
    pub mode: SolveMode,
    pub r: usize,
    pub rho: f64,
    pub order: Option<f64>,
    pub cost_exponent: Option<f64>,
}

pub fn fit(rows: &[SweepRow], delta: f64) -> Vec<FitRow> {
    let mut groups: BTreeMap<(String, String, usize, u64), Vec<SweepRow>> = BTreeMap::new();
    for row in rows {
        let key = (row.problem.clone(), row.mode.to_string(), row.r, row.rho.to_bits());
        groups.entry(key).or_default().push(row.clone());
    }
    groups
        .into_values()
        .map(|g| FitRow {
            problem: g[0].problem.clone(),
            mode: g[0].mode,
            r: g[0].r,
            rho: g[0].rho,
            order: estimate_order(&g).ok(),
            cost_exponent: estimate_cost_exponent(&g, delta).ok(),
        })
        .collect()
}

pub fn format_fit(fits: &[FitRow]) -> String {
    fn num(v: Option<f64>) -> String {
        v.map_or_else(|| "-".into(), |x| format!("{x:.3}"))
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<36} {:<12} {:>2} {:>5} {:>8} {:>8} {:>8} {:>8}",
        "problem", "mode", "r", "rho", "order", "expect", "cost", "expect"
    );
    for f in fits {
        let _ = writeln!(
            s,
            "{:<36} {:<12} {:>2} {:>5} {:>8} {:>8} {:>8} {:>8}",
            f.problem,
            f.mode.to_string(),
            f.r,
            f.rho,
            num(f.order),
            num(Some(f.r as f64 + f.rho + 1.0)),
            num(f.cost_exponent),
            num(predicted_cost_exponent(f.mode, f.r, f.rho)),
        );
    }
    s
}
