//! Sweep rows and empirical order / cost-exponent estimation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::solver::SolveMode;

/// One solve in a sweep. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRow {
    pub problem: String,
    pub mode: SolveMode,
    pub r: usize,
    pub rho: f64,
    pub n: usize,
    pub h: f64,
    pub seed: u64,
    pub sup_error: f64,
    pub classical_evals: u64,
    pub oracle_queries: u64,
    pub repetitions: u64,
    /// Seconds; zero unless timing was requested.
    pub wall_time: f64,
    /// `ok`, or the error that stopped the solve.
    pub status: String,
}

impl SweepRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn total_cost(&self) -> u64 {
        self.classical_evals + self.oracle_queries
    }
}

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::contract("slope fit needs equally many x and y values"));
    }
    if xs.len() < 2 {
        return Err(Error::contract("slope fit needs at least two points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::contract("slope fit needs distinct x values"));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// `n -> (h, values)` over successful rows, with `n` ascending.
fn group_by_n<F: Fn(&SweepRow) -> f64>(rows: &[SweepRow], value: F) -> Result<BTreeMap<usize, (f64, Vec<f64>)>> {
    let mut groups: BTreeMap<usize, (f64, Vec<f64>)> = BTreeMap::new();
    for row in rows.iter().filter(|r| r.is_ok()) {
        groups.entry(row.n).or_insert_with(|| (row.h, Vec::new())).1.push(value(row));
    }
    if groups.len() < 3 {
        return Err(Error::contract(format!(
            "need at least 3 distinct step counts, got {}",
            groups.len()
        )));
    }
    Ok(groups)
}

/// Slope of `log2(error)` against `log2(h)`, errors aggregated over seeds by
/// median.
pub fn estimate_order(rows: &[SweepRow]) -> Result<f64> {
    let groups = group_by_n(rows, |r| r.sup_error)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = groups
        .values()
        .map(|(h, errs)| (h.log2(), median(errs.clone()).log2()))
        .unzip();
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::domain("zero or non-finite error in order fit"));
    }
    least_squares_slope(&xs, &ys)
}

/// `log2(n) + log2(1/delta)`: the logarithmic factor carried by boosting.
pub fn boosting_log_factor(n: usize, delta: f64) -> f64 {
    (n as f64).log2() + (1.0 / delta).log2()
}

/// Slope of `log2(cost)` against `log2(n)`; for boosted modes the cost is
/// first divided by `log2 n + log2(1/delta)`. Costs are medians over seeds.
pub fn estimate_cost_exponent(rows: &[SweepRow], delta: f64) -> Result<f64> {
    let Some(first) = rows.first() else {
        return Err(Error::contract("no rows"));
    };
    let boosted = first.mode.is_boosted();
    if rows.iter().any(|r| r.mode != first.mode) {
        return Err(Error::contract("cost fit rows mix solver modes"));
    }
    if boosted && !(delta > 0.0 && delta < 0.5) {
        return Err(Error::contract(format!("delta = {delta} not in (0, 1/2)")));
    }
    let groups = group_by_n(rows, |r| r.total_cost() as f64)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = groups
        .iter()
        .map(|(n, (_, costs))| {
            let mut c = median(costs.clone());
            if boosted {
                c /= boosting_log_factor(*n, delta);
            }
            ((*n as f64).log2(), c.log2())
        })
        .unzip();
    least_squares_slope(&xs, &ys)
}
