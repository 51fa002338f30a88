//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The plain functions (`trajectory`, `convergence`, `emissions`) hold the
//! logic and are what the native tests call; the `#[wasm_bindgen]` wrappers
//! only convert errors into JavaScript exceptions.

use holder_ivp::quad::{median_of, QuantumSimOracle};
use holder_ivp::{
    catalog, derive_seed, estimate_cost_exponent, estimate_order, eval_trajectory, repetitions_for, solve, sup_error,
    FnIntegrand, OracleConfig, OracleKind, SolveConfig, SolveMode, SweepRow,
};
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Dense samples of one solve next to the reference solution.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct TrajectorySamples {
    dim: usize,
    t: Vec<f64>,
    approx: Vec<f64>,
    exact: Vec<f64>,
    sup_error: f64,
    cost: f64,
}

#[wasm_bindgen]
impl TrajectorySamples {
    #[wasm_bindgen(getter)]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    /// Component `j` of the computed solution at every sample time.
    pub fn approx(&self, j: usize) -> Vec<f64> {
        self.approx.iter().skip(j).step_by(self.dim).copied().collect()
    }

    /// Component `j` of the reference solution; empty if there is none.
    pub fn exact(&self, j: usize) -> Vec<f64> {
        self.exact.iter().skip(j).step_by(self.dim).copied().collect()
    }

    /// `NaN` when the problem has no reference solution.
    #[wasm_bindgen(getter)]
    pub fn sup_error(&self) -> f64 {
        self.sup_error
    }

    /// Classical evaluations plus oracle queries.
    #[wasm_bindgen(getter)]
    pub fn cost(&self) -> f64 {
        self.cost
    }
}

pub fn trajectory(
    problem: &str,
    r: usize,
    rho: f64,
    mode: &str,
    n: usize,
    seed: u64,
    samples_per_step: usize,
) -> Result<TrajectorySamples, String> {
    let p = catalog(problem, r, rho).map_err(err)?;
    let mode: SolveMode = mode.parse().map_err(err)?;
    let traj = solve(&p, &SolveConfig::new(n, mode).with_seed(seed)).map_err(err)?;
    let (a, b) = traj.interval();
    let m = n * samples_per_step.max(1);
    let t: Vec<f64> = (0..=m).map(|k| if k == m { b } else { a + (b - a) * k as f64 / m as f64 }).collect();
    let mut approx = Vec::with_capacity(t.len() * p.dim());
    let mut exact = Vec::new();
    for &tk in &t {
        approx.extend(eval_trajectory(&traj, tk).map_err(err)?);
        if let Some(reference) = p.reference() {
            exact.extend(reference(tk));
        }
    }
    let sup = p.reference().map_or(f64::NAN, |reference| sup_error(&traj, reference, samples_per_step.max(1)));
    Ok(TrajectorySamples {
        dim: p.dim(),
        t,
        approx,
        exact,
        sup_error: sup,
        cost: traj.ledger.total() as f64,
    })
}

/// Error and cost over a doubling grid of step counts, with fitted slopes.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct ConvergenceStudy {
    n: Vec<f64>,
    errors: Vec<f64>,
    costs: Vec<f64>,
    order: f64,
    cost_exponent: f64,
}

#[wasm_bindgen]
impl ConvergenceStudy {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> Vec<f64> {
        self.n.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn errors(&self) -> Vec<f64> {
        self.errors.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn costs(&self) -> Vec<f64> {
        self.costs.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn order(&self) -> f64 {
        self.order
    }

    /// Fitted exponent of cost in `n`; boosted modes have the log factor
    /// divided out first.
    #[wasm_bindgen(getter)]
    pub fn cost_exponent(&self) -> f64 {
        self.cost_exponent
    }
}

pub const STUDY_DELTA: f64 = 0.1;

pub fn convergence(problem: &str, r: usize, rho: f64, mode: &str, n_max: usize, seed: u64) -> Result<ConvergenceStudy, String> {
    let p = catalog(problem, r, rho).map_err(err)?;
    let reference = p
        .reference()
        .ok_or_else(|| format!("`{problem}` has no reference solution"))?;
    let mode: SolveMode = mode.parse().map_err(err)?;
    let mut rows = Vec::new();
    let mut n = 4;
    while n <= n_max.max(16) {
        let traj = solve(&p, &SolveConfig::new(n, mode).with_seed(seed).with_delta(STUDY_DELTA)).map_err(err)?;
        rows.push(SweepRow {
            problem: problem.into(),
            mode,
            r,
            rho,
            n,
            h: traj.h,
            seed,
            sup_error: sup_error(&traj, reference, 8),
            classical_evals: traj.ledger.classical_evals,
            oracle_queries: traj.ledger.oracle_queries,
            repetitions: traj.ledger.repetitions,
            wall_time: 0.0,
            status: "ok".into(),
        });
        n *= 2;
    }
    Ok(ConvergenceStudy {
        n: rows.iter().map(|r| r.n as f64).collect(),
        errors: rows.iter().map(|r| r.sup_error).collect(),
        costs: rows.iter().map(|r| r.total_cost() as f64).collect(),
        order: estimate_order(&rows).unwrap_or(f64::NAN),
        cost_exponent: estimate_cost_exponent(&rows, STUDY_DELTA).unwrap_or(f64::NAN),
    })
}

/// Histogram of simulated quantum estimates of `int_0^1 cos(pi u) du`,
/// single emissions against medians of `k` emissions.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct EmissionHistogram {
    edges: Vec<f64>,
    single: Vec<u32>,
    boosted: Vec<u32>,
    reference: f64,
    repetitions: usize,
}

#[wasm_bindgen]
impl EmissionHistogram {
    /// Bin edges, measured as `(estimate - reference) / eps`.
    #[wasm_bindgen(getter)]
    pub fn edges(&self) -> Vec<f64> {
        self.edges.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn single(&self) -> Vec<u32> {
        self.single.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn boosted(&self) -> Vec<u32> {
        self.boosted.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn reference(&self) -> f64 {
        self.reference
    }

    #[wasm_bindgen(getter)]
    pub fn repetitions(&self) -> usize {
        self.repetitions
    }
}

/// Bins span `[-12, 12]` in units of `eps`; values outside land in the end bins.
pub fn emissions(eps: f64, trials: usize, delta: f64, n: usize, bins: usize, seed: u64) -> Result<EmissionHistogram, String> {
    if bins == 0 || trials == 0 {
        return Err("need at least one bin and one trial".into());
    }
    let g = FnIntegrand::new(1, |u: f64| vec![(std::f64::consts::PI * u).cos()]);
    let cfg = OracleConfig::new(OracleKind::QuantumSim, eps, 0, 1.0);
    let sim = QuantumSimOracle::prepare(&g, &cfg).map_err(err)?;
    let reference = sim.reference()[0];
    let k = repetitions_for(delta, n, 3.0).map_err(err)?;

    let span = 12.0;
    let width = 2.0 * span / bins as f64;
    let bin = |v: f64| (((v - reference) / eps + span) / width).floor().clamp(0.0, bins as f64 - 1.0) as usize;
    let mut single = vec![0u32; bins];
    let mut boosted = vec![0u32; bins];
    for trial in 0..trials as u64 {
        let s = derive_seed(seed, trial);
        single[bin(sim.emit(s).value[0])] += 1;
        let runs: Vec<_> = (0..k as u64).map(|j| sim.emit(derive_seed(s, j))).collect();
        boosted[bin(median_of(&runs).value[0])] += 1;
    }
    Ok(EmissionHistogram {
        edges: (0..=bins).map(|i| -span + i as f64 * width).collect(),
        single,
        boosted,
        reference,
        repetitions: k,
    })
}

#[wasm_bindgen(js_name = problemNames)]
pub fn problem_names() -> Vec<String> {
    [
        "scalar-exponential",
        "scalar-quadratic",
        "logistic",
        "harmonic",
        "lotka-volterra",
        "integration-reduction(cos-pi)",
        "integration-reduction(kink:1.5)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

#[wasm_bindgen(js_name = solveTrajectory)]
pub fn solve_trajectory_js(
    problem: &str,
    r: usize,
    rho: f64,
    mode: &str,
    n: usize,
    seed: u32,
    samples_per_step: usize,
) -> Result<TrajectorySamples, JsError> {
    trajectory(problem, r, rho, mode, n, seed as u64, samples_per_step).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = convergenceStudy)]
pub fn convergence_study_js(
    problem: &str,
    r: usize,
    rho: f64,
    mode: &str,
    n_max: usize,
    seed: u32,
) -> Result<ConvergenceStudy, JsError> {
    convergence(problem, r, rho, mode, n_max, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = emissionHistogram)]
pub fn emission_histogram_js(
    eps: f64,
    trials: usize,
    delta: f64,
    n: usize,
    bins: usize,
    seed: u32,
) -> Result<EmissionHistogram, JsError> {
    emissions(eps, trials, delta, n, bins, seed as u64).map_err(|e| JsError::new(&e))
}
