//! Uniform-grid stepping with per-step Taylor objects and an oracle-estimated
//! residual integral:
//!
//! ```text
//! y_{i+1} = y_i + int_{x_i}^{x_{i+1}} w_i(l_i(t)) dt + h^{r+rho+1} A_i
//! ```
//!
//! where `A_i` approximates `int_0^1 g_i(u) du` to accuracy `eps1 = h`. The
//! output is the piecewise polynomial `l = l_i` on `[x_i, x_{i+1})`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::VecPolynomial;
use crate::problem::{CostCounts, CostLedger, IvpProblem};
use crate::quad::{
    boost_median, integrate_deterministic, integrate_randomized, reference_integral, repetitions_for,
    OracleConfig, OracleKind, QuantumSimOracle, DEFAULT_COST_CONSTANT, DEFAULT_REPETITION_CONSTANT,
};
use crate::seed::derive_seed;
use crate::taylor::{integrate_w_of_l_over_step, residual, step_objects};

/// Tolerance of the quadrature standing in for exact integral functionals.
pub const DET_EXACT_TOLERANCE: f64 = 1e-12;

/// Abort once `|y_i| > DIVERGENCE_FACTOR * (1 + |eta|)`.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SolveMode {
    /// Residual integrals to `DET_EXACT_TOLERANCE`; one functional per component.
    DetExact,
    /// Deterministic oracle from function values.
    DetValues,
    Randomized,
    QuantumSim,
}

impl SolveMode {
    pub const ALL: [SolveMode; 4] = [
        SolveMode::DetExact,
        SolveMode::DetValues,
        SolveMode::Randomized,
        SolveMode::QuantumSim,
    ];

    /// Whether the mode boosts per-step estimates by medians.
    pub fn is_boosted(self) -> bool {
        matches!(self, SolveMode::Randomized | SolveMode::QuantumSim)
    }

    pub fn oracle_kind(self) -> Option<OracleKind> {
        match self {
            SolveMode::DetExact => None,
            SolveMode::DetValues => Some(OracleKind::Deterministic),
            SolveMode::Randomized => Some(OracleKind::Randomized),
            SolveMode::QuantumSim => Some(OracleKind::QuantumSim),
        }
    }
}

impl fmt::Display for SolveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveMode::DetExact => "det_exact",
            SolveMode::DetValues => "det_values",
            SolveMode::Randomized => "randomized",
            SolveMode::QuantumSim => "quantum_sim",
        })
    }
}

impl FromStr for SolveMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "det_exact" => Ok(SolveMode::DetExact),
            "det_values" => Ok(SolveMode::DetValues),
            "randomized" => Ok(SolveMode::Randomized),
            "quantum_sim" => Ok(SolveMode::QuantumSim),
            other => Err(Error::contract(format!(
                "unknown mode `{other}` (expected det_exact, det_values, randomized or quantum_sim)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub n: usize,
    pub mode: SolveMode,
    /// Overall failure probability for the boosted modes.
    pub delta: f64,
    pub seed: u64,
    pub cost_constant: f64,
    pub repetition_constant: f64,
}

impl SolveConfig {
    pub fn new(n: usize, mode: SolveMode) -> Self {
        Self {
            n,
            mode,
            delta: 0.1,
            seed: 0,
            cost_constant: DEFAULT_COST_CONSTANT,
            repetition_constant: DEFAULT_REPETITION_CONSTANT,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::contract("step count n must be at least 1"));
        }
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::contract(format!("delta = {} not in (0, 1/2)", self.delta)));
        }
        if !(self.cost_constant > 0.0) || !(self.repetition_constant > 0.0) {
            return Err(Error::contract("oracle constants must be positive"));
        }
        Ok(())
    }

    /// Repetitions per residual integral (1 for unboosted modes).
    pub fn repetitions(&self) -> Result<usize> {
        if self.mode.is_boosted() {
            repetitions_for(self.delta, self.n, self.repetition_constant)
        } else {
            Ok(1)
        }
    }
}

/// Seed used for the residual integral of step `step`.
pub fn step_seed(seed: u64, step: usize) -> u64 {
    derive_seed(seed, step as u64)
}

/// Piecewise-polynomial approximate solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<VecPolynomial>,
    pub endpoints: Vec<Vec<f64>>,
    /// The estimates `A_i` of the residual integrals, one per step.
    pub residual_estimates: Vec<Vec<f64>>,
    pub ledger: CostCounts,
    pub mode: SolveMode,
    pub h: f64,
}

impl Trajectory {
    pub fn n(&self) -> usize {
        self.pieces.len()
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// One residual integral `A_i` under `mode`, with costs booked on `ledger`.
fn residual_estimate(
    g: &crate::taylor::ResidualIntegrand,
    cfg: &SolveConfig,
    r: usize,
    rho: f64,
    h: f64,
    step: usize,
    repetitions: usize,
    ledger: &CostLedger,
) -> Result<Vec<f64>> {
    use crate::quad::Integrand;
    let oracle = |kind| {
        OracleConfig::new(kind, h, r, rho)
            .with_cost_constant(cfg.cost_constant)
            .with_seed(step_seed(cfg.seed, step))
    };
    match cfg.mode {
        SolveMode::DetExact => {
            let (value, _) = reference_integral(g, DET_EXACT_TOLERANCE)?;
            ledger.charge_queries(g.dim() as u64);
            Ok(value)
        }
        SolveMode::DetValues => {
            let est = integrate_deterministic(g, &oracle(OracleKind::Deterministic))?;
            ledger.charge_classical(est.queries);
            Ok(est.value)
        }
        SolveMode::Randomized => {
            let base = oracle(OracleKind::Randomized);
            let est = boost_median(|s| integrate_randomized(g, &base.with_seed(s)), base.seed, repetitions)?;
            ledger.charge_queries(est.queries);
            ledger.charge_repetitions(repetitions as u64);
            Ok(est.value)
        }
        SolveMode::QuantumSim => {
            let base = oracle(OracleKind::QuantumSim);
            let sim = QuantumSimOracle::prepare(g, &base)?;
            let est = boost_median(|s| Ok(sim.emit(s)), base.seed, repetitions)?;
            ledger.charge_queries(est.queries);
            ledger.charge_repetitions(repetitions as u64);
            Ok(est.value)
        }
    }
}

/// Run the stepping scheme on the uniform grid `x_i = a + i h`, `h = (b-a)/n`.
pub fn solve(problem: &IvpProblem, cfg: &SolveConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let eta = problem.eta();
    if problem.rhs().value(eta).iter().all(|v| *v == 0.0) {
        return Err(Error::contract("f(eta) = 0: the initial state is an equilibrium"));
    }
    let (a, b) = problem.interval();
    let n = cfg.n;
    let h = (b - a) / n as f64;
    let s = problem.smoothness();
    let (r, rho) = (s.r(), s.rho());
    let residual_weight = h.powf(r as f64 + rho + 1.0);
    let repetitions = cfg.repetitions()?;
    let guard = DIVERGENCE_FACTOR * (1.0 + max_norm(eta));

    let ledger = CostLedger::new();
    let mut breakpoints = Vec::with_capacity(n + 1);
    let mut pieces = Vec::with_capacity(n);
    let mut endpoints = Vec::with_capacity(n + 1);
    let mut residual_estimates = Vec::with_capacity(n);
    let mut y = eta.to_vec();
    endpoints.push(y.clone());
    breakpoints.push(a);

    for i in 0..n {
        let x_i = a + i as f64 * h;
        let obj = step_objects(problem, &y, x_i, &ledger)?;
        let taylor_part = integrate_w_of_l_over_step(&obj.w, &obj.l, h)?;
        let g = residual(problem, obj.w, obj.l.clone(), x_i, h)?;
        let estimate = residual_estimate(&g, cfg, r, rho, h, i, repetitions, &ledger).map_err(|e| match e {
            Error::Domain(_) => Error::Divergence {
                step: i,
                norm: max_norm(&y),
            },
            other => other,
        })?;

        let next: Vec<f64> = y
            .iter()
            .zip(&taylor_part)
            .zip(&estimate)
            .map(|((yi, ti), ai)| yi + ti + residual_weight * ai)
            .collect();
        let norm = max_norm(&next);
        if !norm.is_finite() || norm > guard {
            return Err(Error::Divergence { step: i, norm });
        }

        pieces.push(obj.l);
        residual_estimates.push(estimate);
        breakpoints.push(if i + 1 == n { b } else { a + (i + 1) as f64 * h });
        endpoints.push(next.clone());
        y = next;
    }

    Ok(Trajectory {
        breakpoints,
        pieces,
        endpoints,
        residual_estimates,
        ledger: ledger.snapshot(),
        mode: cfg.mode,
        h,
    })
}

/// Index of the piece that owns `t`: `[x_i, x_{i+1})`, with `b` in the last.
fn piece_index(traj: &Trajectory, t: f64) -> usize {
    let n = traj.n();
    let a = traj.breakpoints[0];
    let mut i = (((t - a) / traj.h).floor().max(0.0) as usize).min(n - 1);
    while i > 0 && t < traj.breakpoints[i] {
        i -= 1;
    }
    while i + 1 < n && t >= traj.breakpoints[i + 1] {
        i += 1;
    }
    i
}

/// `l(t)`.
pub fn eval_trajectory(traj: &Trajectory, t: f64) -> Result<Vec<f64>> {
    let (a, b) = traj.interval();
    if !(t >= a && t <= b) {
        return Err(Error::domain(format!("t = {t} outside [{a}, {b}]")));
    }
    let i = piece_index(traj, t);
    Ok(traj.pieces[i].eval_offset(t - traj.breakpoints[i]))
}

/// Max-norm deviation from `reference` over `samples_per_step` equispaced
/// points per piece, both piece endpoints included.
pub fn sup_error(traj: &Trajectory, reference: &dyn Fn(f64) -> Vec<f64>, samples_per_step: usize) -> f64 {
    let m = samples_per_step.max(1);
    let mut worst = 0.0f64;
    for (i, piece) in traj.pieces.iter().enumerate() {
        let x_i = traj.breakpoints[i];
        let width = traj.breakpoints[i + 1] - x_i;
        for j in 0..m {
            let s = if m == 1 { 0.0 } else { width * j as f64 / (m - 1) as f64 };
            let approx = piece.eval_offset(s);
            let exact = reference(x_i + s);
            for (p, q) in approx.iter().zip(&exact) {
                worst = worst.max((p - q).abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::catalog;

    fn exp_problem(r: usize) -> IvpProblem {
        catalog("scalar-exponential", r, 1.0).unwrap()
    }

    #[test]
    fn mode_names_round_trip() {
        for m in SolveMode::ALL {
            assert_eq!(m.to_string().parse::<SolveMode>().unwrap(), m);
        }
        assert!("exact".parse::<SolveMode>().is_err());
    }

    #[test]
    fn single_exact_step_r0() {
        let p = exp_problem(0).with_interval(0.0, 0.1).unwrap();
        let traj = solve(&p, &SolveConfig::new(1, SolveMode::DetExact)).unwrap();
        assert!((traj.endpoints[1][0] - 1.105).abs() < 1e-14);
        assert!((eval_trajectory(&traj, 0.05).unwrap()[0] - 1.05).abs() < 1e-15);
        assert_eq!(eval_trajectory(&traj, 0.1).unwrap(), traj.pieces[0].eval_offset(0.1));
    }

    #[test]
    fn linear_rhs_reproduces_product_formula() {
        for r in 0..=3 {
            let p = exp_problem(r);
            let n = 10;
            let traj = solve(&p, &SolveConfig::new(n, SolveMode::DetExact)).unwrap();
            let h = 0.1f64;
            let mut fact = 1.0;
            let mut factor = 0.0;
            for k in 0..=r + 2 {
                if k > 0 {
                    fact *= k as f64;
                }
                factor += h.powi(k as i32) / fact;
            }
            let mut want = 1.0;
            for i in 0..=n {
                assert!((traj.endpoints[i][0] - want).abs() < 1e-12 * want, "r={r} i={i}");
                want *= factor;
            }
        }
    }

    #[test]
    fn pieces_start_at_endpoints() {
        let p = catalog("lotka-volterra", 2, 1.0).unwrap();
        let traj = solve(&p, &SolveConfig::new(7, SolveMode::DetValues)).unwrap();
        assert_eq!(traj.endpoints[0], p.eta());
        for i in 0..7 {
            assert_eq!(traj.pieces[i].eval_offset(0.0), traj.endpoints[i]);
            assert_eq!(eval_trajectory(&traj, traj.breakpoints[i]).unwrap(), traj.endpoints[i]);
            assert_eq!(traj.pieces[i].degree(), 3);
        }
        let last = traj.pieces[6].eval_offset(1.0 - traj.breakpoints[6]);
        assert_eq!(eval_trajectory(&traj, 1.0).unwrap(), last);
    }

    #[test]
    fn eval_outside_interval_is_domain_error() {
        let traj = solve(&exp_problem(0), &SolveConfig::new(4, SolveMode::DetExact)).unwrap();
        assert!(matches!(eval_trajectory(&traj, 1.5), Err(Error::Domain(_))));
        assert!(matches!(eval_trajectory(&traj, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn sup_error_trivial_cases() {
        let traj = solve(&exp_problem(0), &SolveConfig::new(4, SolveMode::DetExact)).unwrap();
        let copy = traj.clone();
        let same = move |t: f64| eval_trajectory(&copy, t).unwrap();
        // pieces are left-closed, so compare only where the lookup agrees
        assert_eq!(sup_error(&traj, &same, 1), 0.0);

        let one = Trajectory {
            breakpoints: vec![0.0, 1.0],
            pieces: vec![VecPolynomial::new(0.0, vec![vec![1.0]]).unwrap()],
            endpoints: vec![vec![1.0], vec![1.0]],
            residual_estimates: vec![vec![0.0]],
            ledger: CostCounts::default(),
            mode: SolveMode::DetExact,
            h: 1.0,
        };
        assert_eq!(sup_error(&one, &|_| vec![0.0], 5), 1.0);
    }

    #[test]
    fn exact_mode_error_ratio_r0() {
        let p = exp_problem(0);
        let z = p.reference().unwrap();
        let e1 = sup_error(&solve(&p, &SolveConfig::new(32, SolveMode::DetExact)).unwrap(), z, 9);
        let e2 = sup_error(&solve(&p, &SolveConfig::new(64, SolveMode::DetExact)).unwrap(), z, 9);
        let ratio = e1 / e2;
        assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn reduction_cos_r2_endpoint() {
        let p = catalog("integration-reduction(cos-pi)", 2, 1.0).unwrap();
        let traj = solve(&p, &SolveConfig::new(32, SolveMode::DetExact)).unwrap();
        assert!(traj.endpoints[32][1].abs() <= 1e-6);
        assert!((traj.endpoints[32][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equilibrium_start_is_rejected() {
        let fixed = catalog("logistic", 0, 1.0).unwrap().with_eta(vec![1.0]).unwrap();
        assert!(matches!(
            solve(&fixed, &SolveConfig::new(4, SolveMode::DetExact)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn blow_up_is_reported_as_divergence() {
        // z' = z^2 from z = 1 blows up at t = 1; run to t = 2
        let long = catalog("scalar-quadratic", 1, 1.0).unwrap().with_interval(0.0, 2.0).unwrap();
        match solve(&long, &SolveConfig::new(64, SolveMode::DetValues)) {
            Err(Error::Divergence { step, .. }) => assert!(step >= 30, "step {step}"),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        let p = exp_problem(0);
        assert!(solve(&p, &SolveConfig::new(0, SolveMode::DetExact)).is_err());
        assert!(solve(&p, &SolveConfig::new(4, SolveMode::Randomized).with_delta(0.5)).is_err());
    }

    #[test]
    fn seeded_modes_are_reproducible() {
        let p = catalog("lotka-volterra", 1, 1.0).unwrap();
        for mode in SolveMode::ALL {
            let cfg = SolveConfig::new(16, mode).with_seed(11);
            assert_eq!(solve(&p, &cfg).unwrap(), solve(&p, &cfg).unwrap(), "{mode}");
        }
        let a = solve(&p, &SolveConfig::new(16, SolveMode::Randomized).with_seed(1)).unwrap();
        let b = solve(&p, &SolveConfig::new(16, SolveMode::Randomized).with_seed(2)).unwrap();
        assert_ne!(a.endpoints, b.endpoints);
    }

    #[test]
    fn ledger_accounting_per_mode() {
        let p = exp_problem(0);
        let n = 8;
        let exact = solve(&p, &SolveConfig::new(n, SolveMode::DetExact)).unwrap().ledger;
        // one f value per step for the Taylor objects, one functional per step
        assert_eq!(exact.classical_evals, n as u64);
        assert_eq!(exact.oracle_queries, n as u64);

        let values = solve(&p, &SolveConfig::new(n, SolveMode::DetValues)).unwrap().ledger;
        assert_eq!(values.classical_evals, n as u64 * (1 + 32));
        assert_eq!(values.oracle_queries, 0);

        let cfg = SolveConfig::new(n, SolveMode::QuantumSim);
        let k = cfg.repetitions().unwrap() as u64;
        let q = solve(&p, &cfg).unwrap().ledger;
        let per_call = OracleConfig::new(OracleKind::QuantumSim, 1.0 / n as f64, 0, 1.0).budget();
        assert_eq!(q.oracle_queries, n as u64 * k * per_call);
        assert_eq!(q.repetitions, n as u64 * k);
    }
}
