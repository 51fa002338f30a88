//! Integral oracles over `[0, 1]` for vector-valued integrands of Hölder
//! class `(r, rho)`.
//!
//! Three back-ends share one contract shape (an [`IntegralEstimate`] with a
//! charged query count):
//!
//! * **deterministic** – composite Gauss–Legendre with `r + 1` nodes per
//!   panel, budget `~ C eps^{-1/(r+rho)}`;
//! * **randomized** – the same rule on fewer panels as a control variate,
//!   plus plain Monte Carlo on the remainder `g - P`; budget
//!   `~ C eps^{-1/(r+rho+1/2)}`, RMS error `<= eps/2`, so `|err| <= eps` with
//!   probability `>= 3/4`;
//! * **quantum_sim** – a statistical stand-in for amplitude-estimation based
//!   integration. It computes an accurate reference `R` and, per component,
//!   emits `R + U[-eps, eps]` with probability 3/4 and an outlier
//!   `R +- U(eps, 10 eps]` otherwise, while charging the modeled budget
//!   `~ C eps^{-1/(r+rho+1)}`.
//!
//! [`boost_median`] takes componentwise medians of repetitions and
//! [`repetitions_for`] sizes `k` for an `n`-step, `1 - delta` target.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from};

/// A vector-valued function on `[0, 1]`.
pub trait Integrand: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, u: f64) -> Result<Vec<f64>>;
}

/// Adapter turning a closure into an [`Integrand`].
pub struct FnIntegrand<F> {
    dim: usize,
    f: F,
}

impl<F> FnIntegrand<F>
where
    F: Fn(f64) -> Vec<f64> + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F> Integrand for FnIntegrand<F>
where
    F: Fn(f64) -> Vec<f64> + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, u: f64) -> Result<Vec<f64>> {
        let v = (self.f)(u);
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain(format!("integrand is not finite at u = {u}")));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum OracleKind {
    Deterministic,
    Randomized,
    QuantumSim,
}

impl OracleKind {
    /// Exponent `e` in the budget `C eps^{-1/e}`.
    pub fn rate_denominator(self, r: usize, rho: f64) -> f64 {
        let s = r as f64 + rho;
        match self {
            OracleKind::Deterministic => s,
            OracleKind::Randomized => s + 0.5,
            OracleKind::QuantumSim => s + 1.0,
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleKind::Deterministic => "deterministic",
            OracleKind::Randomized => "randomized",
            OracleKind::QuantumSim => "quantum_sim",
        })
    }
}

impl FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deterministic" => Ok(OracleKind::Deterministic),
            "randomized" => Ok(OracleKind::Randomized),
            "quantum_sim" => Ok(OracleKind::QuantumSim),
            other => Err(Error::contract(format!("unknown oracle kind `{other}`"))),
        }
    }
}

pub const DEFAULT_COST_CONSTANT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub kind: OracleKind,
    /// Per-call accuracy target.
    pub eps1: f64,
    pub r: usize,
    pub rho: f64,
    /// Ignored by the deterministic kind.
    pub seed: u64,
    pub cost_constant: f64,
}

impl OracleConfig {
    pub fn new(kind: OracleKind, eps1: f64, r: usize, rho: f64) -> Self {
        Self {
            kind,
            eps1,
            r,
            rho,
            seed: 0,
            cost_constant: DEFAULT_COST_CONSTANT,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_cost_constant(mut self, c: f64) -> Self {
        self.cost_constant = c;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps1 > 0.0 && self.eps1.is_finite()) {
            return Err(Error::contract(format!("eps1 = {} must be positive", self.eps1)));
        }
        if !(self.cost_constant > 0.0 && self.cost_constant.is_finite()) {
            return Err(Error::contract("cost constant must be positive"));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(Error::contract(format!("rho = {} not in (0, 1]", self.rho)));
        }
        Ok(())
    }

    /// Query budget `ceil(C eps1^{-1/e})` for this kind.
    pub fn budget(&self) -> u64 {
        let e = self.kind.rate_denominator(self.r, self.rho);
        // the slack keeps e.g. 100^{1/2} from rounding up to 11
        let raw = self.cost_constant * self.eps1.powf(-1.0 / e) * (1.0 - 1e-12);
        raw.ceil().max(1.0) as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntegralEstimate {
    pub value: Vec<f64>,
    /// Integrand evaluations charged under the oracle's cost model.
    pub queries: u64,
    pub kind: OracleKind,
    pub target_eps: f64,
}

// ---------------------------------------------------------------------------
// Gauss–Legendre machinery
// ---------------------------------------------------------------------------

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(points: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(points >= 1);
    let n = points;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root on [-1, 1]
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        nodes[i] = 0.5 * (1.0 - x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// Per-panel node values of a composite rule, kept for interpolation.
struct CompositeSamples {
    panels: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `values[p * points + q]` is `g` at node `q` of panel `p`.
    values: Vec<Vec<f64>>,
}

impl CompositeSamples {
    fn collect(g: &dyn Integrand, panels: usize, points: usize) -> Result<Self> {
        let (nodes, weights) = gauss_legendre_unit(points);
        let width = 1.0 / panels as f64;
        let mut values = Vec::with_capacity(panels * points);
        for p in 0..panels {
            let left = p as f64 * width;
            for &t in &nodes {
                values.push(g.eval(left + t * width)?);
            }
        }
        Ok(Self {
            panels,
            nodes,
            weights,
            values,
        })
    }

    fn evaluations(&self) -> u64 {
        self.values.len() as u64
    }

    fn integral(&self, dim: usize) -> Vec<f64> {
        let points = self.nodes.len();
        let width = 1.0 / self.panels as f64;
        let mut acc = vec![0.0; dim];
        for p in 0..self.panels {
            let mut panel = vec![0.0; dim];
            for q in 0..points {
                let v = &self.values[p * points + q];
                for c in 0..dim {
                    panel[c] += self.weights[q] * v[c];
                }
            }
            for c in 0..dim {
                acc[c] += width * panel[c];
            }
        }
        acc
    }

    /// Piecewise interpolant through the panel nodes, evaluated at `u`.
    fn interpolate(&self, u: f64, dim: usize) -> Vec<f64> {
        let points = self.nodes.len();
        let p = ((u * self.panels as f64) as usize).min(self.panels - 1);
        let local = u * self.panels as f64 - p as f64;
        let mut out = vec![0.0; dim];
        for q in 0..points {
            let mut basis = 1.0;
            for m in 0..points {
                if m != q {
                    basis *= (local - self.nodes[m]) / (self.nodes[q] - self.nodes[m]);
                }
            }
            let v = &self.values[p * points + q];
            for c in 0..dim {
                out[c] += basis * v[c];
            }
        }
        out
    }
}

/// Composite Gauss–Legendre with `panels` equal panels and `points` nodes
/// each. Returns the estimate and the number of evaluations.
pub fn composite_gauss(g: &dyn Integrand, panels: usize, points: usize) -> Result<(Vec<f64>, u64)> {
    if panels == 0 || points == 0 {
        return Err(Error::contract("composite rule needs at least one panel and one node"));
    }
    let s = CompositeSamples::collect(g, panels, points)?;
    Ok((s.integral(g.dim()), s.evaluations()))
}

/// High-accuracy integral by panel doubling of a 10-point Gauss rule until
/// successive estimates agree within `tol` (relative to `max(1, |value|)`).
/// Returns the estimate and the evaluations spent.
pub fn reference_integral(g: &dyn Integrand, tol: f64) -> Result<(Vec<f64>, u64)> {
    const POINTS: usize = 10;
    const MAX_PANELS: usize = 1 << 12;
    let (mut prev, mut evals) = composite_gauss(g, 1, POINTS)?;
    let mut panels = 2;
    loop {
        let (cur, e) = composite_gauss(g, panels, POINTS)?;
        evals += e;
        let converged = cur
            .iter()
            .zip(&prev)
            .all(|(a, b)| (a - b).abs() <= tol * a.abs().max(1.0));
        if converged || panels >= MAX_PANELS {
            return Ok((cur, evals));
        }
        prev = cur;
        panels *= 2;
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Composite `(r + 1)`-point Gauss rule on as many panels as the budget
/// `ceil(C eps1^{-1/(r+rho)})` allows.
pub fn integrate_deterministic(g: &dyn Integrand, cfg: &OracleConfig) -> Result<IntegralEstimate> {
    cfg.validate()?;
    let points = cfg.r + 1;
    let panels = (cfg.budget() as usize / points).max(1);
    let (value, queries) = composite_gauss(g, panels, points)?;
    Ok(IntegralEstimate {
        value,
        queries,
        kind: OracleKind::Deterministic,
        target_eps: cfg.eps1,
    })
}

/// Panel count and Monte Carlo sample count for the randomized oracle.
pub fn randomized_split(cfg: &OracleConfig) -> (usize, usize) {
    let points = cfg.r + 1;
    let budget = cfg.budget() as usize;
    let panels = (budget / (2 * points)).max(1);
    let samples = budget.saturating_sub(panels * points).max(1);
    (panels, samples)
}

/// Control-variate Monte Carlo: exact integral of the piecewise interpolant
/// `P` plus the sample mean of `g - P` at uniform points.
pub fn integrate_randomized(g: &dyn Integrand, cfg: &OracleConfig) -> Result<IntegralEstimate> {
    cfg.validate()?;
    let dim = g.dim();
    let (panels, samples) = randomized_split(cfg);
    let base = CompositeSamples::collect(g, panels, cfg.r + 1)?;
    let mut value = base.integral(dim);
    let mut rng = rng_from(cfg.seed);
    let mut correction = vec![0.0; dim];
    for _ in 0..samples {
        let u: f64 = rng.gen();
        let gu = g.eval(u)?;
        let pu = base.interpolate(u, dim);
        for c in 0..dim {
            correction[c] += gu[c] - pu[c];
        }
    }
    for c in 0..dim {
        value[c] += correction[c] / samples as f64;
    }
    Ok(IntegralEstimate {
        value,
        queries: base.evaluations() + samples as u64,
        kind: OracleKind::Randomized,
        target_eps: cfg.eps1,
    })
}

/// Probability that a simulated quantum call lands in the accurate branch.
pub const QUANTUM_SUCCESS_PROBABILITY: f64 = 0.75;
/// Outlier magnitude, in units of `eps1`.
pub const QUANTUM_OUTLIER_SCALE: f64 = 10.0;
/// Nodes per component used for the simulator's reference integral.
pub const QUANTUM_REFERENCE_NODES: usize = 10_000;

/// Simulated quantum integration oracle bound to one integrand: the
/// reference integral is computed once and reused across emissions.
#[derive(Debug, Clone)]
pub struct QuantumSimOracle {
    reference: Vec<f64>,
    eps1: f64,
    queries: u64,
}

impl QuantumSimOracle {
    pub fn prepare(g: &dyn Integrand, cfg: &OracleConfig) -> Result<Self> {
        cfg.validate()?;
        const POINTS: usize = 5;
        let panels = QUANTUM_REFERENCE_NODES * g.dim() / POINTS;
        let (reference, _) = composite_gauss(g, panels, POINTS)?;
        Ok(Self {
            reference,
            eps1: cfg.eps1,
            queries: OracleConfig {
                kind: OracleKind::QuantumSim,
                ..*cfg
            }
            .budget(),
        })
    }

    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    /// One emission, with per-component independent noise.
    pub fn emit(&self, seed: u64) -> IntegralEstimate {
        let mut rng = rng_from(seed);
        let value = self
            .reference
            .iter()
            .map(|r| {
                let accurate = rng.gen::<f64>() < QUANTUM_SUCCESS_PROBABILITY;
                let noise = if accurate {
                    self.eps1 * (2.0 * rng.gen::<f64>() - 1.0)
                } else {
                    let mag = self.eps1 * (1.0 + (QUANTUM_OUTLIER_SCALE - 1.0) * (1.0 - rng.gen::<f64>()));
                    if rng.gen::<bool>() {
                        mag
                    } else {
                        -mag
                    }
                };
                r + noise
            })
            .collect();
        IntegralEstimate {
            value,
            queries: self.queries,
            kind: OracleKind::QuantumSim,
            target_eps: self.eps1,
        }
    }
}

pub fn integrate_quantum_sim(g: &dyn Integrand, cfg: &OracleConfig) -> Result<IntegralEstimate> {
    Ok(QuantumSimOracle::prepare(g, cfg)?.emit(cfg.seed))
}

/// Dispatch on `cfg.kind`.
pub fn integrate(g: &dyn Integrand, cfg: &OracleConfig) -> Result<IntegralEstimate> {
    match cfg.kind {
        OracleKind::Deterministic => integrate_deterministic(g, cfg),
        OracleKind::Randomized => integrate_randomized(g, cfg),
        OracleKind::QuantumSim => integrate_quantum_sim(g, cfg),
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Componentwise median of `k` runs. Run `j` receives seed
/// `derive_seed(base_seed, j)`; the charged queries add up.
pub fn boost_median<F>(run: F, base_seed: u64, k: usize) -> Result<IntegralEstimate>
where
    F: Fn(u64) -> Result<IntegralEstimate>,
{
    if k == 0 {
        return Err(Error::contract("median boosting needs at least one repetition"));
    }
    let runs = (0..k)
        .map(|j| run(derive_seed(base_seed, j as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(median_of(&runs))
}

/// Componentwise median of existing estimates (all of one kind and size).
pub fn median_of(runs: &[IntegralEstimate]) -> IntegralEstimate {
    let dim = runs[0].value.len();
    let mut column = vec![0.0; runs.len()];
    let value = (0..dim)
        .map(|c| {
            for (slot, run) in column.iter_mut().zip(runs) {
                *slot = run.value[c];
            }
            median(&mut column)
        })
        .collect();
    IntegralEstimate {
        value,
        queries: runs.iter().map(|r| r.queries).sum(),
        kind: runs[0].kind,
        target_eps: runs[0].target_eps,
    }
}

pub const DEFAULT_REPETITION_CONSTANT: f64 = 3.0;

/// `k = max(1, ceil(c log2(1 / (1 - (1 - delta)^{1/n}))))`.
pub fn repetitions_for(delta: f64, n: usize, c: f64) -> Result<usize> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::contract(format!("delta = {delta} not in (0, 1/2)")));
    }
    if n == 0 {
        return Err(Error::contract("step count must be positive"));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::contract("repetition constant must be positive"));
    }
    // 1 - (1 - delta)^{1/n}, computed without cancellation
    let per_step_failure = -((-delta).ln_1p() / n as f64).exp_m1();
    let k = (c * (1.0 / per_step_failure).log2() * (1.0 - 1e-12)).ceil();
    Ok(k.max(1.0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scalar<F: Fn(f64) -> f64 + Sync>(f: F) -> FnIntegrand<impl Fn(f64) -> Vec<f64> + Sync> {
        FnIntegrand::new(1, move |u| vec![f(u)])
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 1..=10 {
            let (x, w) = gauss_legendre_unit(n);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for deg in 0..2 * n {
                let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                assert!((got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn deterministic_examples() {
        let cfg = OracleConfig::new(OracleKind::Deterministic, 1e-3, 1, 1.0);
        let e = integrate_deterministic(&scalar(|u| u), &cfg).unwrap();
        assert!((e.value[0] - 0.5).abs() <= 1e-3);

        let e = integrate_deterministic(&scalar(|u| (std::f64::consts::PI * u).cos()), &cfg).unwrap();
        assert!(e.value[0].abs() <= 1e-3);

        let cfg = OracleConfig::new(OracleKind::Deterministic, 1e-4, 1, 0.5);
        let e = integrate_deterministic(&scalar(|u| u.powf(1.5)), &cfg).unwrap();
        assert!((e.value[0] - 0.4).abs() <= 1e-4);
        assert!(e.queries <= cfg.budget());
    }

    #[test]
    fn deterministic_budget() {
        let cfg = OracleConfig::new(OracleKind::Deterministic, 1e-2, 0, 1.0);
        assert_eq!(cfg.budget(), 400);
        let e = integrate_deterministic(&scalar(|u| u * u), &cfg).unwrap();
        assert_eq!(e.queries, 400);
        assert_eq!(e.kind, OracleKind::Deterministic);
    }

    #[test]
    fn oracle_rejects_bad_config() {
        let g = scalar(|u| u);
        let bad = OracleConfig::new(OracleKind::Deterministic, 0.0, 0, 1.0);
        assert!(integrate(&g, &bad).is_err());
        let bad = OracleConfig::new(OracleKind::Randomized, 0.1, 0, 1.0).with_cost_constant(-1.0);
        assert!(integrate(&g, &bad).is_err());
    }

    #[test]
    fn non_finite_integrand_is_a_domain_error() {
        let g = scalar(|u| 1.0 / (u - u));
        let cfg = OracleConfig::new(OracleKind::Deterministic, 0.1, 0, 1.0);
        assert!(matches!(integrate(&g, &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn randomized_reproduces_constants_and_linears() {
        for seed in 0..10 {
            let cfg = OracleConfig::new(OracleKind::Randomized, 1e-2, 0, 1.0).with_seed(seed);
            let e = integrate_randomized(&scalar(|_| 2.5), &cfg).unwrap();
            assert!((e.value[0] - 2.5).abs() < 1e-14);

            let cfg = OracleConfig::new(OracleKind::Randomized, 1e-2, 1, 1.0).with_seed(seed);
            let e = integrate_randomized(&scalar(|u| u), &cfg).unwrap();
            assert!((e.value[0] - 0.5).abs() < 1e-14);
            let e = integrate_randomized(&scalar(|_| -1.25), &cfg).unwrap();
            assert!((e.value[0] + 1.25).abs() < 1e-14);
        }
    }

    #[test]
    fn randomized_success_frequency_on_kinked_integrand() {
        let g = scalar(|u| {
            let x = u - 0.5;
            x.abs().powf(1.5) * x.signum() + u
        });
        // odd part integrates to zero over [0, 1]
        let exact = 0.5;
        let mut hits = 0;
        for seed in 0..200 {
            let cfg = OracleConfig::new(OracleKind::Randomized, 1e-2, 0, 1.0).with_seed(seed);
            let e = integrate_randomized(&g, &cfg).unwrap();
            assert!(e.queries <= cfg.budget());
            if (e.value[0] - exact).abs() <= 1e-2 {
                hits += 1;
            }
        }
        assert!(hits as f64 / 200.0 >= 0.75);
    }

    #[test]
    fn quantum_budget_formula() {
        let cfg = OracleConfig::new(OracleKind::QuantumSim, 1e-2, 0, 1.0).with_cost_constant(1.0);
        let e = integrate_quantum_sim(&scalar(|u| u), &cfg).unwrap();
        assert_eq!(e.queries, 10);
    }

    #[test]
    fn quantum_zero_integrand_stays_in_band() {
        for seed in 0..200 {
            let cfg = OracleConfig::new(OracleKind::QuantumSim, 1e-2, 0, 1.0).with_seed(seed);
            let e = integrate_quantum_sim(&scalar(|_| 0.0), &cfg).unwrap();
            assert!(e.value[0].abs() <= 10.0 * 1e-2);
        }
    }

    #[test]
    fn quantum_emission_frequency() {
        let g = FnIntegrand::new(2, |u| vec![u, 1.0 - u]);
        let cfg = OracleConfig::new(OracleKind::QuantumSim, 1e-2, 0, 1.0);
        let oracle = QuantumSimOracle::prepare(&g, &cfg).unwrap();
        let trials = 10_000;
        let mut hits = [0usize; 2];
        for seed in 0..trials {
            let e = oracle.emit(seed);
            for c in 0..2 {
                if (e.value[c] - 0.5).abs() <= 1e-2 {
                    hits[c] += 1;
                }
            }
        }
        for h in hits {
            let f = h as f64 / trials as f64;
            assert!((0.74..=0.76).contains(&f), "frequency {f}");
        }
    }

    #[test]
    fn seed_determinism() {
        let g = FnIntegrand::new(2, |u| vec![u.sin(), u.exp()]);
        for kind in [OracleKind::Deterministic, OracleKind::Randomized, OracleKind::QuantumSim] {
            let cfg = OracleConfig::new(kind, 1e-2, 1, 1.0).with_seed(42);
            assert_eq!(integrate(&g, &cfg).unwrap(), integrate(&g, &cfg).unwrap());
        }
    }

    #[test]
    fn median_examples() {
        let runs: Vec<IntegralEstimate> = [0.4, 0.9, 0.5]
            .iter()
            .map(|v| IntegralEstimate {
                value: vec![*v],
                queries: 3,
                kind: OracleKind::Randomized,
                target_eps: 0.1,
            })
            .collect();
        let m = median_of(&runs);
        assert_eq!(m.value, vec![0.5]);
        assert_eq!(m.queries, 9);
    }

    #[test]
    fn boost_with_one_repetition_is_a_single_run() {
        let g = scalar(|u| u * u);
        let cfg = OracleConfig::new(OracleKind::Randomized, 1e-2, 0, 1.0);
        let boosted = boost_median(|s| integrate(&g, &cfg.with_seed(s)), 9, 1).unwrap();
        let single = integrate(&g, &cfg.with_seed(derive_seed(9, 0))).unwrap();
        assert_eq!(boosted, single);
    }

    #[test]
    fn boost_rejects_zero_repetitions() {
        let g = scalar(|u| u);
        let cfg = OracleConfig::new(OracleKind::Randomized, 1e-2, 0, 1.0);
        assert!(boost_median(|s| integrate(&g, &cfg.with_seed(s)), 0, 0).is_err());
    }

    #[test]
    fn boosted_quantum_success_frequency() {
        let g = scalar(|u| u);
        let cfg = OracleConfig::new(OracleKind::QuantumSim, 1e-2, 0, 1.0);
        let oracle = QuantumSimOracle::prepare(&g, &cfg).unwrap();
        let trials = 1000;
        let mut hits = 0;
        for t in 0..trials {
            let e = boost_median(|s| Ok(oracle.emit(s)), t, 15).unwrap();
            if (e.value[0] - 0.5).abs() <= 1e-2 {
                hits += 1;
            }
        }
        assert!(hits as f64 / trials as f64 >= 0.99);
    }

    #[test]
    fn repetitions_examples() {
        assert_eq!(repetitions_for(0.25, 1, 3.0).unwrap(), 6);
        assert_eq!(repetitions_for(0.25, 16, 3.0).unwrap(), 18);
        assert_eq!(repetitions_for(0.4, 1, 0.1).unwrap(), 1);
        assert!(repetitions_for(0.5, 1, 3.0).is_err());
        assert!(repetitions_for(0.0, 1, 3.0).is_err());
    }

    proptest! {
        #[test]
        fn repetitions_monotone(delta in 0.01f64..0.49, n in 1usize..2000, c in 0.5f64..5.0) {
            let k = repetitions_for(delta, n, c).unwrap();
            prop_assert!(k >= 1);
            prop_assert!(repetitions_for(delta, n + 1, c).unwrap() >= k);
            prop_assert!(repetitions_for(delta * 0.5, n, c).unwrap() >= k);
        }
    }
}
