//! Initial-value problems `z' = f(z)`, `z(a) = eta` on `[a, b]`, together with
//! the derivative oracles the solver is allowed to call and the Hölder-class
//! metadata `(r, rho, D_0..D_r, H, L)` describing `f`.
//!
//! Derivatives are addressed by a *variable list*: `&[]` is `f^j` itself,
//! `&[k]` is `df^j/dy_k`, `&[0, 0, 1]` is `d^3 f^j / dy_0^2 dy_1`. The list is
//! treated as a multiset, so order of entries does not matter.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Highest smoothness order the Taylor machinery supports.
pub const MAX_ORDER: usize = 3;

/// A right-hand side `f: R^d -> R^d` that can report partial derivatives.
///
/// Implementations must be pure functions of their arguments.
pub trait RhsOracle: Send + Sync {
    fn dim(&self) -> usize;

    /// Highest derivative order the implementation can serve.
    fn max_order(&self) -> usize;

    /// `d^{|vars|} f^component / dy_{vars[0]} ... dy_{vars[k-1]}` at `y`.
    fn partial(&self, y: &[f64], component: usize, vars: &[usize]) -> f64;

    /// `f(y)`; the default goes through [`RhsOracle::partial`].
    fn value(&self, y: &[f64]) -> Vec<f64> {
        (0..self.dim()).map(|j| self.partial(y, j, &[])).collect()
    }
}

/// Parameters of the Hölder class `F^{r,rho}` a right-hand side belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct HolderSmoothness {
    r: usize,
    rho: f64,
    deriv_bounds: Vec<f64>,
    holder_const: f64,
    lipschitz: f64,
}

impl HolderSmoothness {
    /// `dim` is needed for the Lipschitz consistency check: in the max norm a
    /// row of `d` partials bounded by `D_1` gives a Lipschitz constant of at
    /// most `d * D_1`.
    pub fn new(
        r: usize,
        rho: f64,
        deriv_bounds: Vec<f64>,
        holder_const: f64,
        lipschitz: f64,
        dim: usize,
    ) -> Result<Self> {
        if r > MAX_ORDER {
            return Err(Error::contract(format!(
                "smoothness order r = {r} exceeds supported maximum {MAX_ORDER}"
            )));
        }
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::contract(format!("Hölder exponent rho = {rho} not in (0, 1]")));
        }
        if r == 0 && rho != 1.0 {
            return Err(Error::contract("rho must equal 1 when r = 0"));
        }
        if deriv_bounds.len() != r + 1 {
            return Err(Error::contract(format!(
                "expected {} derivative bounds D_0..D_r, got {}",
                r + 1,
                deriv_bounds.len()
            )));
        }
        if deriv_bounds.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return Err(Error::contract("derivative bounds must be positive and finite"));
        }
        if !(holder_const > 0.0 && holder_const.is_finite()) {
            return Err(Error::contract("Hölder constant must be positive"));
        }
        if !(lipschitz > 0.0 && lipschitz.is_finite()) {
            return Err(Error::contract("Lipschitz constant must be positive"));
        }
        if r == 0 && lipschitz != holder_const {
            return Err(Error::contract("for r = 0 the Lipschitz constant is H"));
        }
        if r >= 1 && lipschitz > dim as f64 * deriv_bounds[1] {
            return Err(Error::contract("Lipschitz constant exceeds d * D_1"));
        }
        Ok(Self {
            r,
            rho,
            deriv_bounds,
            holder_const,
            lipschitz,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `r + rho`, the exponent the residual integrand is rescaled by.
    pub fn order(&self) -> f64 {
        self.r as f64 + self.rho
    }

    pub fn deriv_bounds(&self) -> &[f64] {
        &self.deriv_bounds
    }

    pub fn holder_const(&self) -> f64 {
        self.holder_const
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }
}

/// Evaluation counters for one solve. Counters only ever increase.
#[derive(Debug, Default)]
pub struct CostLedger {
    classical_evals: AtomicU64,
    oracle_queries: AtomicU64,
    repetitions: AtomicU64,
}

/// Plain snapshot of a [`CostLedger`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CostCounts {
    pub classical_evals: u64,
    pub oracle_queries: u64,
    pub repetitions: u64,
}

impl CostCounts {
    pub fn total(&self) -> u64 {
        self.classical_evals + self.oracle_queries
    }
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge_classical(&self, count: u64) {
        self.classical_evals.fetch_add(count, Ordering::Relaxed);
    }

    pub fn charge_queries(&self, count: u64) {
        self.oracle_queries.fetch_add(count, Ordering::Relaxed);
    }

    pub fn charge_repetitions(&self, count: u64) {
        self.repetitions.fetch_add(count, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> CostCounts {
        CostCounts {
            classical_evals: self.classical_evals.load(Ordering::Relaxed),
            oracle_queries: self.oracle_queries.load(Ordering::Relaxed),
            repetitions: self.repetitions.load(Ordering::Relaxed),
        }
    }
}

type ReferenceFn = dyn Fn(f64) -> Vec<f64> + Send + Sync;

/// An autonomous initial-value problem with its oracle and class metadata.
#[derive(Clone)]
pub struct IvpProblem {
    name: String,
    interval: (f64, f64),
    eta: Vec<f64>,
    rhs: Arc<dyn RhsOracle>,
    smoothness: HolderSmoothness,
    enclosure: Vec<(f64, f64)>,
    reference: Option<Arc<ReferenceFn>>,
}

impl fmt::Debug for IvpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IvpProblem")
            .field("name", &self.name)
            .field("interval", &self.interval)
            .field("eta", &self.eta)
            .field("smoothness", &self.smoothness)
            .field("enclosure", &self.enclosure)
            .field("has_reference", &self.reference.is_some())
            .finish()
    }
}

impl IvpProblem {
    pub fn new(
        name: impl Into<String>,
        interval: (f64, f64),
        eta: Vec<f64>,
        rhs: Arc<dyn RhsOracle>,
        smoothness: HolderSmoothness,
    ) -> Result<Self> {
        let (a, b) = interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::contract(format!("interval [{a}, {b}] is empty or not finite")));
        }
        let dim = rhs.dim();
        if dim == 0 {
            return Err(Error::contract("dimension must be positive"));
        }
        if eta.len() != dim {
            return Err(Error::contract(format!(
                "initial state has {} entries, dimension is {dim}",
                eta.len()
            )));
        }
        if eta.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("initial state is not finite"));
        }
        if rhs.max_order() < smoothness.r() {
            return Err(Error::contract(format!(
                "oracle serves derivatives up to order {}, class needs {}",
                rhs.max_order(),
                smoothness.r()
            )));
        }
        Ok(Self {
            name: name.into(),
            interval,
            enclosure: Vec::new(),
            eta,
            rhs,
            smoothness,
            reference: None,
        })
    }

    pub fn with_reference(mut self, reference: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static) -> Self {
        self.reference = Some(Arc::new(reference));
        self
    }

    /// Box over which the declared derivative bounds hold.
    pub fn with_enclosure(mut self, enclosure: Vec<(f64, f64)>) -> Self {
        self.enclosure = enclosure;
        self
    }

    /// Same right-hand side on another interval. The reference solution is
    /// kept only if the start point is unchanged.
    pub fn with_interval(&self, a: f64, b: f64) -> Result<Self> {
        let mut p = Self::new(
            self.name.clone(),
            (a, b),
            self.eta.clone(),
            Arc::clone(&self.rhs),
            self.smoothness.clone(),
        )?
        .with_enclosure(self.enclosure.clone());
        if a == self.interval.0 {
            p.reference = self.reference.clone();
        }
        Ok(p)
    }

    /// Same right-hand side from another initial state; drops the reference.
    pub fn with_eta(&self, eta: Vec<f64>) -> Result<Self> {
        Ok(Self::new(
            self.name.clone(),
            self.interval,
            eta,
            Arc::clone(&self.rhs),
            self.smoothness.clone(),
        )?
        .with_enclosure(self.enclosure.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn smoothness(&self) -> &HolderSmoothness {
        &self.smoothness
    }

    pub fn enclosure(&self) -> &[(f64, f64)] {
        &self.enclosure
    }

    pub fn rhs(&self) -> &dyn RhsOracle {
        self.rhs.as_ref()
    }

    pub fn reference(&self) -> Option<&ReferenceFn> {
        self.reference.as_deref()
    }

    pub fn has_reference(&self) -> bool {
        self.reference.is_some()
    }

    fn check_point(&self, y: &[f64]) -> Result<()> {
        if y.len() != self.dim() {
            return Err(Error::contract(format!(
                "point has {} entries, dimension is {}",
                y.len(),
                self.dim()
            )));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("evaluation point is not finite"));
        }
        Ok(())
    }
}

/// One partial derivative of one component of `f`; charges one classical
/// evaluation.
pub fn eval_partial(
    problem: &IvpProblem,
    y: &[f64],
    component: usize,
    vars: &[usize],
    ledger: &CostLedger,
) -> Result<f64> {
    let r = problem.smoothness.r();
    if vars.len() > r {
        return Err(Error::contract(format!(
            "derivative of order {} requested, class order is r = {r}",
            vars.len()
        )));
    }
    if component >= problem.dim() {
        return Err(Error::contract(format!("component {component} out of range")));
    }
    if let Some(&v) = vars.iter().find(|&&v| v >= problem.dim()) {
        return Err(Error::contract(format!("variable index {v} out of range")));
    }
    problem.check_point(y)?;
    ledger.charge_classical(1);
    Ok(problem.rhs.partial(y, component, vars))
}

/// The full vector `f(y)`; charges one classical evaluation.
pub fn eval_rhs(problem: &IvpProblem, y: &[f64], ledger: &CostLedger) -> Result<Vec<f64>> {
    problem.check_point(y)?;
    ledger.charge_classical(1);
    Ok(problem.rhs.value(y))
}

/// Non-decreasing variable lists of length `order` over `dim` variables: one
/// representative per distinct partial derivative.
pub fn multi_indices(dim: usize, order: usize) -> Vec<Vec<usize>> {
    fn extend(dim: usize, order: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == order {
            out.push(cur.clone());
            return;
        }
        for v in start..dim {
            cur.push(v);
            extend(dim, order, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(dim, order, 0, &mut Vec::with_capacity(order), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Integrand `g` for the two-dimensional system `u' = 1, v' = g(u)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ReductionIntegrand {
    /// `g(u) = cos(pi u)`.
    CosPi,
    /// `g(u) = sum_k c_k u^k`.
    Polynomial(Vec<f64>),
    /// `g(u) = |u - 1/2|^p`, in `F^{r,rho}` exactly when `r + rho <= p`.
    Kink(f64),
}

impl ReductionIntegrand {
    fn value_deriv(&self, u: f64, k: usize) -> f64 {
        match self {
            ReductionIntegrand::CosPi => PI.powi(k as i32) * (PI * u + k as f64 * PI / 2.0).cos(),
            ReductionIntegrand::Polynomial(c) => (k..c.len())
                .map(|m| {
                    let falling: f64 = ((m - k + 1)..=m).map(|q| q as f64).product();
                    c[m] * falling * u.powi((m - k) as i32)
                })
                .sum(),
            ReductionIntegrand::Kink(p) => {
                let x = u - 0.5;
                let coef: f64 = (0..k).map(|q| p - q as f64).product();
                let mag = coef * x.abs().powf(p - k as f64);
                if k % 2 == 1 {
                    mag * x.signum()
                } else {
                    mag
                }
            }
        }
    }

    fn antiderivative(&self, t: f64) -> f64 {
        match self {
            ReductionIntegrand::CosPi => (PI * t).sin() / PI,
            ReductionIntegrand::Polynomial(c) => c
                .iter()
                .enumerate()
                .map(|(m, cm)| cm * t.powi(m as i32 + 1) / (m as f64 + 1.0))
                .sum(),
            ReductionIntegrand::Kink(p) => {
                let x = t - 0.5;
                (x.signum() * x.abs().powf(p + 1.0) + 0.5f64.powf(p + 1.0)) / (p + 1.0)
            }
        }
    }

    fn max_order(&self) -> usize {
        match self {
            ReductionIntegrand::CosPi | ReductionIntegrand::Polynomial(_) => MAX_ORDER,
            ReductionIntegrand::Kink(p) => (p.ceil() as usize).saturating_sub(1).min(MAX_ORDER),
        }
    }

    /// Sup of `|g^{(k)}|` over `u in [0, 1]`.
    fn deriv_bound(&self, k: usize) -> f64 {
        match self {
            ReductionIntegrand::CosPi => PI.powi(k as i32),
            ReductionIntegrand::Polynomial(c) => (k..c.len())
                .map(|m| {
                    let falling: f64 = ((m - k + 1)..=m).map(|q| q as f64).product();
                    (c[m] * falling).abs()
                })
                .sum(),
            ReductionIntegrand::Kink(p) => {
                let coef: f64 = (0..k).map(|q| (p - q as f64).abs()).product();
                coef * 0.5f64.powf(p - k as f64)
            }
        }
    }
}

impl fmt::Display for ReductionIntegrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionIntegrand::CosPi => write!(f, "cos-pi"),
            ReductionIntegrand::Polynomial(c) => {
                write!(f, "poly:")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            ReductionIntegrand::Kink(p) => write!(f, "kink:{p}"),
        }
    }
}

impl FromStr for ReductionIntegrand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "cos-pi" {
            return Ok(ReductionIntegrand::CosPi);
        }
        let bad = || Error::UnknownProblem(format!("integration-reduction({s})"));
        if let Some(rest) = s.strip_prefix("poly:") {
            let coeffs = rest
                .split(';')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            if coeffs.is_empty() {
                return Err(bad());
            }
            return Ok(ReductionIntegrand::Polynomial(coeffs));
        }
        if let Some(rest) = s.strip_prefix("kink:") {
            let p: f64 = rest.trim().parse().map_err(|_| bad())?;
            if !(p >= 1.0 && p.is_finite()) {
                return Err(bad());
            }
            return Ok(ReductionIntegrand::Kink(p));
        }
        Err(bad())
    }
}

/// Named catalog problems.
///
/// Textual forms: `scalar-exponential`, `scalar-quadratic`, `logistic`,
/// `harmonic`, `lotka-volterra`, `integration-reduction(cos-pi)`,
/// `integration-reduction(poly:1;0;2)`, `integration-reduction(kink:1.5)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSpec {
    /// `z' = z`, `z(0) = 1` on `[0, 1]`.
    ScalarExponential,
    /// `z' = z^2`, `z(0) = 1` on `[0, 1/2]`.
    ScalarQuadratic,
    /// `z' = z (1 - z)`, `z(0) = 1/2` on `[0, 2]`.
    Logistic,
    /// `u' = -v, v' = u`, `(u, v)(0) = (1, 0)` on `[0, 1]`.
    Harmonic,
    /// `u' = u - uv, v' = uv - v`, `(u, v)(0) = (3/2, 1/2)` on `[0, 1]`; no
    /// closed-form reference.
    LotkaVolterra,
    /// `u' = 1, v' = g(u)`, `u(0) = v(0) = 0` on `[0, 1]`.
    IntegrationReduction(ReductionIntegrand),
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::ScalarExponential => write!(f, "scalar-exponential"),
            ProblemSpec::ScalarQuadratic => write!(f, "scalar-quadratic"),
            ProblemSpec::Logistic => write!(f, "logistic"),
            ProblemSpec::Harmonic => write!(f, "harmonic"),
            ProblemSpec::LotkaVolterra => write!(f, "lotka-volterra"),
            ProblemSpec::IntegrationReduction(g) => write!(f, "integration-reduction({g})"),
        }
    }
}

impl FromStr for ProblemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "scalar-exponential" => return Ok(ProblemSpec::ScalarExponential),
            "scalar-quadratic" => return Ok(ProblemSpec::ScalarQuadratic),
            "logistic" => return Ok(ProblemSpec::Logistic),
            "harmonic" => return Ok(ProblemSpec::Harmonic),
            "lotka-volterra" => return Ok(ProblemSpec::LotkaVolterra),
            "integration-reduction" => {
                return Ok(ProblemSpec::IntegrationReduction(ReductionIntegrand::CosPi))
            }
            _ => {}
        }
        if let Some(inner) = s
            .strip_prefix("integration-reduction(")
            .and_then(|rest| rest.strip_suffix(')'))
        {
            return Ok(ProblemSpec::IntegrationReduction(inner.parse()?));
        }
        Err(Error::UnknownProblem(s.to_string()))
    }
}

/// Look up a catalog problem by name and equip it with class `F^{r,rho}`.
pub fn catalog(name: &str, r: usize, rho: f64) -> Result<IvpProblem> {
    name.parse::<ProblemSpec>()?.build(r, rho)
}

struct ScalarExponential;
struct ScalarQuadratic;
struct Logistic;
struct Harmonic;
struct LotkaVolterra;
struct Reduction(ReductionIntegrand);

impl RhsOracle for ScalarExponential {
    fn dim(&self) -> usize {
        1
    }
    fn max_order(&self) -> usize {
        MAX_ORDER
    }
    fn partial(&self, y: &[f64], _: usize, vars: &[usize]) -> f64 {
        match vars.len() {
            0 => y[0],
            1 => 1.0,
            _ => 0.0,
        }
    }
}

impl RhsOracle for ScalarQuadratic {
    fn dim(&self) -> usize {
        1
    }
    fn max_order(&self) -> usize {
        MAX_ORDER
    }
    fn partial(&self, y: &[f64], _: usize, vars: &[usize]) -> f64 {
        match vars.len() {
            0 => y[0] * y[0],
            1 => 2.0 * y[0],
            2 => 2.0,
            _ => 0.0,
        }
    }
}

impl RhsOracle for Logistic {
    fn dim(&self) -> usize {
        1
    }
    fn max_order(&self) -> usize {
        MAX_ORDER
    }
    fn partial(&self, y: &[f64], _: usize, vars: &[usize]) -> f64 {
        match vars.len() {
            0 => y[0] * (1.0 - y[0]),
            1 => 1.0 - 2.0 * y[0],
            2 => -2.0,
            _ => 0.0,
        }
    }
}

impl RhsOracle for Harmonic {
    fn dim(&self) -> usize {
        2
    }
    fn max_order(&self) -> usize {
        MAX_ORDER
    }
    fn partial(&self, y: &[f64], component: usize, vars: &[usize]) -> f64 {
        match (component, vars) {
            (0, []) => -y[1],
            (1, []) => y[0],
            (0, [1]) => -1.0,
            (1, [0]) => 1.0,
            _ => 0.0,
        }
    }
}

impl RhsOracle for LotkaVolterra {
    fn dim(&self) -> usize {
        2
    }
    fn max_order(&self) -> usize {
        MAX_ORDER
    }
    fn partial(&self, y: &[f64], component: usize, vars: &[usize]) -> f64 {
        let (u, v) = (y[0], y[1]);
        let mut sorted = [0usize; MAX_ORDER];
        let k = vars.len().min(MAX_ORDER);
        sorted[..k].copy_from_slice(&vars[..k]);
        sorted[..k].sort_unstable();
        match (component, &sorted[..vars.len().min(MAX_ORDER)]) {
            (0, []) => u - u * v,
            (0, [0]) => 1.0 - v,
            (0, [1]) => -u,
            (0, [0, 1]) => -1.0,
            (1, []) => u * v - v,
            (1, [0]) => v,
            (1, [1]) => u - 1.0,
            (1, [0, 1]) => 1.0,
            _ => 0.0,
        }
    }
}

impl RhsOracle for Reduction {
    fn dim(&self) -> usize {
        2
    }
    fn max_order(&self) -> usize {
        self.0.max_order()
    }
    fn partial(&self, y: &[f64], component: usize, vars: &[usize]) -> f64 {
        match component {
            0 => {
                if vars.is_empty() {
                    1.0
                } else {
                    0.0
                }
            }
            _ => {
                if vars.iter().any(|&v| v != 0) {
                    0.0
                } else {
                    self.0.value_deriv(y[0], vars.len())
                }
            }
        }
    }
}

/// Class metadata from per-order sup bounds `sup[k] >= sup |d^k f|` over the
/// enclosure (`sup.len() >= r + 2`), row sums `row[k]` of the first
/// derivative, and the enclosure diameter.
fn smoothness_from_bounds(
    r: usize,
    rho: f64,
    sup: &[f64],
    jacobian_row_sum: f64,
    diameter: f64,
    dim: usize,
) -> Result<HolderSmoothness> {
    // zero derivatives are bounded by any positive number; use 1
    let positive = |v: f64| if v > 0.0 { v } else { 1.0 };
    let bounds: Vec<f64> = (0..=r).map(|k| positive(sup[k])).collect();
    let lipschitz = positive(jacobian_row_sum);
    let holder = if r == 0 {
        lipschitz
    } else {
        positive(dim as f64 * sup[r + 1] * diameter.powf(1.0 - rho))
    };
    HolderSmoothness::new(r, rho, bounds, holder, lipschitz, dim)
}

impl ProblemSpec {
    /// Build the problem as a member of `F^{r,rho}`.
    pub fn build(&self, r: usize, rho: f64) -> Result<IvpProblem> {
        let name = self.to_string();
        match self {
            ProblemSpec::ScalarExponential => {
                // enclosure [0, 3] contains z(t) = e^t on [0, 1]
                let s = smoothness_from_bounds(r, rho, &[3.0, 1.0, 0.0, 0.0, 0.0], 1.0, 3.0, 1)?;
                Ok(IvpProblem::new(name, (0.0, 1.0), vec![1.0], Arc::new(ScalarExponential), s)?
                    .with_enclosure(vec![(0.0, 3.0)])
                    .with_reference(|t| vec![t.exp()]))
            }
            ProblemSpec::ScalarQuadratic => {
                // z(t) = 1/(1 - t) stays in [1, 2] on [0, 1/2]; enclosure [0, 2.5]
                let s = smoothness_from_bounds(r, rho, &[6.25, 5.0, 2.0, 0.0, 0.0], 5.0, 2.5, 1)?;
                Ok(IvpProblem::new(name, (0.0, 0.5), vec![1.0], Arc::new(ScalarQuadratic), s)?
                    .with_enclosure(vec![(0.0, 2.5)])
                    .with_reference(|t| vec![1.0 / (1.0 - t)]))
            }
            ProblemSpec::Logistic => {
                let s = smoothness_from_bounds(r, rho, &[0.25, 1.0, 2.0, 0.0, 0.0], 1.0, 1.0, 1)?;
                Ok(IvpProblem::new(name, (0.0, 2.0), vec![0.5], Arc::new(Logistic), s)?
                    .with_enclosure(vec![(0.0, 1.0)])
                    .with_reference(|t| vec![1.0 / (1.0 + (-t).exp())]))
            }
            ProblemSpec::Harmonic => {
                let s = smoothness_from_bounds(r, rho, &[1.0, 1.0, 0.0, 0.0, 0.0], 1.0, 2.0, 2)?;
                Ok(IvpProblem::new(name, (0.0, 1.0), vec![1.0, 0.0], Arc::new(Harmonic), s)?
                    .with_enclosure(vec![(-1.0, 1.0), (-1.0, 1.0)])
                    .with_reference(|t| vec![t.cos(), t.sin()]))
            }
            ProblemSpec::LotkaVolterra => {
                // trajectory stays inside [0, 3]^2 over [0, 1]
                let s = smoothness_from_bounds(r, rho, &[6.0, 3.0, 1.0, 0.0, 0.0], 5.0, 3.0, 2)?;
                Ok(IvpProblem::new(name, (0.0, 1.0), vec![1.5, 0.5], Arc::new(LotkaVolterra), s)?
                    .with_enclosure(vec![(0.0, 3.0), (0.0, 3.0)]))
            }
            ProblemSpec::IntegrationReduction(g) => {
                if let ReductionIntegrand::Kink(p) = g {
                    if r as f64 + rho > *p + 1e-12 {
                        return Err(Error::contract(format!(
                            "|u - 1/2|^{p} is not in F^{{{r},{rho}}}"
                        )));
                    }
                }
                let sup: Vec<f64> = (0..=MAX_ORDER + 1)
                    .map(|k| {
                        if k <= g.max_order() {
                            g.deriv_bound(k).max(if k == 0 { 1.0 } else { 0.0 })
                        } else {
                            // only reached for kink integrands; bound the
                            // Hölder quotient of the top derivative instead
                            g.deriv_bound(k - 1).max(1.0)
                        }
                    })
                    .collect();
                let lip = g.deriv_bound(1.min(g.max_order()));
                let s = smoothness_from_bounds(r, rho, &sup, lip, 1.0, 2)?;
                let g_ref = g.clone();
                Ok(IvpProblem::new(name, (0.0, 1.0), vec![0.0, 0.0], Arc::new(Reduction(g.clone())), s)?
                    .with_enclosure(vec![(0.0, 1.0), (-10.0, 10.0)])
                    .with_reference(move |t| vec![t, g_ref.antiderivative(t)]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_problem(r: usize) -> IvpProblem {
        catalog("scalar-exponential", r, 1.0).unwrap()
    }

    #[test]
    fn eval_partial_identity_rhs() {
        let p = identity_problem(1);
        let ledger = CostLedger::new();
        assert_eq!(eval_partial(&p, &[2.0], 0, &[], &ledger).unwrap(), 2.0);
        assert_eq!(eval_partial(&p, &[2.0], 0, &[0], &ledger).unwrap(), 1.0);
        assert_eq!(ledger.snapshot().classical_evals, 2);
    }

    #[test]
    fn eval_partial_quadratic_first_derivative() {
        let p = catalog("scalar-quadratic", 1, 1.0).unwrap();
        let ledger = CostLedger::new();
        assert_eq!(eval_partial(&p, &[3.0], 0, &[0], &ledger).unwrap(), 6.0);
    }

    #[test]
    fn eval_partial_rejects_order_above_r() {
        let p = identity_problem(0);
        let ledger = CostLedger::new();
        let err = eval_partial(&p, &[2.0], 0, &[0], &ledger).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
        assert_eq!(ledger.snapshot().classical_evals, 0);
    }

    #[test]
    fn eval_partial_rejects_non_finite_point() {
        let p = identity_problem(1);
        let ledger = CostLedger::new();
        let err = eval_partial(&p, &[f64::NAN], 0, &[], &ledger).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn eval_partial_is_pure_and_charges_once_per_call() {
        let p = catalog("lotka-volterra", 2, 1.0).unwrap();
        let ledger = CostLedger::new();
        let y = [1.3, 0.7];
        let a = eval_partial(&p, &y, 1, &[1, 0], &ledger).unwrap();
        let b = eval_partial(&p, &y, 1, &[0, 1], &ledger).unwrap();
        assert_eq!(a, b);
        assert_eq!(ledger.snapshot().classical_evals, 2);
    }

    #[test]
    fn catalog_references() {
        let p = catalog("scalar-exponential", 0, 1.0).unwrap();
        let z = p.reference().unwrap();
        assert!((z(1.0)[0] - std::f64::consts::E).abs() < 1e-15);

        let p = catalog("integration-reduction(cos-pi)", 1, 1.0).unwrap();
        let z = p.reference().unwrap();
        assert!(z(1.0)[1].abs() < 1e-15);
        assert_eq!(z(0.3)[0], 0.3);

        let p = catalog("scalar-quadratic", 1, 1.0).unwrap();
        assert_eq!(p.interval(), (0.0, 0.5));
        assert!((p.reference().unwrap()(0.5)[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn catalog_unknown_name() {
        assert!(matches!(catalog("van-der-pol", 1, 1.0), Err(Error::UnknownProblem(_))));
        assert!(matches!(
            catalog("integration-reduction(sin)", 1, 1.0),
            Err(Error::UnknownProblem(_))
        ));
    }

    #[test]
    fn catalog_names_round_trip() {
        for name in [
            "scalar-exponential",
            "scalar-quadratic",
            "logistic",
            "harmonic",
            "lotka-volterra",
            "integration-reduction(cos-pi)",
            "integration-reduction(poly:1;-2;0.5)",
            "integration-reduction(kink:1.5)",
        ] {
            let spec: ProblemSpec = name.parse().unwrap();
            assert_eq!(spec.to_string(), name);
        }
    }

    #[test]
    fn kink_class_membership_is_enforced() {
        assert!(catalog("integration-reduction(kink:1.5)", 1, 0.5).is_ok());
        assert!(catalog("integration-reduction(kink:1.5)", 0, 1.0).is_ok());
        assert!(catalog("integration-reduction(kink:1.5)", 1, 1.0).is_err());
    }

    #[test]
    fn smoothness_invariants() {
        assert!(HolderSmoothness::new(0, 0.5, vec![1.0], 1.0, 1.0, 1).is_err());
        assert!(HolderSmoothness::new(1, 1.0, vec![1.0, 1.0], 1.0, 2.0, 1).is_err());
        assert!(HolderSmoothness::new(1, 1.0, vec![1.0, 0.0], 1.0, 1.0, 1).is_err());
        assert!(HolderSmoothness::new(4, 1.0, vec![1.0; 5], 1.0, 1.0, 1).is_err());
        assert!(HolderSmoothness::new(0, 1.0, vec![1.0], 2.0, 1.0, 1).is_err());
        assert!(HolderSmoothness::new(2, 0.3, vec![1.0, 1.0, 1.0], 1.0, 1.0, 1).is_ok());
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multi_indices(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(multi_indices(3, 3).len(), 10);
    }

    #[test]
    fn references_satisfy_their_odes() {
        let ledger = CostLedger::new();
        for name in [
            "scalar-exponential",
            "scalar-quadratic",
            "logistic",
            "harmonic",
            "integration-reduction(cos-pi)",
            "integration-reduction(poly:1;-2;0.5)",
            "integration-reduction(kink:1.5)",
        ] {
            let p = catalog(name, 0, 1.0).unwrap();
            let z = p.reference().unwrap();
            let (a, b) = p.interval();
            let step = 1e-6;
            for k in 0..20 {
                let t = a + (b - a) * (k as f64 + 0.5) / 20.0;
                let zp = z(t + step);
                let zm = z(t - step);
                let f = eval_rhs(&p, &z(t), &ledger).unwrap();
                for j in 0..p.dim() {
                    let fd = (zp[j] - zm[j]) / (2.0 * step);
                    let rel = (fd - f[j]).abs() / f[j].abs().max(1.0);
                    assert!(rel < 1e-6, "{name} t={t} component {j}: fd {fd} vs f {}", f[j]);
                }
            }
        }
    }

    #[test]
    fn reduction_integrand_derivatives_match_finite_differences() {
        let gs = [
            ReductionIntegrand::CosPi,
            ReductionIntegrand::Polynomial(vec![0.5, -1.0, 2.0, 3.0]),
            ReductionIntegrand::Kink(2.5),
        ];
        let eps = 1e-5;
        for g in &gs {
            for k in 0..g.max_order() {
                for &u in &[0.1, 0.37, 0.8] {
                    let fd = (g.value_deriv(u + eps, k) - g.value_deriv(u - eps, k)) / (2.0 * eps);
                    let exact = g.value_deriv(u, k + 1);
                    assert!((fd - exact).abs() < 1e-6 * exact.abs().max(1.0), "{g} k={k} u={u}");
                }
            }
        }
    }

    #[test]
    fn lotka_volterra_partials_match_finite_differences() {
        let rhs = LotkaVolterra;
        let y = [1.2, 0.8];
        let eps = 1e-6;
        for j in 0..2 {
            for v in 0..2 {
                let mut yp = y;
                let mut ym = y;
                yp[v] += eps;
                ym[v] -= eps;
                let fd = (rhs.partial(&yp, j, &[]) - rhs.partial(&ym, j, &[])) / (2.0 * eps);
                assert!((fd - rhs.partial(&y, j, &[v])).abs() < 1e-8);
                for w in 0..2 {
                    let fd2 = (rhs.partial(&yp, j, &[w]) - rhs.partial(&ym, j, &[w])) / (2.0 * eps);
                    assert!((fd2 - rhs.partial(&y, j, &[v, w])).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn ledger_snapshot_totals() {
        let l = CostLedger::new();
        l.charge_classical(3);
        l.charge_queries(4);
        l.charge_repetitions(2);
        let s = l.snapshot();
        assert_eq!(s.total(), 7);
        assert_eq!(s.repetitions, 2);
    }
}
