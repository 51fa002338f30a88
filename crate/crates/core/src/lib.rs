//! Taylor-plus-integral-oracle solver for autonomous ODE initial-value
//! problems `z' = f(z)`, `z(a) = eta`, with `f` in a Hölder class
//! `F^{r,rho}`.
//!
//! Each step of length `h` splits the exact increment
//! `int f(l_i(t)) dt` into the exactly integrable Taylor part
//! `int w_i(l_i(t)) dt` and a residual `h^{r+rho+1} int_0^1 g_i(u) du` whose
//! integral is handed to an interchangeable oracle: deterministic
//! quadrature, control-variate Monte Carlo, or a simulated quantum
//! integrator. Randomized and simulated-quantum estimates are median-boosted
//! so that all `n` residual integrals are accurate simultaneously with
//! probability `1 - delta`.
//!
//! ```
//! use holder_ivp::{catalog, solve, sup_error, SolveConfig, SolveMode};
//!
//! let problem = catalog("scalar-exponential", 1, 1.0).unwrap();
//! let traj = solve(&problem, &SolveConfig::new(32, SolveMode::QuantumSim).with_seed(7)).unwrap();
//! let err = sup_error(&traj, problem.reference().unwrap(), 8);
//! assert!(err < 1e-3);
//! ```

pub mod analysis;
pub mod error;
pub mod poly;
pub mod problem;
pub mod quad;
pub mod seed;
pub mod solver;
pub mod taylor;

pub use analysis::{estimate_cost_exponent, estimate_order, SweepRow};
pub use error::{Error, Result};
pub use poly::VecPolynomial;
pub use problem::{
    catalog, eval_partial, eval_rhs, CostCounts, CostLedger, HolderSmoothness, IvpProblem, ProblemSpec,
    ReductionIntegrand, RhsOracle,
};
pub use quad::{
    boost_median, integrate, integrate_deterministic, integrate_quantum_sim, integrate_randomized,
    repetitions_for, FnIntegrand, IntegralEstimate, Integrand, OracleConfig, OracleKind,
};
pub use seed::derive_seed;
pub use solver::{eval_trajectory, solve, sup_error, SolveConfig, SolveMode, Trajectory};
pub use taylor::{build_l, build_w, integrate_w_of_l, local_derivatives, residual, ResidualIntegrand, TaylorMap};
