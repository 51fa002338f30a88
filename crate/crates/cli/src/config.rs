//! Experiment configuration: a TOML file plus command-line overrides.
//!
//! ```toml
//! [problem]
//! name = "scalar-exponential"
//!
//! [grid]
//! r = [0, 1]
//! rho = [1.0]
//! modes = ["det_exact", "quantum_sim"]
//! n = [8, 16, 32, 64]      # or: eps = [1e-2, 1e-3]
//!
//! [run]
//! delta = 0.1
//! seeds = [0, 1, 2]
//! samples_per_step = 8
//! cost_constant = 4.0
//! repetition_constant = 3.0
//! wall_time = false
//! out = "sweep.csv"
//! ```

use std::path::{Path, PathBuf};

use holder_ivp::quad::{DEFAULT_COST_CONSTANT, DEFAULT_REPETITION_CONSTANT};
use holder_ivp::{ProblemSpec, SolveMode};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        message: message.into(),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    problem: RawProblem,
    #[serde(default)]
    grid: RawGrid,
    #[serde(default)]
    run: RawRun,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    name: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    r: Option<Vec<usize>>,
    rho: Option<Vec<f64>>,
    modes: Option<Vec<String>>,
    n: Option<Vec<usize>>,
    eps: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    delta: Option<f64>,
    seeds: Option<Vec<u64>>,
    samples_per_step: Option<usize>,
    cost_constant: Option<f64>,
    repetition_constant: Option<f64>,
    wall_time: Option<bool>,
    out: Option<PathBuf>,
}

/// Step counts, given directly or as accuracy targets.
#[derive(Debug, Clone, PartialEq)]
pub enum StepGrid {
    N(Vec<usize>),
    /// Each `eps` maps to `n = ceil(eps^{-1/(r+rho+1)})` for the class at hand.
    Eps(Vec<f64>),
}

impl StepGrid {
    pub fn step_counts(&self, r: usize, rho: f64) -> Vec<usize> {
        match self {
            StepGrid::N(ns) => ns.clone(),
            StepGrid::Eps(eps) => eps
                .iter()
                .map(|e| (e.powf(-1.0 / (r as f64 + rho + 1.0)) * (1.0 - 1e-12)).ceil().max(1.0) as usize)
                .collect(),
        }
    }
}

/// A validated sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemSpec,
    /// `(r, rho)` classes, in sweep order.
    pub classes: Vec<(usize, f64)>,
    pub modes: Vec<SolveMode>,
    pub steps: StepGrid,
    pub delta: f64,
    pub seeds: Vec<u64>,
    pub samples_per_step: usize,
    pub cost_constant: f64,
    pub repetition_constant: f64,
    pub wall_time: bool,
    pub out: Option<PathBuf>,
}

/// Command-line overrides; `None` keeps the file (or default) value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub problem: Option<String>,
    pub modes: Option<Vec<String>>,
    pub r: Option<Vec<usize>>,
    pub rho: Option<Vec<f64>>,
    pub n_grid: Option<Vec<usize>>,
    pub delta: Option<f64>,
    pub seeds: Option<Vec<u64>>,
    pub samples_per_step: Option<usize>,
    pub wall_time: Option<bool>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str, overrides: &Overrides) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text)?;
        Self::from_raw(raw, overrides)
    }

    pub fn from_file(path: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                    path: p.to_path_buf(),
                    source,
                })?;
                Self::from_toml(&text, overrides)
            }
            None => Self::from_raw(RawConfig::default(), overrides),
        }
    }

    fn from_raw(mut raw: RawConfig, o: &Overrides) -> Result<Self, ConfigError> {
        if let Some(v) = &o.problem {
            raw.problem.name = Some(v.clone());
        }
        if let Some(v) = &o.modes {
            raw.grid.modes = Some(v.clone());
        }
        if let Some(v) = &o.r {
            raw.grid.r = Some(v.clone());
        }
        if let Some(v) = &o.rho {
            raw.grid.rho = Some(v.clone());
        }
        if let Some(v) = &o.n_grid {
            raw.grid.n = Some(v.clone());
            raw.grid.eps = None;
        }
        if let Some(v) = o.delta {
            raw.run.delta = Some(v);
        }
        if let Some(v) = &o.seeds {
            raw.run.seeds = Some(v.clone());
        }
        if let Some(v) = o.samples_per_step {
            raw.run.samples_per_step = Some(v);
        }
        if let Some(v) = o.wall_time {
            raw.run.wall_time = Some(v);
        }
        if let Some(v) = &o.out {
            raw.run.out = Some(v.clone());
        }

        let name = raw
            .problem
            .name
            .ok_or_else(|| invalid("problem.name", "no problem given"))?;
        let problem: ProblemSpec = name.parse().map_err(|e| invalid("problem.name", format!("{e}")))?;

        let rs = raw.grid.r.unwrap_or_else(|| vec![0]);
        let rhos = raw.grid.rho.unwrap_or_else(|| vec![1.0]);
        if rs.is_empty() {
            return Err(invalid("grid.r", "empty list"));
        }
        if rhos.is_empty() {
            return Err(invalid("grid.rho", "empty list"));
        }
        let mut classes = Vec::new();
        for &r in &rs {
            for &rho in &rhos {
                if r > holder_ivp::problem::MAX_ORDER {
                    return Err(invalid("grid.r", format!("r = {r} exceeds {}", holder_ivp::problem::MAX_ORDER)));
                }
                if !(rho > 0.0 && rho <= 1.0) {
                    return Err(invalid("grid.rho", format!("rho = {rho} not in (0, 1]")));
                }
                if r == 0 && rho != 1.0 {
                    return Err(invalid("grid.rho", "r = 0 requires rho = 1"));
                }
                problem
                    .build(r, rho)
                    .map_err(|e| invalid("grid.r", format!("(r, rho) = ({r}, {rho}): {e}")))?;
                classes.push((r, rho));
            }
        }

        let modes = raw
            .grid
            .modes
            .unwrap_or_else(|| vec!["det_exact".into()])
            .iter()
            .map(|m| m.parse::<SolveMode>().map_err(|e| invalid("grid.modes", format!("{e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if modes.is_empty() {
            return Err(invalid("grid.modes", "empty list"));
        }

        let steps = match (raw.grid.n, raw.grid.eps) {
            (Some(_), Some(_)) => return Err(invalid("grid.n", "give either `n` or `eps`, not both")),
            (Some(ns), None) => {
                if ns.is_empty() {
                    return Err(invalid("grid.n", "empty list"));
                }
                if ns.contains(&0) {
                    return Err(invalid("grid.n", "step counts must be at least 1"));
                }
                StepGrid::N(ns)
            }
            (None, Some(eps)) => {
                if eps.is_empty() {
                    return Err(invalid("grid.eps", "empty list"));
                }
                if eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
                    return Err(invalid("grid.eps", "accuracy targets must lie in (0, 1)"));
                }
                StepGrid::Eps(eps)
            }
            (None, None) => return Err(invalid("grid.n", "no step-count grid given")),
        };

        let delta = raw.run.delta.unwrap_or(0.1);
        if !(delta > 0.0 && delta < 0.5) {
            return Err(invalid("run.delta", format!("{delta} not in (0, 1/2)")));
        }
        let seeds = raw.run.seeds.unwrap_or_else(|| vec![0]);
        if seeds.is_empty() {
            return Err(invalid("run.seeds", "empty list"));
        }
        let samples_per_step = raw.run.samples_per_step.unwrap_or(8);
        if samples_per_step == 0 {
            return Err(invalid("run.samples_per_step", "must be at least 1"));
        }
        let cost_constant = raw.run.cost_constant.unwrap_or(DEFAULT_COST_CONSTANT);
        if !(cost_constant > 0.0 && cost_constant.is_finite()) {
            return Err(invalid("run.cost_constant", "must be positive"));
        }
        let repetition_constant = raw.run.repetition_constant.unwrap_or(DEFAULT_REPETITION_CONSTANT);
        if !(repetition_constant > 0.0 && repetition_constant.is_finite()) {
            return Err(invalid("run.repetition_constant", "must be positive"));
        }
        if !problem.build(classes[0].0, classes[0].1).map(|p| p.has_reference()).unwrap_or(false) {
            return Err(invalid("problem.name", format!("`{problem}` has no reference solution to measure errors against")));
        }

        Ok(Self {
            problem,
            classes,
            modes,
            steps,
            delta,
            seeds,
            samples_per_step,
            cost_constant,
            repetition_constant,
            wall_time: raw.run.wall_time.unwrap_or(false),
            out: raw.run.out,
        })
    }
}

/// Parse `"8,16,32"` or a doubling range `"8:256"`.
pub fn parse_n_grid(s: &str) -> Result<Vec<usize>, String> {
    if let Some((lo, hi)) = s.split_once(':') {
        let lo: usize = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
        let hi: usize = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
        if lo == 0 || lo > hi {
            return Err(format!("bad range {lo}:{hi}"));
        }
        let mut out = Vec::new();
        let mut n = lo;
        while n <= hi {
            out.push(n);
            n *= 2;
        }
        return Ok(out);
    }
    parse_list(s)
}

/// Parse `"0,1,2"` or a half-open range `"0..200"`.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>, String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
        let hi: u64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
        if lo >= hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        return Ok((lo..hi).collect());
    }
    parse_list(s)
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<T>().map_err(|e| format!("`{}`: {e}", p.trim())))
        .collect()
}
