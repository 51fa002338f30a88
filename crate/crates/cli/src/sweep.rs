use std::io::Write;
use std::time::Instant;

use anyhow::{anyhow, Context};
use holder_ivp::{solve, sup_error, Error, SolveConfig, SolveMode, SweepRow};
use rayon::prelude::*;

use crate::config::ExperimentConfig;

/// One cell of the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Job {
    pub r: usize,
    pub rho: f64,
    pub mode: SolveMode,
    pub n: usize,
    pub seed: u64,
}

/// Grid cells in output order: class, then mode, then `n`, then seed.
pub fn jobs(cfg: &ExperimentConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for &(r, rho) in &cfg.classes {
        for &mode in &cfg.modes {
            for n in cfg.steps.step_counts(r, rho) {
                for &seed in &cfg.seeds {
                    out.push(Job { r, rho, mode, n, seed });
                }
            }
        }
    }
    out
}

pub fn run_job(cfg: &ExperimentConfig, job: Job) -> anyhow::Result<SweepRow> {
    let problem = cfg.problem.build(job.r, job.rho)?;
    let reference = problem
        .reference()
        .ok_or_else(|| anyhow!("`{}` has no reference solution", problem.name()))?;
    let solve_cfg = SolveConfig {
        cost_constant: cfg.cost_constant,
        repetition_constant: cfg.repetition_constant,
        ..SolveConfig::new(job.n, job.mode).with_seed(job.seed).with_delta(cfg.delta)
    };
    let (a, b) = problem.interval();
    let h = (b - a) / job.n as f64;

    let start = Instant::now();
    let outcome = solve(&problem, &solve_cfg);
    let mut row = SweepRow {
        problem: cfg.problem.to_string(),
        mode: job.mode,
        r: job.r,
        rho: job.rho,
        n: job.n,
        h,
        seed: job.seed,
        sup_error: f64::INFINITY,
        classical_evals: 0,
        oracle_queries: 0,
        repetitions: 0,
        wall_time: 0.0,
        status: "ok".into(),
    };
    match outcome {
        Ok(traj) => {
            row.sup_error = sup_error(&traj, reference, cfg.samples_per_step);
            row.classical_evals = traj.ledger.classical_evals;
            row.oracle_queries = traj.ledger.oracle_queries;
            row.repetitions = traj.ledger.repetitions;
        }
        Err(e @ Error::Divergence { .. }) => row.status = e.to_string(),
        Err(e) => return Err(e).with_context(|| format!("solve failed for {job:?}")),
    }
    if cfg.wall_time {
        row.wall_time = start.elapsed().as_secs_f64();
    }
    Ok(row)
}

/// Run every grid cell in parallel; rows come back in grid order.
pub fn run_sweep(cfg: &ExperimentConfig) -> anyhow::Result<Vec<SweepRow>> {
    jobs(cfg).into_par_iter().map(|job| run_job(cfg, job)).collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> anyhow::Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}
