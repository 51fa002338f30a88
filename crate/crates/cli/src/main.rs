use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use holder_ivp_cli::config::{parse_list, parse_n_grid, parse_seeds};
use holder_ivp_cli::{fit, format_fit, read_csv, run_sweep, write_csv, ExperimentConfig, Overrides};

#[derive(Parser)]
#[command(name = "ivp-sweep", version, about = "Run and fit convergence/cost sweeps of the Hölder-class IVP solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every grid cell and write one CSV row per solve.
    Sweep(SweepArgs),
    /// Fit convergence orders and cost exponents from a sweep CSV.
    Fit {
        /// CSV produced by `sweep`.
        input: PathBuf,
        /// Failure probability used when the sweep was run.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    /// TOML experiment file; flags below override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Catalog problem, e.g. `logistic` or `integration-reduction(kink:1.5)`.
    #[arg(long)]
    problem: Option<String>,
    /// Comma-separated modes: det_exact, det_values, randomized, quantum_sim.
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated smoothness orders r.
    #[arg(long)]
    r: Option<String>,
    /// Comma-separated Hölder exponents rho.
    #[arg(long)]
    rho: Option<String>,
    /// Step counts: `8,16,32` or a doubling range `8:256`.
    #[arg(long)]
    n_grid: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    /// Seeds: `0,1,2` or a range `0..10`.
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    samples_per_step: Option<usize>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall time per solve (makes the output non-reproducible).
    #[arg(long)]
    wall_time: bool,
}

impl SweepArgs {
    fn overrides(&self) -> anyhow::Result<Overrides> {
        let wrap = |flag: &str, e: String| anyhow::anyhow!("invalid --{flag}: {e}");
        Ok(Overrides {
            problem: self.problem.clone(),
            modes: self.mode.as_deref().map(parse_list).transpose().map_err(|e| wrap("mode", e))?,
            r: self.r.as_deref().map(parse_list).transpose().map_err(|e| wrap("r", e))?,
            rho: self.rho.as_deref().map(parse_list).transpose().map_err(|e| wrap("rho", e))?,
            n_grid: self.n_grid.as_deref().map(parse_n_grid).transpose().map_err(|e| wrap("n-grid", e))?,
            delta: self.delta,
            seeds: self.seeds.as_deref().map(parse_seeds).transpose().map_err(|e| wrap("seeds", e))?,
            samples_per_step: self.samples_per_step,
            wall_time: self.wall_time.then_some(true),
            out: self.out.clone(),
        })
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Sweep(args) => {
            let cfg = ExperimentConfig::from_file(args.config.as_deref(), &args.overrides()?)?;
            let rows = run_sweep(&cfg)?;
            match &cfg.out {
                Some(path) => {
                    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
                    write_csv(&rows, BufWriter::new(f))?;
                }
                None => write_csv(&rows, io::stdout().lock())?,
            }
        }
        Command::Fit { input, delta } => {
            let f = File::open(&input).with_context(|| format!("cannot open {}", input.display()))?;
            let rows = read_csv(f)?;
            print!("{}", format_fit(&fit(&rows, delta)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
