use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use budget_bandit::commands::{bound_rows, bound_table, cmd_oracle_check, cmd_run, cmd_sweep, summary_table};
use budget_bandit::config::{parse_config, ExperimentConfig};
use budget_bandit::csv::read_csv;
use budget_bandit::experiment::generate_instance;
use clap::{Args, Parser, Subcommand};

/// Budget-limited multi-armed bandit experiments.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Override a config key, e.g. `--set trials=20` (value parsed as JSON).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Master seed, overriding the config file.
    #[arg(long, env = "BB_SEED")]
    seed: Option<u64>,
}

impl ConfigArgs {
    fn load(&self) -> Result<ExperimentConfig> {
        Ok(parse_config(&self.config, self.seed, &self.set)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured grid and write a results CSV.
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run the grid under the homogeneous, moderate and extreme cost regimes.
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
        /// Output path; each regime writes `<stem>-<regime>.<ext>`.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Print the regret bounds of the configured instance.
    Bound {
        #[command(flatten)]
        config: ConfigArgs,
        /// Results CSV from `run` on the same config, shown alongside.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the knapsack solvers against each other and exhaustive search.
    OracleCheck {
        /// Number of random instances.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Seed for instance generation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config, out, jobs } => {
            let cfg = config.load()?;
            let outcome = cmd_run(&cfg, &out, jobs)?;
            eprint!("{}", summary_table(&outcome.rows));
            eprintln!("wrote {}", out.display());
        }
        Command::Sweep { config, out, jobs } => {
            let cfg = config.load()?;
            for (regime, path, outcome) in cmd_sweep(&cfg, &out, jobs)? {
                eprintln!("[{}]", regime.label());
                eprint!("{}", summary_table(&outcome.rows));
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Bound { config, csv } => {
            let cfg = config.load()?;
            let instance = generate_instance(&cfg)?;
            let empirical = csv
                .as_deref()
                .map(|p| read_csv(p).with_context(|| format!("reading {}", p.display())))
                .transpose()?;
            let rows = bound_rows(&instance, &cfg.budgets, empirical.as_ref())?;
            print!("{}", bound_table(&rows));
        }
        Command::OracleCheck { instances, seed } => {
            if instances == 0 {
                eprintln!("warning: zero instances requested, nothing was checked");
            }
            let report = cmd_oracle_check(instances, seed);
            if let Some(ce) = &report.counterexample {
                eprintln!("solver check failed: {ce}");
                return Ok(false);
            }
            eprintln!("{} instances checked, no violations", report.checked);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
