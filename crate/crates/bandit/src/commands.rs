//! Subcommand bodies, kept separate from argument parsing so they can be
//! driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use budget_bandit_core::instance::CostRegime;
use budget_bandit_core::knapsack::audit::{audit_solvers, AuditBounds, AuditReport};
use budget_bandit_core::policy::{theorem_bound, BoundVariant};
use budget_bandit_core::{BanditInstance, PolicyId};

use crate::config::ExperimentConfig;
use crate::csv::{format_sig6, write_csv, ResultsFile};
use crate::experiment::{run_experiment, AggregateRow, ExperimentOutcome};
use crate::{Error, Result};

/// Runs one grid and writes its CSV to `out`.
pub fn cmd_run(config: &ExperimentConfig, out: &Path, jobs: usize) -> Result<ExperimentOutcome> {
    let outcome = run_experiment(config, jobs)?;
    write_csv(&outcome.rows, outcome.c_min(), out)?;
    Ok(outcome)
}

/// `results.csv` -> `results-<label>.csv`.
pub fn suffixed_path(out: &Path, label: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}-{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{label}"),
    };
    out.with_file_name(name)
}

/// Runs the grid once per cost regime, overriding the configured cost
/// interval, and writes one suffixed CSV per regime.
pub fn cmd_sweep(config: &ExperimentConfig, out: &Path, jobs: usize) -> Result<Vec<(CostRegime, PathBuf, ExperimentOutcome)>> {
    CostRegime::ALL
        .iter()
        .map(|&regime| {
            let mut cfg = config.clone();
            cfg.cost_interval = regime.cost_interval();
            let path = suffixed_path(out, regime.label());
            let outcome = cmd_run(&cfg, &path, jobs)?;
            Ok((regime, path, outcome))
        })
        .collect()
}

/// Console table of result rows.
pub fn summary_table(rows: &[AggregateRow]) -> String {
    let mut s = format!(
        "{:<12} {:>9} {:>13} {:>13} {:>11} {:>11}\n",
        "policy", "budget", "mean_reward", "mean_regret", "ci95", "normalized"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<12} {:>9} {:>13} {:>13} {:>11} {:>11}",
            r.policy.to_string(),
            r.budget,
            format_sig6(r.mean_reward),
            format_sig6(r.mean_regret),
            format_sig6(r.regret_ci95),
            format_sig6(r.normalized_regret)
        );
    }
    s
}

/// Worst-case regret guarantees at one budget, in raw reward units, next to
/// measured regrets when available.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    /// Budget.
    pub budget: u64,
    /// KUBE bound.
    pub kube_bound: f64,
    /// Fractional KUBE bound.
    pub fkube_bound: f64,
    /// Measured KUBE regret.
    pub kube_empirical: Option<f64>,
    /// Measured fractional KUBE regret.
    pub fkube_empirical: Option<f64>,
}

/// Evaluates both bounds on `instance` at every budget.
pub fn bound_rows(instance: &BanditInstance, budgets: &[u64], empirical: Option<&ResultsFile>) -> Result<Vec<BoundRow>> {
    let stats = instance.stats();
    let cap = instance.reward_cap();
    let measured = |policy: PolicyId, budget: u64| {
        empirical.and_then(|f| {
            f.rows
                .iter()
                .find(|r| r.policy == policy && r.budget == budget)
                .map(|r| r.mean_regret)
        })
    };
    budgets
        .iter()
        .map(|&budget| {
            let bound = |variant| -> Result<f64> {
                theorem_bound(&stats, budget, variant).map(|b| b * cap).map_err(|e| match e {
                    budget_bandit_core::Error::ZeroDensityGap => Error::Results(
                        "the instance has two arms with the same best reward density (d_min = 0); \
                         the regret bounds need a unique best arm, try another master_seed"
                            .into(),
                    ),
                    other => other.into(),
                })
            };
            Ok(BoundRow {
                budget,
                kube_bound: bound(BoundVariant::Kube)?,
                fkube_bound: bound(BoundVariant::Fractional)?,
                kube_empirical: measured(PolicyId::Kube, budget),
                fkube_empirical: measured(PolicyId::FractionalKube, budget),
            })
        })
        .collect()
}

/// Console table of bound rows.
pub fn bound_table(rows: &[BoundRow]) -> String {
    let opt = |v: Option<f64>| v.map(format_sig6).unwrap_or_else(|| "-".into());
    let mut s = format!(
        "{:>9} {:>13} {:>13} {:>13} {:>13}\n",
        "budget", "kube_bound", "fkube_bound", "kube_regret", "fkube_regret"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>9} {:>13} {:>13} {:>13} {:>13}",
            r.budget,
            format_sig6(r.kube_bound),
            format_sig6(r.fkube_bound),
            opt(r.kube_empirical),
            opt(r.fkube_empirical)
        );
    }
    s
}

/// Solver-ordering audit over `instances` random small knapsacks.
pub fn cmd_oracle_check(instances: usize, seed: u64) -> AuditReport {
    audit_solvers(instances, seed, &AuditBounds::default())
}
