//! Monte-Carlo harness: one instance per experiment, every (policy, budget)
//! cell run for `trials` independently seeded trials, aggregated into regret
//! rows.
//!
//! Trials run on a rayon pool; each trial owns its RNG, seeded from the master
//! seed, the policy id, the budget and the trial index, and results are
//! folded in a fixed order. Output therefore does not depend on the number of
//! worker threads.

use budget_bandit_core::seed::trial_seed;
use budget_bandit_core::stats::ci95;
use budget_bandit_core::{run_trial, BanditInstance, PolicyId, TrialResult};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::{Error, Result};

/// One (policy, budget) cell of the results table.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    /// Policy identifier.
    pub policy: PolicyId,
    /// Budget `B`.
    pub budget: u64,
    /// Number of trials aggregated.
    pub trials: usize,
    /// Mean total raw reward.
    pub mean_reward: f64,
    /// Baseline optimum minus `mean_reward`.
    pub mean_regret: f64,
    /// 95% confidence half-width of the regret.
    pub regret_ci95: f64,
    /// `mean_regret / ln(B / c_min)`.
    pub normalized_regret: f64,
}

/// Rows of one experiment plus the instance they were measured on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    /// The shared instance, carrying the largest budget.
    pub instance: BanditInstance,
    /// Rows in (policy order of the config, ascending budget) order.
    pub rows: Vec<AggregateRow>,
}

impl ExperimentOutcome {
    /// Cheapest arm cost of the instance.
    pub fn c_min(&self) -> u64 {
        self.instance.min_cost()
    }

    /// The row for `policy` at `budget`.
    pub fn row(&self, policy: PolicyId, budget: u64) -> Option<&AggregateRow> {
        self.rows
            .iter()
            .find(|r| r.policy == policy && r.budget == budget)
    }
}

/// The experiment's instance: drawn from the master seed, carrying the
/// largest configured budget.
pub fn generate_instance(config: &ExperimentConfig) -> Result<BanditInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.master_seed);
    let budget = *config.budgets.last().ok_or_else(|| Error::Config("no budgets".into()))?;
    Ok(config.shape().generate(budget, &mut rng)?)
}

/// Runs the full grid with up to `jobs` worker threads (0 = rayon default).
pub fn run_experiment(config: &ExperimentConfig, jobs: usize) -> Result<ExperimentOutcome> {
    config.validate()?;
    let instance = generate_instance(config)?;
    let rows = run_on_instance(config, &instance, jobs)?;
    Ok(ExperimentOutcome { instance, rows })
}

/// Runs the grid of `config` on a given instance (its own budget is ignored).
pub fn run_on_instance(config: &ExperimentConfig, instance: &BanditInstance, jobs: usize) -> Result<Vec<AggregateRow>> {
    let c_min = instance.min_cost();
    let mut per_budget = Vec::with_capacity(config.budgets.len());
    for &budget in &config.budgets {
        if budget <= c_min {
            return Err(Error::Config(format!(
                "key `budgets`: budget {budget} must exceed the cheapest cost {c_min} for ln(B / c_min) to be positive"
            )));
        }
        let inst = instance.with_budget(budget)?;
        let optimum = inst.optimal_expected_value(config.baseline.mode_for(budget))?;
        per_budget.push((inst, optimum));
    }

    let cells: Vec<(usize, usize, usize)> = (0..config.policies.len())
        .flat_map(|p| {
            (0..config.budgets.len()).flat_map(move |b| (0..config.trials).map(move |t| (p, b, t)))
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Results(format!("cannot start worker pool: {e}")))?;
    let results: Vec<TrialResult> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(p, b, t)| {
                let policy = config.policies[p];
                let (inst, _) = &per_budget[b];
                let seed = trial_seed(config.master_seed, &policy.to_string(), inst.budget(), t as u64);
                run_trial(policy.build().as_mut(), inst, seed)
            })
            .collect::<budget_bandit_core::Result<_>>()
    })?;

    let rows = results
        .chunks(config.trials)
        .zip(cells.chunks(config.trials))
        .map(|(trials, cell)| {
            let (p, b, _) = cell[0];
            let (inst, optimum) = &per_budget[b];
            aggregate(config.policies[p], inst.budget(), c_min, *optimum, trials)
        })
        .collect::<Result<_>>()?;
    Ok(rows)
}

/// Folds one cell's trials into a row.
pub fn aggregate(policy: PolicyId, budget: u64, c_min: u64, optimum: f64, trials: &[TrialResult]) -> Result<AggregateRow> {
    let regrets: Vec<f64> = trials.iter().map(|t| optimum - t.total_reward).collect();
    let mean_regret = budget_bandit_core::model::regret(optimum, trials)?;
    let log_term = (budget as f64 / c_min as f64).ln();
    Ok(AggregateRow {
        policy,
        budget,
        trials: trials.len(),
        mean_reward: optimum - mean_regret,
        mean_regret,
        regret_ci95: ci95(&regrets)?,
        normalized_regret: mean_regret / log_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Baseline;
    use budget_bandit_core::ArmSpec;

    fn config() -> ExperimentConfig {
        ExperimentConfig {
            k: 4,
            cost_interval: (1, 5),
            mean_interval: (10.0, 20.0),
            budgets: vec![50, 200],
            trials: 6,
            policies: vec![PolicyId::Kube, PolicyId::FractionalKube, PolicyId::EpsilonFirst(0.1)],
            master_seed: 5,
            baseline: Baseline::Exact,
        }
    }

    fn result(total_reward: f64) -> TrialResult {
        TrialResult {
            total_reward,
            pulls: vec![],
            total_pulls: 0,
            spent: 0,
        }
    }

    #[test]
    fn rows_come_in_policy_then_budget_order() {
        let out = run_experiment(&config(), 2).unwrap();
        let keys: Vec<(String, u64)> = out.rows.iter().map(|r| (r.policy.to_string(), r.budget)).collect();
        assert_eq!(
            keys,
            vec![
                ("kube".into(), 50),
                ("kube".into(), 200),
                ("fkube".into(), 50),
                ("fkube".into(), 200),
                ("efirst:0.1".into(), 50),
                ("efirst:0.1".into(), 200),
            ]
        );
        for r in &out.rows {
            assert_eq!(r.trials, 6);
            assert!(r.regret_ci95 >= 0.0);
            let log_term = (r.budget as f64 / out.c_min() as f64).ln();
            assert!((r.normalized_regret * log_term - r.mean_regret).abs() < 1e-9 * (1.0 + r.mean_regret.abs()));
        }
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let a = run_experiment(&config(), 1).unwrap();
        let b = run_experiment(&config(), 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fractional_baseline_dominates_exact() {
        let exact = run_experiment(&config(), 0).unwrap();
        let mut cfg = config();
        cfg.baseline = Baseline::Fractional;
        let frac = run_experiment(&cfg, 0).unwrap();
        for (e, f) in exact.rows.iter().zip(&frac.rows) {
            // Same trials, larger optimum.
            assert_eq!(e.mean_reward, f.mean_reward);
            assert!(f.mean_regret >= e.mean_regret);
        }
    }

    #[test]
    fn budget_must_exceed_cheapest_cost() {
        let mut cfg = config();
        cfg.cost_interval = (3, 3);
        cfg.budgets = vec![3, 10];
        assert!(run_experiment(&cfg, 1).unwrap_err().to_string().contains("cheapest cost"));
    }

    #[test]
    fn aggregate_arithmetic() {
        let row = aggregate(PolicyId::Kube, 100, 1, 40.0, &[result(30.0), result(34.0)]).unwrap();
        assert_eq!(row.mean_regret, 8.0);
        assert_eq!(row.mean_reward, 32.0);
        // Regrets 10 and 6: sample sd = 2 sqrt(2).
        assert!((row.regret_ci95 - 1.96 * 2.0).abs() < 1e-12);
        assert!((row.normalized_regret - 8.0 / 100f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn deterministic_arms_drive_regret_to_zero() {
        // Arm 0 is densest and its cost divides every budget, so the greedy
        // optimum equals the exact one and the regret is the exploration cost.
        let arms = vec![
            ArmSpec::new(2, 30.0, 0.0, 40.0).unwrap(),
            ArmSpec::new(3, 15.0, 0.0, 40.0).unwrap(),
            ArmSpec::new(5, 20.0, 0.0, 40.0).unwrap(),
        ];
        let instance = BanditInstance::new(arms, 20_000, 40.0).unwrap();
        let mut cfg = config();
        cfg.k = 3;
        cfg.budgets = vec![2_000, 20_000];
        cfg.policies = vec![PolicyId::Kube, PolicyId::FractionalKube];
        let rows = run_on_instance(&cfg, &instance, 0).unwrap();
        for pair in rows.chunks(2) {
            let (small, large) = (&pair[0], &pair[1]);
            let share_small = small.mean_regret / small.mean_reward;
            let share_large = large.mean_regret / large.mean_reward;
            assert!(share_large < share_small, "{small:?} {large:?}");
            assert!(share_large < 0.02, "{large:?}");
        }
    }
}
