//! One budget-limited run of a policy on an instance.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::policy::{next_action, Action, Policy, PolicyState};
use crate::{BanditInstance, Error, Result};

/// One executed pull.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullOutcome {
    /// Pulled arm.
    pub arm: usize,
    /// Raw reward, within the arm's support.
    pub reward: f64,
    /// Cost charged.
    pub cost: u64,
    /// 1-based pull number.
    pub time: u64,
    /// Residual budget before the pull.
    pub residual_before: u64,
}

/// Totals of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    /// Sum of raw rewards.
    pub total_reward: f64,
    /// Pulls per arm, `N_i`.
    pub pulls: Vec<u64>,
    /// Total number of pulls `T`.
    pub total_pulls: u64,
    /// Budget consumed, `sum N_i c_i`.
    pub spent: u64,
}

impl TrialResult {
    /// `sum N_i mu_i`: the expected reward of the realized pull counts.
    pub fn expected_reward(&self, instance: &BanditInstance) -> f64 {
        self.pulls
            .iter()
            .zip(instance.arms())
            .map(|(&n, arm)| n as f64 * arm.mean())
            .sum()
    }
}

/// Runs `policy` until the residual budget is below the cheapest cost.
/// The seed fixes both reward draws and policy randomization.
pub fn run_trial(policy: &mut dyn Policy, instance: &BanditInstance, seed: u64) -> Result<TrialResult> {
    run_trial_with(policy, instance, seed, |_| {})
}

/// [`run_trial`] reporting every pull to `observe`.
///
/// A policy that picks an arm it cannot pay for (or one that does not exist)
/// aborts the trial with an error.
pub fn run_trial_with<F>(
    policy: &mut dyn Policy,
    instance: &BanditInstance,
    seed: u64,
    mut observe: F,
) -> Result<TrialResult>
where
    F: FnMut(&PullOutcome),
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = PolicyState::new(instance.costs(), instance.budget());
    let mut total_reward = 0.0;
    let mut pulls = vec![0u64; instance.num_arms()];
    let cap = instance.reward_cap();

    loop {
        let arm = match next_action(policy, &mut state, &mut rng)? {
            Action::Stop => break,
            Action::Pull(arm) => arm,
        };
        let Some(spec) = instance.arms().get(arm) else {
            return Err(Error::ArmOutOfRange {
                arm,
                arms: instance.num_arms(),
            });
        };
        let residual = state.residual();
        if spec.cost() > residual {
            return Err(Error::UnaffordableArm {
                arm,
                cost: spec.cost(),
                residual,
            });
        }
        let reward = spec.sample_reward(&mut rng);
        state.record(arm, reward / cap);
        total_reward += reward;
        pulls[arm] += 1;
        observe(&PullOutcome {
            arm,
            reward,
            cost: spec.cost(),
            time: state.pulls(),
            residual_before: residual,
        });
    }

    Ok(TrialResult {
        total_reward,
        pulls,
        total_pulls: state.pulls(),
        spent: state.spent(),
    })
}
