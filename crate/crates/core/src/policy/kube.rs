use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, RngCore};

use super::{Policy, PolicyId, PolicyState};
use crate::knapsack::{solve_density_greedy, UnboundedKnapsackProblem};
use crate::{Error, Result};

/// Optimistic per-pull reward `mean + sqrt(2 ln t / n)`.
pub fn ucb_value(mean_est: f64, n: u64, t: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::UnpulledArm);
    }
    let t = t.max(1) as f64;
    Ok(mean_est + libm::sqrt(2.0 * libm::log(t) / n as f64))
}

/// Upper confidence bound on an arm's reward density:
/// `mean / c + sqrt(2 ln t / n) / c`. With `c = 1` this is the UCB1 index.
pub fn ucb_density_index(mean_est: f64, n: u64, t: u64, cost: u64) -> Result<f64> {
    Ok(ucb_value(mean_est, n, t)? / cost as f64)
}

/// Sampling distribution over arms, proportional to integer multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionDistribution {
    /// Probability of each arm; sums to one.
    pub probs: Vec<f64>,
    /// Copies of each arm in the knapsack solution the probabilities came from.
    pub multiplicities: Vec<u64>,
}

impl ActionDistribution {
    fn from_multiplicities(multiplicities: Vec<u64>) -> Self {
        let total: u64 = multiplicities.iter().sum();
        let probs = multiplicities
            .iter()
            .map(|&m| m as f64 / total as f64)
            .collect();
        Self {
            probs,
            multiplicities,
        }
    }

    /// The single arm carrying all mass, if any.
    pub fn point_mass(&self) -> Option<usize> {
        let mut support = self.multiplicities.iter().enumerate().filter(|(_, &m)| m > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    /// Inverse-CDF draw over arms in index order. Works on the integer
    /// multiplicities so no mass is lost to rounding.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total: u64 = self.multiplicities.iter().sum();
        let mut u = rng.random_range(0..total);
        for (i, &m) in self.multiplicities.iter().enumerate() {
            if u < m {
                return i;
            }
            u -= m;
        }
        unreachable!("draw below total mass")
    }
}

/// Solves the optimistic knapsack over the residual budget with the
/// density-ordered greedy and turns the multiplicities into probabilities.
///
/// Only arms with at least one pull take part; arms skipped by the initial
/// sweep cannot be afforded anyway.
pub fn kube_action_distribution(state: &PolicyState) -> Result<ActionDistribution> {
    let residual = state.residual();
    if residual < state.min_cost() {
        return Err(Error::Infeasible { residual });
    }
    let arms: Vec<usize> = state.initialized().collect();
    if arms.is_empty() {
        return Err(Error::UnpulledArm);
    }
    let t = state.pulls();
    let values = arms
        .iter()
        .map(|&i| ucb_value(state.mean_estimate(i).unwrap_or(0.0), state.counts()[i], t))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<u64> = arms.iter().map(|&i| state.costs()[i]).collect();
    let sub = greedy_distribution(values, weights, residual)?;

    let mut multiplicities = vec![0; state.num_arms()];
    for (slot, &arm) in arms.iter().enumerate() {
        multiplicities[arm] = sub.multiplicities[slot];
    }
    Ok(ActionDistribution::from_multiplicities(multiplicities))
}

/// Greedy knapsack over per-pull `values` and `costs` within `residual`,
/// normalized into a distribution.
pub fn greedy_distribution(values: Vec<f64>, costs: Vec<u64>, residual: u64) -> Result<ActionDistribution> {
    let problem = UnboundedKnapsackProblem::new(values, costs, residual)?;
    let plan = solve_density_greedy(&problem);
    if plan.total_count() == 0 {
        return Err(Error::Infeasible { residual });
    }
    Ok(ActionDistribution::from_multiplicities(plan.counts))
}

/// Draws the next arm from [`kube_action_distribution`].
pub fn kube_select<R: Rng + ?Sized>(state: &PolicyState, rng: &mut R) -> Result<usize> {
    Ok(kube_action_distribution(state)?.sample(rng))
}

/// The affordable, already-pulled arm with the highest upper-confidence
/// density; lowest index on ties.
pub fn fractional_kube_select(state: &PolicyState) -> Result<usize> {
    let residual = state.residual();
    let t = state.pulls();
    let mut best: Option<(usize, f64)> = None;
    for i in state.initialized().filter(|&i| state.affordable(i)) {
        let mean = state.mean_estimate(i).unwrap_or(0.0);
        let index = ucb_density_index(mean, state.counts()[i], t, state.costs()[i])?;
        if best.is_none_or(|(_, b)| index > b) {
            best = Some((i, index));
        }
    }
    best.map(|(i, _)| i).ok_or(Error::Infeasible { residual })
}

/// Knapsack-based upper confidence bound exploration and exploitation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kube;

impl Policy for Kube {
    fn id(&self) -> PolicyId {
        PolicyId::Kube
    }

    fn select(&mut self, state: &PolicyState, rng: &mut dyn RngCore) -> Result<usize> {
        kube_select(state, rng)
    }
}

/// KUBE with the fractional relaxation: deterministic, budget-aware UCB.
#[derive(Debug, Clone, Copy, Default)]
pub struct FractionalKube;

impl Policy for FractionalKube {
    fn id(&self) -> PolicyId {
        PolicyId::FractionalKube
    }

    fn select(&mut self, state: &PolicyState, _rng: &mut dyn RngCore) -> Result<usize> {
        fractional_kube_select(state)
    }
}
