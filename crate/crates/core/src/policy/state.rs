use alloc::vec;
use alloc::vec::Vec;

/// What a policy knows during one trial: per-arm pull counts and reward
/// estimates (on the normalized `[0, 1]` scale), the number of completed pulls,
/// and the residual budget.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyState {
    costs: Vec<u64>,
    counts: Vec<u64>,
    reward_sums: Vec<f64>,
    pulls: u64,
    budget: u64,
    residual: u64,
    min_cost: u64,
    // Next arm offered by the initial one-pull-per-arm sweep.
    sweep: usize,
}

impl PolicyState {
    /// Fresh state for a trial with the given costs and budget.
    ///
    /// # Panics
    ///
    /// If `costs` is empty or contains a zero.
    pub fn new(costs: Vec<u64>, budget: u64) -> Self {
        assert!(!costs.is_empty(), "at least one arm");
        assert!(costs.iter().all(|&c| c >= 1), "costs must be at least 1");
        let k = costs.len();
        let min_cost = *costs.iter().min().expect("non-empty");
        Self {
            costs,
            counts: vec![0; k],
            reward_sums: vec![0.0; k],
            pulls: 0,
            budget,
            residual: budget,
            min_cost,
            sweep: 0,
        }
    }

    /// Builds a state as if each arm had been pulled `counts[i]` times with
    /// average normalized reward `means[i]`. For tests and diagnostics.
    pub fn from_parts(costs: Vec<u64>, counts: Vec<u64>, means: Vec<f64>, residual: u64) -> Self {
        assert_eq!(costs.len(), counts.len());
        assert_eq!(costs.len(), means.len());
        let mut state = Self::new(costs, 0);
        state.reward_sums = counts.iter().zip(&means).map(|(&n, &m)| n as f64 * m).collect();
        state.pulls = counts.iter().sum();
        state.budget = residual + counts.iter().zip(&state.costs).map(|(n, c)| n * c).sum::<u64>();
        state.residual = residual;
        state.counts = counts;
        state.sweep = state.costs.len();
        state
    }

    /// Number of arms.
    pub fn num_arms(&self) -> usize {
        self.costs.len()
    }

    /// Pulling costs.
    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    /// Pull counts `n_i`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Completed pulls `t`.
    pub fn pulls(&self) -> u64 {
        self.pulls
    }

    /// Total budget `B`.
    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Residual budget `B_t`.
    pub fn residual(&self) -> u64 {
        self.residual
    }

    /// Budget spent so far.
    pub fn spent(&self) -> u64 {
        self.budget - self.residual
    }

    /// Cheapest arm cost.
    pub fn min_cost(&self) -> u64 {
        self.min_cost
    }

    /// Whether arm `i` fits in the residual budget.
    pub fn affordable(&self, i: usize) -> bool {
        self.costs[i] <= self.residual
    }

    /// Average normalized reward of arm `i`, or `None` before its first pull.
    pub fn mean_estimate(&self, i: usize) -> Option<f64> {
        match self.counts[i] {
            0 => None,
            n => Some(self.reward_sums[i] / n as f64),
        }
    }

    /// Arms pulled at least once.
    pub fn initialized(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_arms()).filter(|&i| self.counts[i] > 0)
    }

    /// Records a pull of `arm` with reward already normalized to `[0, 1]` and
    /// charges its cost.
    ///
    /// # Panics
    ///
    /// If the arm is not affordable.
    pub fn record(&mut self, arm: usize, normalized_reward: f64) {
        let cost = self.costs[arm];
        assert!(cost <= self.residual, "arm {arm} is not affordable");
        self.counts[arm] += 1;
        self.reward_sums[arm] += normalized_reward;
        self.pulls += 1;
        self.residual -= cost;
    }

    /// Next arm of the initial sweep, skipping arms that cannot be paid for.
    /// Skipped arms are never revisited. `None` once the sweep is over.
    pub(crate) fn advance_sweep(&mut self) -> Option<usize> {
        while self.sweep < self.num_arms() {
            let arm = self.sweep;
            self.sweep += 1;
            if self.affordable(arm) {
                return Some(arm);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimates_are_running_means() {
        let mut s = PolicyState::new(vec![1, 2], 10);
        assert_eq!(s.mean_estimate(0), None);
        s.record(0, 0.25);
        s.record(0, 0.5);
        s.record(1, 1.0);
        s.record(0, 0.75);
        assert_eq!(s.mean_estimate(0), Some(0.5));
        assert_eq!(s.mean_estimate(1), Some(1.0));
        assert_eq!(s.pulls(), 4);
        assert_eq!(s.residual(), 10 - 3 - 2);
        assert_eq!(s.spent(), 5);
    }

    #[test]
    #[should_panic(expected = "not affordable")]
    fn recording_unaffordable_pull_panics() {
        let mut s = PolicyState::new(vec![1, 5], 4);
        s.record(1, 0.0);
    }

    #[test]
    fn from_parts_reconstructs_budget() {
        let s = PolicyState::from_parts(vec![2, 3], vec![1, 2], vec![0.5, 0.25], 4);
        assert_eq!(s.budget(), 4 + 2 + 6);
        assert_eq!(s.pulls(), 3);
        assert_eq!(s.mean_estimate(1), Some(0.25));
    }
}
