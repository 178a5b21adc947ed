//! The budget-limited bandit machine: arms, instances and their summary
//! statistics, reward sampling, and the full-information optimum used as the
//! regret baseline.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::knapsack::{self, UnboundedKnapsackProblem};
use crate::trial::TrialResult;
use crate::{Error, Result};

/// Redraw limit for truncated-Gaussian rejection sampling.
pub const MAX_REJECTIONS: u32 = 1_000_000;

/// One arm: an integer pulling cost and a Gaussian reward truncated to
/// `[0, support_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmSpec {
    cost: u64,
    mean: f64,
    variance: f64,
    support_hi: f64,
}

impl ArmSpec {
    /// Validates an explicit arm. A zero variance gives a deterministic arm
    /// that always pays its mean.
    pub fn new(cost: u64, mean: f64, variance: f64, support_hi: f64) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidArm { index: 0, reason });
        if cost == 0 {
            return invalid("cost must be at least 1");
        }
        if !(support_hi.is_finite() && support_hi > 0.0) {
            return invalid("support upper bound must be positive");
        }
        if !(mean.is_finite() && mean > 0.0 && mean <= support_hi) {
            return invalid("mean must lie in (0, support_hi]");
        }
        if !(variance.is_finite() && variance >= 0.0) {
            return invalid("variance must be non-negative");
        }
        Ok(Self {
            cost,
            mean,
            variance,
            support_hi,
        })
    }

    /// The experimental arm family: variance `mean / 2`, support `[0, 2 mean]`.
    pub fn symmetric(cost: u64, mean: f64) -> Result<Self> {
        Self::new(cost, mean, mean / 2.0, 2.0 * mean)
    }

    /// Pulling cost `c_i`.
    pub fn cost(&self) -> u64 {
        self.cost
    }

    /// Reward mean `mu_i` (the pre-truncation Gaussian centre).
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Pre-truncation variance.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// Upper end of the reward support.
    pub fn support_hi(&self) -> f64 {
        self.support_hi
    }

    /// Draws one reward from the truncated Gaussian by redrawing until the
    /// sample lands in `[0, support_hi]`.
    ///
    /// # Panics
    ///
    /// After [`MAX_REJECTIONS`] consecutive rejections, which only happens when
    /// the support carries negligible Gaussian mass.
    pub fn sample_reward<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.variance == 0.0 {
            return self.mean;
        }
        let sd = libm::sqrt(self.variance);
        for _ in 0..MAX_REJECTIONS {
            let z: f64 = rng.sample(StandardNormal);
            let x = self.mean + sd * z;
            if (0.0..=self.support_hi).contains(&x) {
                return x;
            }
        }
        panic!(
            "truncated Gaussian rejection sampling gave up after {MAX_REJECTIONS} draws (mean {}, variance {}, support [0, {}])",
            self.mean, self.variance, self.support_hi
        );
    }
}

/// A bandit machine with a total budget and the reward scale used to map raw
/// rewards into `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    arms: Vec<ArmSpec>,
    budget: u64,
    reward_cap: f64,
}

impl BanditInstance {
    /// Validates an instance: at least two arms, positive budget, and a reward
    /// cap covering every arm's support.
    pub fn new(arms: Vec<ArmSpec>, budget: u64, reward_cap: f64) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::TooFewArms(arms.len()));
        }
        if budget == 0 {
            return Err(Error::InvalidInstance("budget must be positive"));
        }
        let widest = arms.iter().map(ArmSpec::support_hi).fold(0.0, f64::max);
        if !(reward_cap.is_finite() && reward_cap >= widest) {
            return Err(Error::InvalidInstance(
                "reward cap must be at least every arm's support upper bound",
            ));
        }
        Ok(Self {
            arms,
            budget,
            reward_cap,
        })
    }

    /// Same arms and reward scale, different budget.
    pub fn with_budget(&self, budget: u64) -> Result<Self> {
        Self::new(self.arms.clone(), budget, self.reward_cap)
    }

    /// The arms in stable index order.
    pub fn arms(&self) -> &[ArmSpec] {
        &self.arms
    }

    /// Number of arms `K`.
    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    /// Total budget `B`.
    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Reward normalization constant `R_max`.
    pub fn reward_cap(&self) -> f64 {
        self.reward_cap
    }

    /// Pulling costs in arm order.
    pub fn costs(&self) -> Vec<u64> {
        self.arms.iter().map(ArmSpec::cost).collect()
    }

    /// Cheapest pulling cost.
    pub fn min_cost(&self) -> u64 {
        self.arms.iter().map(ArmSpec::cost).min().expect("at least two arms")
    }

    /// Most expensive pulling cost.
    pub fn max_cost(&self) -> u64 {
        self.arms.iter().map(ArmSpec::cost).max().expect("at least two arms")
    }

    /// Means divided by the reward cap.
    pub fn normalized_means(&self) -> Vec<f64> {
        self.arms.iter().map(|a| a.mean / self.reward_cap).collect()
    }

    /// Summary quantities that enter the regret bounds.
    pub fn stats(&self) -> InstanceStats {
        let means = self.normalized_means();
        let costs = self.costs();
        let density = |i: usize| means[i] / costs[i] as f64;

        let mut best = 0;
        for i in 1..means.len() {
            if density(i) > density(best) {
                best = i;
            }
        }
        let d_min = (0..means.len())
            .filter(|&j| j != best)
            .map(|j| density(best) - density(j))
            .fold(f64::INFINITY, f64::min);
        let delta = costs
            .iter()
            .map(|&c| c as f64 - costs[best] as f64)
            .collect();
        let gap = means.iter().map(|&m| means[best] - m).collect();

        InstanceStats {
            best_density_arm: best,
            d_min,
            c_min: self.min_cost(),
            c_max: self.max_cost(),
            best_cost: costs[best],
            delta,
            gap,
        }
    }

    /// Expected total reward of the full-information optimum, in raw units.
    ///
    /// `Exact` solves the unbounded knapsack on the true means; `Fractional`
    /// returns the relaxation `B * mu* / c*`, which is never smaller.
    pub fn optimal_expected_value(&self, mode: OptimumMode) -> Result<f64> {
        let problem = UnboundedKnapsackProblem::new(
            self.arms.iter().map(ArmSpec::mean).collect(),
            self.costs(),
            self.budget,
        )?;
        match mode {
            OptimumMode::Exact => Ok(knapsack::solve_exact_dp(&problem)?.total_value),
            OptimumMode::Fractional => Ok(knapsack::lp_upper_bound(&problem)),
        }
    }
}

/// How the full-information optimum is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptimumMode {
    /// Exact unbounded knapsack via dynamic programming.
    Exact,
    /// Fractional relaxation: the whole budget on the densest arm.
    Fractional,
}

/// Quantities defined relative to the best-density arm `I*`.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceStats {
    /// `I* = argmax mu_i / c_i`, lowest index on ties.
    pub best_density_arm: usize,
    /// Smallest density gap between `I*` and any other arm (normalized means).
    /// Zero exactly when `I*` is not unique.
    pub d_min: f64,
    /// Cheapest cost.
    pub c_min: u64,
    /// Most expensive cost.
    pub c_max: u64,
    /// Cost of `I*`.
    pub best_cost: u64,
    /// `c_j - c_{I*}` per arm; may be negative.
    pub delta: Vec<f64>,
    /// `mu_{I*} - mu_j` per arm on normalized means; may be negative.
    pub gap: Vec<f64>,
}

impl InstanceStats {
    /// `sum_{gap_j > 0} gap_j + sum_{delta_j > 0} delta_j / c_{I*}`, the
    /// per-suboptimal-pull loss weight shared by both regret bounds.
    pub fn loss_weight(&self) -> f64 {
        let gaps: f64 = self.gap.iter().filter(|&&g| g > 0.0).sum();
        let deltas: f64 = self.delta.iter().filter(|&&d| d > 0.0).sum();
        gaps + deltas / self.best_cost as f64
    }
}

/// Regret of a batch of trials against `optimum`: optimum minus the mean total
/// reward. Negative values are possible when reward noise beats the baseline.
pub fn regret(optimum: f64, trials: &[TrialResult]) -> Result<f64> {
    if trials.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let mean = trials.iter().map(|t| t.total_reward).sum::<f64>() / trials.len() as f64;
    Ok(optimum - mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn instance(means: &[f64], costs: &[u64], budget: u64, cap: f64) -> BanditInstance {
        let arms = means
            .iter()
            .zip(costs)
            .map(|(&m, &c)| ArmSpec::new(c, m, 0.0, cap).unwrap())
            .collect();
        BanditInstance::new(arms, budget, cap).unwrap()
    }

    #[test]
    fn arm_validation() {
        assert!(ArmSpec::new(0, 1.0, 1.0, 2.0).is_err());
        assert!(ArmSpec::new(1, 0.0, 1.0, 2.0).is_err());
        assert!(ArmSpec::new(1, 3.0, 1.0, 2.0).is_err());
        assert!(ArmSpec::new(1, 1.0, -1.0, 2.0).is_err());
        assert!(ArmSpec::new(1, 1.0, 1.0, 0.0).is_err());
        assert!(ArmSpec::new(1, 1.0, 1.0, 2.0).is_ok());
    }

    #[test]
    fn symmetric_arm_uses_half_mean_variance() {
        let arm = ArmSpec::symmetric(5, 14.0).unwrap();
        assert_eq!(arm.variance(), 7.0);
        assert_eq!(arm.support_hi(), 28.0);
    }

    #[test]
    fn rewards_stay_in_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // Wide variance relative to the support forces many rejections.
        let arm = ArmSpec::new(1, 1.0, 25.0, 2.0).unwrap();
        for _ in 0..10_000 {
            let r = arm.sample_reward(&mut rng);
            assert!((0.0..=2.0).contains(&r));
        }
    }

    #[test]
    fn zero_variance_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let arm = ArmSpec::new(1, 4.5, 0.0, 9.0).unwrap();
        assert_eq!(arm.sample_reward(&mut rng), 4.5);
    }

    #[test]
    fn instance_validation() {
        let arm = ArmSpec::symmetric(1, 10.0).unwrap();
        assert_eq!(BanditInstance::new(vec![arm], 10, 20.0), Err(Error::TooFewArms(1)));
        assert!(BanditInstance::new(vec![arm, arm], 0, 20.0).is_err());
        assert!(BanditInstance::new(vec![arm, arm], 10, 19.0).is_err());
        assert!(BanditInstance::new(vec![arm, arm], 10, 20.0).is_ok());
    }

    #[test]
    fn stats_single_dominant_arm() {
        let s = instance(&[0.8, 0.4], &[1, 1], 10, 1.0).stats();
        assert_eq!(s.best_density_arm, 0);
        assert_abs_diff_eq!(s.d_min, 0.4, epsilon = 1e-12);
        assert_eq!(s.delta, vec![0.0, 0.0]);
        assert_abs_diff_eq!(s.gap[0], 0.0);
        assert_abs_diff_eq!(s.gap[1], 0.4, epsilon = 1e-12);
        assert_eq!((s.c_min, s.c_max), (1, 1));
    }

    #[test]
    fn stats_tie_goes_to_lowest_index() {
        let s = instance(&[0.5, 0.5], &[2, 2], 10, 1.0).stats();
        assert_eq!(s.best_density_arm, 0);
        assert_eq!(s.d_min, 0.0);
    }

    #[test]
    fn stats_cheap_arm_wins_density() {
        let s = instance(&[0.9, 0.6], &[3, 1], 10, 1.0).stats();
        assert_eq!(s.best_density_arm, 1);
        assert_eq!(s.delta[0], 2.0);
        assert_abs_diff_eq!(s.gap[0], -0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(s.d_min, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn stats_normalize_by_reward_cap() {
        let s = instance(&[16.0, 8.0], &[1, 1], 10, 20.0).stats();
        assert_abs_diff_eq!(s.d_min, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(s.gap[1], 0.4, epsilon = 1e-12);
    }

    #[test]
    fn optimum_examples() {
        let i = instance(&[10.0, 16.0], &[1, 2], 4, 32.0);
        assert_eq!(i.optimal_expected_value(OptimumMode::Exact).unwrap(), 40.0);
        assert_eq!(i.optimal_expected_value(OptimumMode::Fractional).unwrap(), 40.0);

        let i = instance(&[6.0, 5.0], &[3, 2], 7, 12.0);
        assert_eq!(i.optimal_expected_value(OptimumMode::Exact).unwrap(), 16.0);
        assert_eq!(i.optimal_expected_value(OptimumMode::Fractional).unwrap(), 17.5);
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
    fn regret_examples() {
        assert_eq!(regret(100.0, &[result(90.0), result(110.0)]).unwrap(), 0.0);
        assert_eq!(regret(40.0, &[result(40.0)]).unwrap(), 0.0);
        assert_eq!(regret(40.0, &[result(30.0), result(34.0)]).unwrap(), 8.0);
        assert!(regret(40.0, &[]).is_err());
    }
}
