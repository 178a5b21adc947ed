use alloc::vec::Vec;

use rand::RngCore;

use super::{Policy, PolicyId, PolicyState};
use crate::knapsack::{solve_density_greedy, UnboundedKnapsackProblem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Explore,
    Exploit,
}

/// Budget-limited explore-then-exploit baseline.
///
/// The first `epsilon * B` of the budget buys round-robin pulls over the
/// affordable arms; exploration ends as soon as the next arm in turn would
/// overrun that allowance. The rest of the budget follows the density-ordered
/// greedy solution of the knapsack over plain mean estimates (no confidence
/// bonus), pulled in arm order and re-solved whenever the plan runs out.
#[derive(Debug, Clone)]
pub struct EpsilonFirst {
    epsilon: f64,
    phase: Phase,
    cursor: usize,
    // Remaining plan, next arm last.
    plan: Vec<usize>,
}

impl EpsilonFirst {
    /// New baseline spending `epsilon` of the budget on exploration.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        Ok(Self {
            epsilon,
            phase: Phase::Explore,
            cursor: 0,
            plan: Vec::new(),
        })
    }

    /// Exploration fraction.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// True while the exploration allowance is being spent.
    pub fn exploring(&self) -> bool {
        self.phase == Phase::Explore
    }

    fn next_round_robin(&self, state: &PolicyState) -> Option<usize> {
        let k = state.num_arms();
        (0..k)
            .map(|offset| (self.cursor + offset) % k)
            .find(|&i| state.affordable(i))
    }

    fn replan(&mut self, state: &PolicyState) -> Result<()> {
        // Arms never explored carry no estimate; valuing them at zero keeps
        // them available as filler for budget nothing else fits into.
        let values = (0..state.num_arms())
            .map(|i| state.mean_estimate(i).unwrap_or(0.0))
            .collect();
        let problem = UnboundedKnapsackProblem::new(values, state.costs().to_vec(), state.residual())?;
        let solution = solve_density_greedy(&problem);
        self.plan = solution
            .counts
            .iter()
            .enumerate()
            .rev()
            .flat_map(|(arm, &m)| core::iter::repeat_n(arm, m as usize))
            .collect();
        Ok(())
    }
}

impl Policy for EpsilonFirst {
    fn id(&self) -> PolicyId {
        PolicyId::EpsilonFirst(self.epsilon)
    }

    fn sweeps_arms_first(&self) -> bool {
        false
    }

    fn select(&mut self, state: &PolicyState, _rng: &mut dyn RngCore) -> Result<usize> {
        if self.phase == Phase::Explore {
            let allowance = self.epsilon * state.budget() as f64;
            match self.next_round_robin(state) {
                Some(arm) if (state.spent() + state.costs()[arm]) as f64 <= allowance => {
                    self.cursor = (arm + 1) % state.num_arms();
                    return Ok(arm);
                }
                _ => self.phase = Phase::Exploit,
            }
        }
        if self.plan.is_empty() {
            self.replan(state)?;
        }
        self.plan.pop().ok_or(Error::Infeasible {
            residual: state.residual(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn run(policy: &mut EpsilonFirst, state: &mut PolicyState, means: &[f64]) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut arms = Vec::new();
        while state.residual() >= state.min_cost() {
            let arm = policy.select(state, &mut rng).unwrap();
            state.record(arm, means[arm]);
            arms.push(arm);
        }
        arms
    }

    #[test]
    fn rejects_out_of_range_epsilon() {
        assert!(EpsilonFirst::new(0.0).is_err());
        assert!(EpsilonFirst::new(1.0).is_err());
        assert!(EpsilonFirst::new(f64::NAN).is_err());
        assert!(EpsilonFirst::new(0.05).is_ok());
    }

    #[test]
    fn explores_one_round_then_exploits() {
        let means: Vec<f64> = (0..10).map(|i| 0.1 + 0.05 * i as f64).collect();
        let mut state = PolicyState::new(vec![10; 10], 1000);
        let mut policy = EpsilonFirst::new(0.1).unwrap();
        let arms = run(&mut policy, &mut state, &means);
        assert_eq!(&arms[..10], &(0..10).collect::<Vec<_>>()[..]);
        // Equal costs: the whole remainder goes to the best estimate.
        assert!(arms[10..].iter().all(|&a| a == 9));
        assert_eq!(arms.len(), 100);
    }

    #[test]
    fn small_allowance_explores_prefix_only() {
        // epsilon * B = 25 covers floor(25 / 10) = 2 arms.
        let means = [0.2, 0.6, 0.9, 0.1];
        let mut state = PolicyState::new(vec![10; 4], 250);
        let mut policy = EpsilonFirst::new(0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut explored = Vec::new();
        loop {
            let arm = policy.select(&state, &mut rng).unwrap();
            if !policy.exploring() {
                state.record(arm, means[arm]);
                break;
            }
            explored.push(arm);
            state.record(arm, means[arm]);
        }
        assert_eq!(explored, vec![0, 1]);
        assert_eq!(state.counts()[2], 0);
    }

    #[test]
    fn exploitation_matches_greedy_on_estimates() {
        let means = [0.9, 0.5];
        let mut state = PolicyState::new(vec![3, 2], 100);
        let mut policy = EpsilonFirst::new(0.05).unwrap();
        let arms = run(&mut policy, &mut state, &means);
        // Allowance 5 buys one pull of each arm.
        assert_eq!(&arms[..2], &[0, 1]);
        // Estimates equal the true means, so exploitation is the greedy on
        // (0.9, 0.5) with capacity 95: 31 x arm 0 and 1 x arm 1.
        let problem = UnboundedKnapsackProblem::new(vec![0.9, 0.5], vec![3, 2], 95).unwrap();
        let greedy = solve_density_greedy(&problem);
        let exploit: Vec<u64> = (0..2)
            .map(|a| arms[2..].iter().filter(|&&x| x == a).count() as u64)
            .collect();
        assert_eq!(greedy.counts, vec![31, 1]);
        assert_eq!(exploit, greedy.counts);
    }
}
