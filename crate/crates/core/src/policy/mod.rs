//! Arm-selection policies behind one interface.
//!
//! [`next_action`] owns the parts every policy shares: it stops once the
//! residual budget is below the cheapest cost, and for the UCB policies it runs
//! the initial sweep that pulls each affordable arm once in index order before
//! handing control to [`Policy::select`].

use alloc::boxed::Box;
use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use rand::RngCore;

use crate::{Error, Result};

mod bound;
mod epsilon_first;
mod kube;
mod state;

pub use bound::{theorem_bound, BoundVariant};
pub use epsilon_first::EpsilonFirst;
pub use kube::{
    fractional_kube_select, greedy_distribution, kube_action_distribution, kube_select, ucb_density_index,
    ucb_value, ActionDistribution, FractionalKube, Kube,
};
pub use state::PolicyState;

/// A pulling policy. One instance serves exactly one trial.
pub trait Policy {
    /// Configuration identifier of the policy.
    fn id(&self) -> PolicyId;

    /// Whether [`next_action`] should pull every arm once before the first
    /// call to [`select`](Policy::select).
    fn sweeps_arms_first(&self) -> bool {
        true
    }

    /// Chooses an affordable arm. Called only while the residual budget covers
    /// the cheapest arm and, for sweeping policies, after the sweep.
    fn select(&mut self, state: &PolicyState, rng: &mut dyn RngCore) -> Result<usize>;
}

/// Decision for the next step of a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// Pull this arm.
    Pull(usize),
    /// No arm is affordable any more.
    Stop,
}

/// Next step of `policy` in `state`.
pub fn next_action(policy: &mut dyn Policy, state: &mut PolicyState, rng: &mut dyn RngCore) -> Result<Action> {
    if state.residual() < state.min_cost() {
        return Ok(Action::Stop);
    }
    if policy.sweeps_arms_first() {
        if let Some(arm) = state.advance_sweep() {
            return Ok(Action::Pull(arm));
        }
    }
    policy.select(state, rng).map(Action::Pull)
}

/// Policy identifiers as written in configuration: `kube`, `fkube` and
/// `efirst:<epsilon>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicyId {
    /// [`Kube`].
    Kube,
    /// [`FractionalKube`].
    FractionalKube,
    /// [`EpsilonFirst`] with its exploration fraction.
    EpsilonFirst(f64),
}

impl PolicyId {
    /// A fresh policy for one trial.
    pub fn build(&self) -> Box<dyn Policy + Send> {
        match *self {
            PolicyId::Kube => Box::new(Kube),
            PolicyId::FractionalKube => Box::new(FractionalKube),
            PolicyId::EpsilonFirst(eps) => {
                Box::new(EpsilonFirst::new(eps).expect("epsilon validated when the id was parsed"))
            }
        }
    }
}

impl fmt::Display for PolicyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyId::Kube => f.write_str("kube"),
            PolicyId::FractionalKube => f.write_str("fkube"),
            PolicyId::EpsilonFirst(eps) => write!(f, "efirst:{eps}"),
        }
    }
}

impl FromStr for PolicyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "kube" => Ok(PolicyId::Kube),
            "fkube" => Ok(PolicyId::FractionalKube),
            other => {
                let eps = other
                    .strip_prefix("efirst:")
                    .and_then(|e| e.parse::<f64>().ok())
                    .ok_or_else(|| Error::UnknownPolicy(s.to_string()))?;
                EpsilonFirst::new(eps)?;
                Ok(PolicyId::EpsilonFirst(eps))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn drive(policy: &mut dyn Policy, state: &mut PolicyState, steps: usize) -> Vec<Action> {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut out = Vec::new();
        for _ in 0..steps {
            let action = next_action(policy, state, &mut rng).unwrap();
            out.push(action);
            match action {
                Action::Pull(arm) => state.record(arm, 0.5),
                Action::Stop => break,
            }
        }
        out
    }

    #[test]
    fn sweep_pulls_each_arm_in_order() {
        let mut state = PolicyState::new(vec![1, 1, 1], 100);
        let actions = drive(&mut Kube, &mut state, 3);
        assert_eq!(actions, vec![Action::Pull(0), Action::Pull(1), Action::Pull(2)]);
    }

    #[test]
    fn stops_below_min_cost() {
        let mut state = PolicyState::from_parts(vec![2, 3], vec![1, 1], vec![0.1, 0.2], 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(next_action(&mut FractionalKube, &mut state, &mut rng), Ok(Action::Stop));
    }

    #[test]
    fn unaffordable_arm_is_skipped_by_sweep() {
        // B = c_0: arm 1 can never be paid for.
        let mut state = PolicyState::new(vec![3, 4], 3);
        let actions = drive(&mut Kube, &mut state, 5);
        assert_eq!(actions, vec![Action::Pull(0), Action::Stop]);
    }

    #[test]
    fn ids_round_trip() {
        for s in ["kube", "fkube", "efirst:0.05", "efirst:0.1"] {
            let id: PolicyId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
            assert_eq!(id.build().id(), id);
        }
        assert!("efirst:1.5".parse::<PolicyId>().is_err());
        assert!("ucb".parse::<PolicyId>().is_err());
        assert!("efirst:".parse::<PolicyId>().is_err());
    }
}
