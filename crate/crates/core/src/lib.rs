//! Budget-limited multi-armed bandits.
//!
//! Every pull of an arm costs a fixed integer amount and the learner stops once
//! the residual budget can no longer pay for the cheapest arm. With known means
//! the problem is an unbounded knapsack over the arms, so the policies here
//! solve a knapsack over optimistic reward estimates at every step:
//!
//! * [`policy::Kube`] fills the residual budget with the density-ordered greedy
//!   and samples the next arm proportionally to its multiplicity;
//! * [`policy::FractionalKube`] pulls the affordable arm with the highest
//!   upper-confidence density;
//! * [`policy::EpsilonFirst`] is the explore-then-exploit baseline.
//!
//! The crate is `no_std` and only needs `alloc`. IO, configuration and the
//! parallel experiment harness live in the `budget-bandit` crate.

#![cfg_attr(not(test), no_std)]
#![deny(missing_docs)]

extern crate alloc;

mod error;
pub mod instance;
pub mod knapsack;
pub mod model;
pub mod policy;
pub mod seed;
pub mod stats;
pub mod trial;

pub use error::{Error, Result};
pub use model::{ArmSpec, BanditInstance, InstanceStats, OptimumMode};
pub use policy::{next_action, Action, Policy, PolicyId, PolicyState};
pub use trial::{run_trial, run_trial_with, PullOutcome, TrialResult};
