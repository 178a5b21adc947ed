use alloc::string::String;

/// Errors raised by the bandit model, solvers and policies.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An arm specification violates its invariants.
    #[error("invalid arm {index}: {reason}")]
    InvalidArm {
        /// Position of the arm in the instance (or 0 for a standalone arm).
        index: usize,
        /// Which invariant failed.
        reason: &'static str,
    },

    /// A bandit machine needs at least two arms.
    #[error("a bandit instance needs at least 2 arms, got {0}")]
    TooFewArms(usize),

    /// Instance-level invariant violated (budget, reward cap).
    #[error("invalid instance: {0}")]
    InvalidInstance(&'static str),

    /// Knapsack problem inputs are malformed.
    #[error("invalid knapsack problem: {0}")]
    InvalidKnapsack(&'static str),

    /// The exact solver refuses tables beyond its cell guard.
    #[error("exact knapsack table of {cells} cells exceeds the guard of {limit}")]
    TableTooLarge {
        /// Requested table size, `(capacity + 1) * items`.
        cells: u128,
        /// Configured limit.
        limit: u128,
    },

    /// No arm can be paid for with the residual budget.
    #[error("no affordable arm: residual budget {residual} below cheapest usable cost")]
    Infeasible {
        /// Residual budget at the time of the request.
        residual: u64,
    },

    /// Confidence index requested for an arm that was never pulled.
    #[error("confidence index needs at least one pull of the arm")]
    UnpulledArm,

    /// A policy chose an arm it cannot pay for. This is a bug in the policy.
    #[error("policy selected arm {arm} costing {cost} with only {residual} left")]
    UnaffordableArm {
        /// The offending arm.
        arm: usize,
        /// Its pulling cost.
        cost: u64,
        /// Residual budget at the time of selection.
        residual: u64,
    },

    /// A policy returned an index outside the instance.
    #[error("policy selected arm {arm} but the instance has {arms} arms")]
    ArmOutOfRange {
        /// The offending index.
        arm: usize,
        /// Number of arms.
        arms: usize,
    },

    /// The best-density arm is not unique, so the regret bounds are undefined.
    #[error("minimal density gap is zero; regret bounds are undefined")]
    ZeroDensityGap,

    /// Aggregates over an empty or too small sample.
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples {
        /// Minimum sample count.
        needed: usize,
        /// Provided sample count.
        got: usize,
    },

    /// Exploration fraction outside (0, 1).
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(f64),

    /// Unparseable policy identifier.
    #[error("unknown policy `{0}` (expected kube, fkube or efirst:<epsilon>)")]
    UnknownPolicy(String),

    /// Malformed generator interval.
    #[error("invalid interval: {0}")]
    InvalidInterval(&'static str),
}

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
