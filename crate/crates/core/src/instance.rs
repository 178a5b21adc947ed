//! Random bandit machines for the simulation protocol: integer costs drawn
//! uniformly from a cost interval, means uniform on a mean interval, and
//! truncated-Gaussian rewards with variance `mean / 2` on `[0, 2 mean]`.

use alloc::vec::Vec;

use rand::Rng;

use crate::{ArmSpec, BanditInstance, Error, Result};

/// Parameters of the random arm generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceShape {
    /// Number of arms.
    pub arms: usize,
    /// Inclusive integer cost range.
    pub cost_interval: (u64, u64),
    /// Mean reward range.
    pub mean_interval: (f64, f64),
}

/// Cost ranges of the three diversity regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostRegime {
    /// Costs in `[5, 10]`.
    Homogeneous,
    /// Costs in `[1, 10]`.
    Moderate,
    /// Costs in `[1, 20]`.
    Extreme,
}

impl CostRegime {
    /// All regimes, least to most diverse.
    pub const ALL: [CostRegime; 3] = [Self::Homogeneous, Self::Moderate, Self::Extreme];

    /// Inclusive cost range of the regime.
    pub fn cost_interval(self) -> (u64, u64) {
        match self {
            Self::Homogeneous => (5, 10),
            Self::Moderate => (1, 10),
            Self::Extreme => (1, 20),
        }
    }

    /// Short label, used as an output file suffix.
    pub fn label(self) -> &'static str {
        match self {
            Self::Homogeneous => "homogeneous",
            Self::Moderate => "moderate",
            Self::Extreme => "extreme",
        }
    }
}

impl InstanceShape {
    /// Checks the intervals and arm count.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.cost_interval;
        if lo == 0 {
            return Err(Error::InvalidInterval("cost interval must start at 1 or above"));
        }
        if lo > hi {
            return Err(Error::InvalidInterval("cost interval is inverted"));
        }
        let (mlo, mhi) = self.mean_interval;
        if !(mlo.is_finite() && mhi.is_finite() && mlo > 0.0) {
            return Err(Error::InvalidInterval("mean interval must be finite and positive"));
        }
        if mlo > mhi {
            return Err(Error::InvalidInterval("mean interval is inverted"));
        }
        if self.arms < 2 {
            return Err(Error::TooFewArms(self.arms));
        }
        Ok(())
    }

    /// Draws a machine with the given budget. The reward cap is twice the top
    /// of the mean interval, so it covers every arm's support.
    pub fn generate<R: Rng + ?Sized>(&self, budget: u64, rng: &mut R) -> Result<BanditInstance> {
        self.validate()?;
        let (lo, hi) = self.cost_interval;
        let (mlo, mhi) = self.mean_interval;
        let arms = (0..self.arms)
            .map(|_| {
                let cost = rng.random_range(lo..=hi);
                let mean = if mlo == mhi { mlo } else { rng.random_range(mlo..mhi) };
                ArmSpec::symmetric(cost, mean)
            })
            .collect::<Result<Vec<_>>>()?;
        BanditInstance::new(arms, budget, 2.0 * mhi)
    }
}
