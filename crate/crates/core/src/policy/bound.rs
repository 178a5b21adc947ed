use core::f64::consts::PI;

use crate::{Error, InstanceStats, Result};

/// Which regret guarantee to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundVariant {
    /// Greedy-knapsack KUBE.
    Kube,
    /// Fractional KUBE.
    Fractional,
}

/// Closed-form worst-case regret bound at budget `budget`, in normalized
/// reward units (multiply by the reward cap to compare with raw regret).
///
/// With `W = sum_{gap_j > 0} gap_j + sum_{delta_j > 0} delta_j / c_{I*}`:
///
/// ```text
/// kube:       (8 / d_min^2 + (c_max / c_min)^2) W ln(B / c_min) + W (pi^2 / 3 + 1) + 1
/// fractional: (8 / d_min^2)                     W ln(B / c_min) + W (pi^2 / 3 + 1) + 1
/// ```
pub fn theorem_bound(stats: &InstanceStats, budget: u64, variant: BoundVariant) -> Result<f64> {
    if stats.d_min.is_nan() || stats.d_min <= 0.0 {
        return Err(Error::ZeroDensityGap);
    }
    let weight = stats.loss_weight();
    let mut coefficient = 8.0 / (stats.d_min * stats.d_min);
    if variant == BoundVariant::Kube {
        let ratio = stats.c_max as f64 / stats.c_min as f64;
        coefficient += ratio * ratio;
    }
    let log_term = libm::log(budget as f64 / stats.c_min as f64);
    Ok(coefficient * weight * log_term + weight * (PI * PI / 3.0 + 1.0) + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ArmSpec, BanditInstance};
    use alloc::vec::Vec;
    use approx::assert_abs_diff_eq;

    fn stats(means: &[f64], costs: &[u64]) -> InstanceStats {
        let arms: Vec<_> = means
            .iter()
            .zip(costs)
            .map(|(&m, &c)| ArmSpec::new(c, m, 0.0, 1.0).unwrap())
            .collect();
        BanditInstance::new(arms, 100, 1.0).unwrap().stats()
    }

    #[test]
    fn two_arm_values() {
        let s = stats(&[0.8, 0.4], &[1, 1]);
        let ln100 = libm::log(100.0);
        let tail = 0.4 * (PI * PI / 3.0 + 1.0) + 1.0;
        let kube = theorem_bound(&s, 100, BoundVariant::Kube).unwrap();
        let frac = theorem_bound(&s, 100, BoundVariant::Fractional).unwrap();
        assert_abs_diff_eq!(kube, 51.0 * 0.4 * ln100 + tail, epsilon = 1e-9);
        assert_abs_diff_eq!(frac, 50.0 * 0.4 * ln100 + tail, epsilon = 1e-9);
        assert_abs_diff_eq!(kube, 96.66, epsilon = 0.01);
        assert_abs_diff_eq!(frac, 94.82, epsilon = 0.01);
    }

    #[test]
    fn cost_differences_enter_weight() {
        // I* = 1 (0.6 / 1 > 0.9 / 3); gap_0 < 0 is dropped, delta_0 = 2 counts as 2 / 1.
        let s = stats(&[0.9, 0.6], &[3, 1]);
        assert_abs_diff_eq!(s.loss_weight(), 2.0, epsilon = 1e-12);
        let frac = theorem_bound(&s, 100, BoundVariant::Fractional).unwrap();
        let expected = 8.0 / (0.3 * 0.3) * 2.0 * libm::log(100.0) + 2.0 * (PI * PI / 3.0 + 1.0) + 1.0;
        assert_abs_diff_eq!(frac, expected, epsilon = 1e-6);
    }

    #[test]
    fn undefined_without_unique_best_arm() {
        let s = stats(&[0.5, 0.5], &[2, 2]);
        assert_eq!(theorem_bound(&s, 100, BoundVariant::Kube), Err(Error::ZeroDensityGap));
    }
}
