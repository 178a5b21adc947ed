//! Unbounded knapsack solvers.
//!
//! Three solvers share one problem type: the density-ordered greedy used by
//! KUBE, the single-item floor of the fractional relaxation used by fractional
//! KUBE, and an exact dynamic program that serves as ground truth for regret
//! baselines and audits. On every instance
//!
//! ```text
//! floor(fractional) <= greedy <= exact <= lp_upper_bound
//! ```
//!
//! Ties between equally dense items always resolve toward the lower index.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub mod audit;

/// Default limit on `(capacity + 1) * items` for [`solve_exact_dp`].
pub const DEFAULT_DP_CELL_LIMIT: u128 = 10_000_000;

/// Item types with real values and integer weights, plus a capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct UnboundedKnapsackProblem {
    values: Vec<f64>,
    weights: Vec<u64>,
    capacity: u64,
}

impl UnboundedKnapsackProblem {
    /// Validates and builds a problem.
    pub fn new(values: Vec<f64>, weights: Vec<u64>, capacity: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidKnapsack("at least one item type is required"));
        }
        if values.len() != weights.len() {
            return Err(Error::InvalidKnapsack("values and weights differ in length"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidKnapsack("values must be finite and non-negative"));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidKnapsack("weights must be at least 1"));
        }
        Ok(Self {
            values,
            weights,
            capacity,
        })
    }

    /// Item values `v_i`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Item weights `w_i`.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Knapsack capacity.
    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    /// Number of item types.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false for a validated problem; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the densest item, lowest index on ties.
    pub fn densest_item(&self) -> usize {
        let mut best = 0;
        let mut best_density = item_density(self.values[0], self.weights[0]);
        for i in 1..self.len() {
            let d = item_density(self.values[i], self.weights[i]);
            if d > best_density {
                best = i;
                best_density = d;
            }
        }
        best
    }

    /// Item indices by decreasing density; stable, so ties keep index order.
    pub fn density_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            let da = item_density(self.values[a], self.weights[a]);
            let db = item_density(self.values[b], self.weights[b]);
            db.total_cmp(&da)
        });
        order
    }

    /// Packs `counts` into a solution, computing its value and weight.
    pub fn solution(&self, counts: Vec<u64>) -> KnapsackSolution {
        let total_value = counts
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| x as f64 * v)
            .sum();
        let total_weight = counts.iter().zip(&self.weights).map(|(&x, &w)| x * w).sum();
        KnapsackSolution {
            counts,
            total_value,
            total_weight,
        }
    }
}

/// Integer multiplicities chosen for each item type.
#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackSolution {
    /// Copies of each item type, `x_i`.
    pub counts: Vec<u64>,
    /// `sum x_i v_i`.
    pub total_value: f64,
    /// `sum x_i w_i`, never above the capacity.
    pub total_weight: u64,
}

impl KnapsackSolution {
    /// Total number of items packed.
    pub fn total_count(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Value per unit of weight.
#[inline]
pub fn item_density(value: f64, weight: u64) -> f64 {
    value / weight as f64
}

/// Density-ordered greedy: take as many copies of the densest item as fit, then
/// of the next densest, until nothing fits.
pub fn solve_density_greedy(problem: &UnboundedKnapsackProblem) -> KnapsackSolution {
    let mut counts = vec![0; problem.len()];
    let mut residual = problem.capacity;
    for i in problem.density_order() {
        let w = problem.weights[i];
        if w <= residual {
            counts[i] = residual / w;
            residual -= counts[i] * w;
        }
    }
    problem.solution(counts)
}

/// Floor of the fractional relaxation: `floor(C / w*)` copies of the densest
/// item and nothing else.
pub fn solve_fractional_floor(problem: &UnboundedKnapsackProblem) -> KnapsackSolution {
    let mut counts = vec![0; problem.len()];
    let best = problem.densest_item();
    counts[best] = problem.capacity / problem.weights[best];
    problem.solution(counts)
}

/// Exact solver with the default cell guard.
pub fn solve_exact_dp(problem: &UnboundedKnapsackProblem) -> Result<KnapsackSolution> {
    solve_exact_dp_with_limit(problem, DEFAULT_DP_CELL_LIMIT)
}

/// Exact unbounded-knapsack dynamic program over capacities `0..=C`.
///
/// `best[c]` is the best value within capacity `c`; each entry either inherits
/// `best[c - 1]` or adds one item on top of `best[c - w_i]`. On equal values the
/// inherited entry wins, then the lowest item index, which makes the
/// reconstruction deterministic.
pub fn solve_exact_dp_with_limit(
    problem: &UnboundedKnapsackProblem,
    cell_limit: u128,
) -> Result<KnapsackSolution> {
    let cells = (problem.capacity as u128 + 1) * problem.len() as u128;
    if cells > cell_limit {
        return Err(Error::TableTooLarge {
            cells,
            limit: cell_limit,
        });
    }
    let cap = problem.capacity as usize;
    let mut best = vec![0.0f64; cap + 1];
    // usize::MAX marks "inherited from c - 1".
    let mut choice = vec![usize::MAX; cap + 1];
    for c in 1..=cap {
        let mut value = best[c - 1];
        let mut pick = usize::MAX;
        for (i, (&v, &w)) in problem.values.iter().zip(&problem.weights).enumerate() {
            let w = w as usize;
            if w <= c {
                let candidate = best[c - w] + v;
                if candidate > value {
                    value = candidate;
                    pick = i;
                }
            }
        }
        best[c] = value;
        choice[c] = pick;
    }

    let mut counts = vec![0u64; problem.len()];
    let mut c = cap;
    while c > 0 {
        match choice[c] {
            usize::MAX => c -= 1,
            i => {
                counts[i] += 1;
                c -= problem.weights[i] as usize;
            }
        }
    }
    Ok(problem.solution(counts))
}

/// Optimum of the fractional relaxation, `C * max_i v_i / w_i`.
pub fn lp_upper_bound(problem: &UnboundedKnapsackProblem) -> f64 {
    let best = problem.densest_item();
    problem.capacity as f64 * item_density(problem.values[best], problem.weights[best])
}
