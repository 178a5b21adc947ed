//! Randomized audit of the solver ordering chain.
//!
//! Draws small random problems and checks that every solver is feasible, that
//! `floor <= greedy <= exact <= lp`, that the greedy loses at most one maximal
//! item value against the exact optimum, and that the dynamic program agrees
//! with exhaustive enumeration.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    lp_upper_bound, solve_density_greedy, solve_exact_dp, solve_fractional_floor,
    KnapsackSolution, UnboundedKnapsackProblem,
};

/// Relative slack for comparisons between sums of reals.
const TOLERANCE: f64 = 1e-9;

/// Shape of the random problems drawn by [`audit_solvers`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditBounds {
    /// Largest number of item types.
    pub max_items: usize,
    /// Largest capacity.
    pub max_capacity: u64,
    /// Values are uniform on `[0, max_value]`.
    pub max_value: f64,
    /// Weights are uniform on `1..=max_weight`.
    pub max_weight: u64,
}

impl Default for AuditBounds {
    fn default() -> Self {
        Self {
            max_items: 8,
            max_capacity: 200,
            max_value: 10.0,
            max_weight: 10,
        }
    }
}

/// First violated property together with the instance that triggered it.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    /// Zero-based position of the instance in the audit stream.
    pub instance_index: usize,
    /// The offending problem.
    pub problem: UnboundedKnapsackProblem,
    /// Human-readable description of the failed check.
    pub violation: String,
}

impl core::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "instance #{}: values={:?} weights={:?} capacity={}: {}",
            self.instance_index,
            self.problem.values(),
            self.problem.weights(),
            self.problem.capacity(),
            self.violation
        )
    }
}

/// Outcome of an audit run.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    /// Number of problems checked before stopping.
    pub checked: usize,
    /// The first failure, if any.
    pub counterexample: Option<Counterexample>,
}

impl AuditReport {
    /// True when no property was violated.
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Draws one random problem within `bounds`.
pub fn random_problem<R: Rng + ?Sized>(rng: &mut R, bounds: &AuditBounds) -> UnboundedKnapsackProblem {
    let items = rng.random_range(1..=bounds.max_items);
    let values = (0..items)
        .map(|_| rng.random_range(0.0..=bounds.max_value))
        .collect();
    let weights = (0..items)
        .map(|_| rng.random_range(1..=bounds.max_weight))
        .collect();
    let capacity = rng.random_range(0..=bounds.max_capacity);
    UnboundedKnapsackProblem::new(values, weights, capacity).expect("bounds produce valid problems")
}

/// Audits the library greedy on `instances` random problems.
pub fn audit_solvers(instances: usize, seed: u64, bounds: &AuditBounds) -> AuditReport {
    audit_with_greedy(instances, seed, bounds, solve_density_greedy)
}

/// Same as [`audit_solvers`] with a substitute greedy, so a broken solver can
/// be shown to be caught.
pub fn audit_with_greedy<G>(instances: usize, seed: u64, bounds: &AuditBounds, greedy: G) -> AuditReport
where
    G: Fn(&UnboundedKnapsackProblem) -> KnapsackSolution,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for index in 0..instances {
        let problem = random_problem(&mut rng, bounds);
        if let Err(violation) = check_problem(&problem, &greedy) {
            return AuditReport {
                checked: index + 1,
                counterexample: Some(Counterexample {
                    instance_index: index,
                    problem,
                    violation,
                }),
            };
        }
    }
    AuditReport {
        checked: instances,
        counterexample: None,
    }
}

fn check_problem<G>(problem: &UnboundedKnapsackProblem, greedy: &G) -> Result<(), String>
where
    G: Fn(&UnboundedKnapsackProblem) -> KnapsackSolution,
{
    let floor = solve_fractional_floor(problem);
    let greedy = greedy(problem);
    let exact = solve_exact_dp(problem).map_err(|e| format!("exact solver failed: {e}"))?;
    let lp = lp_upper_bound(problem);
    let enumerated = enumerate_optimum(problem);

    for (name, s) in [("fractional floor", &floor), ("greedy", &greedy), ("exact", &exact)] {
        let recomputed = problem.solution(s.counts.clone());
        if s.total_weight > problem.capacity() || recomputed.total_weight != s.total_weight {
            return Err(format!(
                "{name} solution {:?} weighs {} against capacity {}",
                s.counts,
                recomputed.total_weight,
                problem.capacity()
            ));
        }
    }

    let slack = TOLERANCE * (1.0 + lp);
    let chain = [
        ("fractional floor", floor.total_value, "greedy", greedy.total_value),
        ("greedy", greedy.total_value, "exact", exact.total_value),
        ("exact", exact.total_value, "lp bound", lp),
    ];
    for (lo_name, lo, hi_name, hi) in chain {
        if lo > hi + slack {
            return Err(format!("{lo_name} value {lo} exceeds {hi_name} value {hi}"));
        }
    }

    let max_value = problem.values().iter().copied().fold(0.0, f64::max);
    if greedy.total_value + max_value + slack < exact.total_value {
        return Err(format!(
            "greedy value {} more than max item value {} below exact {}",
            greedy.total_value, max_value, exact.total_value
        ));
    }

    let maximal = problem
        .weights()
        .iter()
        .all(|&w| greedy.total_weight + w > problem.capacity());
    if !maximal {
        return Err(format!(
            "greedy solution {:?} leaves room for another item",
            greedy.counts
        ));
    }

    if (exact.total_value - enumerated).abs() > slack {
        return Err(format!(
            "exact value {} differs from enumerated optimum {}",
            exact.total_value, enumerated
        ));
    }
    Ok(())
}

/// Exhaustive search for the optimum value.
///
/// Enumerates count vectors item by item (densest first, larger counts
/// first). The last item always takes every unit that fits, and a branch is
/// cut only when even the fractional relaxation of the remaining items cannot
/// beat the incumbent, so the result is exact.
pub fn enumerate_optimum(problem: &UnboundedKnapsackProblem) -> f64 {
    struct Search<'a> {
        values: &'a [f64],
        weights: &'a [u64],
        order: Vec<usize>,
        // Best density among order[i..].
        suffix_density: Vec<f64>,
        best: f64,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize, residual: u64, acc: f64) {
            if depth == self.order.len() {
                self.best = self.best.max(acc);
                return;
            }
            let relaxed = acc + residual as f64 * self.suffix_density[depth];
            if relaxed + TOLERANCE * (1.0 + relaxed) < self.best {
                return;
            }
            let item = self.order[depth];
            let (v, w) = (self.values[item], self.weights[item]);
            let most = residual / w;
            if depth + 1 == self.order.len() {
                self.go(depth + 1, residual - most * w, acc + most as f64 * v);
                return;
            }
            for x in (0..=most).rev() {
                self.go(depth + 1, residual - x * w, acc + x as f64 * v);
            }
        }
    }

    let order = problem.density_order();
    let mut suffix_density = vec![0.0f64; order.len() + 1];
    for i in (0..order.len()).rev() {
        let item = order[i];
        let d = problem.values()[item] / problem.weights()[item] as f64;
        suffix_density[i] = suffix_density[i + 1].max(d);
    }
    let mut search = Search {
        values: problem.values(),
        weights: problem.weights(),
        order,
        suffix_density,
        best: 0.0,
    };
    search.go(0, problem.capacity(), 0.0);
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_solvers_pass() {
        let report = audit_solvers(200, 11, &AuditBounds::default());
        assert!(report.passed(), "{:?}", report.counterexample);
        assert_eq!(report.checked, 200);
    }

    #[test]
    fn zero_instances_is_a_trivial_pass() {
        let report = audit_solvers(0, 1, &AuditBounds::default());
        assert!(report.passed());
        assert_eq!(report.checked, 0);
    }

    #[test]
    fn unsorted_greedy_is_caught() {
        // Fills in index order instead of density order.
        let unsorted = |p: &UnboundedKnapsackProblem| {
            let mut counts = vec![0; p.len()];
            let mut residual = p.capacity();
            for (i, &w) in p.weights().iter().enumerate() {
                counts[i] = residual / w;
                residual -= counts[i] * w;
            }
            p.solution(counts)
        };
        let report = audit_with_greedy(1000, 5, &AuditBounds::default(), unsorted);
        let cex = report.counterexample.expect("mutant must be caught");
        assert!(cex.violation.contains("greedy"), "{cex}");
    }

    #[test]
    fn enumeration_matches_hand_solution() {
        let p = UnboundedKnapsackProblem::new(vec![6.0, 5.0], vec![3, 2], 7).unwrap();
        assert_eq!(enumerate_optimum(&p), 16.0);
    }
}
