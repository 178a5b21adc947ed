//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "k": 10,
//!   "cost_interval": [1, 10],
//!   "mean_interval": [10, 20],
//!   "budgets": [1000, 3162, 10000],
//!   "trials": 100,
//!   "policies": ["kube", "fkube", "efirst:0.1"],
//!   "master_seed": 7,
//!   "baseline": "exact"
//! }
//! ```
//!
//! `trials` (100), `master_seed` (0) and `baseline` (`exact`) may be omitted.
//! Any other key is rejected.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use budget_bandit_core::instance::InstanceShape;
use budget_bandit_core::{OptimumMode, PolicyId};
use serde_json::{Map, Value};

use crate::{Error, Result};

/// Budgets above this use the fractional baseline under [`Baseline::Auto`].
pub const AUTO_EXACT_LIMIT: u64 = 10_000;

const KEYS: [&str; 8] = [
    "k",
    "cost_interval",
    "mean_interval",
    "budgets",
    "trials",
    "policies",
    "master_seed",
    "baseline",
];

/// Which full-information optimum regret is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    /// Exact knapsack optimum at every budget.
    Exact,
    /// Fractional relaxation at every budget.
    Fractional,
    /// Exact up to [`AUTO_EXACT_LIMIT`], fractional above.
    Auto,
}

impl Baseline {
    /// Optimum mode used at `budget`.
    pub fn mode_for(self, budget: u64) -> OptimumMode {
        match self {
            Baseline::Exact => OptimumMode::Exact,
            Baseline::Fractional => OptimumMode::Fractional,
            Baseline::Auto if budget <= AUTO_EXACT_LIMIT => OptimumMode::Exact,
            Baseline::Auto => OptimumMode::Fractional,
        }
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Baseline::Exact),
            "fractional" => Ok(Baseline::Fractional),
            "auto" => Ok(Baseline::Auto),
            other => Err(Error::Config(format!(
                "key `baseline`: expected \"exact\", \"fractional\" or \"auto\", got \"{other}\""
            ))),
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Baseline::Exact => "exact",
            Baseline::Fractional => "fractional",
            Baseline::Auto => "auto",
        })
    }
}

/// A fully validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Number of arms.
    pub k: usize,
    /// Inclusive integer cost range.
    pub cost_interval: (u64, u64),
    /// Mean reward range.
    pub mean_interval: (f64, f64),
    /// Strictly ascending budgets.
    pub budgets: Vec<u64>,
    /// Trials per (policy, budget) cell, at least 2.
    pub trials: usize,
    /// Policies in output order.
    pub policies: Vec<PolicyId>,
    /// Seed for the instance and every trial.
    pub master_seed: u64,
    /// Regret baseline.
    pub baseline: Baseline,
}

impl ExperimentConfig {
    /// Arm generator shape of this configuration.
    pub fn shape(&self) -> InstanceShape {
        InstanceShape {
            arms: self.k,
            cost_interval: self.cost_interval,
            mean_interval: self.mean_interval,
        }
    }

    /// Checks every cross-field invariant.
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Config(format!("key `k`: need at least 2 arms, got {}", self.k)));
        }
        let (lo, hi) = self.cost_interval;
        if lo < 1 || lo > hi {
            return Err(Error::Config(format!(
                "key `cost_interval`: [{lo}, {hi}] must satisfy 1 <= lo <= hi"
            )));
        }
        let (mlo, mhi) = self.mean_interval;
        if !(mlo > 0.0 && mlo <= mhi && mhi.is_finite()) {
            return Err(Error::Config(format!(
                "key `mean_interval`: [{mlo}, {mhi}] must satisfy 0 < lo <= hi"
            )));
        }
        if self.budgets.is_empty() {
            return Err(Error::Config("key `budgets`: at least one budget is required".into()));
        }
        if self.budgets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("key `budgets`: must be strictly ascending".into()));
        }
        if self.budgets[0] == 0 {
            return Err(Error::Config("key `budgets`: budgets must be positive".into()));
        }
        if self.trials < 2 {
            return Err(Error::Config(format!(
                "key `trials`: need at least 2 trials for a confidence interval, got {}",
                self.trials
            )));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("key `policies`: at least one policy is required".into()));
        }
        Ok(())
    }
}

/// Reads a configuration file, then applies `BB_SEED`-style seed override and
/// `key=value` overrides, in that order.
pub fn parse_config(path: &Path, seed_override: Option<u64>, overrides: &[String]) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text, seed_override, overrides)
}

/// [`parse_config`] on an in-memory document.
pub fn parse_config_str(text: &str, seed_override: Option<u64>, overrides: &[String]) -> Result<ExperimentConfig> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("not valid JSON: {e}")))?;
    let Value::Object(mut map) = doc else {
        return Err(Error::Config("top level must be a JSON object".into()));
    };
    if let Some(seed) = seed_override {
        map.insert("master_seed".into(), Value::from(seed));
    }
    for item in overrides {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override `{item}` is not of the form key=value")))?;
        // Bare words such as `fractional` are taken as strings.
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        map.insert(key.trim().to_string(), value);
    }
    from_map(&map)
}

fn from_map(map: &Map<String, Value>) -> Result<ExperimentConfig> {
    if let Some(unknown) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::Config(format!(
            "unknown key `{unknown}` (expected one of {})",
            KEYS.join(", ")
        )));
    }
    let config = ExperimentConfig {
        k: usize::try_from(required_u64(map, "k")?)
            .map_err(|_| Error::Config("key `k`: too large".into()))?,
        cost_interval: required(map, "cost_interval", "a pair of positive integers", |v| {
            pair(v, Value::as_u64)
        })?,
        mean_interval: required(map, "mean_interval", "a pair of positive numbers", |v| {
            pair(v, Value::as_f64)
        })?,
        budgets: required(map, "budgets", "an array of positive integers", |v| {
            v.as_array()?.iter().map(Value::as_u64).collect()
        })?,
        trials: optional(map, "trials", "a positive integer", |v| v.as_u64()?.try_into().ok())?
            .unwrap_or(100),
        policies: required(map, "policies", "an array of policy ids (kube, fkube, efirst:<eps>)", |v| {
            v.as_array()?
                .iter()
                .map(|p| p.as_str()?.parse::<PolicyId>().ok())
                .collect()
        })?,
        master_seed: optional(map, "master_seed", "a non-negative integer", Value::as_u64)?.unwrap_or(0),
        baseline: match map.get("baseline") {
            None => Baseline::Exact,
            Some(Value::String(s)) => s.parse()?,
            Some(other) => {
                return Err(Error::Config(format!(
                    "key `baseline`: expected a string, got {other}"
                )))
            }
        },
    };
    config.validate()?;
    Ok(config)
}

fn pair<T>(v: &Value, get: impl Fn(&Value) -> Option<T>) -> Option<(T, T)> {
    match v.as_array()?.as_slice() {
        [a, b] => Some((get(a)?, get(b)?)),
        _ => None,
    }
}

fn required<T>(
    map: &Map<String, Value>,
    key: &str,
    expected: &str,
    get: impl Fn(&Value) -> Option<T>,
) -> Result<T> {
    optional(map, key, expected, get)?
        .ok_or_else(|| Error::Config(format!("missing key `{key}` (expected {expected})")))
}

fn required_u64(map: &Map<String, Value>, key: &str) -> Result<u64> {
    required(map, key, "a positive integer", Value::as_u64)
}

fn optional<T>(
    map: &Map<String, Value>,
    key: &str,
    expected: &str,
    get: impl Fn(&Value) -> Option<T>,
) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => get(v)
            .map(Some)
            .ok_or_else(|| Error::Config(format!("key `{key}`: expected {expected}, got {v}"))),
    }
}
