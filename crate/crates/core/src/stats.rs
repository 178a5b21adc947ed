//! Sample statistics for aggregating trials.

use crate::{Error, Result};

/// z-quantile for a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

/// Arithmetic mean; `None` for an empty slice.
pub fn mean(samples: &[f64]) -> Option<f64> {
    if samples.is_empty() {
        None
    } else {
        Some(samples.iter().sum::<f64>() / samples.len() as f64)
    }
}

/// Sample standard deviation with the `n - 1` denominator.
pub fn sample_std(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let m = samples.iter().sum::<f64>() / samples.len() as f64;
    let ss: f64 = samples.iter().map(|x| (x - m) * (x - m)).sum();
    Ok(libm::sqrt(ss / (samples.len() - 1) as f64))
}

/// Half-width of the normal-approximation 95% confidence interval of the mean,
/// `1.96 * s / sqrt(n)`.
pub fn ci95(samples: &[f64]) -> Result<f64> {
    let s = sample_std(samples)?;
    Ok(Z95 * s / libm::sqrt(samples.len() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ci_examples() {
        assert_eq!(ci95(&[3.0, 3.0, 3.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(ci95(&[0.0, 2.0]).unwrap(), 1.96, epsilon = 1e-12);
        assert!(ci95(&[1.0]).is_err());
        assert!(ci95(&[]).is_err());
    }

    #[test]
    fn ci_scales_with_abs_factor() {
        let xs = [1.0, 4.0, 2.5, 7.0];
        let scaled: [f64; 4] = xs.map(|x| -3.0 * x);
        assert_abs_diff_eq!(ci95(&scaled).unwrap(), 3.0 * ci95(&xs).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn mean_of_empty_is_none() {
        assert_eq!(mean(&[]), None);
        assert_eq!(mean(&[1.0, 2.0]), Some(1.5));
    }
}
