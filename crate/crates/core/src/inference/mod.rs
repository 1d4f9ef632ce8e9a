//! Confidence intervals and sets, and estimation-error summaries.

mod chisq;
mod ellipse;
mod interval;

pub use chisq::{chi_square_cdf, chi_square_quantile, ln_gamma, regularized_lower_gamma};
pub use ellipse::{confidence_ellipse, ellipse_contains, ConfidenceEllipse};
pub use interval::{
    bootstrap_interval, interval_from_replicates, interval_with_rule, percentile_interval, ConfidenceInterval,
    CoverageRecord, IntervalMethod, QuantileRule, MIN_REPLICATES,
};

/// Sum of absolute errors `sum_i |theta_hat_i - theta0_i|`.
pub fn sae(theta_hat: &[f64], theta0: &[f64]) -> f64 {
    assert_eq!(theta_hat.len(), theta0.len(), "parameter vectors differ in length");
    theta_hat.iter().zip(theta0).map(|(a, b)| (a - b).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sae_examples() {
        assert_eq!(sae(&[1.0, 0.5], &[1.0, 0.5]), 0.0);
        assert!((sae(&[1.2, 0.4], &[1.0, 0.5]) - 0.3).abs() < 1e-15);
    }
}
