use rand::Rng;
use rayon::prelude::*;

use super::result::{collect, BootstrapResult};
use super::weighted::refit;
use crate::error::{GarchError, Result};
use crate::garch::SamplePath;
use crate::qmle::{check_length, Estimator, FitConfig, QmleFit};
use crate::rng::{derive_seed, rng_from_seed};
use crate::stats;

/// Centre and scale residuals to mean 0 and variance 1 (divisor `n`).
pub fn standardize_residuals(residuals: &[f64]) -> Result<Vec<f64>> {
    stats::standardize(residuals)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Draw {
    /// Uniform resampling with replacement.
    Resample,
    /// Standardized residuals in their original order.
    #[cfg_attr(not(test), allow(dead_code))]
    Identity,
}

/// Residual bootstrap: regenerate `b` series from the fitted recursion driven by
/// resampled standardized residuals, and refit each.
///
/// The regenerated series start from the same presample as the likelihood:
/// `(x*_t)^2 = (sigma*_t)^2 = x_1^2` for `t <= 0`, with `x_1` the first original observation.
pub fn residual_bootstrap(
    sample: &SamplePath,
    fit: &QmleFit,
    b: usize,
    config: &FitConfig,
    seed: u64,
) -> Result<BootstrapResult> {
    residual_bootstrap_with(sample, fit, b, config, seed, Draw::Resample)
}

fn residual_bootstrap_with(
    sample: &SamplePath,
    fit: &QmleFit,
    b: usize,
    config: &FitConfig,
    seed: u64,
    draw: Draw,
) -> Result<BootstrapResult> {
    if b == 0 {
        return Err(GarchError::InvalidArgument("need at least one bootstrap replicate".into()));
    }
    if !fit.converged {
        return Err(GarchError::NotConverged { iterations: fit.iterations });
    }
    if fit.residuals.len() != sample.len() {
        return Err(GarchError::LengthMismatch { expected: sample.len(), got: fit.residuals.len() });
    }
    let order = fit.order();
    check_length(sample, order)?;
    let eta_hat = standardize_residuals(&fit.residuals)?;
    let theta_hat = fit.params();
    let x1_sq = sample.values()[0].powi(2);
    let n = sample.len();

    let rows: Vec<Option<Vec<f64>>> = (0..b)
        .into_par_iter()
        .map(|k| {
            let eta_star: Vec<f64> = match draw {
                Draw::Resample => {
                    let mut rng = rng_from_seed(derive_seed(seed, k as u64, "rb"));
                    (0..n).map(|_| eta_hat[rng.random_range(0..n)]).collect()
                }
                Draw::Identity => eta_hat.clone(),
            };
            let x2_star = regenerate_squares(&theta_hat, order.q, x1_sq, &eta_star);
            let est = Estimator::new(order, &x2_star, None, config)?;
            refit(&est, &theta_hat)
        })
        .collect::<Result<_>>()?;
    Ok(collect(rows, "rb".to_string(), fit.clone(), None, 1.0))
}

/// Squared bootstrap observations `(x*_t)^2 = (sigma*_t)^2 (eta*_t)^2`.
/// The likelihood only sees squares, so signs are not kept.
fn regenerate_squares(theta: &[f64], q: usize, presample: f64, eta: &[f64]) -> Vec<f64> {
    let omega = theta[0];
    let alpha = &theta[1..=q];
    let beta = &theta[1 + q..];
    let mut x2_lags = vec![presample; alpha.len()];
    let mut s2_lags = vec![presample; beta.len()];
    let mut out = Vec::with_capacity(eta.len());
    for &e in eta {
        let mut s2 = omega;
        for (a, v) in alpha.iter().zip(&x2_lags) {
            s2 += a * v;
        }
        for (bj, v) in beta.iter().zip(&s2_lags) {
            s2 += bj * v;
        }
        let x2 = s2 * e * e;
        if !x2_lags.is_empty() {
            x2_lags.rotate_right(1);
            x2_lags[0] = x2;
        }
        if !s2_lags.is_empty() {
            s2_lags.rotate_right(1);
            s2_lags[0] = s2;
        }
        out.push(x2);
    }
    out
}
