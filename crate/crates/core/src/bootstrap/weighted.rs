use rayon::prelude::*;

use super::result::{collect, BootstrapResult};
use super::weights::{draw_weights, WeightScheme};
use crate::error::{GarchError, Result};
use crate::garch::{GarchSpec, SamplePath};
use crate::qmle::{check_length, fit_qmle, objective, Estimator, FitConfig, Order, QmleFit};
use crate::rng::derive_seed;

/// `I*_n(theta) = (1/n) sum_t tau_t (x_t^2 / sigma~_t^2 + ln sigma~_t^2)`.
pub fn weighted_negative_loglik(theta: &GarchSpec, sample: &SamplePath, weights: &[f64]) -> Result<f64> {
    if weights.len() != sample.len() {
        return Err(GarchError::LengthMismatch { expected: sample.len(), got: weights.len() });
    }
    Ok(objective(theta.omega(), theta.alpha(), theta.beta(), &sample.squares(), Some(weights)))
}

/// Fit the sample, then `b` weighted-bootstrap replicates of the estimator.
pub fn fit_weighted_bootstrap(
    sample: &SamplePath,
    order: Order,
    scheme: WeightScheme,
    b: usize,
    config: &FitConfig,
    seed: u64,
) -> Result<BootstrapResult> {
    let base = fit_qmle(sample, order, config)?;
    weighted_bootstrap_from_fit(sample, &base, scheme, b, config, seed)
}

/// Weighted bootstrap around an existing fit of `sample`.
///
/// Replicate `k` draws its weights from `derive_seed(seed, k, "wb")` and
/// minimizes `I*_n` from the base estimate, falling back to the full set of
/// starts if that run does not converge.
pub fn weighted_bootstrap_from_fit(
    sample: &SamplePath,
    base: &QmleFit,
    scheme: WeightScheme,
    b: usize,
    config: &FitConfig,
    seed: u64,
) -> Result<BootstrapResult> {
    if b < 2 {
        return Err(GarchError::InvalidArgument(format!("need at least 2 bootstrap replicates, got {b}")));
    }
    if !base.converged {
        return Err(GarchError::NotConverged { iterations: base.iterations });
    }
    check_length(sample, base.order())?;
    let x2 = sample.squares();
    let theta_hat = base.params();
    let order = base.order();
    let rows: Vec<Option<Vec<f64>>> = (0..b)
        .into_par_iter()
        .map(|k| {
            let w = draw_weights(scheme, sample.len(), derive_seed(seed, k as u64, "wb"));
            weighted_replicate(order, &x2, &w, &theta_hat, config)
        })
        .collect::<Result<_>>()?;
    Ok(collect(rows, format!("wb-{scheme}"), base.clone(), Some(scheme.gamma()), scheme.weight_variance(sample.len())))
}

fn weighted_replicate(
    order: Order,
    x2: &[f64],
    weights: &[f64],
    theta_hat: &[f64],
    config: &FitConfig,
) -> Result<Option<Vec<f64>>> {
    // Unit weights pose exactly the base problem, whose solution is theta_hat.
    if weights.iter().all(|&w| w == 1.0) {
        return Ok(Some(theta_hat.to_vec()));
    }
    let est = Estimator::new(order, x2, Some(weights), config)?;
    refit(&est, theta_hat)
}

/// Warm start at `start`; multi-start fallback; `None` if neither converges.
pub(crate) fn refit(est: &Estimator<'_>, start: &[f64]) -> Result<Option<Vec<f64>>> {
    let m = est.run(start);
    if m.converged {
        return Ok(Some(m.x));
    }
    let outcome = est.multi_start(&[m.x])?;
    Ok(outcome.min.converged.then_some(outcome.min.x))
}
