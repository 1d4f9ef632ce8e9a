//! Weighted (multiplier) and residual bootstrap of the QML estimator.

mod residual;
mod result;
mod weighted;
mod weights;

pub use residual::{residual_bootstrap, standardize_residuals};
pub use result::{BootstrapResult, FAILURE_THRESHOLD};
pub use weighted::{fit_weighted_bootstrap, weighted_bootstrap_from_fit, weighted_negative_loglik};
pub use weights::{draw_weights, WeightScheme};
