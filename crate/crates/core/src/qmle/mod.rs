//! Gaussian quasi-maximum-likelihood estimation.

mod config;
mod fit;
mod information;
mod recursion;

pub use config::{FitConfig, Order};
pub use fit::{fit_qmle, QmleFit};
pub use information::{
    asymptotic_covariance, estimate_j, estimate_kurtosis, JEstimate, DERIVATIVE_WARMUP, MAX_CONDITION, MIN_J_LENGTH,
};
pub use recursion::{conditional_variances, negative_quasi_loglik, CondVarSeries};

pub(crate) use fit::{check_length, Estimator};
pub(crate) use recursion::objective;
