//! GARCH(p,q) simulation, Gaussian quasi-maximum-likelihood estimation, and
//! bootstrap inference (weighted/multiplier and residual), together with a
//! seeded Monte-Carlo harness for coverage and convergence studies.
//!
//! ```
//! use garch_boot::{fit_qmle, simulate, FitConfig, GarchSpec, InnovationDistribution, Order};
//!
//! let truth = GarchSpec::arch1(1.0, 0.5).unwrap();
//! let x = simulate(&truth, &InnovationDistribution::Gaussian, 1000, 500, 42).unwrap();
//! let fit = fit_qmle(&x, Order::ARCH1, &FitConfig::default()).unwrap();
//! assert!(fit.converged);
//! ```

pub mod bootstrap;
pub mod error;
pub mod garch;
pub mod harness;
pub mod inference;
pub mod optim;
pub mod qmle;
pub mod rng;
pub mod stats;

pub use bootstrap::{
    draw_weights, fit_weighted_bootstrap, residual_bootstrap, standardize_residuals, weighted_bootstrap_from_fit,
    weighted_negative_loglik, BootstrapResult, WeightScheme,
};
pub use error::{GarchError, Result};
pub use garch::{
    check_identifiability, companion_matrix, estimate_lyapunov, is_second_order_stationary, simulate, GarchSpec,
    IdentifiabilityReport, InnovationDistribution, SamplePath,
};
pub use inference::{
    confidence_ellipse, ellipse_contains, percentile_interval, sae, ConfidenceEllipse, ConfidenceInterval,
    CoverageRecord, IntervalMethod, QuantileRule,
};
pub use qmle::{
    asymptotic_covariance, conditional_variances, estimate_j, estimate_kurtosis, fit_qmle, negative_quasi_loglik,
    CondVarSeries, FitConfig, JEstimate, Order, QmleFit,
};
