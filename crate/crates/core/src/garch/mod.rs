//! The GARCH(p,q) model: parameters, innovations, simulation and stationarity.

mod identify;
mod innovation;
mod lyapunov;
mod simulate;
mod spec;

pub use identify::{check_identifiability, polynomial_roots, IdentifiabilityReport, COMMON_ROOT_TOLERANCE};
pub use innovation::{InnovationDistribution, InnovationSampler};
pub use lyapunov::{companion_matrix, estimate_lyapunov, RENORMALIZE_EVERY};
pub use simulate::{simulate, SamplePath, DEFAULT_BURN_IN};
pub use spec::{is_second_order_stationary, param_names, GarchSpec};
