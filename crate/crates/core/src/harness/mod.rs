//! Monte-Carlo experiment engine: configuration, seeded replication, the
//! experiment commands and their CSV tables.

mod config;
mod experiments;
mod input;
mod replicate;
mod table;

pub use config::{ExperimentConfig, KappaMode, Method};
pub use experiments::{
    cmd_contour, cmd_convergence, cmd_coverage, cmd_fit, cmd_sae, cmd_simulate, reference_covariance, version,
    ExperimentReport,
};
pub use input::{parse_series, read_series};
pub use replicate::{run_replications, ReplicationOutcome};
pub use table::{Cell, Table};
