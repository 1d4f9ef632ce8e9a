use crate::qmle::QmleFit;

/// Fraction of failed replicates at which a result is flagged unreliable.
pub const FAILURE_THRESHOLD: f64 = 0.05;

/// Replicate estimates from one bootstrap run.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapResult {
    /// One row `(omega, alpha.., beta..)` per successful replicate, in replicate order.
    pub replicates: Vec<Vec<f64>>,
    /// `"wb-<scheme>"` or `"rb"`.
    pub method: String,
    pub base_fit: QmleFit,
    /// Replicates dropped because their refit did not converge.
    pub failures: usize,
    pub requested: usize,
    /// `gamma = lim E tau^2` of the weight scheme; `None` for the residual bootstrap.
    pub gamma: Option<f64>,
    /// Variance of the replicates around the base estimate relative to the
    /// estimator's own variance: `Var tau` for weighted schemes, 1 for the residual bootstrap.
    pub spread_factor: f64,
}

impl BootstrapResult {
    pub fn column(&self, index: usize) -> Vec<f64> {
        self.replicates.iter().map(|r| r[index]).collect()
    }

    pub fn len(&self) -> usize {
        self.replicates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.replicates.is_empty()
    }

    pub fn unreliable(&self) -> bool {
        self.requested > 0 && self.failures as f64 / self.requested as f64 >= FAILURE_THRESHOLD
    }
}

pub(crate) fn collect(
    rows: Vec<Option<Vec<f64>>>,
    method: String,
    base_fit: QmleFit,
    gamma: Option<f64>,
    spread_factor: f64,
) -> BootstrapResult {
    let requested = rows.len();
    let replicates: Vec<Vec<f64>> = rows.into_iter().flatten().collect();
    let failures = requested - replicates.len();
    if failures > 0 {
        log::debug!("{method}: {failures} of {requested} replicates failed to converge");
    }
    BootstrapResult { replicates, method, base_fit, failures, requested, gamma, spread_factor }
}
