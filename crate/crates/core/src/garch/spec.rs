use std::fmt;

use crate::error::{GarchError, Result};

/// Parameters of a GARCH(p,q) model.
///
/// The conditional variance obeys
/// `h_t = omega + sum_i alpha_i x_{t-i}^2 + sum_j beta_j h_{t-j}`, with `q = alpha.len()`
/// ARCH lags and `p = beta.len()` GARCH lags. The flat parameter vector used by
/// the estimators is `(omega, alpha_1..alpha_q, beta_1..beta_p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GarchSpec {
    omega: f64,
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl GarchSpec {
    pub fn new(omega: f64, alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(GarchError::InvalidSpec(format!("omega must be positive, got {omega}")));
        }
        if let Some(a) = alpha.iter().find(|a| !(a.is_finite() && **a >= 0.0)) {
            return Err(GarchError::InvalidSpec(format!("alpha coefficients must be nonnegative, got {a}")));
        }
        if let Some(b) = beta.iter().find(|b| !(b.is_finite() && **b >= 0.0)) {
            return Err(GarchError::InvalidSpec(format!("beta coefficients must be nonnegative, got {b}")));
        }
        if !beta.is_empty() && alpha.is_empty() {
            return Err(GarchError::InvalidSpec("a model with GARCH lags needs at least one ARCH lag".into()));
        }
        Ok(Self { omega, alpha, beta })
    }

    pub fn arch1(omega: f64, alpha: f64) -> Result<Self> {
        Self::new(omega, vec![alpha], Vec::new())
    }

    pub fn garch11(omega: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(omega, vec![alpha], vec![beta])
    }

    /// Rebuild a spec from the flat vector `(omega, alpha.., beta..)`.
    pub fn from_params(p: usize, q: usize, params: &[f64]) -> Result<Self> {
        if params.len() != 1 + p + q {
            return Err(GarchError::LengthMismatch { expected: 1 + p + q, got: params.len() });
        }
        Self::new(params[0], params[1..=q].to_vec(), params[1 + q..].to_vec())
    }

    pub fn params(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.dim());
        v.push(self.omega);
        v.extend_from_slice(&self.alpha);
        v.extend_from_slice(&self.beta);
        v
    }

    /// Parameter labels in flat-vector order: `omega, alpha1.., beta1..`.
    pub fn param_names(&self) -> Vec<String> {
        param_names(self.p(), self.q())
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Number of GARCH (lagged variance) terms.
    pub fn p(&self) -> usize {
        self.beta.len()
    }

    /// Number of ARCH (lagged squared observation) terms.
    pub fn q(&self) -> usize {
        self.alpha.len()
    }

    /// Length of the flat parameter vector, `p + q + 1`.
    pub fn dim(&self) -> usize {
        1 + self.p() + self.q()
    }

    /// `sum(alpha) + sum(beta)`.
    pub fn persistence(&self) -> f64 {
        self.alpha.iter().sum::<f64>() + self.beta.iter().sum::<f64>()
    }

    /// A second-order stationary solution exists iff the persistence is strictly below one.
    pub fn is_second_order_stationary(&self) -> bool {
        self.persistence() < 1.0
    }

    /// `omega / (1 - persistence)` when the model is second-order stationary.
    pub fn unconditional_variance(&self) -> Option<f64> {
        self.is_second_order_stationary().then(|| self.omega / (1.0 - self.persistence()))
    }
}

impl fmt::Display for GarchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GARCH({},{}) omega={}", self.p(), self.q(), self.omega)?;
        for (i, a) in self.alpha.iter().enumerate() {
            write!(f, " alpha{}={}", i + 1, a)?;
        }
        for (j, b) in self.beta.iter().enumerate() {
            write!(f, " beta{}={}", j + 1, b)?;
        }
        Ok(())
    }
}

pub fn param_names(p: usize, q: usize) -> Vec<String> {
    std::iter::once("omega".to_string())
        .chain((1..=q).map(|i| format!("alpha{i}")))
        .chain((1..=p).map(|j| format!("beta{j}")))
        .collect()
}

/// Free-function form of [`GarchSpec::is_second_order_stationary`].
pub fn is_second_order_stationary(spec: &GarchSpec) -> bool {
    spec.is_second_order_stationary()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stationarity_examples() {
        assert!(is_second_order_stationary(&GarchSpec::arch1(1.0, 0.5).unwrap()));
        assert!(!is_second_order_stationary(&GarchSpec::garch11(1.0, 0.6, 0.4).unwrap()));
        let s = GarchSpec::new(1.0, vec![0.3, 0.2], vec![0.4]).unwrap();
        assert!(is_second_order_stationary(&s));
        assert!((s.persistence() - 0.9).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(GarchSpec::arch1(0.0, 0.5).is_err());
        assert!(GarchSpec::arch1(-1.0, 0.5).is_err());
        assert!(GarchSpec::arch1(1.0, -0.1).is_err());
        assert!(GarchSpec::garch11(1.0, 0.1, -0.1).is_err());
        assert!(GarchSpec::arch1(f64::NAN, 0.1).is_err());
        assert!(GarchSpec::new(1.0, vec![], vec![0.5]).is_err());
    }

    #[test]
    fn flat_vector_round_trip() {
        let s = GarchSpec::new(0.7, vec![0.1, 0.05], vec![0.6]).unwrap();
        let v = s.params();
        assert_eq!(v, vec![0.7, 0.1, 0.05, 0.6]);
        assert_eq!(GarchSpec::from_params(1, 2, &v).unwrap(), s);
        assert_eq!(s.param_names(), vec!["omega", "alpha1", "alpha2", "beta1"]);
        assert!(GarchSpec::from_params(1, 1, &v).is_err());
    }

    #[test]
    fn unconditional_variance() {
        assert_eq!(GarchSpec::arch1(1.0, 0.5).unwrap().unconditional_variance(), Some(2.0));
        assert_eq!(GarchSpec::arch1(1.0, 1.5).unwrap().unconditional_variance(), None);
    }
}
