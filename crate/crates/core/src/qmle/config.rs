use crate::error::{GarchError, Result};
use crate::optim::NelderMeadOptions;

/// Model orders `(p, q)`: `p` lagged variances and `q` lagged squared observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Order {
    pub p: usize,
    pub q: usize,
}

impl Order {
    pub const ARCH1: Order = Order { p: 0, q: 1 };
    pub const GARCH11: Order = Order { p: 1, q: 1 };

    pub fn new(p: usize, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(GarchError::InvalidSpec("at least one ARCH lag (q >= 1) is required for estimation".into()));
        }
        Ok(Self { p, q })
    }

    pub fn dim(&self) -> usize {
        1 + self.p + self.q
    }

    /// Observations below which a fit is refused.
    pub fn min_observations(&self) -> usize {
        (10 * self.dim()).max(self.p.max(self.q) + 1)
    }

    /// Observations below which a fit is attempted with a warning.
    pub fn recommended_observations(&self) -> usize {
        20 * self.dim()
    }
}

/// Optimizer settings for quasi-maximum-likelihood fits.
#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    /// Lower bound for omega.
    pub omega_min: f64,
    /// Upper bound for omega as a multiple of the sample mean square.
    pub omega_max_factor: f64,
    /// Upper bound for each alpha and beta coefficient.
    pub coef_max: f64,
    /// Penalty slope applied to `sum(beta)` above `coef_max`.
    pub beta_penalty: f64,
    /// Number of optimizer starts (the deterministic start plus random ones).
    pub starts: usize,
    pub max_iterations: usize,
    pub ftol: f64,
    pub xtol: f64,
    pub initial_step: f64,
    /// Seed for the random starts.
    pub seed: u64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            omega_min: 1e-6,
            omega_max_factor: 10.0,
            coef_max: 0.9999,
            beta_penalty: 1e6,
            starts: 5,
            max_iterations: 2000,
            ftol: 1e-10,
            xtol: 1e-8,
            initial_step: 0.1,
            seed: 0x5EED,
        }
    }
}

impl FitConfig {
    pub fn optimizer_options(&self) -> NelderMeadOptions {
        NelderMeadOptions {
            max_iterations: self.max_iterations,
            ftol: self.ftol,
            xtol: self.xtol,
            initial_step: self.initial_step,
        }
    }

    /// Apply one `key = value` setting. Returns `Ok(false)` for keys this
    /// struct does not own.
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value.trim().parse().map_err(|_| GarchError::InvalidArgument(format!("bad value '{value}' for '{key}'")))
        }
        match key {
            "omega_min" => self.omega_min = num(key, value)?,
            "omega_max_factor" => self.omega_max_factor = num(key, value)?,
            "coef_max" => self.coef_max = num(key, value)?,
            "beta_penalty" => self.beta_penalty = num(key, value)?,
            "starts" => self.starts = num(key, value)?,
            "max_iterations" | "max_iter" => self.max_iterations = num(key, value)?,
            "ftol" => self.ftol = num(key, value)?,
            "xtol" => self.xtol = num(key, value)?,
            "initial_step" => self.initial_step = num(key, value)?,
            "fit_seed" => self.seed = num(key, value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(GarchError::InvalidArgument(m.to_string()));
        if !(self.omega_min > 0.0) {
            return bad("omega_min must be positive");
        }
        if !(self.omega_max_factor > 0.0) {
            return bad("omega_max_factor must be positive");
        }
        if !(self.coef_max > 0.0 && self.coef_max < 1.0) {
            return bad("coef_max must lie in (0, 1)");
        }
        if self.starts == 0 {
            return bad("at least one optimizer start is required");
        }
        if !(self.ftol >= 0.0 && self.xtol >= 0.0) {
            return bad("tolerances must be nonnegative");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_update_fields() {
        let mut c = FitConfig::default();
        assert!(c.set("starts", "3").unwrap());
        assert!(c.set("max_iter", "50").unwrap());
        assert!(c.set("xtol", "1e-6").unwrap());
        assert!(!c.set("unknown", "1").unwrap());
        assert!(c.set("starts", "x").is_err());
        assert_eq!((c.starts, c.max_iterations, c.xtol), (3, 50, 1e-6));
        c.starts = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn observation_thresholds() {
        assert_eq!(Order::ARCH1.min_observations(), 20);
        assert_eq!(Order::ARCH1.recommended_observations(), 40);
        assert!(Order::new(1, 0).is_err());
    }
}
