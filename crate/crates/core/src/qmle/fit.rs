use rand::Rng;

use super::recursion::{fill_conditional_variances, objective};
use super::{FitConfig, Order};
use crate::error::{GarchError, Result};
use crate::garch::{GarchSpec, SamplePath};
use crate::optim::{nelder_mead, Bounds, Minimum};
use crate::rng::{derive_seed, rng_from_seed};

/// A quasi-maximum-likelihood fit.
#[derive(Debug, Clone, PartialEq)]
pub struct QmleFit {
    pub theta_hat: GarchSpec,
    /// `I_n(theta_hat)`.
    pub neg_loglik: f64,
    /// `sigma~_t^2(theta_hat)`.
    pub sigma2: Vec<f64>,
    /// `x_t / sigma~_t(theta_hat)`.
    pub residuals: Vec<f64>,
    pub converged: bool,
    /// Optimizer iterations of the winning start.
    pub iterations: usize,
    /// Some parameter sits on its box bound.
    pub boundary_flag: bool,
    /// Objective at each start point, in start order.
    pub start_values: Vec<f64>,
    pub best_start: usize,
}

impl QmleFit {
    pub fn params(&self) -> Vec<f64> {
        self.theta_hat.params()
    }

    pub fn order(&self) -> Order {
        Order { p: self.theta_hat.p(), q: self.theta_hat.q() }
    }
}

/// Minimize `I_n` over `[omega_min, omega_max] x [0, coef_max]^(p+q)` from
/// `config.starts` starting points and keep the best (ties go to the earlier start).
pub fn fit_qmle(sample: &SamplePath, order: Order, config: &FitConfig) -> Result<QmleFit> {
    check_length(sample, order)?;
    let x2 = sample.squares();
    let est = Estimator::new(order, &x2, None, config)?;
    let best = est.multi_start(&[])?;
    Ok(est.finish(sample, best))
}

pub(crate) fn check_length(sample: &SamplePath, order: Order) -> Result<()> {
    let n = sample.len();
    if n < order.min_observations() {
        return Err(GarchError::SampleTooShort { n, min: order.min_observations() });
    }
    if n < order.recommended_observations() {
        log::warn!(
            "fitting {} parameters to {n} observations; at least {} are recommended",
            order.dim(),
            order.recommended_observations()
        );
    }
    Ok(())
}

pub(crate) struct StartOutcome {
    pub min: Minimum,
    pub start_values: Vec<f64>,
    pub best_start: usize,
}

/// One (possibly weighted) estimation problem on a fixed sample.
pub(crate) struct Estimator<'a> {
    order: Order,
    x2: &'a [f64],
    weights: Option<&'a [f64]>,
    bounds: Bounds,
    config: &'a FitConfig,
}

impl<'a> Estimator<'a> {
    pub fn new(order: Order, x2: &'a [f64], weights: Option<&'a [f64]>, config: &'a FitConfig) -> Result<Self> {
        config.validate()?;
        if let Some(w) = weights {
            if w.len() != x2.len() {
                return Err(GarchError::LengthMismatch { expected: x2.len(), got: w.len() });
            }
        }
        let mean_square = x2.iter().sum::<f64>() / x2.len() as f64;
        if !(mean_square > 0.0) {
            return Err(GarchError::DegenerateData("every observation is zero".into()));
        }
        let omega_max = (config.omega_max_factor * mean_square).max(config.omega_min);
        let mut lower = vec![0.0; order.dim()];
        let mut upper = vec![config.coef_max; order.dim()];
        lower[0] = config.omega_min;
        upper[0] = omega_max;
        let bounds = Bounds::new(lower, upper)?;
        Ok(Self { order, x2, weights, bounds, config })
    }

    /// Objective plus the penalty on `sum(beta)` above `coef_max`.
    pub fn value(&self, params: &[f64]) -> f64 {
        let q = self.order.q;
        let beta = &params[1 + q..];
        let mut v = objective(params[0], &params[1..=q], beta, self.x2, self.weights);
        let excess = beta.iter().sum::<f64>() - self.config.coef_max;
        if excess > 0.0 {
            v += self.config.beta_penalty * excess;
        }
        v
    }

    pub fn run(&self, start: &[f64]) -> Minimum {
        nelder_mead(|x| self.value(x), start, &self.bounds, &self.config.optimizer_options())
    }

    /// The deterministic start followed by `starts - 1` random ones.
    pub fn default_starts(&self) -> Vec<Vec<f64>> {
        let Order { p, q } = self.order;
        let omega_max = self.bounds.upper()[0];
        let omega_min = self.bounds.lower()[0];
        let mean_square = omega_max / self.config.omega_max_factor;
        let mut starts = Vec::with_capacity(self.config.starts);
        let mut first = vec![(0.1 * mean_square).clamp(omega_min, omega_max)];
        first.extend(std::iter::repeat(0.1 / q as f64).take(q));
        first.extend(std::iter::repeat(0.8 / p.max(1) as f64).take(p));
        starts.push(first);
        for k in 1..self.config.starts {
            let mut rng = rng_from_seed(derive_seed(self.config.seed, k as u64, "qmle-start"));
            let omega = (rng.random::<f64>() * omega_max).max(omega_min);
            let total = 0.95 * rng.random::<f64>();
            let raw: Vec<f64> = (0..p + q).map(|_| rng.random::<f64>()).collect();
            let norm: f64 = raw.iter().sum::<f64>().max(f64::MIN_POSITIVE);
            let mut s = vec![omega];
            s.extend(raw.iter().map(|r| (total * r / norm).min(self.config.coef_max)));
            starts.push(s);
        }
        starts
    }

    /// Run from `leading` starts first, then from the default starts.
    pub fn multi_start(&self, leading: &[Vec<f64>]) -> Result<StartOutcome> {
        let starts: Vec<Vec<f64>> = leading.iter().cloned().chain(self.default_starts()).collect();
        let mut best: Option<(usize, Minimum)> = None;
        let mut start_values = Vec::with_capacity(starts.len());
        for (k, s) in starts.iter().enumerate() {
            let mut s = s.clone();
            self.bounds.project(&mut s);
            start_values.push(self.value(&s));
            let m = self.run(&s);
            if best.as_ref().map_or(true, |(_, b)| m.value < b.value) {
                best = Some((k, m));
            }
        }
        let (best_start, min) = best.ok_or_else(|| GarchError::InvalidArgument("no optimizer starts".into()))?;
        Ok(StartOutcome { min, start_values, best_start })
    }

    pub fn finish(&self, sample: &SamplePath, outcome: StartOutcome) -> QmleFit {
        let Order { p, q } = self.order;
        let x = &outcome.min.x;
        let theta_hat = GarchSpec::from_params(p, q, x).expect("box keeps parameters inside the parameter space");
        let mut sigma2 = vec![0.0; self.x2.len()];
        fill_conditional_variances(x[0], &x[1..=q], &x[1 + q..], self.x2, &mut sigma2);
        let residuals = sample.values().iter().zip(&sigma2).map(|(x, s)| x / s.sqrt()).collect();
        QmleFit {
            neg_loglik: objective(x[0], &x[1..=q], &x[1 + q..], self.x2, None),
            boundary_flag: self.bounds.on_boundary(x, 1e-8),
            theta_hat,
            sigma2,
            residuals,
            converged: outcome.min.converged,
            iterations: outcome.min.iterations,
            start_values: outcome.start_values,
            best_start: outcome.best_start,
        }
    }
}
