use rand_distr::Distribution;

use super::{GarchSpec, InnovationDistribution};
use crate::error::{GarchError, Result};
use crate::rng::rng_from_seed;

/// Default number of discarded warm-up steps for simulated paths.
pub const DEFAULT_BURN_IN: usize = 1000;

/// An observed (or simulated) series `x_1..x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    values: Vec<f64>,
    true_spec: Option<GarchSpec>,
    true_variances: Option<Vec<f64>>,
}

impl SamplePath {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(GarchError::DegenerateData("empty series".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(GarchError::DegenerateData(format!("non-finite value at index {i}")));
        }
        Ok(Self { values, true_spec: None, true_variances: None })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn true_spec(&self) -> Option<&GarchSpec> {
        self.true_spec.as_ref()
    }

    /// Conditional variances `h_t` of a simulated path.
    pub fn true_variances(&self) -> Option<&[f64]> {
        self.true_variances.as_deref()
    }

    /// Same series multiplied by `c` (simulation metadata is dropped).
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|x| c * x).collect())
    }

    pub fn squares(&self) -> Vec<f64> {
        self.values.iter().map(|x| x * x).collect()
    }

    /// Second moment `(1/n) sum x_t^2`, the variance of a zero-mean series.
    pub fn mean_square(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum::<f64>() / self.len() as f64
    }
}

/// Simulate `n` observations of the GARCH process after `burn_in` discarded steps.
///
/// The recursion starts with every presample `x^2` and `h` equal to the
/// unconditional variance when the model is second-order stationary, and to
/// `omega` otherwise. Output is a pure function of the arguments.
pub fn simulate(
    spec: &GarchSpec,
    dist: &InnovationDistribution,
    n: usize,
    burn_in: usize,
    seed: u64,
) -> Result<SamplePath> {
    if n == 0 {
        return Err(GarchError::InvalidArgument("simulation length must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let sampler = dist.sampler();
    let (p, q) = (spec.p(), spec.q());
    let alpha = spec.alpha();
    let beta = spec.beta();
    let start = spec.unconditional_variance().unwrap_or(spec.omega());

    // Lag buffers, most recent first.
    let mut x2_lags = vec![start; q];
    let mut h_lags = vec![start; p];
    let mut values = Vec::with_capacity(n);
    let mut variances = Vec::with_capacity(n);

    for t in 0..burn_in + n {
        let mut h = spec.omega();
        for i in 0..q {
            h += alpha[i] * x2_lags[i];
        }
        for j in 0..p {
            h += beta[j] * h_lags[j];
        }
        let eta: f64 = sampler.sample(&mut rng);
        let x = h.sqrt() * eta;
        if q > 0 {
            x2_lags.rotate_right(1);
            x2_lags[0] = x * x;
        }
        if p > 0 {
            h_lags.rotate_right(1);
            h_lags[0] = h;
        }
        if t >= burn_in {
            values.push(x);
            variances.push(h);
        }
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(GarchError::DegenerateData(format!(
            "simulated path overflowed at step {i}; the model is explosive"
        )));
    }
    Ok(SamplePath { values, true_spec: Some(spec.clone()), true_variances: Some(variances) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn moments(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
        let k = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n / (v * v);
        (v, k)
    }

    #[test]
    fn white_noise_reduction_is_scaled_innovation_stream() {
        let spec = GarchSpec::new(2.0, vec![], vec![]).unwrap();
        let path = simulate(&spec, &InnovationDistribution::Gaussian, 500, 0, 11).unwrap();
        let eta = InnovationDistribution::Gaussian.sample_n(500, &mut rng_from_seed(11));
        for (x, e) in path.values().iter().zip(&eta) {
            assert_eq!(*x, 2f64.sqrt() * e);
        }
        assert!(path.true_variances().unwrap().iter().all(|&h| h == 2.0));
    }

    #[test]
    fn white_noise_variance_near_one() {
        let spec = GarchSpec::new(1.0, vec![], vec![]).unwrap();
        let path = simulate(&spec, &InnovationDistribution::Gaussian, 200_000, 0, 1).unwrap();
        let (v, _) = moments(path.values());
        assert!((v - 1.0).abs() < 0.01, "{v}");
    }

    #[test]
    fn arch1_variance_and_heavy_tails() {
        let spec = GarchSpec::arch1(1.0, 0.5).unwrap();
        let path = simulate(&spec, &InnovationDistribution::Gaussian, 1_000_000, DEFAULT_BURN_IN, 2).unwrap();
        let (v, k) = moments(path.values());
        assert!((v - 2.0).abs() / 2.0 < 0.02, "variance {v}");
        assert!(k > 3.0, "kurtosis {k}");
    }

    #[test]
    fn garch_sample_variance_matches_unconditional() {
        let spec = GarchSpec::new(0.2, vec![0.1, 0.05], vec![0.6]).unwrap();
        let path = simulate(&spec, &InnovationDistribution::Gaussian, 1_000_000, DEFAULT_BURN_IN, 9).unwrap();
        let (v, _) = moments(path.values());
        let target = spec.unconditional_variance().unwrap();
        assert!((v - target).abs() / target < 0.03, "{v} vs {target}");
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = GarchSpec::garch11(0.1, 0.1, 0.8).unwrap();
        let d = InnovationDistribution::student_t(5.0).unwrap();
        let a = simulate(&spec, &d, 1000, 100, 5).unwrap();
        let b = simulate(&spec, &d, 1000, 100, 5).unwrap();
        assert_eq!(a, b);
        let c = simulate(&spec, &d, 1000, 100, 6).unwrap();
        assert_ne!(a.values(), c.values());
        let d0 = simulate(&spec, &d, 1000, 0, 5).unwrap();
        assert_ne!(a.values(), d0.values());
    }

    #[test]
    fn rejects_empty_request() {
        let spec = GarchSpec::arch1(1.0, 0.5).unwrap();
        assert!(simulate(&spec, &InnovationDistribution::Gaussian, 0, 10, 1).is_err());
    }
}
