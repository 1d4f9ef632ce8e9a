use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use crate::error::{GarchError, Result};
use crate::rng::rng_from_seed;

/// Law of one row `(tau_n1, .., tau_nn)` of the bootstrap weight array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightScheme {
    /// Multinomial(n; 1/n, .., 1/n) counts: the classical resampling bootstrap.
    Multinomial,
    /// i.i.d. Exp(1).
    IidExp1,
    /// i.i.d. Gamma(shape n, rate n).
    IidGamma,
    /// All weights equal to one; reproduces the plain estimator. Diagnostic only.
    Unit,
}

impl WeightScheme {
    /// `gamma = lim E tau^2`, the inflation factor of the unconditional limiting covariance.
    pub fn gamma(&self) -> f64 {
        match self {
            Self::Multinomial | Self::IidExp1 => 2.0,
            Self::IidGamma | Self::Unit => 1.0,
        }
    }

    /// `E tau^2` at sample size `n`.
    pub fn second_moment(&self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            Self::Multinomial => 2.0 - 1.0 / n,
            Self::IidExp1 => 2.0,
            Self::IidGamma => 1.0 + 1.0 / n,
            Self::Unit => 1.0,
        }
    }

    /// `Var tau` at sample size `n`: the factor linking the spread of the
    /// replicates around the base estimate to the estimator's own variance.
    pub fn weight_variance(&self, n: usize) -> f64 {
        self.second_moment(n) - 1.0
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Multinomial => "multinomial",
            Self::IidExp1 => "exp",
            Self::IidGamma => "gamma",
            Self::Unit => "unit",
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for WeightScheme {
    type Err = GarchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "multinomial" | "multinom" => Ok(Self::Multinomial),
            "exp" | "exp1" | "exponential" => Ok(Self::IidExp1),
            "gamma" => Ok(Self::IidGamma),
            "unit" | "ones" => Ok(Self::Unit),
            other => Err(GarchError::InvalidArgument(format!("unknown weight scheme '{other}'"))),
        }
    }
}

/// One row of `n` nonnegative weights.
pub fn draw_weights(scheme: WeightScheme, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    match scheme {
        WeightScheme::Multinomial => {
            let mut counts = vec![0.0; n];
            for _ in 0..n {
                counts[rng.random_range(0..n)] += 1.0;
            }
            counts
        }
        WeightScheme::IidExp1 => (0..n).map(|_| Exp1.sample(&mut rng)).collect(),
        WeightScheme::IidGamma => {
            let g = Gamma::new(n as f64, 1.0 / n as f64).expect("n >= 1");
            (0..n).map(|_| g.sample(&mut rng)).collect()
        }
        WeightScheme::Unit => vec![1.0; n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_seed;

    #[test]
    fn multinomial_total_is_n() {
        for n in [1, 2, 17, 1000] {
            let w = draw_weights(WeightScheme::Multinomial, n, n as u64);
            assert_eq!(w.iter().sum::<f64>(), n as f64);
            assert!(w.iter().all(|&v| v >= 0.0 && v.fract() == 0.0));
        }
    }

    #[test]
    fn exponential_moments() {
        let w = draw_weights(WeightScheme::IidExp1, 1_000_000, 3);
        let m = w.iter().sum::<f64>() / w.len() as f64;
        let m2 = w.iter().map(|v| v * v).sum::<f64>() / w.len() as f64;
        assert!((m - 1.0).abs() < 0.005, "{m}");
        assert!((m2 - 2.0).abs() / 2.0 < 0.005, "{m2}");
    }

    #[test]
    fn gamma_weights_concentrate_at_one() {
        let n = 500;
        let mut s2 = 0.0;
        let mut s1 = 0.0;
        let reps = 200;
        for r in 0..reps {
            let w = draw_weights(WeightScheme::IidGamma, n, derive_seed(1, r, "g"));
            assert!(w.iter().all(|&v| v >= 0.0));
            s1 += w.iter().sum::<f64>();
            s2 += w.iter().map(|v| v * v).sum::<f64>();
        }
        let total = (n as u64 * reps) as f64;
        assert!((s1 / total - 1.0).abs() < 0.003);
        assert!((s2 / total - WeightScheme::IidGamma.second_moment(n)).abs() < 0.003);
    }

    #[test]
    fn squared_weights_decorrelate() {
        // Empirical correlation of tau_1^2 and tau_2^2 across rows, within
        // three standard errors of zero.
        let n = 1000;
        let rows = 20_000;
        let (mut a, mut b) = (Vec::with_capacity(rows), Vec::with_capacity(rows));
        for r in 0..rows {
            let w = draw_weights(WeightScheme::Multinomial, n, derive_seed(9, r as u64, "corr"));
            a.push(w[0] * w[0]);
            b.push(w[1] * w[1]);
        }
        let (ma, va) = crate::stats::mean_var(&a);
        let (mb, vb) = crate::stats::mean_var(&b);
        let cov = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / rows as f64;
        let corr = cov / (va * vb).sqrt();
        assert!(corr.abs() < 3.0 / (rows as f64).sqrt(), "{corr}");
    }

    #[test]
    fn gamma_factors() {
        assert_eq!(WeightScheme::Multinomial.gamma(), 2.0);
        assert_eq!(WeightScheme::IidExp1.gamma(), 2.0);
        assert_eq!(WeightScheme::IidGamma.gamma(), 1.0);
        assert_eq!(WeightScheme::Multinomial.second_moment(2000), 1.9995);
        assert_eq!("exp".parse::<WeightScheme>().unwrap(), WeightScheme::IidExp1);
        assert!("poisson".parse::<WeightScheme>().is_err());
    }

    #[test]
    fn unit_scheme_is_all_ones() {
        assert_eq!(draw_weights(WeightScheme::Unit, 4, 0), vec![1.0; 4]);
    }
}
