use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};

use crate::error::{GarchError, Result};

/// Law of the i.i.d. innovations `eta_t`. Both variants have mean 0 and variance 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnovationDistribution {
    Gaussian,
    /// Student-t with `df > 2` degrees of freedom, scaled by `sqrt((df - 2) / df)`.
    StudentT {
        df: f64,
    },
}

impl InnovationDistribution {
    pub fn student_t(df: f64) -> Result<Self> {
        if !(df.is_finite() && df > 2.0) {
            return Err(GarchError::InvalidArgument(format!(
                "Student-t innovations need df > 2 for unit variance, got {df}"
            )));
        }
        Ok(Self::StudentT { df })
    }

    /// Fourth moment `E eta^4`; infinite for Student-t with `df <= 4`.
    pub fn kurtosis(&self) -> f64 {
        match *self {
            Self::Gaussian => 3.0,
            Self::StudentT { df } if df > 4.0 => 3.0 * (df - 2.0) / (df - 4.0),
            Self::StudentT { .. } => f64::INFINITY,
        }
    }

    pub fn sampler(&self) -> InnovationSampler {
        match *self {
            Self::Gaussian => InnovationSampler::Gaussian,
            Self::StudentT { df } => InnovationSampler::StudentT {
                dist: StudentT::new(df).expect("df validated on construction"),
                scale: ((df - 2.0) / df).sqrt(),
            },
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        let s = self.sampler();
        (0..n).map(|_| s.sample(rng)).collect()
    }
}

impl fmt::Display for InnovationDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gaussian => f.write_str("gaussian"),
            Self::StudentT { df } => write!(f, "t{df}"),
        }
    }
}

impl FromStr for InnovationDistribution {
    type Err = GarchError;

    /// Accepts `gaussian`/`normal`, and `t5`, `t:5`, `t(5)` or `student5` for Student-t.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "gaussian" || s == "normal" || s == "n" {
            return Ok(Self::Gaussian);
        }
        let rest = s
            .strip_prefix("student")
            .or_else(|| s.strip_prefix('t'))
            .ok_or_else(|| GarchError::InvalidArgument(format!("unknown innovation law '{s}'")))?;
        let rest = rest.trim_start_matches([':', '(', '-', '_']).trim_end_matches(')');
        let df: f64 =
            rest.parse().map_err(|_| GarchError::InvalidArgument(format!("bad degrees of freedom in '{s}'")))?;
        Self::student_t(df)
    }
}

/// Ready-to-draw form of an [`InnovationDistribution`].
#[derive(Debug, Clone, Copy)]
pub enum InnovationSampler {
    Gaussian,
    StudentT { dist: StudentT<f64>, scale: f64 },
}

impl Distribution<f64> for InnovationSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Gaussian => StandardNormal.sample(rng),
            Self::StudentT { dist, scale } => dist.sample(rng) * scale,
        }
    }
}
