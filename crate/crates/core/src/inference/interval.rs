use std::fmt;
use std::str::FromStr;

use crate::bootstrap::BootstrapResult;
use crate::error::{GarchError, Result};
use crate::stats::{quantile_sorted, quantile_sorted_plotting, sorted};

/// Fewest replicates accepted for an interval.
pub const MIN_REPLICATES: usize = 20;

/// How bootstrap replicates are turned into an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IntervalMethod {
    /// `(q_lo, q_hi)` of the replicates.
    #[default]
    Percentile,
    /// `(2 theta_hat - q_hi, 2 theta_hat - q_lo)`, the reflected percentile interval.
    Basic,
}

impl fmt::Display for IntervalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Percentile => "percentile",
            Self::Basic => "basic",
        })
    }
}

impl FromStr for IntervalMethod {
    type Err = GarchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "percentile" => Ok(Self::Percentile),
            "basic" | "reflected" => Ok(Self::Basic),
            other => Err(GarchError::InvalidArgument(format!("unknown interval method '{other}'"))),
        }
    }
}

/// How interval endpoints are read off the sorted replicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum QuantileRule {
    /// Position `(B - 1) p` (0-based), linear interpolation.
    #[default]
    Interpolated,
    /// Position `(B + 1) p` (1-based), linear interpolation. With few
    /// replicates this keeps the expected coverage at the nominal level, where
    /// the interpolated rule falls short (about 93% for 95% intervals at B = 100).
    PlottingPosition,
}

impl QuantileRule {
    pub fn quantile(&self, sorted: &[f64], prob: f64) -> f64 {
        match self {
            Self::Interpolated => quantile_sorted(sorted, prob),
            Self::PlottingPosition => quantile_sorted_plotting(sorted, prob),
        }
    }
}

impl fmt::Display for QuantileRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Interpolated => "interpolated",
            Self::PlottingPosition => "plotting",
        })
    }
}

impl FromStr for QuantileRule {
    type Err = GarchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "interpolated" | "linear" | "type7" => Ok(Self::Interpolated),
            "plotting" | "type6" => Ok(Self::PlottingPosition),
            other => Err(GarchError::InvalidArgument(format!("unknown quantile rule '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceInterval {
    pub parameter_index: usize,
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub method: IntervalMethod,
}

/// Where a true parameter value fell relative to an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverageRecord {
    pub parameter_index: usize,
    /// The true value lies below the lower end.
    pub below: bool,
    pub inside: bool,
    /// The true value lies above the upper end.
    pub above: bool,
}

impl ConfidenceInterval {
    /// Closed interval: the endpoints count as inside.
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn classify(&self, truth: f64) -> CoverageRecord {
        let below = truth < self.lower;
        let above = truth > self.upper;
        CoverageRecord { parameter_index: self.parameter_index, below, inside: !below && !above, above }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Percentile interval for parameter `index` at `level`, interpolated quantiles.
pub fn percentile_interval(result: &BootstrapResult, index: usize, level: f64) -> Result<ConfidenceInterval> {
    bootstrap_interval(result, index, level, IntervalMethod::Percentile, QuantileRule::Interpolated)
}

pub fn bootstrap_interval(
    result: &BootstrapResult,
    index: usize,
    level: f64,
    method: IntervalMethod,
    rule: QuantileRule,
) -> Result<ConfidenceInterval> {
    let center = result.base_fit.params()[index];
    interval_with_rule(&result.column(index), center, index, level, method, rule)
}

/// Interval from one column of replicate estimates with interpolated
/// quantiles; `center` is the base estimate (used by the basic method only).
pub fn interval_from_replicates(
    replicates: &[f64],
    center: f64,
    index: usize,
    level: f64,
    method: IntervalMethod,
) -> Result<ConfidenceInterval> {
    interval_with_rule(replicates, center, index, level, method, QuantileRule::Interpolated)
}

pub fn interval_with_rule(
    replicates: &[f64],
    center: f64,
    index: usize,
    level: f64,
    method: IntervalMethod,
    rule: QuantileRule,
) -> Result<ConfidenceInterval> {
    if replicates.len() < MIN_REPLICATES {
        return Err(GarchError::TooFewReplicates { got: replicates.len(), need: MIN_REPLICATES });
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(GarchError::InvalidArgument(format!("confidence level must lie in (0, 1), got {level}")));
    }
    let s = sorted(replicates);
    let q_lo = rule.quantile(&s, 0.5 * (1.0 - level));
    let q_hi = rule.quantile(&s, 0.5 * (1.0 + level));
    let (lower, upper) = match method {
        IntervalMethod::Percentile => (q_lo, q_hi),
        IntervalMethod::Basic => (2.0 * center - q_hi, 2.0 * center - q_lo),
    };
    Ok(ConfidenceInterval { parameter_index: index, lower, upper, level, method })
}
