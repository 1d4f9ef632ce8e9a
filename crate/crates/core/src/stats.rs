//! Small descriptive-statistics helpers shared across modules.

use nalgebra::DMatrix;

use crate::error::{GarchError, Result};

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Mean and variance with divisor `n`.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let m = mean(xs);
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64;
    (m, v)
}

/// Centre and scale to mean 0 and (divisor-`n`) variance 1.
pub fn standardize(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.len() < 2 {
        return Err(GarchError::DegenerateData(format!("need at least 2 values to standardize, got {}", xs.len())));
    }
    let (m, v) = mean_var(xs);
    if !(v > 0.0) || !v.is_finite() {
        return Err(GarchError::DegenerateData("values have zero variance".into()));
    }
    let sd = v.sqrt();
    Ok(xs.iter().map(|x| (x - m) / sd).collect())
}

/// Linear-interpolation quantile of already sorted data: with `h = (m - 1) prob`,
/// returns `x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h])`.
pub fn quantile_sorted(sorted: &[f64], prob: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * prob.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Quantile at plotting position `h = (m + 1) prob` (1-based), interpolated
/// between neighbouring order statistics and clamped to the sample range.
///
/// For `m` exchangeable draws, `[q(a), q(1 - a)]` then holds a further draw
/// with probability `1 - 2a`, whatever `m` is.
pub fn quantile_sorted_plotting(sorted: &[f64], prob: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let m = sorted.len();
    let h = ((m + 1) as f64 * prob.clamp(0.0, 1.0)).clamp(1.0, m as f64);
    let lo = h.floor() as usize;
    let hi = lo.min(m - 1);
    sorted[lo - 1] + (h - lo as f64) * (sorted[hi] - sorted[lo - 1])
}

pub fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

pub fn median(xs: &[f64]) -> f64 {
    quantile_sorted(&sorted(xs), 0.5)
}

/// Sample covariance (divisor `m - 1`) of the rows of `rows`.
pub fn covariance(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let m = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    let mut mu = vec![0.0; d];
    for r in rows {
        for (a, b) in mu.iter_mut().zip(r) {
            *a += b;
        }
    }
    mu.iter_mut().for_each(|a| *a /= m as f64);
    let mut c = DMatrix::zeros(d, d);
    for r in rows {
        for i in 0..d {
            for j in 0..=i {
                c[(i, j)] += (r[i] - mu[i]) * (r[j] - mu[j]);
            }
        }
    }
    for i in 0..d {
        for j in 0..=i {
            let v = c[(i, j)] / (m as f64 - 1.0);
            c[(i, j)] = v;
            c[(j, i)] = v;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plotting_position_quantiles() {
        let xs: Vec<f64> = (1..=100).map(f64::from).collect();
        assert!((quantile_sorted_plotting(&xs, 0.05) - 5.05).abs() < 1e-12);
        assert!((quantile_sorted_plotting(&xs, 0.95) - 95.95).abs() < 1e-12);
        assert_eq!(quantile_sorted_plotting(&xs, 0.001), 1.0);
        assert_eq!(quantile_sorted_plotting(&xs, 0.999), 100.0);
        assert_eq!(quantile_sorted_plotting(&[3.0], 0.5), 3.0);
    }

    #[test]
    fn interpolated_quantiles() {
        let xs: Vec<f64> = (1..=100).map(f64::from).collect();
        assert!((quantile_sorted(&xs, 0.05) - 5.95).abs() < 1e-12);
        assert!((quantile_sorted(&xs, 0.95) - 95.05).abs() < 1e-12);
        assert_eq!(quantile_sorted(&xs, 0.0), 1.0);
        assert_eq!(quantile_sorted(&xs, 1.0), 100.0);
        assert_eq!(median(&[3.0, 1.0, 2.0, 10.0]), 2.5);
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[1.0, -1.0]).unwrap(), vec![1.0, -1.0]);
        assert_eq!(standardize(&[0.0, 2.0]).unwrap(), vec![-1.0, 1.0]);
        assert!(standardize(&[2.0, 2.0, 2.0]).is_err());
        assert!(standardize(&[2.0]).is_err());
    }

    #[test]
    fn covariance_of_known_rows() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 6.0], vec![5.0, 10.0]];
        let c = covariance(&rows);
        assert!((c[(0, 0)] - 4.0).abs() < 1e-12);
        assert!((c[(0, 1)] - 8.0).abs() < 1e-12);
        assert!((c[(1, 1)] - 16.0).abs() < 1e-12);
    }
}
