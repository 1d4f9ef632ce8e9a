//! The information matrix `J = E[sigma_t^-4 (d sigma_t^2/d theta)(d sigma_t^2/d theta)^T]`
//! and the limiting covariance `(kappa - 1) J^-1`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{GarchError, Result};
use crate::garch::{simulate, GarchSpec, InnovationDistribution, DEFAULT_BURN_IN};
use crate::stats;

/// Smallest simulation length accepted by [`estimate_j`].
pub const MIN_J_LENGTH: usize = 100_000;
/// Steps discarded so the derivative recursion forgets its zero start.
pub const DERIVATIVE_WARMUP: usize = 500;
/// Largest condition number accepted when inverting `J`.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct JEstimate {
    pub j: DMatrix<f64>,
    /// Number of averaged terms.
    pub n: usize,
    /// Fourth moment of the innovation law used in the simulation.
    pub kappa: f64,
}

/// Monte-Carlo estimate of `J` at `theta` from one simulated path of length `n`.
///
/// ARCH(1) uses the closed-form gradient `(1, x_{t-1}^2) / sigma_t^2`; other
/// orders differentiate the variance recursion,
/// `d sigma_t^2 = (1, x_{t-1}^2..x_{t-q}^2, sigma_{t-1}^2..sigma_{t-p}^2) + sum_j beta_j d sigma_{t-j}^2`.
pub fn estimate_j(theta: &GarchSpec, dist: &InnovationDistribution, n: usize, seed: u64) -> Result<JEstimate> {
    if !theta.is_second_order_stationary() {
        return Err(GarchError::Nonstationary { persistence: theta.persistence() });
    }
    if n < MIN_J_LENGTH {
        return Err(GarchError::InvalidArgument(format!("J estimate needs at least {MIN_J_LENGTH} steps, got {n}")));
    }
    if theta.q() == 0 {
        return Err(GarchError::InvalidSpec("J is only defined for models with an ARCH lag".into()));
    }
    let j = if theta.p() == 0 && theta.q() == 1 {
        arch1_j(theta, dist, n, seed)?
    } else {
        recursive_j(theta, dist, n, seed)?
    };
    Ok(JEstimate { j, n, kappa: dist.kurtosis() })
}

fn arch1_j(theta: &GarchSpec, dist: &InnovationDistribution, n: usize, seed: u64) -> Result<DMatrix<f64>> {
    let (omega, alpha) = (theta.omega(), theta.alpha()[0]);
    let path = simulate(theta, dist, n + 1, DEFAULT_BURN_IN, seed)?;
    let x = path.values();
    let (mut s00, mut s01, mut s11) = (0.0, 0.0, 0.0);
    for t in 1..=n {
        let x2 = x[t - 1] * x[t - 1];
        let inv = 1.0 / (omega + alpha * x2);
        let inv2 = inv * inv;
        s00 += inv2;
        s01 += x2 * inv2;
        s11 += x2 * x2 * inv2;
    }
    let nf = n as f64;
    Ok(DMatrix::from_row_slice(2, 2, &[s00 / nf, s01 / nf, s01 / nf, s11 / nf]))
}

pub(crate) fn recursive_j(
    theta: &GarchSpec,
    dist: &InnovationDistribution,
    n: usize,
    seed: u64,
) -> Result<DMatrix<f64>> {
    let (p, q, d) = (theta.p(), theta.q(), theta.dim());
    let lead = p.max(q);
    let path = simulate(theta, dist, lead + DERIVATIVE_WARMUP + n, DEFAULT_BURN_IN, seed)?;
    let x = path.values();
    let h = path.true_variances().expect("simulated paths carry their variances");
    let beta = theta.beta();

    // derivs[k] = d sigma^2_{t-1-k} / d theta
    let mut derivs = vec![vec![0.0; d]; p];
    let mut g = vec![0.0; d];
    let mut acc = DMatrix::<f64>::zeros(d, d);
    for t in lead..x.len() {
        g[0] = 1.0;
        for i in 0..q {
            g[1 + i] = x[t - 1 - i] * x[t - 1 - i];
        }
        for j in 0..p {
            g[1 + q + j] = h[t - 1 - j];
        }
        for (b, dv) in beta.iter().zip(&derivs) {
            for (gk, dk) in g.iter_mut().zip(dv) {
                *gk += b * dk;
            }
        }
        if p > 0 {
            derivs.rotate_right(1);
            derivs[0].copy_from_slice(&g);
        }
        if t >= lead + DERIVATIVE_WARMUP {
            let w = 1.0 / (h[t] * h[t]);
            for r in 0..d {
                for c in 0..d {
                    acc[(r, c)] += w * g[r] * g[c];
                }
            }
        }
    }
    Ok(acc / n as f64)
}

/// `(kappa - 1) J^-1`.
pub fn asymptotic_covariance(j: &JEstimate, kappa: f64) -> Result<DMatrix<f64>> {
    if !(kappa > 1.0 && kappa.is_finite()) {
        return Err(GarchError::InvalidArgument(format!("kurtosis must be finite and above 1, got {kappa}")));
    }
    let inv = spd_inverse(&j.j)?;
    Ok(inv * (kappa - 1.0))
}

/// Inverse of a symmetric positive-definite matrix, refusing condition numbers above [`MAX_CONDITION`].
pub(crate) fn spd_inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym.clone());
    let max = eig.eigenvalues.max();
    let min = eig.eigenvalues.min();
    if !(min > 0.0) || max / min > MAX_CONDITION {
        return Err(GarchError::Singular { condition: if min > 0.0 { max / min } else { f64::INFINITY } });
    }
    let inv = sym.cholesky().ok_or(GarchError::NotPositiveDefinite)?.inverse();
    Ok((&inv + inv.transpose()) * 0.5)
}

/// `(1/n) sum eta_t^4` of the standardized residuals.
pub fn estimate_kurtosis(residuals: &[f64]) -> Result<f64> {
    if residuals.len() < 10 {
        return Err(GarchError::InvalidArgument(format!(
            "kurtosis estimate needs at least 10 residuals, got {}",
            residuals.len()
        )));
    }
    let z = stats::standardize(residuals)?;
    Ok(z.iter().map(|v| v.powi(4)).sum::<f64>() / z.len() as f64)
}
