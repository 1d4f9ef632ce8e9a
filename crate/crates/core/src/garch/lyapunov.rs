//! Companion-matrix representation and the top Lyapunov exponent.
//!
//! The process admits the state-space form `z_t = b_t + A_t z_{t-1}` with
//! `z_t = (x_t^2, .., x_{t-q+1}^2, h_t, .., h_{t-p+1})` and
//! `b_t = (omega eta_t^2, 0, .., 0, omega, 0, .., 0)`. Only `A_t` enters the
//! stationarity criterion, so `b_t` and `z_t` are never materialized.

use nalgebra::DMatrix;
use rand_distr::Distribution;

use super::{GarchSpec, InnovationDistribution};
use crate::error::{GarchError, Result};
use crate::rng::rng_from_seed;

/// Steps between renormalizations of the running product.
pub const RENORMALIZE_EVERY: usize = 10;

/// The random `(q+p) x (q+p)` matrix `A_t` for a given `eta_t^2`.
pub fn companion_matrix(spec: &GarchSpec, eta_sq: f64) -> DMatrix<f64> {
    let mut a = companion_template(spec);
    set_eta_row(&mut a, spec, eta_sq);
    a
}

/// `A_t` with a zero first row; [`set_eta_row`] fills it in.
fn companion_template(spec: &GarchSpec) -> DMatrix<f64> {
    let (p, q) = (spec.p(), spec.q());
    let d = p + q;
    let mut a = DMatrix::zeros(d, d);
    for i in 1..q {
        a[(i, i - 1)] = 1.0;
    }
    if p > 0 {
        for (i, &v) in spec.alpha().iter().enumerate() {
            a[(q, i)] = v;
        }
        for (j, &v) in spec.beta().iter().enumerate() {
            a[(q, q + j)] = v;
        }
        for r in q + 1..d {
            a[(r, r - 1)] = 1.0;
        }
    }
    a
}

fn set_eta_row(a: &mut DMatrix<f64>, spec: &GarchSpec, eta_sq: f64) {
    let q = spec.q();
    for (i, &v) in spec.alpha().iter().enumerate() {
        a[(0, i)] = v * eta_sq;
    }
    for (j, &v) in spec.beta().iter().enumerate() {
        a[(0, q + j)] = v * eta_sq;
    }
}

/// Estimate the top Lyapunov exponent of `(A_t)` from one product of length `t_max`.
///
/// Uses the Frobenius norm; the running product is rescaled every
/// [`RENORMALIZE_EVERY`] steps and the log-scale accumulated separately. A
/// spec with all coefficients zero has `A_t = 0` and returns `-inf`.
pub fn estimate_lyapunov(spec: &GarchSpec, dist: &InnovationDistribution, t_max: usize, seed: u64) -> Result<f64> {
    if t_max < 1000 {
        return Err(GarchError::InvalidArgument(format!("Lyapunov estimate needs t_max >= 1000, got {t_max}")));
    }
    if spec.persistence() == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let d = spec.p() + spec.q();
    let sampler = dist.sampler();
    let mut rng = rng_from_seed(seed);

    let mut a = companion_template(spec);
    let mut prod = DMatrix::<f64>::identity(d, d);
    let mut scratch = DMatrix::<f64>::zeros(d, d);
    let mut log_scale = 0.0;

    for t in 1..=t_max {
        let eta: f64 = sampler.sample(&mut rng);
        set_eta_row(&mut a, spec, eta * eta);
        scratch.gemm(1.0, &a, &prod, 0.0);
        std::mem::swap(&mut prod, &mut scratch);
        if t % RENORMALIZE_EVERY == 0 || t == t_max {
            let norm = prod.norm();
            if norm == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            log_scale += norm.ln();
            prod /= norm;
        }
    }
    Ok(log_scale / t_max as f64)
}
