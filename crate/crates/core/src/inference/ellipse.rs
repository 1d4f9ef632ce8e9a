use nalgebra::{DMatrix, DVector};

use super::chisq::chi_square_quantile;
use crate::error::{GarchError, Result};

/// `{theta : n (theta - center)^T shape^-1 (theta - center) <= threshold}`,
/// with `threshold` the chi-square quantile on `dim` degrees of freedom.
/// The set is closed: points on the boundary are inside.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceEllipse {
    pub center: Vec<f64>,
    /// The `n`-scaled covariance, e.g. `(kappa - 1) J^-1`.
    pub shape: DMatrix<f64>,
    pub n: usize,
    pub level: f64,
    pub threshold: f64,
    precision: DMatrix<f64>,
}

impl ConfidenceEllipse {
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `n (point - center)^T shape^-1 (point - center)`.
    pub fn quadratic_form(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.dim(), "dimension mismatch");
        let d = DVector::from_iterator(self.dim(), point.iter().zip(&self.center).map(|(p, c)| p - c));
        self.n as f64 * (d.transpose() * &self.precision * &d)[(0, 0)]
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        self.quadratic_form(point) <= self.threshold
    }
}

pub fn confidence_ellipse(center: &[f64], cov: &DMatrix<f64>, n: usize, level: f64) -> Result<ConfidenceEllipse> {
    let d = center.len();
    if cov.shape() != (d, d) {
        return Err(GarchError::LengthMismatch { expected: d, got: cov.nrows() });
    }
    if n == 0 {
        return Err(GarchError::InvalidArgument("sample size must be positive".into()));
    }
    let shape = (cov + cov.transpose()) * 0.5;
    let chol = shape.clone().cholesky().ok_or(GarchError::NotPositiveDefinite)?;
    let threshold = chi_square_quantile(d as f64, level)?;
    Ok(ConfidenceEllipse { center: center.to_vec(), shape, n, level, threshold, precision: chol.inverse() })
}

pub fn ellipse_contains(e: &ConfidenceEllipse, point: &[f64]) -> bool {
    e.contains(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_gives_a_disk() {
        let e = confidence_ellipse(&[0.0, 0.0], &DMatrix::identity(2, 2), 1, 0.95).unwrap();
        let r = e.threshold.sqrt();
        assert!((e.threshold - 5.991).abs() < 1e-3);
        assert!(e.contains(&[r * 0.6, r * 0.8 - 1e-9]));
        assert!(!e.contains(&[r * 0.6, r * 0.8 + 1e-6]));
        assert!(e.contains(&[0.0, 0.0]));
    }

    #[test]
    fn boundary_point_is_inside() {
        // Threshold 2 ln 100 at 99%, reached exactly by this point.
        let e = confidence_ellipse(&[0.0, 0.0], &DMatrix::identity(2, 2), 4, 0.99).unwrap();
        let mut pt = [(e.threshold / 4.0).sqrt(), 0.0];
        while e.quadratic_form(&pt) > e.threshold {
            pt[0] = f64::from_bits(pt[0].to_bits() - 1);
        }
        assert!(e.contains(&pt));
        let far = [(10.0 * e.threshold / 4.0).sqrt(), 0.0];
        assert!(!ellipse_contains(&e, &far));
    }

    #[test]
    fn rejects_indefinite_covariance() {
        let cov = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(confidence_ellipse(&[0.0, 0.0], &cov, 10, 0.95), Err(GarchError::NotPositiveDefinite)));
    }

    #[test]
    fn nested_levels() {
        let cov = DMatrix::from_row_slice(2, 2, &[4.893, -2.148, -2.148, 3.926]);
        let e95 = confidence_ellipse(&[1.0, 0.5], &cov, 1000, 0.95).unwrap();
        let e99 = confidence_ellipse(&[1.0, 0.5], &cov, 1000, 0.99).unwrap();
        assert!(e99.threshold > e95.threshold);
        for k in 0..360 {
            let a = f64::from(k).to_radians();
            let pt = [1.0 + 0.15 * a.cos(), 0.5 + 0.15 * a.sin()];
            if e95.contains(&pt) {
                assert!(e99.contains(&pt));
            }
        }
    }

    proptest! {
        #[test]
        fn affine_invariance(
            m in prop::collection::vec(-2.0f64..2.0, 4),
            c in prop::collection::vec(-1.0f64..1.0, 2),
            p in prop::collection::vec(-1.0f64..1.0, 2),
        ) {
            let t = DMatrix::from_row_slice(2, 2, &m);
            prop_assume!(t.determinant().abs() > 0.05);
            let shape = DMatrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]);
            let e = confidence_ellipse(&c, &shape, 50, 0.95).unwrap();
            let tc = &t * DVector::from_column_slice(&c);
            let tp = &t * DVector::from_column_slice(&p);
            let ts = &t * &shape * t.transpose();
            let et = confidence_ellipse(tc.as_slice(), &ts, 50, 0.95).unwrap();
            let q1 = e.quadratic_form(&p);
            let q2 = et.quadratic_form(tp.as_slice());
            prop_assert!((q1 - q2).abs() <= 1e-8 * q1.max(1.0));
        }
    }
}
