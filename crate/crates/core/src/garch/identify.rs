use nalgebra::DMatrix;

use super::GarchSpec;

/// Two polynomial roots closer than this are treated as common.
pub const COMMON_ROOT_TOLERANCE: f64 = 1e-8;

/// Outcome of the identifiability conditions on a parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentifiabilityReport {
    /// `sum(beta) < 1`.
    pub beta_sum_below_one: bool,
    /// `alpha_q + beta_p != 0`.
    pub last_lags_nonzero: bool,
    /// `A(1) = sum(alpha) != 0`.
    pub arch_polynomial_nonzero_at_one: bool,
    /// `A(z) = sum alpha_i z^i` and `B(z) = 1 - sum beta_j z^j` share no root.
    /// Always true when `p = 0`.
    pub no_common_roots: bool,
    /// Smallest distance between a nonzero root of `A` and a root of `B`, if both have roots.
    pub min_root_distance: Option<f64>,
}

impl IdentifiabilityReport {
    pub fn passes(&self) -> bool {
        self.beta_sum_below_one && self.last_lags_nonzero && self.arch_polynomial_nonzero_at_one && self.no_common_roots
    }
}

pub fn check_identifiability(spec: &GarchSpec) -> IdentifiabilityReport {
    let alpha = spec.alpha();
    let beta = spec.beta();
    let alpha_sum: f64 = alpha.iter().sum();
    let beta_sum: f64 = beta.iter().sum();
    let last = alpha.last().copied().unwrap_or(0.0) + beta.last().copied().unwrap_or(0.0);

    let (no_common_roots, min_root_distance) = if spec.p() == 0 {
        (true, None)
    } else {
        // A(z) = z * (alpha_1 + alpha_2 z + ..); the root at z = 0 can never be
        // shared because B(0) = 1.
        let a_roots = polynomial_roots(alpha);
        let mut b_coeffs = Vec::with_capacity(beta.len() + 1);
        b_coeffs.push(1.0);
        b_coeffs.extend(beta.iter().map(|b| -b));
        let b_roots = polynomial_roots(&b_coeffs);
        let dist = a_roots
            .iter()
            .flat_map(|ra| b_roots.iter().map(move |rb| (ra - rb).norm()))
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.min(d))));
        (dist.map_or(true, |d| d >= COMMON_ROOT_TOLERANCE), dist)
    };

    IdentifiabilityReport {
        beta_sum_below_one: beta_sum < 1.0,
        last_lags_nonzero: last != 0.0,
        arch_polynomial_nonzero_at_one: alpha_sum != 0.0,
        no_common_roots,
        min_root_distance,
    }
}

/// Complex roots of `c[0] + c[1] z + .. + c[k] z^k`, via companion-matrix eigenvalues.
/// Trailing zero coefficients are dropped; a constant or zero polynomial has no roots.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<nalgebra::Complex<f64>> {
    let Some(deg) = coeffs.iter().rposition(|&c| c != 0.0) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for j in 0..deg {
        m[(j, deg - 1)] = -coeffs[j] / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arch1_passes() {
        let r = check_identifiability(&GarchSpec::arch1(1.0, 0.5).unwrap());
        assert!(r.passes());
        assert_eq!(r.min_root_distance, None);
    }

    #[test]
    fn zero_arch_polynomial_fails() {
        let r = check_identifiability(&GarchSpec::garch11(1.0, 0.0, 0.5).unwrap());
        assert!(!r.arch_polynomial_nonzero_at_one);
        assert!(r.last_lags_nonzero);
        assert!(!r.passes());
    }

    #[test]
    fn garch11_passes() {
        let r = check_identifiability(&GarchSpec::garch11(1.0, 0.2, 0.3).unwrap());
        assert!(r.passes());
        let roots = polynomial_roots(&[1.0, -0.3]);
        assert_eq!(roots.len(), 1);
        assert!((roots[0].re - 10.0 / 3.0).abs() < 1e-12);
        assert!(roots[0].im.abs() < 1e-12);
    }

    #[test]
    fn common_root_detected() {
        // alpha_1 + alpha_2 z vanishes at z = -2, and 1 - 0.1 z - 0.3 z^2 does too.
        let spec = GarchSpec::new(1.0, vec![0.2, 0.1], vec![0.1, 0.3]).unwrap();
        let r = check_identifiability(&spec);
        assert!(!r.no_common_roots);
        assert!(r.min_root_distance.unwrap() < 1e-10);
        assert!(!r.passes());
    }

    #[test]
    fn persistent_beta_flagged() {
        let r = check_identifiability(&GarchSpec::new(1.0, vec![0.1], vec![0.6, 0.5]).unwrap());
        assert!(!r.beta_sum_below_one);
    }

    #[test]
    fn roots_of_quadratic() {
        // (z - 1)(z - 2) = 2 - 3z + z^2
        let mut roots: Vec<f64> = polynomial_roots(&[2.0, -3.0, 1.0]).iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] - 1.0).abs() < 1e-12 && (roots[1] - 2.0).abs() < 1e-12);
        assert!(polynomial_roots(&[3.0, 0.0]).is_empty());
    }
}
