//! Scalar kernels shared by every other module: log-space gamma ratios for the
//! orthonormal basis of the weighted Bergman space and Taylor coefficients of
//! `(1 - c z)^(-exponent)`.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "alpha must satisfy alpha > -1, got {alpha}"
        )));
    }
    Ok(())
}

/// `log(Γ(n+α+2)) − log(n!) − log(Γ(α+2))`, the log of the squared basis coefficient.
pub fn log_gamma_ratio(n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if n == 0 {
        return Ok(0.0);
    }
    let n = n as f64;
    Ok(ln_gamma(n + alpha + 2.0) - ln_gamma(n + 1.0) - ln_gamma(alpha + 2.0))
}

/// Coefficient of `z^n` in the orthonormal basis vector `e_n`,
/// `sqrt(Γ(n+α+2) / (n! Γ(α+2)))`.
pub fn basis_coeff(n: usize, alpha: f64) -> Result<f64> {
    Ok((0.5 * log_gamma_ratio(n, alpha)?).exp())
}

/// Table of [`log_gamma_ratio`] values for `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    alpha: f64,
    log_gamma_ratio: Vec<f64>,
}

impl WeightTable {
    pub fn new(alpha: f64, n_max: usize) -> Result<Self> {
        check_alpha(alpha)?;
        let log_gamma_ratio = (0..=n_max)
            .map(|n| log_gamma_ratio(n, alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            alpha,
            log_gamma_ratio,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_max(&self) -> usize {
        self.log_gamma_ratio.len() - 1
    }

    pub fn log_ratio(&self, n: usize) -> f64 {
        self.log_gamma_ratio[n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.log_gamma_ratio
    }

    /// `basis_coeff(n, alpha)` read from the table.
    pub fn basis_coeff(&self, n: usize) -> f64 {
        (0.5 * self.log_gamma_ratio[n]).exp()
    }

    /// `ln ‖z^n‖` in the weighted Bergman norm, i.e. `−½ log_gamma_ratio(n)`.
    pub fn log_monomial_norm(&self, n: usize) -> f64 {
        -0.5 * self.log_gamma_ratio[n]
    }
}

/// First `n_terms` Taylor coefficients of `(1 − c z)^(−exponent)`.
///
/// Uses `coeff(k+1) = coeff(k) · c · (k+exponent)/(k+1)`.
pub fn binomial_series(exponent: f64, c: Complex64, n_terms: usize) -> Result<Vec<Complex64>> {
    if !(exponent > 0.0) || !exponent.is_finite() {
        return Err(Error::Domain(format!(
            "binomial series exponent must be positive, got {exponent}"
        )));
    }
    if n_terms == 0 {
        return Err(Error::Domain(
            "binomial series needs at least one term".into(),
        ));
    }
    let mut out = Vec::with_capacity(n_terms);
    let mut coeff = Complex64::new(1.0, 0.0);
    out.push(coeff);
    for k in 1..n_terms {
        let km1 = (k - 1) as f64;
        coeff = coeff * c * ((km1 + exponent) / k as f64);
        out.push(coeff);
    }
    Ok(out)
}
