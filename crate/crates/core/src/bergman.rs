//! The weighted Bergman space `A²_α(𝔻)`.
//!
//! Vectors are stored as coordinates against the orthonormal basis
//! `e_n(z) = sqrt(Γ(n+α+2)/(n!Γ(α+2))) zⁿ`, never as raw Taylor coefficients,
//! so that adjoints of truncated operators are conjugate transposes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::WeightTable;

/// Kernel points beyond this modulus decay slowly in the basis; reports flag them.
pub const SLOW_KERNEL_RADIUS: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    alpha: f64,
}

impl SpaceParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!(
                "weighted Bergman space needs alpha > -1, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The exponent `α + 2` carried by kernels and Toeplitz weights.
    pub fn kernel_exponent(&self) -> f64 {
        self.alpha + 2.0
    }

    pub fn weights(&self, n_max: usize) -> WeightTable {
        WeightTable::new(self.alpha, n_max).expect("alpha validated at construction")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    pub space: SpaceParams,
    pub coeffs: Vec<Complex64>,
}

impl CoeffVector {
    pub fn new(space: SpaceParams, coeffs: Vec<Complex64>) -> Self {
        Self { space, coeffs }
    }

    /// Polynomial with the given raw Taylor coefficients, converted to basis coordinates.
    pub fn from_taylor(space: SpaceParams, taylor: &[Complex64]) -> Self {
        let w = space.weights(taylor.len().max(1) - 1);
        let coeffs = taylor
            .iter()
            .enumerate()
            .map(|(n, c)| c / w.basis_coeff(n))
            .collect();
        Self { space, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `⟨self, other⟩`, linear in the first slot; the shorter vector is zero-padded.
    pub fn inner(&self, other: &CoeffVector) -> Complex64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(x, y)| x * y.conj())
            .sum()
    }

    /// Raw Taylor coefficients of the represented polynomial.
    pub fn taylor(&self) -> Vec<Complex64> {
        if self.coeffs.is_empty() {
            return Vec::new();
        }
        let w = self.space.weights(self.coeffs.len() - 1);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * w.basis_coeff(n))
            .collect()
    }
}

fn check_in_disk(omega: Complex64) -> Result<()> {
    if !(omega.norm() < 1.0) {
        return Err(Error::Domain(format!(
            "point {omega} is not in the open unit disk"
        )));
    }
    Ok(())
}

/// First `n` basis coordinates of the reproducing kernel `K_ω(z) = (1 − ω̄ z)^{−(α+2)}`.
pub fn kernel_vector(omega: Complex64, n: usize, space: SpaceParams) -> Result<CoeffVector> {
    check_in_disk(omega)?;
    if n == 0 {
        return Err(Error::Domain(
            "kernel vector needs at least one coordinate".into(),
        ));
    }
    let w = space.weights(n - 1);
    let conj = omega.conj();
    let mut power = Complex64::new(1.0, 0.0);
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        coeffs.push(power * w.basis_coeff(k));
        power *= conj;
    }
    Ok(CoeffVector { space, coeffs })
}

/// Closed form `‖K_ω‖² = (1 − |ω|²)^{−(α+2)}`.
pub fn kernel_norm_sq(omega: Complex64, space: SpaceParams) -> Result<f64> {
    check_in_disk(omega)?;
    Ok((1.0 - omega.norm_sqr()).powf(-space.kernel_exponent()))
}

/// Evaluates `Σ coeffs_n e_n(z)`.
pub fn eval(f: &CoeffVector, z: Complex64) -> Result<Complex64> {
    check_in_disk(z)?;
    if f.coeffs.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = f.space.weights(f.coeffs.len() - 1);
    let mut power = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, c) in f.coeffs.iter().enumerate() {
        acc += c * w.basis_coeff(n) * power;
        power *= z;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::binomial_series;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_hardy_limit() {
        assert!(SpaceParams::new(-1.0).is_err());
        assert!(SpaceParams::new(f64::NAN).is_err());
    }

    #[test]
    fn kernel_at_origin_is_constant_one() {
        let sp = SpaceParams::new(0.7).unwrap();
        let k = kernel_vector(c(0.0, 0.0), 6, sp).unwrap();
        assert_eq!(k.coeffs[0], c(1.0, 0.0));
        assert!(k.coeffs[1..].iter().all(|v| v.norm() == 0.0));
        assert_eq!(kernel_norm_sq(c(0.0, 0.0), sp).unwrap(), 1.0);
    }

    #[test]
    fn kernel_norm_closed_form() {
        let sp = SpaceParams::new(0.0).unwrap();
        assert_relative_eq!(
            kernel_norm_sq(c(0.5, 0.0), sp).unwrap(),
            16.0 / 9.0,
            max_relative = 1e-15
        );
        let k = kernel_vector(c(0.5, 0.0), 400, sp).unwrap();
        assert_relative_eq!(k.norm_sq(), 16.0 / 9.0, max_relative = 1e-12);
    }

    #[test]
    fn truncated_kernel_norm_converges() {
        for alpha in [-0.5, 0.0, 1.0, 2.5] {
            let sp = SpaceParams::new(alpha).unwrap();
            for omega in [c(0.7, 0.0), c(0.0, -0.6), c(0.4, 0.5)] {
                let closed = kernel_norm_sq(omega, sp).unwrap();
                let trunc = kernel_vector(omega, 256, sp).unwrap().norm_sq();
                assert!(
                    (closed - trunc).abs() < 1e-10,
                    "alpha {alpha} omega {omega}: {closed} vs {trunc}"
                );
            }
        }
    }

    #[test]
    fn truncated_kernel_norm_monotone_and_bounded() {
        let sp = SpaceParams::new(1.0).unwrap();
        let omega = c(0.9, 0.1);
        let closed = kernel_norm_sq(omega, sp).unwrap();
        let mut prev = 0.0;
        for n in [1, 2, 4, 16, 64, 256] {
            let v = kernel_vector(omega, n, sp).unwrap().norm_sq();
            assert!(v >= prev && v <= closed * (1.0 + 1e-14));
            prev = v;
        }
    }

    #[test]
    fn reproducing_z_squared() {
        let sp = SpaceParams::new(0.0).unwrap();
        let p = CoeffVector::from_taylor(sp, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let k = kernel_vector(c(0.3, 0.0), 8, sp).unwrap();
        // brute force: Σ p_n conj(k_n)
        let mut brute = c(0.0, 0.0);
        for n in 0..p.len() {
            brute += p.coeffs[n] * k.coeffs[n].conj();
        }
        assert_relative_eq!(brute.re, 0.09, max_relative = 1e-14);
        assert_relative_eq!(p.inner(&k).re, 0.09, max_relative = 1e-14);
    }

    #[test]
    fn eval_basis_vectors() {
        let sp = SpaceParams::new(0.0).unwrap();
        let one = CoeffVector::new(sp, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(eval(&one, c(0.4, 0.2)).unwrap(), c(1.0, 0.0));
        let e1 = CoeffVector::new(sp, vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_relative_eq!(
            eval(&e1, c(0.5, 0.0)).unwrap().re,
            2f64.sqrt() * 0.5,
            max_relative = 1e-14
        );
    }

    #[test]
    fn eval_kernel_matches_binomial_partial_sum() {
        let sp = SpaceParams::new(0.5).unwrap();
        let omega = c(0.3, -0.4);
        let z = c(0.2, 0.5);
        let n = 40;
        let k = kernel_vector(omega, n, sp).unwrap();
        let series = binomial_series(2.5, omega.conj(), n).unwrap();
        let partial: Complex64 = series
            .iter()
            .enumerate()
            .map(|(j, s)| s * z.powu(j as u32))
            .sum();
        assert!((eval(&k, z).unwrap() - partial).norm() < 1e-13);
    }

    #[test]
    fn domain_errors() {
        let sp = SpaceParams::new(0.0).unwrap();
        assert!(kernel_vector(c(1.0, 0.0), 4, sp).is_err());
        assert!(kernel_norm_sq(c(0.0, 1.2), sp).is_err());
    }
}
