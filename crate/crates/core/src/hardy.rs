//! The weighted Hardy space `H²(β_α)` with `β_α(0) = 1`, `β_α(j) = 1/γ_α(j−1)`,
//! where `γ_α(j) = ‖zʲ‖` in the weighted Bergman space. Operators are written in
//! the orthonormal coordinates `w_j = zʲ/β_α(j)`.

use num_complex::Complex64;

use crate::closed_forms::{self, Scenario};
use crate::error::Result;
use crate::matrix::{self, CMatrix, SpaceTag, TruncatedOperator};
use crate::special::WeightTable;
use crate::wlft::Mat2;

#[derive(Debug, Clone, PartialEq)]
pub struct HardyWeights {
    alpha: f64,
    table: WeightTable,
}

impl HardyWeights {
    pub fn new(alpha: f64, n_max: usize) -> Result<Self> {
        Ok(Self {
            alpha,
            table: WeightTable::new(alpha, n_max.max(1))?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_max(&self) -> usize {
        self.table.n_max()
    }

    /// `ln γ_α(j)`.
    pub fn log_gamma(&self, j: usize) -> f64 {
        self.table.log_monomial_norm(j)
    }

    /// `ln β_α(j)`.
    pub fn log_beta(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            -self.table.log_monomial_norm(j - 1)
        }
    }

    pub fn beta(&self, j: usize) -> f64 {
        self.log_beta(j).exp()
    }

    pub fn gamma(&self, j: usize) -> f64 {
        self.log_gamma(j).exp()
    }
}

fn hardy(alpha: f64) -> SpaceTag {
    SpaceTag::Hardy { alpha }
}

/// `V: A²_α → zH²(β_α)`, `u_j ↦ w_{j+1}`; an `(N+1)×N` block.
pub fn shift_v(alpha: f64, n: usize) -> Result<TruncatedOperator> {
    let m = CMatrix::from_fn(n + 1, n, |i, j| {
        if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    TruncatedOperator::new(hardy(alpha), m)
}

/// `c ⊕ V X V*` as an `(N+1)×(N+1)` matrix.
pub fn block(alpha: f64, corner: Complex64, x: &CMatrix) -> Result<TruncatedOperator> {
    let n = x.nrows();
    let mut m = CMatrix::zeros(n + 1, n + 1);
    m[(0, 0)] = corner;
    m.view_mut((1, 1), (n, n)).copy_from(x);
    TruncatedOperator::new(hardy(alpha), m)
}

fn embedded(
    sc: &Scenario,
    w: &crate::wlft::WeightedLFT,
    factor: f64,
    n: usize,
) -> Result<TruncatedOperator> {
    let t = matrix::truncate(w, n)?;
    block(
        sc.alpha,
        Complex64::new(1.0, 0.0),
        &t.entries().map(|z| z * factor),
    )
}

/// `C̃_σ⁽ⁿ⁾ = 1 ⊕ V(a·(C_φ*)~⁽ⁿ⁾)V*`.
pub fn sigma_iterate_block(sc: &Scenario, n: usize) -> Result<TruncatedOperator> {
    embedded(sc, &closed_forms::adjoint_iterate_symbols(sc), sc.a, n)
}

/// Iterates of `C_σ*`: `1 ⊕ V(a·C̃_φ⁽ⁿ⁾)V*`.
pub fn sigma_adjoint_iterate_block(sc: &Scenario, n: usize) -> Result<TruncatedOperator> {
    embedded(sc, &closed_forms::iterate_symbols(sc), sc.a, n)
}

/// Strong limit of [`sigma_iterate_block`]: `(K_0⊗K_0) ⊕ V(a^{−α/2}U′)V*`.
pub fn sigma_sot_limit(sc: &Scenario, n: usize) -> Result<TruncatedOperator> {
    embedded(sc, &closed_forms::sot_limit_element(sc), 1.0, n)
}

/// Strong limit of [`sigma_adjoint_iterate_block`]: the projection `K_0⊗K_0`.
pub fn sigma_adjoint_limit(alpha: f64, n: usize) -> Result<TruncatedOperator> {
    block(alpha, Complex64::new(1.0, 0.0), &CMatrix::zeros(n, n))
}

/// `σ(z) = az/(1 − (1−a)z)`.
pub fn sigma_symbol(a: f64) -> Mat2 {
    Mat2::real(a, 0.0, -(1.0 - a), 1.0)
}

/// `C_σ` on `H²(β_α)` expanded directly from the Taylor series of `σʲ`.
pub fn direct_c_sigma(sc: &Scenario, size: usize) -> Result<TruncatedOperator> {
    matrix::composition_matrix(hardy(sc.alpha), sigma_symbol(sc.a), size)
}

/// `max_j ‖(A − L) w_j‖` over `j < count`.
pub fn column_residual(a: &TruncatedOperator, limit: &TruncatedOperator, count: usize) -> f64 {
    let d = a.entries() - limit.entries();
    (0..count.min(d.ncols()))
        .map(|j| d.column(j).norm())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaProbe {
    /// Entrywise distance between `T*T·TT*` and `TT*·T*T` for the `A²_α` factor.
    pub binormal_symbolic: f64,
    /// Frobenius norm of the leading 8×8 corner of `[T*T, TT*]` for the block matrix.
    pub binormal_corner: f64,
    /// `⟨C̃_σ⁽ⁿ⁾w_1, w_1⟩ = a·g_n(0)` at `n` and `n+1`.
    pub diagonal_n: f64,
    pub diagonal_next: f64,
    pub interior_margin: f64,
    pub zero_in_interior: bool,
}

pub fn sigma_properties_probe(sc: &Scenario, n: usize, angles: usize) -> Result<SigmaProbe> {
    let w = closed_forms::adjoint_iterate_symbols(sc);
    let p = w.adjoint().compose(&w)?;
    let q = w.compose(&w.adjoint())?;
    let binormal_symbolic = p
        .compose(&q)?
        .distance(&q.compose(&p)?)
        .unwrap_or(f64::INFINITY);
    let b = sigma_iterate_block(sc, n)?;
    let next = Scenario::new(sc.a, sc.alpha, sc.n + 1)?;
    let margin = matrix::interior_margin(&b, angles)?;
    Ok(SigmaProbe {
        binormal_symbolic,
        binormal_corner: matrix::binormal_commutator_corner(&b, matrix::DEFAULT_CORNER),
        diagonal_n: sc.a * closed_forms::adjoint_iterate_g0(sc),
        diagonal_next: sc.a * closed_forms::adjoint_iterate_g0(&next),
        interior_margin: margin,
        zero_in_interior: margin > matrix::DEFAULT_MARGIN,
    })
}
