//! Exact algebra of weighted linear-fractional composition operators.
//!
//! An element `(λ, M)` with `M = [[p, q], [r, s]]` denotes the operator
//! `T_f C_ψ` on `A²_α` where `ψ(z) = (pz + q)/(rz + s)` and
//! `f(z) = λ / (rz + s)^{α+2}` (principal branch). The family is closed under
//! products and adjoints, which lets the polar decomposition and the Aluthge
//! transform of its members be computed without truncation.
//!
//! Canonical gauge: `M` is rescaled by a positive real so that `|det M| = 1`,
//! with `λ` absorbing the compensating factor `c^{α+2}`. Complex rescaling is
//! never applied, so the principal branch of `(rz + s)^{α+2}` is unaffected.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::bergman::SpaceParams;
use crate::error::{Error, Result};

/// Default entrywise tolerance for [`WeightedLFT::equals`].
pub const DEFAULT_EQ_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Compensated real sum of products `Σ x_i y_i` (error-free products via FMA).
fn dot_real(terms: &[(f64, f64)]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &(x, y) in terms {
        let prod = x * y;
        let prod_err = x.mul_add(y, -prod);
        let t = sum + prod;
        let sum_err = if sum.abs() >= prod.abs() {
            (sum - t) + prod
        } else {
            (prod - t) + sum
        };
        sum = t;
        comp += prod_err + sum_err;
    }
    sum + comp
}

/// `a·b + c·d` in twice-working precision.
fn dot2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let re = dot_real(&[(a.re, b.re), (-a.im, b.im), (c.re, d.re), (-c.im, d.im)]);
    let im = dot_real(&[(a.re, b.im), (a.im, b.re), (c.re, d.im), (c.im, d.re)]);
    Complex64::new(re, im)
}

/// A 2×2 complex matrix `[[p, q], [r, s]]` acting as `z ↦ (pz + q)/(rz + s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub p: Complex64,
    pub q: Complex64,
    pub r: Complex64,
    pub s: Complex64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        p: ONE,
        q: ZERO,
        r: ZERO,
        s: ONE,
    };

    pub fn new(p: Complex64, q: Complex64, r: Complex64, s: Complex64) -> Self {
        Self { p, q, r, s }
    }

    pub fn real(p: f64, q: f64, r: f64, s: f64) -> Self {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    pub fn det(&self) -> Complex64 {
        dot2(self.p, self.s, -self.q, self.r)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.p * c, self.q * c, self.r * c, self.s * c)
    }

    /// Matrix inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 {
            return None;
        }
        Some(Self::new(self.s / d, -self.q / d, -self.r / d, self.p / d))
    }

    pub fn denominator(&self, z: Complex64) -> Complex64 {
        self.r * z + self.s
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.p * z + self.q) / self.denominator(z)
    }

    pub fn max_abs(&self) -> f64 {
        [self.p, self.q, self.r, self.s]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.p, self.q, self.r, self.s]
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.entries()
            .iter()
            .all(|c| c.im.abs() <= tol * self.max_abs().max(1.0))
    }

    /// Image of the closed unit disk, `(center, radius)`, when `|s| > |r|`.
    pub fn image_disk(&self) -> Option<(Complex64, f64)> {
        let gap = self.s.norm_sqr() - self.r.norm_sqr();
        if gap <= 0.0 {
            return None;
        }
        let center = (self.q * self.s.conj() - self.p * self.r.conj()) / gap;
        let radius = self.det().norm() / gap;
        Some((center, radius))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            dot2(self.p, o.p, self.q, o.r),
            dot2(self.p, o.q, self.q, o.s),
            dot2(self.r, o.p, self.s, o.r),
            dot2(self.r, o.q, self.s, o.s),
        )
    }
}

/// `T_{λ/(rz+s)^{α+2}} C_{(pz+q)/(rz+s)}` in canonical gauge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedLFT {
    space: SpaceParams,
    lambda: Complex64,
    m: Mat2,
}

impl WeightedLFT {
    /// Builds a canonical element and checks that it is a bounded operator
    /// symbol: denominator in the right half-plane on the closed disk and
    /// `ψ(𝔻) ⊆ 𝔻̄`.
    pub fn new(space: SpaceParams, lambda: Complex64, m: Mat2) -> Result<Self> {
        let w = Self::formal(space, lambda, m)?;
        w.validate()?;
        Ok(w)
    }

    /// Canonicalizes without the operator-symbol checks. Intermediate
    /// algebraic quantities (inverses of moduli, say) live here.
    pub fn formal(space: SpaceParams, lambda: Complex64, m: Mat2) -> Result<Self> {
        let det = m.det();
        if !(det.norm() > 0.0) || !det.norm().is_finite() || !lambda.norm().is_finite() {
            return Err(Error::Domain(format!(
                "degenerate weighted LFT: det {det}, lambda {lambda}"
            )));
        }
        Ok(Self { space, lambda, m }.canonical())
    }

    pub fn identity(space: SpaceParams) -> Self {
        Self {
            space,
            lambda: ONE,
            m: Mat2::IDENTITY,
        }
    }

    /// Plain composition operator `C_ψ` for a Möbius map given by its matrix.
    ///
    /// `C_ψ = T_{(rz+s)^{α+2}/(rz+s)^{α+2}} C_ψ`, so this is only exact when `r = 0`;
    /// other maps need an explicit Toeplitz factor and are rejected.
    pub fn composition(space: SpaceParams, m: Mat2) -> Result<Self> {
        if m.r.norm() > 0.0 {
            return Err(Error::NotInFamily(
                "a bare composition operator with a non-affine symbol carries no matching weight"
                    .into(),
            ));
        }
        let lambda = m.s.powf(space.kernel_exponent());
        Self::new(space, lambda, m)
    }

    /// Converts `C_ψ T_h` with `h(z) = κ (uz + v)^{α+2}` into family form
    /// `T_{h∘ψ} C_ψ`. Requires `u p + v r = 0`, which makes `h∘ψ` a pure
    /// `λ/(rz+s)^{α+2}` weight.
    pub fn composition_then_multiplier(
        space: SpaceParams,
        psi: Mat2,
        kappa: Complex64,
        u: Complex64,
        v: Complex64,
    ) -> Result<Self> {
        let cancel = u * psi.p + v * psi.r;
        let scale = (u.norm() + v.norm()) * psi.max_abs();
        if cancel.norm() > 1e-13 * scale.max(1.0) {
            return Err(Error::NotInFamily(format!(
                "multiplier does not cancel against the symbol denominator (residual {cancel})"
            )));
        }
        let lambda = kappa * (u * psi.q + v * psi.s).powf(space.kernel_exponent());
        Self::new(space, lambda, psi)
    }

    /// Positive rescaling to largest entry modulus 1. Dividing by `√|det|`
    /// instead would push the cancellation in `det` into `λ` for nearly
    /// singular symbols.
    fn canonical(mut self) -> Self {
        let scale = 1.0 / self.m.max_abs();
        self.m = self.m.scale(scale);
        self.lambda *= scale.powf(self.space.kernel_exponent());
        self
    }

    pub fn space(&self) -> SpaceParams {
        self.space
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn matrix(&self) -> Mat2 {
        self.m
    }

    /// Checks the operator-symbol invariants.
    pub fn validate(&self) -> Result<()> {
        let m = self.m;
        // Re(rz + s) ≥ Re(s) − |r| on the closed disk
        if !(m.s.re - m.r.norm() > 0.0) {
            return Err(Error::Domain(format!(
                "denominator {}z + {} leaves the right half-plane on the closed disk",
                m.r, m.s
            )));
        }
        if !self.is_self_map(1e-12) {
            return Err(Error::Domain(format!(
                "symbol {m:?} does not map the disk into itself"
            )));
        }
        Ok(())
    }

    /// `ψ(𝔻) ⊆ 𝔻̄` up to `tol`, using the exact image disk of the Möbius map.
    ///
    /// Compared as `|qs̄ − pr̄| + |det| ≤ |s|² − |r|²` with the slack measured
    /// against `|s|² + |r|²`, so near-degenerate symbols (image disk almost
    /// tangent, `|r| ≈ |s|`) are judged without dividing by the small gap.
    pub fn is_self_map(&self, tol: f64) -> bool {
        self.boundary_excess().is_some_and(|e| e <= tol)
    }

    /// True when `ψ(𝔻̄)` touches the unit circle.
    pub fn touches_boundary(&self, tol: f64) -> bool {
        self.boundary_excess().is_some_and(|e| e.abs() <= tol)
    }

    fn boundary_excess(&self) -> Option<f64> {
        let m = self.m;
        let (s2, r2) = (m.s.norm_sqr(), m.r.norm_sqr());
        if s2 <= r2 {
            return None;
        }
        let center = (m.q * m.s.conj() - m.p * m.r.conj()).norm();
        Some((center + m.det().norm() - (s2 - r2)) / (s2 + r2))
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space.alpha() != other.space.alpha() {
            return Err(Error::AlphaMismatch {
                left: self.space.alpha(),
                right: other.space.alpha(),
            });
        }
        Ok(())
    }

    /// Operator product `self · other`.
    ///
    /// `T_{f1}C_{ψ1} T_{f2}C_{ψ2} = T_{f1·(f2∘ψ1)} C_{ψ2∘ψ1}`, i.e. scalar
    /// `λ1λ2` and matrix `M2·M1`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        Self::formal(self.space, self.lambda * other.lambda, other.m * self.m)
    }

    /// Hilbert-space adjoint: `(λ̄, [[p̄, −r̄], [−q̄, s̄]])`.
    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Self {
            space: self.space,
            lambda: self.lambda.conj(),
            m: Mat2::new(m.p.conj(), -m.r.conj(), -m.q.conj(), m.s.conj()),
        }
        .canonical()
    }

    /// Group inverse in the formal algebra. The result need not be a bounded
    /// operator symbol.
    pub fn inverse(&self) -> Self {
        let inv = self
            .m
            .inverse()
            .expect("canonical elements are nonsingular");
        Self {
            space: self.space,
            lambda: ONE / self.lambda,
            m: inv,
        }
        .canonical()
    }

    /// Multiplies the operator by a scalar.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            lambda: self.lambda * c,
            ..*self
        }
    }

    /// Entrywise comparison of canonical forms with tolerance relative to
    /// `max(1, largest entry)`.
    pub fn equals(&self, other: &Self, tol: f64) -> bool {
        self.distance(other).is_some_and(|d| d <= tol)
    }

    /// Largest normalized entrywise discrepancy, `None` on differing α.
    pub fn distance(&self, other: &Self) -> Option<f64> {
        if self.space.alpha() != other.space.alpha() {
            return None;
        }
        let lam_scale = self.lambda.norm().max(other.lambda.norm()).max(1.0);
        let lam = (self.lambda - other.lambda).norm() / lam_scale;
        let m_scale = self.m.max_abs().max(other.m.max_abs()).max(1.0);
        let ent = self
            .m
            .entries()
            .iter()
            .zip(other.m.entries().iter())
            .map(|(a, b)| (a - b).norm() / m_scale)
            .fold(0.0, f64::max);
        Some(lam.max(ent))
    }

    /// `(f(z), ψ(z))` with the principal branch for `f`.
    pub fn symbol_eval(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let den = self.m.denominator(z);
        if den.norm() < 1e-300 {
            return Err(Error::SingularDenominator(z.to_string()));
        }
        let f = self.lambda / den.powf(self.space.kernel_exponent());
        Ok((f, (self.m.p * z + self.m.q) / den))
    }

    /// `W* K_ω = conj(f(ω)) K_{ψ(ω)}`; returns `(conj(f(ω)), ψ(ω))`.
    pub fn adjoint_apply_kernel(&self, omega: Complex64) -> Result<(Complex64, Complex64)> {
        if !(omega.norm() < 1.0) {
            return Err(Error::Domain(format!(
                "kernel point {omega} is outside the disk"
            )));
        }
        let (f, psi) = self.symbol_eval(omega)?;
        if !(psi.norm() < 1.0) {
            return Err(Error::Domain(format!(
                "ψ({omega}) = {psi} is not in the open disk"
            )));
        }
        Ok((f.conj(), psi))
    }

    /// `⟨W K_ω, K_ω⟩ = f(ω) / (1 − ω̄ ψ(ω))^{α+2}`.
    pub fn kernel_form(&self, omega: Complex64) -> Result<Complex64> {
        let (f, psi) = self.symbol_eval(omega)?;
        Ok(f / (ONE - omega.conj() * psi).powf(self.space.kernel_exponent()))
    }

    /// Recognizes `c·A_t`; `Ok(None)` when the matrix is not of semigroup shape.
    pub fn recognize_semigroup(&self, tol: f64) -> Result<Option<SemigroupElement>> {
        // M = h·A_t  ⇔  q = −r and s − p = 2q; then h = (p + s)/2 and t = q/h
        let m = self.m;
        let scale = m.max_abs();
        let h = (m.p + m.s) * 0.5;
        let shaped = (m.q + m.r).norm() <= tol * scale
            && (m.s - m.p - m.q * 2.0).norm() <= tol * scale
            && m.q.im.abs() <= tol * scale
            && h.im.abs() <= tol * scale
            && h.re > 0.0;
        if !shaped {
            return Ok(None);
        }
        let t = m.q.re / h.re;
        let lam = self.lambda / h.re.powf(self.space.kernel_exponent());
        if !(lam.re > 0.0) || lam.im.abs() > tol * lam.norm() {
            return Err(Error::NonPositiveScalar(lam.to_string()));
        }
        Ok(Some(SemigroupElement { scalar: lam.re, t }))
    }

    /// Symbolic polar decomposition `W = U|W|` inside the family.
    pub fn polar(&self) -> Result<SymbolicPolar> {
        let gram = self.adjoint().compose(self)?;
        let e = gram
            .recognize_semigroup(1e-9)
            .map_err(|e| Error::NotInPolarFamily(e.to_string()))?
            .ok_or_else(|| Error::NotInPolarFamily("W*W is not a multiple of A_t".into()))?;
        if e.t < -1e-12 {
            return Err(Error::NotInPolarFamily(format!(
                "W*W has negative semigroup parameter {}",
                e.t
            )));
        }
        let modulus = e.power_unchecked(0.5).to_lft(self.space);
        let root = e.power_unchecked(0.25).to_lft(self.space);
        let unitary = self.compose(&modulus.inverse())?;
        Ok(SymbolicPolar {
            gram: e,
            modulus,
            root,
            unitary,
        })
    }

    /// One Aluthge step `|W|^{1/2} U |W|^{1/2}` computed symbolically.
    pub fn aluthge_step(&self) -> Result<Self> {
        let polar = self.polar()?;
        polar.root.compose(&polar.unitary)?.compose(&polar.root)
    }

    /// `n` successive Aluthge steps.
    pub fn aluthge_iterate(&self, n: usize) -> Result<Self> {
        let mut w = *self;
        for _ in 0..n {
            w = w.aluthge_step()?;
        }
        Ok(w)
    }
}

impl fmt::Display for WeightedLFT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        write!(
            f,
            "λ = {}, M = [[{}, {}], [{}, {}]] (α = {})",
            self.lambda,
            m.p,
            m.q,
            m.r,
            m.s,
            self.space.alpha()
        )
    }
}

/// Pieces of the symbolic polar decomposition.
#[derive(Debug, Clone, Copy)]
pub struct SymbolicPolar {
    /// `W*W = c·A_t`.
    pub gram: SemigroupElement,
    /// `|W| = c^{1/2} A_{t/2}`.
    pub modulus: WeightedLFT,
    /// `|W|^{1/2} = c^{1/4} A_{t/4}`.
    pub root: WeightedLFT,
    /// `U = W |W|^{-1}`.
    pub unitary: WeightedLFT,
}

/// `c · A_t` where `A_t = T_{(1+t−tz)^{−(α+2)}} C_{(t+(1−t)z)/(1+t−tz)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemigroupElement {
    pub scalar: f64,
    pub t: f64,
}

impl SemigroupElement {
    pub fn new(scalar: f64, t: f64) -> Result<Self> {
        if !(scalar > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "semigroup element needs c > 0, got c = {scalar}, t = {t}"
            )));
        }
        Ok(Self { scalar, t })
    }

    /// `I + t [[−1, 1], [−1, 1]]`.
    pub fn matrix(&self) -> Mat2 {
        Mat2::real(1.0 - self.t, self.t, -self.t, 1.0 + self.t)
    }

    pub fn to_lft(&self, space: SpaceParams) -> WeightedLFT {
        WeightedLFT {
            space,
            lambda: Complex64::new(self.scalar, 0.0),
            m: self.matrix(),
        }
        .canonical()
    }

    /// `(c·A_t)^p = c^p A_{pt}`.
    pub fn power(&self, p: f64) -> Result<Self> {
        if !(p * self.t > -0.5) {
            return Err(Error::Domain(format!(
                "A_{{{}}} has a denominator vanishing on the closed disk",
                p * self.t
            )));
        }
        Ok(self.power_unchecked(p))
    }

    fn power_unchecked(&self, p: f64) -> Self {
        Self {
            scalar: self.scalar.powf(p),
            t: p * self.t,
        }
    }
}
