//! Closed-form family elements for `φ(z) = az + (1−a)` and its dual
//! `σ(z) = az/(1 − (1−a)z)`: the iterated Aluthge transforms, their adjoint
//! representations, the polar factors and the strong-operator limits.
//!
//! Every generator divides the raw integer-power coefficients by a common
//! geometric factor so that only `(2a/(1+a))ⁿ` or `((1+a)/2)ⁿ` appears; both
//! stay in `(0, 1]` and nothing overflows.

use num_complex::Complex64;

use crate::bergman::SpaceParams;
use crate::error::{Error, Result};
use crate::wlft::{Mat2, WeightedLFT};

/// Iterates beyond this are numerically degenerate (`(2a/(1+a))ⁿ` underflows
/// against the O(1) entries it is added to).
pub const DEFAULT_N_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub a: f64,
    pub alpha: f64,
    pub n: usize,
}

impl Scenario {
    pub fn new(a: f64, alpha: f64, n: usize) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Domain(format!("a must lie in (0, 1), got {a}")));
        }
        SpaceParams::new(alpha)?;
        if n > DEFAULT_N_CAP {
            return Err(Error::Domain(format!(
                "iterate index {n} exceeds the cap {DEFAULT_N_CAP}"
            )));
        }
        Ok(Self { a, alpha, n })
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.a, self.alpha, n)
    }

    pub fn space(&self) -> SpaceParams {
        SpaceParams::new(self.alpha).expect("validated")
    }

    fn exponent(&self) -> f64 {
        self.alpha + 2.0
    }

    /// `(2a/(1+a))ⁿ`.
    pub fn contraction_power(&self) -> f64 {
        (2.0 * self.a / (1.0 + self.a)).powi(self.n as i32)
    }

    /// `((1+a)/2)ⁿ`.
    pub fn dual_power(&self) -> f64 {
        ((1.0 + self.a) / 2.0).powi(self.n as i32)
    }

    /// Below this the iterate's matrix entries lose the information carried by
    /// the geometric factor.
    pub fn is_ill_conditioned(&self) -> bool {
        self.contraction_power() < 1e-12
    }

    /// Semigroup parameter of `(T̃⁽ⁿ⁾)* T̃⁽ⁿ⁾ = a^{−(α+2)} A_s`,
    /// `s = (1−a)(1+a)ⁿ/(2ⁿaⁿ⁺¹)`.
    pub fn gram_parameter(&self) -> f64 {
        (1.0 - self.a) / (self.a * self.contraction_power())
    }

    /// Same for the iterates of `C_φ*`: `t = (1−a)(1+a)ⁿ/2ⁿ`.
    pub fn dual_gram_parameter(&self) -> f64 {
        (1.0 - self.a) * self.dual_power()
    }

    pub fn gram_scalar(&self) -> f64 {
        self.a.powf(-self.exponent())
    }

    fn element(&self, lambda: f64, m: Mat2) -> WeightedLFT {
        WeightedLFT::new(self.space(), Complex64::new(lambda, 0.0), m)
            .expect("closed-form elements are bounded operator symbols")
    }
}

/// `C_φ` with `φ(z) = az + (1−a)`.
pub fn c_phi(sc: &Scenario) -> WeightedLFT {
    sc.element(1.0, Mat2::real(sc.a, 1.0 - sc.a, 0.0, 1.0))
}

/// `C_{σ_s}` with `σ_s(z) = e^{−s}z + 1 − e^{−s}`.
pub fn c_sigma_s(space: SpaceParams, s: f64) -> Result<WeightedLFT> {
    let a = (-s).exp();
    WeightedLFT::new(
        space,
        Complex64::new(1.0, 0.0),
        Mat2::real(a, 1.0 - a, 0.0, 1.0),
    )
}

/// `|C_φ|` and the unitary factor `U` (multiplier-then-composition form).
#[derive(Debug, Clone, Copy)]
pub struct PolarParts {
    pub modulus: WeightedLFT,
    pub unitary: WeightedLFT,
}

pub fn polar_parts(sc: &Scenario) -> PolarParts {
    let a = sc.a;
    let lam = (2.0 * a.sqrt()).powf(sc.exponent());
    PolarParts {
        modulus: sc.element(lam, Mat2::real(3.0 * a - 1.0, 1.0 - a, -(1.0 - a), 1.0 + a)),
        unitary: sc.element(lam, Mat2::real(1.0 + a, 1.0 - a, 1.0 - a, 1.0 + a)),
    }
}

/// `U = C_c T_d`, `c(z) = ((1+a)z+(1−a))/((1−a)z+(1+a))`,
/// `d(z) = (((a−1)z+(1+a))/(2√a))^{α+2}`, converted into family form.
pub fn unitary_composition_first(sc: &Scenario) -> Result<WeightedLFT> {
    let a = sc.a;
    WeightedLFT::composition_then_multiplier(
        sc.space(),
        Mat2::real(1.0 + a, 1.0 - a, 1.0 - a, 1.0 + a),
        Complex64::new((2.0 * a.sqrt()).powf(-sc.exponent()), 0.0),
        Complex64::new(a - 1.0, 0.0),
        Complex64::new(1.0 + a, 0.0),
    )
}

/// The unitary `C_{((e^s+1)z+e^s−1)/((e^s−1)z+e^s+1)} T_{(((1−e^s)z+e^s+1)/(2e^{s/2}))^{α+2}}`.
pub fn unitary_from_parameter(space: SpaceParams, s: f64) -> Result<WeightedLFT> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!(
            "unitary parameter must be positive, got {s}"
        )));
    }
    let e = s.exp();
    WeightedLFT::composition_then_multiplier(
        space,
        Mat2::real(e + 1.0, e - 1.0, e - 1.0, e + 1.0),
        Complex64::new((2.0 * (s / 2.0).exp()).powf(-space.kernel_exponent()), 0.0),
        Complex64::new(1.0 - e, 0.0),
        Complex64::new(e + 1.0, 0.0),
    )
}

/// n-th Aluthge iterate of `C_φ`, `T_f C_ψ`.
pub fn iterate_symbols(sc: &Scenario) -> WeightedLFT {
    let (a, t) = (sc.a, sc.contraction_power());
    sc.element(
        (2.0 * t).powf(sc.exponent()),
        Mat2::real(
            -(1.0 - a) + (1.0 + a) * t,
            (1.0 - a) * (1.0 + t),
            -(1.0 - a) * (1.0 - t),
            (1.0 - a) + (1.0 + a) * t,
        ),
    )
}

/// `T_F C_Ψ` whose adjoint is the n-th iterate of `C_φ`.
pub fn iterate_adjoint_form(sc: &Scenario) -> WeightedLFT {
    let (a, t) = (sc.a, sc.contraction_power());
    sc.element(
        (2.0 * t).powf(sc.exponent()),
        Mat2::real(
            -(1.0 - a) + (1.0 + a) * t,
            (1.0 - a) * (1.0 - t),
            -(1.0 - a) * (1.0 + t),
            (1.0 - a) + (1.0 + a) * t,
        ),
    )
}

/// n-th Aluthge iterate of `C_φ*`, `T_g C_θ`.
pub fn adjoint_iterate_symbols(sc: &Scenario) -> WeightedLFT {
    let (a, v) = (sc.a, sc.dual_power());
    sc.element(
        2f64.powf(sc.exponent()),
        Mat2::real(
            (1.0 + a) - (1.0 - a) * v,
            (1.0 - a) * (v - 1.0),
            -(1.0 - a) * (v + 1.0),
            (1.0 + a) + (1.0 - a) * v,
        ),
    )
}

/// `T_G C_Θ` whose adjoint is the n-th iterate of `C_φ*`.
pub fn adjoint_iterate_adjoint_form(sc: &Scenario) -> WeightedLFT {
    let (a, v) = (sc.a, sc.dual_power());
    sc.element(
        2f64.powf(sc.exponent()),
        Mat2::real(
            (1.0 + a) - (1.0 - a) * v,
            (1.0 - a) * (v + 1.0),
            -(1.0 - a) * (v - 1.0),
            (1.0 + a) + (1.0 - a) * v,
        ),
    )
}

/// Unitary polar factor shared by every iterate of `C_φ*`.
pub fn dual_unitary(sc: &Scenario) -> WeightedLFT {
    let a = sc.a;
    sc.element(
        (2.0 * a.sqrt()).powf(sc.exponent()),
        Mat2::real(1.0 + a, -(1.0 - a), -(1.0 - a), 1.0 + a),
    )
}

/// Strong-operator limit of `a·(C_φ*)~⁽ⁿ⁾`: `a^{−α/2}` times [`dual_unitary`].
pub fn sot_limit_element(sc: &Scenario) -> WeightedLFT {
    dual_unitary(sc).scale(Complex64::new(sot_limit_scale(sc), 0.0))
}

pub fn sot_limit_scale(sc: &Scenario) -> f64 {
    sc.a.powf(-sc.alpha / 2.0)
}

/// `‖T̃⁽ⁿ⁾‖ = a^{−(α+2)/2}` for every n.
pub fn norm_value(sc: &Scenario) -> f64 {
    sc.a.powf(-sc.exponent() / 2.0)
}

/// `‖C̃_σ⁽ⁿ⁾‖ = sup{1, a^{−α/2}}` on the weighted Hardy space.
pub fn sigma_norm_value(sc: &Scenario) -> f64 {
    sc.a.powf(-sc.alpha / 2.0).max(1.0)
}

/// `⟨T̃⁽ⁿ⁾K_0, K_0⟩ = f(0)` written out directly.
pub fn iterate_f0(sc: &Scenario) -> f64 {
    let (a, t) = (sc.a, sc.contraction_power());
    (2.0 * t / ((1.0 - a) + (1.0 + a) * t)).powf(sc.exponent())
}

/// `⟨(C_φ*)~⁽ⁿ⁾K_0, K_0⟩ = g(0)` written out directly.
pub fn adjoint_iterate_g0(sc: &Scenario) -> f64 {
    let (a, v) = (sc.a, sc.dual_power());
    (2.0 / ((1.0 + a) + (1.0 - a) * v)).powf(sc.exponent())
}

/// Upper bound on `‖T̃⁽ⁿ⁾K_ω‖²`:
/// `(−a|ω|² + a + (1−a)(|ω|−1)²/tⁿ)^{−(α+2)}` with `t = 2a/(1+a)`.
pub fn sot_bound_sq(sc: &Scenario, omega: Complex64) -> f64 {
    let (a, r) = (sc.a, omega.norm());
    let tn = sc.contraction_power();
    (-a * r * r + a + (1.0 - a) * (r - 1.0).powi(2) / tn).powf(-sc.exponent())
}

/// `‖T̃⁽ⁿ⁾K_ω‖²` as the explicit rational expression in `tⁿ`, `|ω|` and `Re ω`.
pub fn sot_norm_sq_expanded(sc: &Scenario, omega: Complex64) -> f64 {
    let (a, tn) = (sc.a, sc.contraction_power());
    let den =
        (1.0 - a - a * tn) * omega.norm_sqr() + (a * tn + 1.0 - a) - 2.0 * (1.0 - a) * omega.re;
    (tn / den).powf(sc.exponent())
}
