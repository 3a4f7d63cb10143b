//! Imaginary-frequency dyadic Green functions: the free propagator `Γ₀` and
//! the mirror part `Γ̄` of the perfect-conductor Green dyadic.
//!
//! The plate dyadic enters only through `Γ₃ − Γ₀ = −Γ̄`, with
//! `Γ̄(r, r') = Γ₀(r − r̄') · (𝟙 − 2ẑẑ)`.

use core::f64::consts::PI;

use crate::geometry::image_point;
use crate::linalg::{Matrix3, Vector3};
use crate::{Error, Result};

/// Imaginary frequency `ζ = −iω`, folded onto `ζ ≥ 0` (every integrand
/// depends on `|ζ|` only).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ImaginaryFrequency(f64);

impl ImaginaryFrequency {
    pub const STATIC: ImaginaryFrequency = ImaginaryFrequency(0.0);

    /// Accepts any finite ζ and folds it to `|ζ|`.
    pub fn new(zeta: f64) -> Result<Self> {
        if !zeta.is_finite() {
            return Err(Error::NonFinite("imaginary frequency"));
        }
        Ok(ImaginaryFrequency(zeta.abs()))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `u(x) = 1 + x + x²` and `v(x) = 3 + 3x + x²`.
pub fn propagator_polynomials(x: f64) -> (f64, f64) {
    let x2 = x * x;
    (1.0 + x + x2, 3.0 + 3.0 * x + x2)
}

/// `Γ₀(R, ζ) = −e^{−ζR}/(4πR³) [𝟙 u(ζR) − R̂R̂ v(ζR)]`.
pub fn gamma0(separation: Vector3, zeta: ImaginaryFrequency) -> Result<Matrix3> {
    let (len, dir) = separation.norm_and_unit()?;
    Ok(gamma0_polar(len, &dir, zeta.value()))
}

/// `Γ₀` from a precomputed length and unit direction.
pub(crate) fn gamma0_polar(len: f64, dir: &Vector3, zeta: f64) -> Matrix3 {
    let x = zeta * len;
    let (u, v) = propagator_polynomials(x);
    let pref = -libm::exp(-x) / (4.0 * PI * len * len * len);
    let mut m = dir.outer(dir).scale(-v);
    for i in 0..3 {
        m[(i, i)] += u;
    }
    m.scale(pref)
}

/// `Γ̄(r, r', ζ) = Γ₀(r − r̄', ζ) · (𝟙 − 2ẑẑ)`.
pub fn gamma_bar(r: Vector3, rp: Vector3, zeta: ImaginaryFrequency) -> Result<Matrix3> {
    Ok(gamma0(r - image_point(rp), zeta)? * Matrix3::MIRROR)
}
