//! Closed-form energies built on the two-propagator kernel `F`.
//!
//! Every pair or three-body term is one evaluation of
//!
//! ```text
//! F(x, y; α, β) = [A tr(αβ) − B(x,y) ŷ·βα·ŷ − B(y,x) x̂·αβ·x̂ + C (x̂·α·ŷ)(ŷ·β·x̂)]
//!                 / (4π x³ y³ (x + y))
//! ```
//!
//! with the assignments
//!
//! | term    | x        | y        | α   | β   | sign |
//! |---------|----------|----------|-----|-----|------|
//! | `E₁₂`   | `r₁₂`    | `r₂₁`    | α₁  | α₂  | −    |
//! | `E₁₂₃`  | `r₁₂`    | `r₂₁̄`    | α₂  | β₁  | +    |
//! | `E₂₁₃`  | `r₂₁`    | `r₁₂̄`    | α₁  | β₂  | +    |
//! | `E₁₃₂₃` | `r₂₁̄`    | `r₁₂̄`    | β₁  | β₂  | −    |
//!
//! where `β = diag(1,1,−1)·α`.

use core::f64::consts::PI;

use crate::geometry::{derive_geometry, reflect_tensor, PolarizabilityTensor, SystemConfig};
use crate::linalg::{Matrix3, Vector3};
use crate::{Error, Result};

/// The rational coefficients `A(x,y)`, `B(x,y)`, `B(y,x)` and `C(x,y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCoefficients {
    pub a: f64,
    pub b_xy: f64,
    pub b_yx: f64,
    pub c: f64,
}

/// Integer numerators of `A`, `B(x,y)` and `C` over `(x+y)⁴`, listed by
/// monomial `x⁴, x³y, x²y², xy³, y⁴`.
pub const A_NUMERATOR: [i64; 5] = [8, 40, 112, 40, 8];
pub const B_NUMERATOR: [i64; 5] = [24, 120, 208, 80, 16];
pub const C_NUMERATOR: [i64; 5] = [48, 240, 432, 240, 48];

fn b_poly(x: f64, y: f64) -> f64 {
    let (x2, y2) = (x * x, y * y);
    3.0 * x2 * x2 + 15.0 * x2 * x * y + 26.0 * x2 * y2 + 10.0 * x * y2 * y + 2.0 * y2 * y2
}

pub fn coefficients(x: f64, y: f64) -> Result<KernelCoefficients> {
    for (name, v) in [("x", x), ("y", y)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::NonPositiveLength { name, value: v });
        }
    }
    // Symmetric pieces are formed so that swapping x and y is bitwise exact.
    let (x2, y2) = (x * x, y * y);
    let xy = x * y;
    let s = x + y;
    let s4 = (s * s) * (s * s);
    let sym = |mid: f64| (x2 * x2 + y2 * y2) + 5.0 * xy * (x2 + y2) + mid * (xy * xy);
    Ok(KernelCoefficients {
        a: 8.0 * sym(14.0) / s4,
        b_xy: 8.0 * b_poly(x, y) / s4,
        b_yx: 8.0 * b_poly(y, x) / s4,
        c: 48.0 * sym(9.0) / s4,
    })
}

/// The kernel `F(x, y; α, β)`. The tensors need not be symmetric, and the
/// ordering of the products matters when they do not commute.
pub fn f_kernel(xvec: Vector3, yvec: Vector3, alpha: &Matrix3, beta: &Matrix3) -> Result<f64> {
    let (x, xh) = xvec.norm_and_unit()?;
    let (y, yh) = yvec.norm_and_unit()?;
    let k = coefficients(x, y)?;
    let ab = *alpha * *beta;
    let ba = *beta * *alpha;
    let bracket = k.a * alpha.trace_product(beta)
        - (k.b_xy * ba.sandwich(&yh, &yh) + k.b_yx * ab.sandwich(&xh, &xh))
        + k.c * (alpha.sandwich(&xh, &yh) * beta.sandwich(&yh, &xh));
    let xy = x * y;
    Ok(bracket / (4.0 * PI * (xy * xy * xy) * (x + y)))
}

/// Retarded atom-atom energy in the direct tensor form
/// `−[13 tr(α₁α₂) − 56 r̂·α₁α₂·r̂ + 63 (r̂·α₁·r̂)(r̂·α₂·r̂)] / (8πr⁷)`.
///
/// Plate-independent; used as a cross-check of the kernel route.
pub fn e12_craig_power(cfg: &SystemConfig) -> Result<f64> {
    let g = derive_geometry(cfg)?;
    let (r, rh) = g.r12.norm_and_unit()?;
    let a1 = cfg.atom1.alpha.matrix();
    let a2 = cfg.atom2.alpha.matrix();
    let num = 13.0 * a1.trace_product(a2) - 56.0 * (*a1 * *a2).sandwich(&rh, &rh)
        + 63.0 * a1.sandwich(&rh, &rh) * a2.sandwich(&rh, &rh);
    Ok(-num / (8.0 * PI * libm::pow(r, 7.0)))
}

/// Atom-wall energy `−tr α / (8π Z⁴)`.
pub fn e_cp(alpha: &PolarizabilityTensor, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::NonPositiveLength { name: "Z", value: z });
    }
    let z2 = z * z;
    Ok(-alpha.trace() / (8.0 * PI * z2 * z2))
}

/// Atom-atom energy through the kernel, `E₁₂ = −F(r₁₂, r₂₁; α₁, α₂)`.
pub fn e12(cfg: &SystemConfig) -> Result<f64> {
    let g = derive_geometry(cfg)?;
    Ok(-f_kernel(g.r12, g.r21, cfg.atom1.alpha.matrix(), cfg.atom2.alpha.matrix())?)
}

/// `(E₁₂₃, E₂₁₃, E₁₃₂₃)`.
pub fn three_body_terms(cfg: &SystemConfig) -> Result<(f64, f64, f64)> {
    let g = derive_geometry(cfg)?;
    let a1 = cfg.atom1.alpha.matrix();
    let a2 = cfg.atom2.alpha.matrix();
    let b1 = reflect_tensor(&cfg.atom1.alpha);
    let b2 = reflect_tensor(&cfg.atom2.alpha);
    let e123 = f_kernel(g.r12, g.r2_1bar, a2, b1.matrix())?;
    let e213 = f_kernel(g.r21, g.r1_2bar, a1, b2.matrix())?;
    let e1323 = -f_kernel(g.r2_1bar, g.r1_2bar, b1.matrix(), b2.matrix())?;
    Ok((e123, e213, e1323))
}

/// All energy contributions of a configuration, in units of `L⁻¹`.
///
/// The atom-wall energies are `None` for an atom touching the plate, where
/// they diverge; the pair and three-body terms remain finite there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub e12: f64,
    pub e123: f64,
    pub e213: f64,
    pub e1323: f64,
    /// `E₁₂₃ + E₂₁₃ + E₁₃₂₃`.
    pub delta_e3: f64,
    pub e_cp1: Option<f64>,
    pub e_cp2: Option<f64>,
}

impl EnergyBreakdown {
    /// Atom-atom energy including the plate-induced three-body correction.
    pub fn pair_total(&self) -> f64 {
        self.e12 + self.delta_e3
    }

    /// Everything, including both atom-wall energies; `None` at contact.
    pub fn total(&self) -> Option<f64> {
        Some(self.pair_total() + self.e_cp1? + self.e_cp2?)
    }

    /// `ΔE₃ / E₁₂`.
    pub fn g(&self) -> f64 {
        self.delta_e3 / self.e12
    }
}

pub fn energy_breakdown(cfg: &SystemConfig) -> Result<EnergyBreakdown> {
    let e12 = e12(cfg)?;
    let (e123, e213, e1323) = three_body_terms(cfg)?;
    let wall = |atom: &crate::AtomSpec| match atom.height() {
        z if z > 0.0 => e_cp(&atom.alpha, z).map(Some),
        _ => Ok(None),
    };
    Ok(EnergyBreakdown {
        e12,
        e123,
        e213,
        e1323,
        delta_e3: e123 + e213 + e1323,
        e_cp1: wall(&cfg.atom1)?,
        e_cp2: wall(&cfg.atom2)?,
    })
}
