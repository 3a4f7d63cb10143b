//! Numerical multiple-scattering oracle.
//!
//! Each energy term is an integral over imaginary frequency of a 3×3 trace
//! of polarizabilities and propagators. With point-dipole potentials
//! `V_a = 4π α_a δ(r − r_a)` the operator traces collapse onto the atom
//! positions:
//!
//! ```text
//! E₁₂   ∝ tr[α₁ Γ₀(r₁,r₂) α₂ Γ₀(r₂,r₁)]
//! E₁₂₃  ∝ tr[α₁ Γ₀(r₁,r₂) α₂ (Γ₃−Γ₀)(r₂,r₁)]
//! E₁₃₂₃ ∝ tr[α₁ (Γ₃−Γ₀)(r₁,r₂) α₂ (Γ₃−Γ₀)(r₂,r₁)]
//! E_CP  ∝ tr[α_a (Γ₃−Γ₀)(r_a,r_a)]
//! ```
//!
//! and every term shares the normalization
//! `E = −½ ∫ dζ/2π Tr[…] = −(1/2π) (4π)ⁿ ∫₀^∞ dζ tr[…]` for `n` atoms, with
//! `Γ₃ − Γ₀ = −Γ̄`. The overall sign is the single constant
//! [`GLOBAL_SIGN`]; the plate insertions contribute their own `(−1)` each.
//!
//! Nothing here calls into [`crate::analytic`].

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::analytic::{energy_breakdown, EnergyBreakdown};
use crate::geometry::{derive_geometry, image_point, PolarizabilityTensor, SystemConfig};
use crate::linalg::{Matrix3, Vector3};
use crate::propagator::{gamma0_polar, ImaginaryFrequency};
use crate::quadrature::{integrate, Tolerance};
use crate::{Error, Result};

/// Sign of `−½ ∫ dζ/2π Tr[…]` after the rotation to imaginary frequency,
/// fixed once against the isotropic retarded pair energy `−23α₁α₂/(4πr⁷)`.
pub const GLOBAL_SIGN: f64 = -1.0;

/// Upper limit of the scaled frequency `t = ζ·L`, where `L` is the total
/// propagation length of the term. The integrands fall like `t⁴e^{−t}`, so
/// the neglected tail is below `10⁻¹⁹` of the integral.
pub const SCALED_CUTOFF: f64 = 60.0;

/// Default acceptance tolerance for [`verify`].
pub const DEFAULT_VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    E12,
    E123,
    E213,
    E1323,
    Ecp1,
    Ecp2,
}

impl Term {
    pub const ALL: [Term; 6] = [Term::E12, Term::E123, Term::E213, Term::E1323, Term::Ecp1, Term::Ecp2];

    pub fn name(self) -> &'static str {
        match self {
            Term::E12 => "E12",
            Term::E123 => "E123",
            Term::E213 => "E213",
            Term::E1323 => "E1323",
            Term::Ecp1 => "ECP1",
            Term::Ecp2 => "ECP2",
        }
    }

    /// The analytic value of this term, if finite.
    pub fn pick(self, b: &EnergyBreakdown) -> Option<f64> {
        match self {
            Term::E12 => Some(b.e12),
            Term::E123 => Some(b.e123),
            Term::E213 => Some(b.e213),
            Term::E1323 => Some(b.e1323),
            Term::Ecp1 => b.e_cp1,
            Term::Ecp2 => b.e_cp2,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    /// Absolute floor as a multiple of `∫|integrand|`.
    pub abs_floor: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings { rel_tol: 1e-10, abs_floor: 1e-16, max_subdivisions: 200 }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidSettings("rel_tol must be positive"));
        }
        if !(self.abs_floor >= 0.0) {
            return Err(Error::InvalidSettings("abs_floor must be nonnegative"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidSettings("max_subdivisions must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// One propagator factor: `Γ₀` along `dir` over `len`, optionally followed
/// by the mirror `𝟙 − 2ẑẑ` (making it `Γ̄`).
#[derive(Debug, Clone, Copy)]
struct Leg {
    len: f64,
    dir: Vector3,
    mirrored: bool,
}

impl Leg {
    fn new(separation: Vector3, mirrored: bool) -> Result<Self> {
        let (len, dir) = separation.norm_and_unit()?;
        Ok(Leg { len, dir, mirrored })
    }

    fn eval(&self, zeta: f64) -> Matrix3 {
        let g = gamma0_polar(self.len, &self.dir, zeta);
        if self.mirrored {
            g * Matrix3::MIRROR
        } else {
            g
        }
    }
}

/// A term's integrand `ζ ↦ prefactor · tr[α_a L₁ (α_b L₂)]`.
#[derive(Debug, Clone, Copy)]
struct TermIntegrand {
    prefactor: f64,
    alpha_a: Matrix3,
    leg1: Leg,
    second: Option<(Matrix3, Leg)>,
}

impl TermIntegrand {
    fn new(term: Term, cfg: &SystemConfig) -> Result<Self> {
        derive_geometry(cfg)?;
        let p1 = cfg.atom1.position;
        let p2 = cfg.atom2.position;
        let a1 = *cfg.atom1.alpha.matrix();
        let a2 = *cfg.atom2.alpha.matrix();
        // Γ(r, r') enters with separation r − r' (free) or r − r̄' (image).
        let free = |r: Vector3, rp: Vector3| Leg::new(r - rp, false);
        let image = |r: Vector3, rp: Vector3| Leg::new(r - image_point(rp), true);
        let pair = |leg1, a_b, leg2, insertions: i32| TermIntegrand {
            prefactor: GLOBAL_SIGN * sign_pow(insertions) * 16.0 * PI * PI / (2.0 * PI),
            alpha_a: if matches!(term, Term::E213) { a2 } else { a1 },
            leg1,
            second: Some((a_b, leg2)),
        };
        let wall = |alpha: &PolarizabilityTensor, p: Vector3| -> Result<TermIntegrand> {
            if p.z <= 0.0 {
                return Err(Error::NonPositiveLength { name: "Z", value: p.z });
            }
            Ok(TermIntegrand {
                prefactor: GLOBAL_SIGN * sign_pow(1) * 4.0 * PI / (2.0 * PI),
                alpha_a: *alpha.matrix(),
                leg1: image(p, p)?,
                second: None,
            })
        };
        Ok(match term {
            Term::E12 => pair(free(p1, p2)?, a2, free(p2, p1)?, 0),
            Term::E123 => pair(free(p1, p2)?, a2, image(p2, p1)?, 1),
            Term::E213 => pair(free(p2, p1)?, a1, image(p1, p2)?, 1),
            Term::E1323 => pair(image(p1, p2)?, a2, image(p2, p1)?, 2),
            Term::Ecp1 => wall(&cfg.atom1.alpha, p1)?,
            Term::Ecp2 => wall(&cfg.atom2.alpha, p2)?,
        })
    }

    /// Sum of propagation lengths; the integrand decays like `e^{−ζL}`.
    fn decay_length(&self) -> f64 {
        self.leg1.len + self.second.map_or(0.0, |(_, leg)| leg.len)
    }

    fn eval(&self, zeta: f64) -> f64 {
        let first = self.alpha_a * self.leg1.eval(zeta);
        let tr = match &self.second {
            Some((alpha_b, leg2)) => first.trace_product(&(*alpha_b * leg2.eval(zeta))),
            None => first.trace(),
        };
        self.prefactor * tr
    }
}

fn sign_pow(n: i32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Energy density per unit imaginary frequency on the half line `ζ ≥ 0`;
/// the term's energy is `∫₀^∞ integrand dζ`.
pub fn integrand(term: Term, cfg: &SystemConfig, zeta: ImaginaryFrequency) -> Result<f64> {
    Ok(TermIntegrand::new(term, cfg)?.eval(zeta.value()))
}

/// Adaptive quadrature of a term's frequency integral.
///
/// Fails with [`Error::QuadratureFailed`] carrying the partial estimate when
/// the subdivision budget is exhausted.
pub fn numeric_energy(term: Term, cfg: &SystemConfig, settings: &QuadratureSettings) -> Result<OracleResult> {
    settings.validate()?;
    let f = TermIntegrand::new(term, cfg)?;
    let scale = f.decay_length();
    let tol = Tolerance {
        rel_tol: settings.rel_tol,
        abs_floor: settings.abs_floor,
        max_subdivisions: settings.max_subdivisions,
    };
    let r = integrate(|t| f.eval(t / scale), 0.0, SCALED_CUTOFF, &tol);
    let result = OracleResult {
        value: r.value / scale,
        error_estimate: r.error / scale,
        evaluations: r.evaluations,
    };
    if r.converged {
        Ok(result)
    } else {
        Err(Error::QuadratureFailed { term, partial: result })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermCheck {
    pub term: Term,
    pub analytic: f64,
    pub numeric: OracleResult,
    /// `|analytic − numeric| / max(|analytic|, |numeric|)`, zero when both vanish.
    pub rel_diff: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub tol: f64,
    pub checks: Vec<TermCheck>,
    /// Terms with no finite value (atom-wall energy at contact).
    pub skipped: Vec<Term>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn worst(&self) -> Option<&TermCheck> {
        self.checks.iter().max_by(|a, b| a.rel_diff.total_cmp(&b.rel_diff))
    }
}

pub fn relative_difference(a: f64, b: f64) -> f64 {
    let denom = a.abs().max(b.abs());
    if denom == 0.0 {
        0.0
    } else {
        (a - b).abs() / denom
    }
}

/// Compares every term of `analytic` with the oracle.
pub fn verify_breakdown(
    analytic: &EnergyBreakdown,
    cfg: &SystemConfig,
    settings: &QuadratureSettings,
    tol: f64,
) -> Result<VerificationReport> {
    let mut checks = Vec::with_capacity(Term::ALL.len());
    let mut skipped = Vec::new();
    for term in Term::ALL {
        let Some(expected) = term.pick(analytic) else {
            skipped.push(term);
            continue;
        };
        let numeric = numeric_energy(term, cfg, settings)?;
        let rel_diff = relative_difference(expected, numeric.value);
        checks.push(TermCheck { term, analytic: expected, numeric, rel_diff, passed: rel_diff <= tol });
    }
    Ok(VerificationReport { tol, checks, skipped })
}

/// Evaluates all terms analytically and numerically and compares them.
pub fn verify(cfg: &SystemConfig, settings: &QuadratureSettings, tol: f64) -> Result<VerificationReport> {
    verify_breakdown(&energy_breakdown(cfg)?, cfg, settings, tol)
}
