//! Atom positions, mirror images and the derived distances used by every
//! energy formula.
//!
//! The plate is the plane `z = 0` with normal `ẑ`. An atom at `r` has its
//! image at `r̄ = (x, y, −z)`. Relative vectors follow the convention
//! `r_ab = r_a − r_b`, with a bar marking an image point.

use crate::linalg::{Matrix3, Vector3};
use crate::{Error, Result};

/// Relative tolerance for the symmetry check on polarizabilities.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Relative tolerance below which `ΔZ` counts as zero and `γ` is reported.
pub const EQUAL_HEIGHT_TOL: f64 = 1e-12;

/// Mirror image through the plate: `p − 2ẑ(ẑ·p)`.
pub fn image_point(p: Vector3) -> Vector3 {
    Vector3::new(p.x, p.y, -p.z)
}

/// Static electric polarizability, a symmetric 3×3 tensor in units of `L³`.
///
/// Positive-semidefiniteness is not enforced; see
/// [`PolarizabilityTensor::is_positive_semidefinite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizabilityTensor(Matrix3);

impl PolarizabilityTensor {
    pub fn new(m: Matrix3) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("polarizability tensor"));
        }
        let dev = (m - m.transpose()).max_abs();
        if dev > SYMMETRY_TOL * m.max_abs() {
            return Err(Error::Asymmetric { max_deviation: dev });
        }
        Ok(PolarizabilityTensor(m))
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self> {
        Self::new(Matrix3(rows))
    }

    pub fn isotropic(alpha: f64) -> Self {
        PolarizabilityTensor(Matrix3::diag(alpha, alpha, alpha))
    }

    /// `diag(α⊥, α⊥, α_z)`: uniaxial about the plate normal.
    pub fn uniaxial(alpha_perp: f64, alpha_z: f64) -> Self {
        PolarizabilityTensor(Matrix3::diag(alpha_perp, alpha_perp, alpha_z))
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn scale(&self, s: f64) -> Self {
        PolarizabilityTensor(self.0.scale(s))
    }

    /// Sylvester-style check via the characteristic polynomial coefficients:
    /// a symmetric matrix is PSD iff trace, the sum of principal 2×2 minors
    /// and the determinant are all nonnegative.
    pub fn is_positive_semidefinite(&self) -> bool {
        let m = &self.0 .0;
        let tol = -1e-14 * self.0.max_abs().max(f64::MIN_POSITIVE);
        let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2]
            - m[0][2] * m[2][0]
            + m[1][1] * m[2][2]
            - m[1][2] * m[2][1];
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        let s = self.0.max_abs();
        self.trace() >= tol && minors >= tol * s && det >= tol * s * s
    }
}

/// `β = diag(1, 1, −1)·α`, the polarizability seen through one mirror
/// reflection. Not symmetric when α has `xz` or `yz` entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectedTensor(Matrix3);

impl ReflectedTensor {
    pub fn matrix(&self) -> &Matrix3 {
        &self.0
    }

    /// Undoes the reflection; the mirror is an involution.
    pub fn unreflect(&self) -> PolarizabilityTensor {
        PolarizabilityTensor(Matrix3::MIRROR * self.0)
    }
}

/// Negates the `z` row of α.
pub fn reflect_tensor(alpha: &PolarizabilityTensor) -> ReflectedTensor {
    ReflectedTensor(Matrix3::MIRROR * alpha.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpec {
    pub position: Vector3,
    pub alpha: PolarizabilityTensor,
}

impl AtomSpec {
    pub fn new(position: Vector3, alpha: PolarizabilityTensor) -> Self {
        AtomSpec { position, alpha }
    }

    pub fn height(&self) -> f64 {
        self.position.z
    }
}

/// Two atoms above the plate.
///
/// Heights of exactly zero describe an atom touching the plate. The
/// three-body terms stay finite there (`Γ = 1`) but the atom-wall energy
/// diverges, so such configurations are rejected unless `allow_contact` is
/// set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    pub atom1: AtomSpec,
    pub atom2: AtomSpec,
    pub allow_contact: bool,
}

impl SystemConfig {
    /// A physical configuration: both atoms strictly above the plate.
    pub fn new(atom1: AtomSpec, atom2: AtomSpec) -> Result<Self> {
        let cfg = SystemConfig { atom1, atom2, allow_contact: false };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Like [`SystemConfig::new`] but admits atoms sitting on the plate.
    pub fn with_contact(atom1: AtomSpec, atom2: AtomSpec) -> Result<Self> {
        let cfg = SystemConfig { atom1, atom2, allow_contact: true };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (idx, atom) in [(1u8, &self.atom1), (2u8, &self.atom2)] {
            if !atom.position.is_finite() {
                return Err(Error::NonFinite("atom position"));
            }
            let z = atom.position.z;
            if z < 0.0 {
                return Err(Error::NegativeHeight { atom: idx, z });
            }
            if z == 0.0 && !self.allow_contact {
                return Err(Error::ContactNotAllowed { atom: idx });
            }
        }
        if self.atom1.position == self.atom2.position {
            return Err(Error::CoincidentAtoms);
        }
        Ok(())
    }

    /// The same configuration with the atom labels exchanged.
    pub fn swapped(&self) -> SystemConfig {
        SystemConfig { atom1: self.atom2, atom2: self.atom1, allow_contact: self.allow_contact }
    }

    /// True when either atom touches the plate.
    pub fn has_contact(&self) -> bool {
        self.atom1.position.z == 0.0 || self.atom2.position.z == 0.0
    }
}

/// Distances, ratios and relative vectors of a validated configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryDerived {
    pub z1: f64,
    pub z2: f64,
    /// Horizontal separation of the atoms.
    pub a: f64,
    /// `Z₁ − Z₂`.
    pub delta_z: f64,
    /// Atom-atom distance `|r₁₂|`.
    pub r: f64,
    /// Atom-image distance `|r₂₁̄|`.
    pub big_r: f64,
    /// `Γ = R/r ≥ 1`.
    pub big_gamma: f64,
    /// `γ = √(1 + 4Z²/a²)`, present only for equal heights.
    pub gamma: Option<f64>,
    pub r12: Vector3,
    pub r21: Vector3,
    /// `r₂ − r̄₁`.
    pub r2_1bar: Vector3,
    /// `r₁ − r̄₂`.
    pub r1_2bar: Vector3,
    /// `r̄₂ − r̄₁`.
    pub r2bar_1bar: Vector3,
    /// `r̄₁ − r₂`.
    pub r1bar_2: Vector3,
}

pub fn derive_geometry(cfg: &SystemConfig) -> Result<GeometryDerived> {
    cfg.validate()?;
    let p1 = cfg.atom1.position;
    let p2 = cfg.atom2.position;
    let i1 = image_point(p1);
    let i2 = image_point(p2);
    let (z1, z2) = (p1.z, p2.z);

    let r12 = p1 - p2;
    let r2_1bar = p2 - i1;
    let a = libm::hypot(r12.x, r12.y);
    let r = r12.norm();
    let big_r = r2_1bar.norm();
    let delta_z = z1 - z2;

    let scale = z1.max(z2).max(a);
    let gamma = (delta_z.abs() <= EQUAL_HEIGHT_TOL * scale).then(|| {
        let z = 0.5 * (z1 + z2);
        libm::sqrt(1.0 + 4.0 * z * z / (a * a))
    });

    Ok(GeometryDerived {
        z1,
        z2,
        a,
        delta_z,
        r,
        big_r,
        big_gamma: big_r / r,
        gamma,
        r12,
        r21: p2 - p1,
        r2_1bar,
        r1_2bar: p1 - i2,
        r2bar_1bar: i2 - i1,
        r1bar_2: i1 - p2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_atom(p: [f64; 3]) -> AtomSpec {
        AtomSpec::new(Vector3::from_array(p), PolarizabilityTensor::isotropic(1.0))
    }

    #[test]
    fn image_point_examples() {
        assert_eq!(image_point(Vector3::new(0.0, 0.0, 1.0)), Vector3::new(0.0, 0.0, -1.0));
        assert_eq!(image_point(Vector3::new(1.0, 0.0, 0.0)), Vector3::new(1.0, 0.0, 0.0));
        assert_eq!(image_point(Vector3::new(0.3, -0.4, 2.5)), Vector3::new(0.3, -0.4, -2.5));
    }

    #[test]
    fn reflect_tensor_examples() {
        let b = reflect_tensor(&PolarizabilityTensor::isotropic(1.0));
        assert_eq!(*b.matrix(), Matrix3::diag(1.0, 1.0, -1.0));

        let b = reflect_tensor(&PolarizabilityTensor::uniaxial(2.0, 5.0));
        assert_eq!(*b.matrix(), Matrix3::diag(2.0, 2.0, -5.0));

        let c = 0.7;
        let alpha =
            PolarizabilityTensor::from_rows([[1.0, 0.0, c], [0.0, 1.0, 0.0], [c, 0.0, 2.0]]).unwrap();
        let b = reflect_tensor(&alpha);
        assert_eq!(b.matrix()[(2, 0)], -c);
        assert_eq!(b.matrix()[(0, 2)], c);
        assert_eq!(b.matrix()[(2, 2)], -2.0);
    }

    #[test]
    fn asymmetric_tensor_rejected() {
        let err =
            PolarizabilityTensor::from_rows([[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
                .unwrap_err();
        assert!(matches!(err, Error::Asymmetric { .. }));
        // Rounding-level asymmetry is accepted.
        let eps = 1e-14;
        assert!(PolarizabilityTensor::from_rows([
            [1.0, 0.3 + eps, 0.0],
            [0.3, 1.0, 0.0],
            [0.0, 0.0, 1.0]
        ])
        .is_ok());
        assert!(PolarizabilityTensor::from_rows([[f64::NAN, 0.0, 0.0], [0.0; 3], [0.0; 3]]).is_err());
    }

    #[test]
    fn psd_check() {
        assert!(PolarizabilityTensor::isotropic(1.0).is_positive_semidefinite());
        assert!(PolarizabilityTensor::uniaxial(0.0, 1.0).is_positive_semidefinite());
        assert!(!PolarizabilityTensor::uniaxial(1.0, -1.0).is_positive_semidefinite());
    }

    #[test]
    fn equidistant_unit_geometry() {
        let cfg = SystemConfig::new(unit_atom([0.0, 0.0, 1.0]), unit_atom([1.0, 0.0, 1.0])).unwrap();
        let g = derive_geometry(&cfg).unwrap();
        let s5 = 5f64.sqrt();
        assert_eq!(g.a, 1.0);
        assert_eq!(g.delta_z, 0.0);
        assert_eq!(g.r, 1.0);
        assert!((g.big_r - s5).abs() < 1e-15);
        assert!((g.big_gamma - s5).abs() < 1e-15);
        assert!((g.gamma.unwrap() - s5).abs() < 1e-15);
    }

    #[test]
    fn contact_geometry_has_unit_ratio() {
        let a1 = unit_atom([0.0, 0.0, 1.0]);
        let a2 = unit_atom([1.0, 0.0, 0.0]);
        assert_eq!(SystemConfig::new(a1, a2).unwrap_err(), Error::ContactNotAllowed { atom: 2 });
        let g = derive_geometry(&SystemConfig::with_contact(a1, a2).unwrap()).unwrap();
        let s2 = 2f64.sqrt();
        assert!((g.r - s2).abs() < 1e-15);
        assert!((g.big_r - s2).abs() < 1e-15);
        assert_eq!(g.big_gamma, 1.0);
        assert!(g.gamma.is_none());
    }

    #[test]
    fn invalid_configs() {
        let a1 = unit_atom([0.0, 0.0, 1.0]);
        assert_eq!(SystemConfig::new(a1, a1).unwrap_err(), Error::CoincidentAtoms);
        assert_eq!(
            SystemConfig::new(a1, unit_atom([1.0, 0.0, -0.5])).unwrap_err(),
            Error::NegativeHeight { atom: 2, z: -0.5 }
        );
    }

    #[test]
    fn equal_r_family_at_three_quarters() {
        // a/r = 0.75 ⇒ ΔZ/a = √(1 − 0.75²)/0.75.
        let r = 1.0;
        let a = 0.75 * r;
        let dz = libm::sqrt(r * r - a * a);
        let cfg =
            SystemConfig::new(unit_atom([0.0, 0.0, 1.0 + dz]), unit_atom([a, 0.0, 1.0])).unwrap();
        let g = derive_geometry(&cfg).unwrap();
        assert!((g.r - r).abs() < 1e-14);
        let ratio = g.delta_z / g.a;
        assert!((ratio - 0.8819).abs() < 5e-5, "ΔZ/a = {ratio}");
        assert!((ratio - 0.88).abs() < 0.005);
    }

    fn position(zmin: f64) -> impl Strategy<Value = Vector3> {
        (-5.0..5.0f64, -5.0..5.0f64, zmin..5.0f64).prop_map(|(x, y, z)| Vector3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn image_is_involution(p in position(-5.0)) {
            prop_assert_eq!(image_point(image_point(p)), p);
        }

        #[test]
        fn reflection_is_involution(d in proptest::array::uniform3(-1.0..1.0f64),
                                    o in proptest::array::uniform3(-1.0..1.0f64)) {
            let alpha = PolarizabilityTensor::from_rows([
                [d[0], o[0], o[1]],
                [o[0], d[1], o[2]],
                [o[1], o[2], d[2]],
            ]).unwrap();
            prop_assert_eq!(reflect_tensor(&alpha).unreflect(), alpha);
        }

        #[test]
        fn closure_identities(p1 in position(0.01), p2 in position(0.01)) {
            let cfg = SystemConfig::new(unit_atom(p1.to_array()), unit_atom(p2.to_array()));
            prop_assume!(cfg.is_ok());
            let g = derive_geometry(&cfg.unwrap()).unwrap();
            let loop_sum = g.r21 + g.r1_2bar + g.r2bar_1bar + g.r1bar_2;
            prop_assert!(loop_sum.norm() <= 1e-12 * g.r);
            let orth = (g.r21 + g.r1_2bar).dot(&(g.r1_2bar + g.r1bar_2));
            prop_assert!(orth.abs() <= 1e-12 * g.r * g.r);
            prop_assert!(g.big_gamma >= 1.0);
            prop_assert!((g.r * g.r - (g.a * g.a + g.delta_z * g.delta_z)).abs() <= 1e-12 * g.r * g.r);
            let sum = g.z1 + g.z2;
            prop_assert!((g.big_r * g.big_r - (g.a * g.a + sum * sum)).abs() <= 1e-12 * g.big_r * g.big_r);
        }

        #[test]
        fn unit_ratio_on_contact(x in -5.0..5.0f64, y in -5.0..5.0f64, z in 0.01..5.0f64, flip in any::<bool>()) {
            let (p1, p2) = if flip { ([0.0, 0.0, z], [x, y, 0.0]) } else { ([x, y, 0.0], [0.0, 0.0, z]) };
            let cfg = SystemConfig::with_contact(unit_atom(p1), unit_atom(p2)).unwrap();
            let g = derive_geometry(&cfg).unwrap();
            prop_assert!((g.big_gamma - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn gamma_matches_ratio_at_equal_heights(x in 0.05..5.0f64, y in -5.0..5.0f64, z in 0.01..5.0f64) {
            let cfg = SystemConfig::new(unit_atom([0.0, 0.0, z]), unit_atom([x, y, z])).unwrap();
            let g = derive_geometry(&cfg).unwrap();
            let gamma = g.gamma.unwrap();
            prop_assert!((gamma - g.big_gamma).abs() <= 1e-12 * gamma);
        }
    }
}
