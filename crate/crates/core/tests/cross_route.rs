//! Reduced closed forms against the general kernel on the same geometry.

use casimir_polder::analytic::{energy_breakdown, three_body_terms};
use casimir_polder::special::{
    equidistant_aniso, g_iso, g_iso_parts, perp_unequal, unequal_heights, zonly_unequal,
};
use casimir_polder::{AtomSpec, PolarizabilityTensor, SystemConfig, Vector3};

fn rel(a: f64, b: f64) -> f64 {
    let d = a.abs().max(b.abs());
    if d == 0.0 {
        0.0
    } else {
        (a - b).abs() / d
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn equal_heights(a: f64, z: f64, a1: PolarizabilityTensor, a2: PolarizabilityTensor) -> SystemConfig {
    // Separation along an arbitrary horizontal direction.
    let (c, s) = (0.6, 0.8);
    SystemConfig::with_contact(
        AtomSpec::new(Vector3::new(0.3, -0.2, z), a1),
        AtomSpec::new(Vector3::new(0.3 + a * c, -0.2 + a * s, z), a2),
    )
    .unwrap()
}

fn unequal(a: f64, r: f64, big_gamma: f64, a1: PolarizabilityTensor, a2: PolarizabilityTensor) -> SystemConfig {
    let (z1, z2) = unequal_heights(a, r, big_gamma).unwrap();
    SystemConfig::with_contact(AtomSpec::new(Vector3::new(0.0, 0.0, z1), a1), AtomSpec::new(Vector3::new(0.0, a, z2), a2))
        .unwrap()
}

#[test]
fn uniaxial_equal_heights_match_kernel() {
    let cases = [(0.7, 1.3, 0.2, 2.1), (1.0, 0.0, 1.0, 0.0), (0.0, 1.0, 0.0, 1.0), (1.0, 1.0, 1.0, 1.0), (-0.4, 2.0, 1.5, 0.3)];
    let a = 1.7;
    for (p1, z1, p2, z2) in cases {
        let t1 = PolarizabilityTensor::uniaxial(p1, z1);
        let t2 = PolarizabilityTensor::uniaxial(p2, z2);
        for z in linspace(0.0, 3.0 * a, 50) {
            let (e123, e1323) = equidistant_aniso(p1, z1, p2, z2, a, z).unwrap();
            let (k123, k213, k1323) = three_body_terms(&equal_heights(a, z, t1, t2)).unwrap();
            assert!(rel(e123, k123) <= 1e-12, "E123 at Z={z}: {e123} vs {k123}");
            assert!(rel(e123, k213) <= 1e-12, "E213 at Z={z}: {e123} vs {k213}");
            assert!(rel(e1323, k1323) <= 1e-12, "E1323 at Z={z}: {e1323} vs {k1323}");
        }
    }
}

#[test]
fn isotropic_equal_heights_match_kernel() {
    let iso = PolarizabilityTensor::isotropic(1.0);
    let a = 0.9;
    for z in linspace(0.0, 4.0, 50) {
        let b = energy_breakdown(&equal_heights(a, z, iso, iso)).unwrap();
        let gamma = (1.0 + 4.0 * z * z / (a * a)).sqrt();
        let (three, four) = g_iso_parts(gamma).unwrap();
        assert!(rel((b.e123 + b.e213) / b.e12, three) <= 1e-12);
        assert!(rel(b.e1323 / b.e12, four) <= 1e-12);
        assert!(rel(b.g(), g_iso(gamma).unwrap()) <= 1e-12 || (b.g() - g_iso(gamma).unwrap()).abs() < 1e-14);
    }
}

#[test]
fn zonly_unequal_heights_match_kernel() {
    let (az1, az2) = (1.3, 0.7);
    let t1 = PolarizabilityTensor::uniaxial(0.0, az1);
    let t2 = PolarizabilityTensor::uniaxial(0.0, az2);
    for (a, r) in [(0.75, 1.0), (0.2, 2.0), (1.0, 1.0), (0.0, 1.5)] {
        for big_gamma in linspace(1.0, 6.0, 50) {
            let s = zonly_unequal(az1, az2, a, r, big_gamma).unwrap();
            let b = energy_breakdown(&unequal(a, r, big_gamma, t1, t2)).unwrap();
            assert!(rel(s.e12, b.e12) <= 1e-12, "E12 a={a} Γ={big_gamma}");
            assert!(rel(s.e123, b.e123) <= 1e-12, "E123 a={a} Γ={big_gamma}: {} vs {}", s.e123, b.e123);
            assert!(rel(s.e123, b.e213) <= 1e-12, "E213 a={a} Γ={big_gamma}");
            assert!(rel(s.e1323, b.e1323) <= 1e-12, "E1323 a={a} Γ={big_gamma}");
        }
    }
}

#[test]
fn perp_unequal_heights_match_kernel() {
    let (ap1, ap2) = (0.4, 2.2);
    let t1 = PolarizabilityTensor::uniaxial(ap1, 0.0);
    let t2 = PolarizabilityTensor::uniaxial(ap2, 0.0);
    for (a, r) in [(0.5, 1.0), (0.3, 2.0), (1.0, 1.0), (0.0, 1.5)] {
        for big_gamma in linspace(1.0, 6.0, 50) {
            let s = perp_unequal(ap1, ap2, a, r, big_gamma).unwrap();
            let b = energy_breakdown(&unequal(a, r, big_gamma, t1, t2)).unwrap();
            assert!(rel(s.e12, b.e12) <= 1e-12, "E12 a={a} Γ={big_gamma}");
            assert!(rel(s.e123, b.e123) <= 1e-12, "E123 a={a} Γ={big_gamma}: {} vs {}", s.e123, b.e123);
            assert!(rel(s.e123, b.e213) <= 1e-12, "E213 a={a} Γ={big_gamma}");
            assert!(rel(s.e1323, b.e1323) <= 1e-12, "E1323 a={a} Γ={big_gamma}");
        }
    }
}

#[test]
fn far_field_ratio_decays_as_gamma_to_minus_six() {
    // For γ ≫ 1 the isotropic ratio is dominated by the three-scattering
    // term, which falls off as γ⁻⁶.
    let slope = |f: &dyn Fn(f64) -> f64, g: f64| {
        let h = 1e-3;
        ((f(g * (1.0 + h))).abs().ln() - (f(g)).abs().ln()) / (1.0 + h).ln()
    };
    let iso = PolarizabilityTensor::isotropic(1.0);
    let kernel_g = |gamma: f64| {
        let z = 0.5 * (gamma * gamma - 1.0).sqrt();
        energy_breakdown(&equal_heights(1.0, z, iso, iso)).unwrap().g()
    };
    for gamma in [50.0, 200.0] {
        let s = slope(&kernel_g, gamma);
        assert!((s + 6.0).abs() < 0.1, "slope {s} at γ={gamma}");
    }
    let mut last = f64::INFINITY;
    for z in [2.0, 4.0, 8.0, 16.0, 32.0] {
        let b = energy_breakdown(&equal_heights(1.0, z, iso, iso)).unwrap();
        let m = b.e123.abs().max(b.e213.abs()).max(b.e1323.abs());
        assert!(m < last);
        last = m;
    }
}
