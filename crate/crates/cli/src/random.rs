//! Seeded random configurations for batch verification.

use std::f64::consts::TAU;

use casimir_polder::{AtomSpec, Matrix3, PolarizabilityTensor, SystemConfig, Vector3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const HEIGHT_RANGE: (f64, f64) = (0.2, 5.0);
pub const SEPARATION_RANGE: (f64, f64) = (0.2, 5.0);

/// Symmetric tensor `(M + Mᵀ)/2` with entries of `M` uniform in `[−1, 1]`.
pub fn random_tensor<R: Rng>(rng: &mut R) -> PolarizabilityTensor {
    let mut m = [[0.0; 3]; 3];
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v = rng.gen_range(-1.0..=1.0);
        }
    }
    let m = Matrix3(m);
    PolarizabilityTensor::new((m + m.transpose()).scale(0.5)).expect("symmetrized tensor")
}

/// Two atoms with independent heights in [`HEIGHT_RANGE`], horizontal
/// separation in [`SEPARATION_RANGE`] along a uniformly random direction, and
/// independent random tensors.
pub fn random_config<R: Rng>(rng: &mut R) -> SystemConfig {
    let z1 = rng.gen_range(HEIGHT_RANGE.0..=HEIGHT_RANGE.1);
    let z2 = rng.gen_range(HEIGHT_RANGE.0..=HEIGHT_RANGE.1);
    let a = rng.gen_range(SEPARATION_RANGE.0..=SEPARATION_RANGE.1);
    let phi = rng.gen_range(0.0..TAU);
    let x0 = rng.gen_range(-1.0..=1.0);
    let y0 = rng.gen_range(-1.0..=1.0);
    let t1 = random_tensor(rng);
    let t2 = random_tensor(rng);
    SystemConfig::new(
        AtomSpec::new(Vector3::new(x0, y0, z1), t1),
        AtomSpec::new(Vector3::new(x0 + a * phi.cos(), y0 + a * phi.sin(), z2), t2),
    )
    .expect("heights and separation are bounded away from zero")
}

/// `n` configurations drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_batch(n: usize, seed: u64) -> Vec<SystemConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_config(&mut rng)).collect()
}
