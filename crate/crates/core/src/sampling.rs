//! Seeded random sampling for parameter sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::harmonics::unit_vector;

/// Identifier of the generator behind [`seeded_rng`], recorded in reports.
pub const RNG_ALGORITHM: &str = "ChaCha8";

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction on the unit sphere.
pub fn random_unit_vector(rng: &mut impl Rng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let psi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    unit_vector(z.acos(), psi)
}

/// Uniform direction kept at least `margin` (in `cosθ`) away from the poles.
pub fn random_unit_vector_off_poles(rng: &mut impl Rng, margin: f64) -> [f64; 3] {
    let bound = 1.0 - margin;
    let z: f64 = rng.random_range(-bound..=bound);
    let psi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    unit_vector(z.acos(), psi)
}
