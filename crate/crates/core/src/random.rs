//! Seeded random fields for tests, benchmarks and verification runs.
//!
//! The generator is ChaCha8 seeded from a `u64` through `SeedableRng::seed_from_u64`
//! (PCG32 key expansion), so a given seed yields the same fields on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{LatticeGrid, ScalarField, VectorField};

pub type FieldRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> FieldRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Site values drawn uniformly from `[-1, 1)`.
pub fn random_scalar_field<R: Rng + ?Sized>(grid: &LatticeGrid, rng: &mut R) -> ScalarField {
    let values = (0..grid.n_sites())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    ScalarField::new(*grid, values).expect("finite values of the right length")
}

pub fn random_vector_field<R: Rng + ?Sized>(grid: &LatticeGrid, rng: &mut R) -> VectorField {
    let c = std::array::from_fn(|_| random_scalar_field(grid, rng));
    VectorField::new(c).expect("components share the grid")
}

/// Vector of `len` entries drawn uniformly from `[-1, 1)`.
pub fn random_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}
