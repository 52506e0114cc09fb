//! Inputs shared by the benchmarks.

use foldscope_core::constructions::build_subspace_addressing;
use foldscope_core::gf2::{random_vector, seeded_rng};
use foldscope_core::{Gf2Matrix, SubspaceAddressingInstance, SubspaceParams, TruthTable};

/// A dense table with pseudo-random ±1 values.
pub fn random_table(n: usize, seed: u64) -> TruthTable {
    TruthTable::from_fn(n, |x| {
        let h = (x as u64 ^ seed).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        if (h >> 63) == 0 { 1 } else { -1 }
    })
    .unwrap()
}

/// `rows` random vectors of length `cols`.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Gf2Matrix {
    let mut rng = seeded_rng(seed);
    Gf2Matrix::new(cols, (0..rows).map(|_| random_vector(&mut rng, cols)).collect()).unwrap()
}

/// A verified family instance for parameter `k`.
pub fn family_instance(k: usize, seed: u64) -> SubspaceAddressingInstance {
    let params = SubspaceParams::from_k(k).unwrap();
    build_subspace_addressing(params, seed, 100, foldscope_core::constructions::DEFAULT_MULTIPLICITY_THRESHOLD).unwrap()
}
