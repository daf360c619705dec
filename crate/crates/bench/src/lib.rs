//! Seeded inputs shared by the benchmarks.

use morita_core::{ExactMatrix, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A uniformly random `rows × cols` matrix over `F_p`.
pub fn random_matrix(p: u32, rows: usize, cols: usize, seed: u64) -> ExactMatrix {
    let field = PrimeField::new(p).expect("prime modulus");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ExactMatrix::from_fn(field, rows, cols, |_, _| rng.gen_range(0..p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible() {
        assert_eq!(random_matrix(5, 4, 6, 1), random_matrix(5, 4, 6, 1));
        assert_ne!(random_matrix(5, 4, 6, 1), random_matrix(5, 4, 6, 2));
    }
}
