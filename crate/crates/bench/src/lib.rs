//! Shared inputs for the solver benchmarks.

use gtsp_core::gen::{random_euclidean, random_tour};
use gtsp_core::{GtspInstance, Tour};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded Euclidean instance with `n` points in `m` clusters.
pub fn euclidean(n: usize, m: usize, seed: u64) -> GtspInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_euclidean(&mut rng, n, m, 1000.0)
}

/// Seeded random tour of `instance`.
pub fn shuffled_tour(instance: &GtspInstance, seed: u64) -> Tour {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tour(&mut rng, instance)
}

/// Cluster order of a seeded random tour.
pub fn shuffled_order(instance: &GtspInstance, seed: u64) -> Vec<usize> {
    shuffled_tour(instance, seed).cluster_order(instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible() {
        let a = euclidean(50, 10, 1);
        assert_eq!(a.m(), 10);
        assert_eq!(shuffled_tour(&a, 2), shuffled_tour(&euclidean(50, 10, 1), 2));
        assert_eq!(shuffled_order(&a, 2).len(), 10);
    }
}
