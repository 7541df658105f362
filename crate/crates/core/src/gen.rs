//! Random instances and tours for tests, benchmarks and property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::{cluster_tsp, GtspInstance, Weight, WeightKind};
use crate::tour::Tour;

/// Explicit instance with `m` clusters of 1 to `max_s` vertices each and
/// weights drawn uniformly from `0..=max_w`.
pub fn random_instance<R: Rng>(rng: &mut R, m: usize, max_s: usize, max_w: Weight, symmetric: bool) -> GtspInstance {
    let sizes: Vec<usize> = (0..m).map(|_| rng.random_range(1..=max_s.max(1))).collect();
    random_instance_exact_sizes(rng, &sizes, max_w, symmetric)
}

/// Explicit instance with the given cluster sizes. Vertex ids are shuffled
/// across clusters.
#[allow(clippy::needless_range_loop)]
pub fn random_instance_exact_sizes<R: Rng>(
    rng: &mut R,
    sizes: &[usize],
    max_w: Weight,
    symmetric: bool,
) -> GtspInstance {
    let n: usize = sizes.iter().sum();
    let mut matrix = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (symmetric && j < i) {
                continue;
            }
            let w = rng.random_range(0..=max_w);
            matrix[i][j] = w;
            if symmetric {
                matrix[j][i] = w;
            }
        }
    }
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut clusters = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        clusters.push(ids[next..next + s].to_vec());
        next += s;
    }
    GtspInstance::from_matrix(format!("{}rand{}", sizes.len(), n), &matrix, clusters)
        .expect("generated instance is valid")
}

/// `n` uniform points in a `side` x `side` square, EUC_2D, clustered into
/// `m` sets.
pub fn random_euclidean<R: Rng>(rng: &mut R, n: usize, m: usize, side: f64) -> GtspInstance {
    let coords: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.random_range(0.0..side).round(), rng.random_range(0.0..side).round()])
        .collect();
    let singletons = (0..n).map(|v| vec![v]).collect();
    let tsp =
        GtspInstance::from_coords(format!("rand{n}"), WeightKind::Euc2d, coords, singletons).expect("valid points");
    cluster_tsp(&tsp, m).expect("2 <= m <= n")
}

/// Uniform random cluster order with a uniform vertex from each cluster.
pub fn random_tour<R: Rng>(rng: &mut R, instance: &GtspInstance) -> Tour {
    let mut order: Vec<usize> = (0..instance.m()).collect();
    order.shuffle(rng);
    let vertices = order
        .into_iter()
        .map(|c| {
            let cl = instance.cluster(c);
            cl[rng.random_range(0..cl.len())]
        })
        .collect();
    Tour::new(instance, vertices).expect("one vertex per cluster")
}
