//! Gain, path rearrangement and close-up functions of the LK variations.
//!
//! A path is `b = path[0] -> ... -> e = path[m-1]`. Breaking it at position
//! `i` removes `x -> y` with `x = path[i]`, `y = path[i+1]` and joins `x`
//! to `e`. `p = path[i-1]` and `r = path[m-2]` are the neighbours used by
//! Closest and Shortest.

use super::{GainOption, Variation};
use crate::exact::{rearranged_order, w_co_with_witness};
use crate::instance::{GtspInstance, Weight};
use crate::tour::{PathView, Tour};

/// `w_min(A, B)` for every pair of clusters.
#[derive(Debug, Clone)]
pub struct ClusterDistanceCache {
    m: usize,
    min: Vec<Weight>,
}

impl ClusterDistanceCache {
    pub fn new(instance: &GtspInstance) -> Self {
        let m = instance.m();
        let mut min = vec![Weight::MAX; m * m];
        for a in 0..m {
            for b in 0..m {
                min[a * m + b] = instance
                    .cluster(a)
                    .iter()
                    .flat_map(|&u| instance.cluster(b).iter().map(move |&v| (u, v)))
                    .map(|(u, v)| instance.w(u, v))
                    .min()
                    .expect("clusters are non-empty");
            }
        }
        ClusterDistanceCache { m, min }
    }

    #[inline]
    pub fn w_min(&self, a: usize, b: usize) -> Weight {
        self.min[a * self.m + b]
    }
}

/// `w(x -> y) - w(e -> x)`.
pub fn gain_basic(instance: &GtspInstance, path: &[usize], i: usize) -> Weight {
    let (x, y, e) = (path[i], path[i + 1], path[path.len() - 1]);
    instance.w(x, y) - instance.w(e, x)
}

/// `w(p -> x -> y) - w(p -> x' -> e)` where `x'` is the vertex of `x`'s
/// cluster closest to `e`. Returns the gain and `x'`.
pub fn gain_closest(instance: &GtspInstance, path: &[usize], i: usize) -> (Weight, usize) {
    let (p, x, y, e) = (path[i - 1], path[i], path[i + 1], path[path.len() - 1]);
    let x1 = instance
        .cluster(instance.cluster_of(x))
        .iter()
        .copied()
        .min_by_key(|&c| instance.w(c, e))
        .expect("clusters are non-empty");
    let gain = instance.w(p, x) + instance.w(x, y) - instance.w(p, x1) - instance.w(x1, e);
    (gain, x1)
}

/// `w(p -> x -> y) + w(r -> e) - w(p -> x' -> e' -> r)` with `x'`, `e'`
/// chosen jointly from the clusters of `x` and `e`. Returns the gain, `x'`
/// and `e'`.
pub fn gain_shortest(instance: &GtspInstance, path: &[usize], i: usize) -> (Weight, usize, usize) {
    let m = path.len();
    let (p, x, y, r, e) = (path[i - 1], path[i], path[i + 1], path[m - 2], path[m - 1]);
    let (cost, x1, e1) = best_pair(instance, p, instance.cluster_of(x), instance.cluster_of(e), r);
    let gain = instance.w(p, x) + instance.w(x, y) + instance.w(r, e) - cost;
    (gain, x1, e1)
}

/// Minimizes `w(p -> a -> b -> r)` over `a` in cluster `ca`, `b` in `cb`.
fn best_pair(instance: &GtspInstance, p: usize, ca: usize, cb: usize, r: usize) -> (Weight, usize, usize) {
    let mut best = (Weight::MAX, usize::MAX, usize::MAX);
    for &a in instance.cluster(ca) {
        let head = instance.w(p, a);
        for &b in instance.cluster(cb) {
            let c = head + instance.w(a, b) + instance.w(b, r);
            if c < best.0 {
                best = (c, a, b);
            }
        }
    }
    best
}

/// Applies the move of `variation` that breaks `path` at position `i`.
pub fn rearrange_path(instance: &GtspInstance, path: &PathView, i: usize, variation: Variation) -> PathView {
    let v = &path.vertices;
    let m = v.len();
    let (x, y, e) = (v[i], v[i + 1], v[m - 1]);
    match variation {
        Variation::Basic => {
            let mut out = v.clone();
            out[i + 1..].reverse();
            let weight = path.weight - instance.w(x, y) + instance.w(x, e);
            checked(instance, out, weight)
        }
        Variation::Closest => {
            let p = v[i - 1];
            let x1 = instance
                .cluster(instance.cluster_of(x))
                .iter()
                .copied()
                .min_by_key(|&c| instance.w(p, c) + instance.w(c, e))
                .expect("clusters are non-empty");
            let mut out = v.clone();
            out[i] = x1;
            out[i + 1..].reverse();
            let weight = path.weight - instance.w(p, x) - instance.w(x, y) + instance.w(p, x1) + instance.w(x1, e);
            checked(instance, out, weight)
        }
        Variation::Shortest => {
            let (p, r) = (v[i - 1], v[m - 2]);
            let (cost, x1, e1) = best_pair(instance, p, instance.cluster_of(x), instance.cluster_of(e), r);
            let mut out = Vec::with_capacity(m);
            out.extend_from_slice(&v[..i]);
            out.push(x1);
            out.push(e1);
            out.extend(v[i + 1..m - 1].iter().rev());
            let weight = path.weight - instance.w(p, x) - instance.w(x, y) - instance.w(r, e) + cost;
            checked(instance, out, weight)
        }
        Variation::Exact => {
            let order: Vec<usize> = v.iter().map(|&u| instance.cluster_of(u)).collect();
            let (weight, out) = w_co_with_witness(instance, &rearranged_order(&order, i));
            PathView { vertices: out, weight }
        }
    }
}

fn checked(instance: &GtspInstance, vertices: Vec<usize>, weight: Weight) -> PathView {
    debug_assert_eq!(
        instance.path_weight(&vertices),
        weight,
        "incremental path weight drifted"
    );
    PathView { vertices, weight }
}

/// Turns the path into a tour.
pub fn close_up(instance: &GtspInstance, path: &PathView, variation: Variation) -> Tour {
    let v = &path.vertices;
    let m = v.len();
    match variation {
        Variation::Basic => {
            let weight = path.weight + instance.w(v[m - 1], v[0]);
            Tour::from_parts(instance, v.clone(), weight)
        }
        Variation::Closest | Variation::Shortest if m >= 3 => {
            let (b, p, q, e) = (v[0], v[1], v[m - 2], v[m - 1]);
            let mut best = (Weight::MAX, b, e);
            for &b1 in instance.cluster(instance.cluster_of(b)) {
                let head = instance.w(b1, p);
                for &e1 in instance.cluster(instance.cluster_of(e)) {
                    let c = instance.w(q, e1) + instance.w(e1, b1) + head;
                    if c < best.0 {
                        best = (c, b1, e1);
                    }
                }
            }
            let mut out = v.clone();
            out[0] = best.1;
            out[m - 1] = best.2;
            let weight = path.weight - instance.w(b, p) - instance.w(q, e) + best.0;
            Tour::from_parts(instance, out, weight)
        }
        Variation::Closest | Variation::Shortest => close_up(instance, path, Variation::Basic),
        Variation::Exact => crate::exact::close_up_exact(instance, v),
    }
}

/// Decides whether a rearranged path is worth closing up or extending.
///
/// `removed` is the weight of the broken edge (or `w_min` of its clusters for
/// Exact); it only matters for option 3. Fractions are compared after
/// multiplying through by `m`.
pub fn gain_is_acceptable(
    option: GainOption,
    path_weight: Weight,
    removed: Weight,
    tour_weight: Weight,
    original_path_weight: Weight,
    m: usize,
) -> bool {
    let m = m as Weight;
    match option {
        GainOption::PathShorter => path_weight < original_path_weight,
        GainOption::AverageEdge => m * path_weight + tour_weight < m * tour_weight,
        GainOption::RestoredEdge => path_weight + removed < tour_weight,
        GainOption::Optimistic => path_weight < tour_weight,
        GainOption::HalfAverageEdge => 2 * m * path_weight + tour_weight < 2 * m * tour_weight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::theorem_one;
    use crate::gen::random_instance_exact_sizes;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line(n: usize) -> GtspInstance {
        // points on a line: w(a, b) = |a - b|
        let w: Vec<Vec<Weight>> = (0..n)
            .map(|a| (0..n).map(|b| (a as Weight - b as Weight).abs()).collect())
            .collect();
        GtspInstance::from_matrix("line", &w, (0..n).map(|v| vec![v]).collect()).unwrap()
    }

    #[test]
    fn acceptance_boundaries() {
        use GainOption::*;
        assert!(!gain_is_acceptable(AverageEdge, 90, 0, 100, 0, 10));
        assert!(gain_is_acceptable(Optimistic, 99, 0, 100, 0, 10));
        assert!(!gain_is_acceptable(Optimistic, 100, 0, 100, 0, 10));
        assert!(!gain_is_acceptable(AverageEdge, 94, 0, 100, 0, 10));
        assert!(gain_is_acceptable(HalfAverageEdge, 94, 0, 100, 0, 10));
        assert!(!gain_is_acceptable(HalfAverageEdge, 95, 0, 100, 0, 10));
        assert!(gain_is_acceptable(PathShorter, 79, 0, 100, 80, 10));
        assert!(!gain_is_acceptable(PathShorter, 80, 0, 100, 80, 10));
        assert!(gain_is_acceptable(RestoredEdge, 90, 9, 100, 0, 10));
        assert!(!gain_is_acceptable(RestoredEdge, 90, 10, 100, 0, 10));
    }

    #[test]
    fn basic_gain_is_the_edge_difference() {
        let mut w = vec![vec![0; 4]; 4];
        w[1][2] = 10;
        w[2][1] = 10;
        w[3][1] = 3;
        w[1][3] = 3;
        let g = GtspInstance::from_matrix("g", &w, (0..4).map(|v| vec![v]).collect()).unwrap();
        assert_eq!(gain_basic(&g, &[0, 1, 2, 3], 1), 7);
        w[3][1] = 10;
        w[1][3] = 10;
        let g = GtspInstance::from_matrix("g", &w, (0..4).map(|v| vec![v]).collect()).unwrap();
        assert_eq!(gain_basic(&g, &[0, 1, 2, 3], 1), 0);
    }

    #[test]
    fn basic_gain_on_fixture() {
        let g = theorem_one();
        // path 3 -> 4 -> 2 -> 1 -> 5 broken at 2 -> 1: w(2,1) - w(5,2) = 1 - 1
        assert_eq!(gain_basic(&g, &[2, 3, 1, 0, 4], 2), 0);
        // path 1 -> 2 -> 3 -> 4 -> 5 broken at 2 -> 3: w(2,3) - w(5,2) = 0
        assert_eq!(gain_basic(&g, &[0, 1, 2, 3, 4], 1), 0);
        // path 2 -> 3 -> 4 -> 5 -> 1 broken at 3 -> 4: 0 - w(1,3) = 0
        assert_eq!(gain_basic(&g, &[1, 2, 3, 4, 0], 1), 0);
    }

    #[test]
    fn basic_rearrangement_reverses_the_tail() {
        let g = line(6);
        // b c x y d e = 0 1 2 3 4 5
        let p = PathView::new(&g, vec![0, 1, 2, 3, 4, 5]);
        let q = rearrange_path(&g, &p, 2, Variation::Basic);
        assert_eq!(q.vertices, vec![0, 1, 2, 5, 4, 3]);
        assert_eq!(q.weight, g.path_weight(&q.vertices));
        let back = rearrange_path(&g, &q, 2, Variation::Basic);
        assert_eq!(back, p);
    }

    #[test]
    fn closest_selects_by_distance_to_e_only() {
        // clusters {0}, {1, 2}, {3}, {4}; path 0 -> (x) -> 3 -> 4
        // vertex 1: far from p, nearest to e. vertex 2: near p, further from e
        let mut w = vec![vec![50; 5]; 5];
        for (i, row) in w.iter_mut().enumerate() {
            row[i] = 0;
        }
        let mut set = |a: usize, b: usize, x: Weight| {
            w[a][b] = x;
            w[b][a] = x;
        };
        set(0, 1, 30);
        set(1, 4, 1);
        set(0, 2, 1);
        set(2, 4, 5);
        set(1, 3, 2);
        let g = GtspInstance::from_matrix("c", &w, vec![vec![0], vec![1, 2], vec![3], vec![4]]).unwrap();
        let (gain, x1) = gain_closest(&g, &[0, 1, 3, 4], 1);
        assert_eq!(x1, 1);
        assert_eq!(gain, (30 + 2) - (30 + 1));
        // the rearrangement minimizes w(p -> x'' -> e) instead
        let p = PathView::new(&g, vec![0, 1, 3, 4]);
        let q = rearrange_path(&g, &p, 1, Variation::Closest);
        assert_eq!(q.vertices, vec![0, 2, 4, 3]);
    }

    #[test]
    fn closest_on_fixture_picks_nearest_to_e() {
        let g = theorem_one();
        // path 1 -> 2 -> 3 -> 4 -> 5, x = 2 with e = 5: w(2,5) = 1, w(6,5) = 1
        let (_, x1) = gain_closest(&g, &[0, 1, 2, 3, 4], 1);
        assert_eq!(x1, 1);
        // e = 4: w(2,4) = 1, w(6,4) = 0
        let (gain, x1) = gain_closest(&g, &[0, 1, 2, 4, 3], 1);
        assert_eq!(x1, 5);
        assert_eq!(gain, 2 - 1);
    }

    #[test]
    fn shortest_matches_pair_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let g = random_instance_exact_sizes(&mut rng, &[2; 6], 40, true);
            let t = crate::gen::random_tour(&mut rng, &g);
            let path = PathView::new(&g, t.vertices().to_vec());
            let v = &path.vertices;
            for i in 1..=3 {
                let (gain, _, _) = gain_shortest(&g, v, i);
                let mut best = Weight::MAX;
                for &a in g.cluster(g.cluster_of(v[i])) {
                    for &b in g.cluster(g.cluster_of(v[5])) {
                        best = best.min(g.w(v[i - 1], a) + g.w(a, b) + g.w(b, v[4]));
                    }
                }
                assert_eq!(gain, g.w(v[i - 1], v[i]) + g.w(v[i], v[i + 1]) + g.w(v[4], v[5]) - best);
                let q = rearrange_path(&g, &path, i, Variation::Shortest);
                assert_eq!(path.weight - q.weight, gain);
                assert_eq!(q.weight, g.path_weight(&q.vertices));
            }
        }
    }

    #[test]
    fn close_up_matches_end_pair_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..200 {
            let g = random_instance_exact_sizes(&mut rng, &[2; 5], 40, true);
            let t = crate::gen::random_tour(&mut rng, &g);
            let path = PathView::new(&g, t.vertices().to_vec());
            let v = &path.vertices;
            let mut best = Weight::MAX;
            for &b in g.cluster(g.cluster_of(v[0])) {
                for &e in g.cluster(g.cluster_of(v[4])) {
                    best = best.min(g.cycle_weight(&[b, v[1], v[2], v[3], e]));
                }
            }
            for var in [Variation::Closest, Variation::Shortest] {
                let c = close_up(&g, &path, var);
                assert_eq!(c.weight(), best);
                assert!(c.is_valid(&g));
            }
        }
    }

    #[test]
    fn close_up_agrees_on_singleton_ends() {
        let g = theorem_one();
        let path = PathView::new(&g, vec![0, 1, 2, 3, 4]);
        for var in [
            Variation::Basic,
            Variation::Closest,
            Variation::Shortest,
            Variation::Exact,
        ] {
            assert_eq!(close_up(&g, &path, var).weight(), 2);
        }
    }

    #[test]
    fn single_vertex_clusters_reduce_to_basic() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let g = random_instance_exact_sizes(&mut rng, &[1; 7], 40, true);
            let t = crate::gen::random_tour(&mut rng, &g);
            let path = PathView::new(&g, t.vertices().to_vec());
            for i in 1..=4 {
                let b = gain_basic(&g, &path.vertices, i);
                assert_eq!(gain_closest(&g, &path.vertices, i).0, b);
                assert_eq!(gain_shortest(&g, &path.vertices, i).0, b);
                let rb = rearrange_path(&g, &path, i, Variation::Basic);
                assert_eq!(rearrange_path(&g, &path, i, Variation::Closest), rb);
                assert_eq!(rearrange_path(&g, &path, i, Variation::Shortest), rb);
            }
        }
    }

    #[test]
    fn w_min_is_a_lower_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let g = random_instance_exact_sizes(&mut rng, &[3, 1, 2, 4], 40, false);
        let cache = ClusterDistanceCache::new(&g);
        for a in 0..g.n() {
            for b in 0..g.n() {
                assert!(cache.w_min(g.cluster_of(a), g.cluster_of(b)) <= g.w(a, b));
            }
        }
    }
}
