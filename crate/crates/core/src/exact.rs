//! Shortest paths through a fixed cluster sequence, and the suffix tables
//! that let the Exact variation evaluate every break of a path in `O(s^2)`.
//!
//! Positions are 0-based: the path visits clusters `c[0], ..., c[m-1]`.
//! Breaking it after position `i` gives the order
//! `c[0..=i], c[m-1], c[m-2], ..., c[i+1]`.

use crate::instance::{GtspInstance, Weight};

/// Weight of the shortest open path through the clusters of `order`.
pub fn w_co(instance: &GtspInstance, order: &[usize]) -> Weight {
    if order.is_empty() {
        return 0;
    }
    let mut dist = vec![0; instance.cluster(order[0]).len()];
    for pair in order.windows(2) {
        dist = relax(
            instance,
            instance.cluster(pair[0]),
            &dist,
            instance.cluster(pair[1]),
            &mut 0,
        );
    }
    dist.into_iter().min().expect("clusters are non-empty")
}

/// Shortest open path through `order` together with the vertices realizing
/// it. Ties go to the vertex with the lowest id, layer by layer from the end.
pub fn w_co_with_witness(instance: &GtspInstance, order: &[usize]) -> (Weight, Vec<usize>) {
    let m = order.len();
    if m == 0 {
        return (0, Vec::new());
    }
    let mut layers: Vec<Vec<Weight>> = Vec::with_capacity(m);
    let mut parents: Vec<Vec<usize>> = Vec::with_capacity(m);
    layers.push(vec![0; instance.cluster(order[0]).len()]);
    parents.push(Vec::new());
    for p in 1..m {
        let prev = instance.cluster(order[p - 1]);
        let cur = instance.cluster(order[p]);
        let mut dist = Vec::with_capacity(cur.len());
        let mut parent = Vec::with_capacity(cur.len());
        for &v in cur {
            let (a, d) = prev
                .iter()
                .zip(&layers[p - 1])
                .enumerate()
                .map(|(a, (&u, &d))| (a, d + instance.w(u, v)))
                .min_by_key(|&(_, d)| d)
                .expect("clusters are non-empty");
            dist.push(d);
            parent.push(a);
        }
        layers.push(dist);
        parents.push(parent);
    }
    let (mut idx, best) = layers[m - 1]
        .iter()
        .copied()
        .enumerate()
        .min_by_key(|&(_, d)| d)
        .expect("clusters are non-empty");
    let mut path = vec![0; m];
    for p in (0..m).rev() {
        path[p] = instance.cluster(order[p])[idx];
        if p > 0 {
            idx = parents[p][idx];
        }
    }
    (best, path)
}

/// One layered-network step: distances into `to` given distances at `from`.
/// Adds the number of arc evaluations to `ops`.
pub(crate) fn relax(
    instance: &GtspInstance,
    from: &[usize],
    dist: &[Weight],
    to: &[usize],
    ops: &mut u64,
) -> Vec<Weight> {
    *ops += (from.len() * to.len()) as u64;
    to.iter()
        .map(|&v| {
            from.iter()
                .zip(dist)
                .map(|(&u, &d)| d + instance.w(u, v))
                .min()
                .expect("clusters are non-empty")
        })
        .collect()
}

/// Suffix tables for one cluster sequence.
///
/// `table[r]` holds, for every vertex `y` of the pivot cluster `pivot[r]`
/// and every `q` in `c[r]`, the shortest path from `y` back through
/// `c[pivot[r]-1], ..., c[r+1]` to `q`. `composite[t]` holds the shortest
/// path from each vertex of `c[m-1]` back to each vertex of `c[t]` for every
/// pivot `t` other than the last cluster.
#[derive(Debug, Clone)]
pub struct ExactPathTables {
    order: Vec<usize>,
    pivot: Vec<usize>,
    table: Vec<Vec<Vec<Weight>>>,
    composite: Vec<Vec<Vec<Weight>>>,
    /// Arc evaluations spent on each row while building.
    pub row_ops: Vec<u64>,
    /// Arc evaluations spent in [`ExactPathTables::evaluate`].
    pub eval_ops: u64,
}

impl ExactPathTables {
    /// Builds the tables for `order` (at least 3 clusters). With `pivoting`
    /// off the pivot never leaves the last cluster, which is the plain
    /// backward dynamic program.
    pub fn build(instance: &GtspInstance, order: &[usize], pivoting: bool) -> Self {
        let m = order.len();
        assert!(m >= 3, "suffix tables need at least 3 clusters");
        let last = m - 1;
        let cl = |p: usize| instance.cluster(order[p]);
        let mut pivot = vec![last; m];
        let mut table: Vec<Vec<Vec<Weight>>> = vec![Vec::new(); m];
        let mut composite: Vec<Vec<Vec<Weight>>> = vec![Vec::new(); m];
        let mut row_ops = vec![0u64; m];

        let direct = |y_cluster: usize, r: usize| -> Vec<Vec<Weight>> {
            cl(y_cluster)
                .iter()
                .map(|&y| cl(r).iter().map(|&q| instance.w(y, q)).collect())
                .collect()
        };
        table[m - 2] = direct(last, m - 2);
        row_ops[m - 2] = (cl(last).len() * cl(m - 2).len()) as u64;

        let mut y = last;
        for r in (1..m - 2).rev() {
            let mut ops = 0u64;
            if pivoting && cl(r + 1).len() < cl(y).len() {
                let t = r + 1;
                composite[t] = if y == last {
                    table[t].clone()
                } else {
                    // l_u^e = min over pivot vertices of l_y^e + l_u^y
                    ops += (cl(last).len() * cl(y).len() * cl(t).len()) as u64;
                    (0..cl(last).len())
                        .map(|e| {
                            (0..cl(t).len())
                                .map(|u| {
                                    (0..cl(y).len())
                                        .map(|k| composite[y][e][k] + table[t][k][u])
                                        .min()
                                        .expect("clusters are non-empty")
                                })
                                .collect()
                        })
                        .collect()
                };
                y = t;
                table[r] = direct(y, r);
                ops += (cl(y).len() * cl(r).len()) as u64;
            } else {
                // l_q^y = min over u in c[r+1] of l_u^y + w(u -> q)
                ops += (cl(y).len() * cl(r + 1).len() * cl(r).len()) as u64;
                let next = &table[r + 1];
                let row: Vec<Vec<Weight>> = next
                    .iter()
                    .map(|from_y| {
                        cl(r)
                            .iter()
                            .map(|&q| {
                                cl(r + 1)
                                    .iter()
                                    .zip(from_y)
                                    .map(|(&u, &d)| d + instance.w(u, q))
                                    .min()
                                    .expect("clusters are non-empty")
                            })
                            .collect()
                    })
                    .collect();
                table[r] = row;
            }
            pivot[r] = y;
            row_ops[r] = ops;
        }
        ExactPathTables {
            order: order.to_vec(),
            pivot,
            table,
            composite,
            row_ops,
            eval_ops: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Pivot position consulted for breaks after position `i`.
    pub fn pivot_for_break(&self, i: usize) -> usize {
        self.pivot[i + 1]
    }

    /// Total arc evaluations spent building the tables.
    pub fn build_ops(&self) -> u64 {
        self.row_ops.iter().sum()
    }

    /// Shortest path from each vertex of the last cluster back to each
    /// vertex of `c[i+1]`, as seen by [`ExactPathTables::evaluate`]. Used to
    /// check that pivoting does not change any consulted value.
    pub fn path_ends(&self, instance: &GtspInstance, i: usize) -> Vec<Vec<Weight>> {
        let r = i + 1;
        let t = self.pivot[r];
        let last = self.order.len() - 1;
        if t == last {
            return self.table[r].clone();
        }
        let cl = |p: usize| instance.cluster(self.order[p]);
        (0..cl(last).len())
            .map(|e| {
                (0..cl(r).len())
                    .map(|q| {
                        (0..cl(t).len())
                            .map(|u| self.composite[t][e][u] + self.table[r][u][q])
                            .min()
                            .expect("clusters are non-empty")
                    })
                    .collect()
            })
            .collect()
    }

    /// Weight of the shortest path through the order obtained by breaking
    /// after position `i`, given `l_v`: shortest distances from `c[0]` to
    /// each vertex of `c[i]`.
    pub fn evaluate(&mut self, instance: &GtspInstance, i: usize, l_v: &[Weight]) -> Weight {
        let m = self.order.len();
        debug_assert!(i + 2 < m);
        let last = m - 1;
        let r = i + 1;
        let t = self.pivot[r];
        let cl = |p: usize| instance.cluster(self.order[p]);
        let mut ops = 0u64;
        let l_e = relax(instance, cl(i), l_v, cl(last), &mut ops);
        let best = if t < last {
            ops += (cl(last).len() * cl(t).len() + cl(t).len() * cl(r).len()) as u64;
            let l_u: Vec<Weight> = (0..cl(t).len())
                .map(|u| (0..l_e.len()).map(|e| l_e[e] + self.composite[t][e][u]).min().unwrap())
                .collect();
            (0..cl(r).len())
                .map(|q| (0..l_u.len()).map(|u| l_u[u] + self.table[r][u][q]).min().unwrap())
                .min()
                .unwrap()
        } else {
            ops += (cl(last).len() * cl(r).len()) as u64;
            (0..cl(r).len())
                .map(|q| (0..l_e.len()).map(|e| l_e[e] + self.table[r][e][q]).min().unwrap())
                .min()
                .unwrap()
        };
        self.eval_ops += ops;
        best
    }
}

/// The order produced by breaking `order` after position `i`.
pub fn rearranged_order(order: &[usize], i: usize) -> Vec<usize> {
    let mut out = order[..=i].to_vec();
    out.extend(order[i + 1..].iter().rev());
    out
}

/// Gain of breaking the path with cluster sequence `order` after position
/// `i`: `w_co(order) - w_co(rearranged)`. `path_wco` is `w_co(order)` and
/// `l_v` the forward distances at `c[i]`.
pub fn gain_exact(
    instance: &GtspInstance,
    tables: &mut ExactPathTables,
    path_wco: Weight,
    i: usize,
    l_v: &[Weight],
) -> Weight {
    path_wco - tables.evaluate(instance, i, l_v)
}

/// Closes the path into a tour and applies cluster optimization.
pub fn close_up_exact(instance: &GtspInstance, path: &[usize]) -> crate::tour::Tour {
    let weight = instance.cycle_weight(path);
    let tour = crate::tour::Tour::from_parts(instance, path.to_vec(), weight);
    crate::co::cluster_optimize(instance, &tour)
}

/// Arc evaluations of the naive method: a full `w_co` of every rearranged
/// order, for every break position.
pub fn from_scratch_ops(instance: &GtspInstance, order: &[usize]) -> u64 {
    let m = order.len();
    let mut ops = 0u64;
    for i in 0..m.saturating_sub(2) {
        let r = rearranged_order(order, i);
        ops += r
            .windows(2)
            .map(|p| (instance.cluster(p[0]).len() * instance.cluster(p[1]).len()) as u64)
            .sum::<u64>();
    }
    ops
}

/// Runs every break evaluation the way the path search does (rolling
/// forward distances) and returns the values with the total arc count.
pub fn evaluate_all_breaks(instance: &GtspInstance, order: &[usize], pivoting: bool) -> (Vec<Weight>, u64) {
    let m = order.len();
    let mut tables = ExactPathTables::build(instance, order, pivoting);
    let mut forward_ops = 0u64;
    let mut l_v = vec![0; instance.cluster(order[0]).len()];
    let mut values = Vec::with_capacity(m - 2);
    for i in 0..m - 2 {
        if i > 0 {
            l_v = relax(
                instance,
                instance.cluster(order[i - 1]),
                &l_v,
                instance.cluster(order[i]),
                &mut forward_ops,
            );
        }
        values.push(tables.evaluate(instance, i, &l_v));
    }
    let total = tables.build_ops() + tables.eval_ops + forward_ops;
    (values, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::theorem_one;
    use crate::gen::{random_instance, random_instance_exact_sizes};
    use crate::oracle::path_co_weight_brute;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shuffled_order(rng: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..m).collect();
        o.shuffle(rng);
        o
    }

    #[test]
    fn fixture_path_weights() {
        let g = theorem_one();
        assert_eq!(w_co(&g, &[0, 1, 2, 3, 4]), 2);
        let t = close_up_exact(&g, &[0, 1, 2, 3, 4]);
        assert_eq!(t.weight(), 2);
        let t = close_up_exact(&g, &[0, 1, 3, 2, 4]);
        assert_eq!(t.weight(), 1);
        assert_eq!(t.vertices(), &[0, 5, 3, 2, 4]);
    }

    #[test]
    fn singleton_clusters_give_plain_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = random_instance_exact_sizes(&mut rng, &[1; 6], 20, false);
        let order = shuffled_order(&mut rng, 6);
        let vs: Vec<usize> = order.iter().map(|&c| g.cluster(c)[0]).collect();
        assert_eq!(w_co(&g, &order), g.path_weight(&vs));
        let t = close_up_exact(&g, &vs);
        assert_eq!(t.vertices(), &vs[..]);
    }

    #[test]
    fn w_co_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let g = random_instance_exact_sizes(&mut rng, &[3; 6], 30, false);
            let order = shuffled_order(&mut rng, 6);
            let (w, path) = w_co_with_witness(&g, &order);
            assert_eq!(w, path_co_weight_brute(&g, &order));
            assert_eq!(w, w_co(&g, &order));
            assert_eq!(g.path_weight(&path), w);
        }
    }

    #[test]
    fn every_break_matches_from_scratch() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for trial in 0..200 {
            let m = 3 + trial % 5;
            let g = random_instance(&mut rng, m, 3, 25, trial % 2 == 0);
            let order = shuffled_order(&mut rng, m);
            let (values, _) = evaluate_all_breaks(&g, &order, true);
            for (i, v) in values.iter().enumerate() {
                assert_eq!(
                    *v,
                    path_co_weight_brute(&g, &rearranged_order(&order, i)),
                    "trial {trial} break {i}"
                );
            }
        }
    }

    #[test]
    fn pivoting_keeps_every_consulted_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let m = 3 + rng.random_range(0..6);
            let g = random_instance(&mut rng, m, 4, 40, false);
            let order = shuffled_order(&mut rng, m);
            let plain = ExactPathTables::build(&g, &order, false);
            let fast = ExactPathTables::build(&g, &order, true);
            for i in 0..m - 2 {
                assert_eq!(plain.pivot_for_break(i), m - 1);
                assert_eq!(plain.path_ends(&g, i), fast.path_ends(&g, i));
            }
        }
    }

    #[test]
    fn equal_sizes_never_move_the_pivot() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let g = random_instance_exact_sizes(&mut rng, &[3; 7], 40, true);
        let order: Vec<usize> = (0..7).collect();
        let fast = ExactPathTables::build(&g, &order, true);
        let plain = ExactPathTables::build(&g, &order, false);
        for i in 0..5 {
            assert_eq!(fast.pivot_for_break(i), 6);
        }
        assert_eq!(fast.row_ops, plain.row_ops);
    }

    #[test]
    fn small_pivot_cuts_row_cost_by_its_size_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        // cluster 5 (position 5) has one vertex, the rest five
        let mut sizes = [5usize; 10];
        sizes[5] = 1;
        let g = random_instance_exact_sizes(&mut rng, &sizes, 50, true);
        let order: Vec<usize> = (0..10).collect();
        let fast = ExactPathTables::build(&g, &order, true);
        let plain = ExactPathTables::build(&g, &order, false);
        assert_eq!(fast.pivot_for_break(2), 5);
        // rows strictly below the fresh row r = 4 extend from the pivot
        for r in 1..4 {
            assert_eq!(plain.row_ops[r], 5 * fast.row_ops[r], "row {r}");
        }
    }

    #[test]
    fn table_method_beats_from_scratch_at_scale() {
        // m = 100, s = 5: naive O(m^2 s^2), tables O(m s^3)
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let g = random_instance_exact_sizes(&mut rng, &[5; 100], 1000, true);
        let order: Vec<usize> = (0..100).collect();
        let (_, table_ops) = evaluate_all_breaks(&g, &order, true);
        let naive = from_scratch_ops(&g, &order);
        let (s, m) = (5u64, 100u64);
        assert!(table_ops * m <= 2 * s * naive, "table {table_ops} naive {naive}");
    }

    #[test]
    fn asymmetric_weights_are_read_directionally() {
        // w(a -> b) != w(b -> a) everywhere it matters
        let w = vec![vec![0, 1, 9, 9], vec![9, 0, 1, 9], vec![9, 9, 0, 1], vec![1, 9, 9, 0]];
        let g = crate::GtspInstance::from_matrix("dir", &w, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(w_co(&g, &[0, 1, 2, 3]), 3);
        assert_eq!(w_co(&g, &[3, 2, 1, 0]), 27);
        let (values, _) = evaluate_all_breaks(&g, &[0, 1, 2, 3], true);
        // breaks give 0,3,2,1 and 0,1,3,2
        assert_eq!(values, vec![27, 19]);
    }
}
