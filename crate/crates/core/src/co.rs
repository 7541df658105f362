//! Cluster Optimization: best vertex selection for a fixed cluster order.
//!
//! The cyclic order is cut at a smallest cluster `K`; for every `u` in `K`
//! a shortest path through the layered network of the remaining clusters
//! closes back at `u`. That is `O(m s^2 |K|)` work instead of `O(m s^3)`.
//!
//! Among equally short tours the lexicographically smallest vertex sequence
//! (positions as in the input tour) is returned.

use crate::instance::{GtspInstance, Weight};
use crate::tour::Tour;

/// A tour improvement function that keeps the cluster order fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImprovementFn {
    /// Leaves the tour unchanged.
    Identity,
    /// Full cluster optimization.
    Co,
    /// Re-selects vertices only in the clusters touched by the last change.
    Local,
}

impl ImprovementFn {
    pub fn apply(self, instance: &GtspInstance, tour: &Tour, touched: &[usize]) -> Tour {
        match self {
            ImprovementFn::Identity => tour.clone(),
            ImprovementFn::Co => cluster_optimize(instance, tour),
            ImprovementFn::Local => local_optimize(instance, tour, touched),
        }
    }
}

/// Returns the shortest tour visiting the clusters in the same order as
/// `tour`, starting at the same cluster and in the same direction.
pub fn cluster_optimize(instance: &GtspInstance, tour: &Tour) -> Tour {
    let order = tour.cluster_order(instance);
    let vertices = optimize_order(instance, &order);
    let weight = instance.cycle_weight(&vertices);
    debug_assert!(weight <= tour.weight());
    Tour::from_parts(instance, vertices, weight)
}

/// Weight of the best tour for a cyclic cluster order.
pub fn co_weight(instance: &GtspInstance, order: &[usize]) -> Weight {
    let vertices = optimize_order(instance, order);
    instance.cycle_weight(&vertices)
}

/// Lexicographically smallest optimal vertex selection for `order`.
pub(crate) fn optimize_order(instance: &GtspInstance, order: &[usize]) -> Vec<usize> {
    let m = order.len();
    if m == 0 {
        return Vec::new();
    }
    let layer = |pos: usize| instance.cluster(order[pos]);

    // pivot: a smallest cluster, lowest cluster index on ties
    let k = (0..m)
        .min_by_key(|&p| (layer(p).len(), order[p]))
        .expect("non-empty order");
    if m == 1 {
        let best = layer(0).iter().copied().min_by_key(|&v| (instance.w(v, v), v)).unwrap();
        return vec![best];
    }

    // positions in path order after the pivot: k+1, ..., m-1, 0, ..., k-1
    let seq: Vec<usize> = (1..m).map(|d| (k + d) % m).collect();
    let last = seq.len() - 1;

    let mut best: Option<(Weight, Vec<usize>)> = None;
    for &u in layer(k) {
        let fwd = forward_from(instance, &seq, &layer, u);
        let total = layer(seq[last])
            .iter()
            .enumerate()
            .map(|(i, &v)| fwd[last][i] + instance.w(v, u))
            .min()
            .unwrap();
        if best.as_ref().is_some_and(|(w, _)| total > *w) {
            continue;
        }
        let tour = lex_min_tour(instance, order, &seq, &layer, k, u, &fwd, total);
        match &best {
            Some((w, t)) if total == *w && tour >= *t => {}
            _ => best = Some((total, tour)),
        }
    }
    best.expect("pivot cluster is non-empty").1
}

/// `fwd[i][a]`: shortest path from `u` to the `a`-th vertex of layer `seq[i]`.
fn forward_from<'a>(
    instance: &GtspInstance,
    seq: &[usize],
    layer: &impl Fn(usize) -> &'a [usize],
    u: usize,
) -> Vec<Vec<Weight>> {
    let mut fwd: Vec<Vec<Weight>> = Vec::with_capacity(seq.len());
    fwd.push(layer(seq[0]).iter().map(|&v| instance.w(u, v)).collect());
    for i in 1..seq.len() {
        let prev_layer = layer(seq[i - 1]);
        let row: Vec<Weight> = layer(seq[i])
            .iter()
            .map(|&v| {
                prev_layer
                    .iter()
                    .zip(&fwd[i - 1])
                    .map(|(&z, &d)| d + instance.w(z, v))
                    .min()
                    .unwrap()
            })
            .collect();
        fwd.push(row);
    }
    fwd
}

/// `back[i][a]`: shortest path from the `a`-th vertex of layer `seq[i]`
/// through `seq[i+1..=end]` to `target` (an arc into `target` at the end).
fn backward_to<'a>(
    instance: &GtspInstance,
    seq: &[usize],
    layer: &impl Fn(usize) -> &'a [usize],
    end: usize,
    target: usize,
) -> Vec<Vec<Weight>> {
    let mut back: Vec<Vec<Weight>> = vec![Vec::new(); end + 1];
    back[end] = layer(seq[end]).iter().map(|&v| instance.w(v, target)).collect();
    for i in (0..end).rev() {
        let next_layer = layer(seq[i + 1]);
        back[i] = layer(seq[i])
            .iter()
            .map(|&v| {
                next_layer
                    .iter()
                    .zip(&back[i + 1])
                    .map(|(&z, &d)| instance.w(v, z) + d)
                    .min()
                    .unwrap()
            })
            .collect();
    }
    back
}

/// Greedy lexicographic reconstruction of an optimal tour through `u`.
#[allow(clippy::too_many_arguments)]
fn lex_min_tour<'a>(
    instance: &GtspInstance,
    order: &[usize],
    seq: &[usize],
    layer: &impl Fn(usize) -> &'a [usize],
    k: usize,
    u: usize,
    fwd: &[Vec<Weight>],
    opt: Weight,
) -> Vec<usize> {
    let m = order.len();
    let last = seq.len() - 1;
    let back = backward_to(instance, seq, layer, last, u);
    let mut tour = vec![usize::MAX; m];
    tour[k] = u;

    // walk seq[from..=to], each step picking the smallest vertex that keeps
    // `spent + arc + rest == goal`
    let walk = |tour: &mut Vec<usize>,
                from: usize,
                to: usize,
                mut prev: usize,
                mut spent: Weight,
                rest: &[Vec<Weight>],
                goal: Weight| {
        for i in from..=to {
            let v = layer(seq[i])
                .iter()
                .enumerate()
                .filter(|&(a, &v)| spent + instance.w(prev, v) + rest[i - from][a] == goal)
                .map(|(_, &v)| v)
                .min()
                .expect("an optimal continuation exists");
            spent += instance.w(prev, v);
            tour[seq[i]] = v;
            prev = v;
        }
    };

    if k == 0 {
        walk(&mut tour, 0, last, u, 0, &back, opt);
        return tour;
    }

    // positions 0..k are the tail of the path; they come first lexicographically
    let head_len = m - 1 - k;
    let first = head_len;
    let (a_idx, a) = layer(seq[first])
        .iter()
        .enumerate()
        .filter(|&(i, _)| fwd[first][i] + back[first][i] == opt)
        .min_by_key(|&(_, &v)| v)
        .map(|(i, &v)| (i, v))
        .expect("an optimal vertex exists in every layer");
    tour[seq[first]] = a;
    let to_a = fwd[first][a_idx];
    if first < last {
        walk(&mut tour, first + 1, last, a, to_a, &back[first + 1..], opt);
    }

    // head: lexicographically smallest shortest path u -> ... -> a
    if head_len > 0 {
        let to_target = backward_to(instance, seq, layer, head_len - 1, a);
        walk(&mut tour, 0, head_len - 1, u, 0, &to_target, to_a);
    }
    tour
}

/// Re-selects vertices in the `touched` clusters only, by exhaustive
/// enumeration of their combinations. Other positions keep their vertex.
/// Ties go to the lexicographically smallest combination.
pub fn local_optimize(instance: &GtspInstance, tour: &Tour, touched: &[usize]) -> Tour {
    let m = tour.len();
    let mut positions: Vec<usize> = tour
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, &v)| touched.contains(&instance.cluster_of(v)))
        .map(|(p, _)| p)
        .collect();
    positions.dedup();
    if positions.is_empty() || m == 0 {
        return tour.clone();
    }

    // arcs whose weight can change, identified by their tail position
    let mut arcs: Vec<usize> = positions.iter().flat_map(|&p| [(p + m - 1) % m, p]).collect();
    arcs.sort_unstable();
    arcs.dedup();

    let mut current = tour.vertices().to_vec();
    let local_cost = |vs: &[usize]| -> Weight { arcs.iter().map(|&p| instance.w(vs[p], vs[(p + 1) % m])).sum() };
    let base = local_cost(&current);

    let choices: Vec<&[usize]> = positions
        .iter()
        .map(|&p| instance.cluster(instance.cluster_of(tour.vertices()[p])))
        .collect();
    let mut idx = vec![0usize; positions.len()];
    let mut best: Option<(Weight, Vec<usize>)> = None;
    loop {
        for (slot, &p) in positions.iter().enumerate() {
            current[p] = choices[slot][idx[slot]];
        }
        let cost = local_cost(&current);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, positions.iter().map(|&p| current[p]).collect()));
        }
        // odometer, last slot fastest
        let mut slot = positions.len();
        loop {
            if slot == 0 {
                let (cost, picked) = best.expect("at least one combination");
                let mut vertices = tour.vertices().to_vec();
                for (&p, v) in positions.iter().zip(picked) {
                    vertices[p] = v;
                }
                return Tour::from_parts(instance, vertices, tour.weight() - base + cost);
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < choices[slot].len() {
                break;
            }
            idx[slot] = 0;
        }
    }
}
