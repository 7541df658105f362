//! Exhaustive reference solvers. Slow on purpose: they share no code with
//! the algorithms they check.

use crate::error::SolveError;
use crate::instance::{GtspInstance, Weight};
use crate::tour::Tour;

/// Calls `visit` for every vertex selection of `order`, in lexicographic
/// order of the vertex sequence.
fn for_each_selection(instance: &GtspInstance, order: &[usize], mut visit: impl FnMut(&[usize])) {
    let mut sets: Vec<Vec<usize>> = order.iter().map(|&c| instance.cluster(c).to_vec()).collect();
    for s in &mut sets {
        s.sort_unstable();
    }
    let mut idx = vec![0usize; order.len()];
    let mut current: Vec<usize> = sets.iter().map(|s| s[0]).collect();
    loop {
        visit(&current);
        let mut p = order.len();
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < sets[p].len() {
                current[p] = sets[p][idx[p]];
                break;
            }
            idx[p] = 0;
            current[p] = sets[p][0];
        }
    }
}

/// Best vertex selection for the cluster order of `tour`, found by trying
/// every combination. Ties go to the lexicographically smallest sequence.
pub fn co_brute_force(instance: &GtspInstance, tour: &Tour) -> Tour {
    let order = tour.cluster_order(instance);
    let mut best: Option<(Weight, Vec<usize>)> = None;
    for_each_selection(instance, &order, |sel| {
        let w = cycle(instance, sel);
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, sel.to_vec()));
        }
    });
    let (_, vertices) = best.expect("non-empty instance");
    Tour::new(instance, vertices).expect("selection is feasible")
}

/// Shortest cycle visiting the clusters in `order`.
pub fn co_weight_brute(instance: &GtspInstance, order: &[usize]) -> Weight {
    let mut best = Weight::MAX;
    for_each_selection(instance, order, |sel| best = best.min(cycle(instance, sel)));
    best
}

/// Shortest open path visiting the clusters in `order`.
pub fn path_co_weight_brute(instance: &GtspInstance, order: &[usize]) -> Weight {
    let mut best = Weight::MAX;
    for_each_selection(instance, order, |sel| best = best.min(path(instance, sel)));
    best
}

/// Number of complete tours the exhaustive search may have to visit.
pub fn search_space(instance: &GtspInstance) -> u128 {
    let m = instance.m();
    let selections: u128 = instance.clusters().iter().map(|c| c.len() as u128).product();
    let orders: u128 = (1..m as u128).product();
    selections.saturating_mul(orders.max(1))
}

/// A globally optimal tour found by depth-first search with bound pruning.
/// Refuses to start when the search space exceeds `budget`.
pub fn brute_force_optimum(instance: &GtspInstance, budget: u128) -> Result<Tour, SolveError> {
    let needed = search_space(instance);
    if needed > budget {
        return Err(SolveError::BudgetExceeded { budget, needed });
    }
    let m = instance.m();
    let mut best = (Weight::MAX, Vec::new());
    let mut used = vec![false; m];
    used[0] = true;
    let mut stack = Vec::with_capacity(m);
    for &v in instance.cluster(0) {
        stack.push(v);
        dfs(instance, &mut used, &mut stack, 0, &mut best);
        stack.pop();
    }
    Ok(Tour::new(instance, best.1)?)
}

fn dfs(
    instance: &GtspInstance,
    used: &mut [bool],
    stack: &mut Vec<usize>,
    len: Weight,
    best: &mut (Weight, Vec<usize>),
) {
    if len >= best.0 {
        return;
    }
    let last = *stack.last().expect("stack holds the start");
    if stack.len() == used.len() {
        let total = len + instance.w(last, stack[0]);
        if total < best.0 {
            *best = (total, stack.clone());
        }
        return;
    }
    for c in 0..used.len() {
        if used[c] {
            continue;
        }
        used[c] = true;
        for &v in instance.cluster(c) {
            stack.push(v);
            dfs(instance, used, stack, len + instance.w(last, v), best);
            stack.pop();
        }
        used[c] = false;
    }
}

fn path(instance: &GtspInstance, vs: &[usize]) -> Weight {
    vs.windows(2).map(|p| instance.w(p[0], p[1])).sum()
}

fn cycle(instance: &GtspInstance, vs: &[usize]) -> Weight {
    path(instance, vs) + instance.w(vs[vs.len() - 1], vs[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::theorem_one;

    #[test]
    fn fixture_optimum_is_one() {
        let g = theorem_one();
        let opt = brute_force_optimum(&g, 1_000_000).unwrap();
        assert_eq!(opt.weight(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let g = theorem_one();
        // 2 selections x 4! orders
        assert_eq!(search_space(&g), 48);
        assert_eq!(
            brute_force_optimum(&g, 10),
            Err(SolveError::BudgetExceeded { budget: 10, needed: 48 })
        );
    }

    #[test]
    fn selection_order_is_lexicographic() {
        let g = theorem_one();
        let mut seen = Vec::new();
        for_each_selection(&g, &[0, 1, 2], |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1, 2], vec![0, 5, 2]]);
    }
}
