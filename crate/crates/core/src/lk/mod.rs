//! Lin-Kernighan style path search for the GTSP.
//!
//! The main loop breaks the current tour at each edge in turn and hands the
//! resulting path to a recursive search. Up to depth `alpha` every break
//! edge is tried (backtracking); deeper levels follow only the edge with
//! the largest gain. The first tour shorter than the current one is taken.

mod hooks;

pub use hooks::{
    close_up, gain_basic, gain_closest, gain_is_acceptable, gain_shortest, rearrange_path, ClusterDistanceCache,
};

use std::fmt;

use crate::co::cluster_optimize;
use crate::construct::nearest_neighbour;
use crate::error::{SolveError, TourError};
use crate::exact::{relax, w_co, ExactPathTables};
use crate::instance::{GtspInstance, Weight};
use crate::tour::{PathView, Tour};

/// How vertices are re-selected while the path is rearranged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variation {
    Basic,
    Closest,
    Shortest,
    Exact,
}

impl Variation {
    pub fn letter(self) -> char {
        match self {
            Variation::Basic => 'B',
            Variation::Closest => 'C',
            Variation::Shortest => 'S',
            Variation::Exact => 'E',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'B' => Some(Variation::Basic),
            'C' => Some(Variation::Closest),
            'S' => Some(Variation::Shortest),
            'E' => Some(Variation::Exact),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variation::Basic => "basic",
            Variation::Closest => "closest",
            Variation::Shortest => "shortest",
            Variation::Exact => "exact",
        }
    }
}

/// When a rearranged path is good enough to close up or extend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GainOption {
    /// 1: shorter than the path the search started from.
    PathShorter = 1,
    /// 2: shorter than the tour after adding an average edge.
    AverageEdge = 2,
    /// 3: shorter than the tour after restoring the broken edge.
    RestoredEdge = 3,
    /// 4: shorter than the tour.
    Optimistic = 4,
    /// 5: shorter than the tour after adding half an average edge.
    HalfAverageEdge = 5,
}

impl GainOption {
    pub fn from_number(x: u8) -> Option<Self> {
        match x {
            1 => Some(GainOption::PathShorter),
            2 => Some(GainOption::AverageEdge),
            3 => Some(GainOption::RestoredEdge),
            4 => Some(GainOption::Optimistic),
            5 => Some(GainOption::HalfAverageEdge),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolverConfig {
    pub variation: Variation,
    pub gain: GainOption,
    /// Depth up to which every break edge is tried.
    pub alpha: usize,
    /// Apply cluster optimization to every accepted tour. Exact always does.
    pub co_on_improvement: bool,
    /// Run number; selects the construction start cluster.
    pub run: usize,
    /// Consecutive idle edge trials before stopping; defaults to `m`.
    pub idle_limit: Option<usize>,
}

impl SolverConfig {
    pub fn new(variation: Variation, gain: GainOption, alpha: usize, co_on_improvement: bool) -> Self {
        SolverConfig {
            variation,
            gain,
            alpha,
            co_on_improvement,
            run: 1,
            idle_limit: None,
        }
    }

    pub fn with_run(mut self, run: usize) -> Self {
        self.run = run;
        self
    }

    /// Short name such as `LK-S-5-2-co`.
    pub fn id(&self) -> String {
        let co = if self.co_on_improvement && self.variation != Variation::Exact {
            "-co"
        } else {
            ""
        };
        format!(
            "LK-{}-{}-{}{}",
            self.variation.letter(),
            self.gain.number(),
            self.alpha,
            co
        )
    }

    fn validate(&self, instance: &GtspInstance) -> Result<(), SolveError> {
        if self.alpha == 0 {
            return Err(SolveError::InvalidConfig("alpha must be at least 1".into()));
        }
        if self.idle_limit == Some(0) {
            return Err(SolveError::InvalidConfig("idle limit must be at least 1".into()));
        }
        if !instance.is_symmetric() && self.variation != Variation::Exact {
            return Err(SolveError::AsymmetricInstance(self.variation.name()));
        }
        Ok(())
    }
}

impl fmt::Display for SolverConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Counters collected during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LkStats {
    /// Weight of the tour after every accepted improvement.
    pub accepted_weights: Vec<Weight>,
    pub edge_trials: u64,
    pub gain_evaluations: u64,
    /// Vertex pairs examined by Shortest gain evaluations.
    pub pair_evaluations: u64,
    /// Shortest candidates skipped by the `w_min` bound.
    pub filtered: u64,
    /// Shortest candidates evaluated although their bound could not beat
    /// the best gain so far. Always zero.
    pub filter_violations: u64,
    /// Break vertices taken from a restricted cluster. Always zero.
    pub restricted_violations: u64,
    pub max_depth: usize,
}

/// Improves `start` with the configured variation.
pub fn lk_run(instance: &GtspInstance, start: &Tour, config: &SolverConfig) -> Result<Tour, SolveError> {
    lk_run_with_stats(instance, start, config).map(|(t, _)| t)
}

/// Nearest-neighbour construction from the configured run, then [`lk_run`].
pub fn solve(instance: &GtspInstance, config: &SolverConfig) -> Result<Tour, SolveError> {
    let start = nearest_neighbour(instance, config.run)?;
    lk_run(instance, &start, config)
}

pub fn lk_run_with_stats(
    instance: &GtspInstance,
    start: &Tour,
    config: &SolverConfig,
) -> Result<(Tour, LkStats), SolveError> {
    config.validate(instance)?;
    let checked = Tour::new(instance, start.vertices().to_vec())?;
    if checked.weight() != start.weight() {
        return Err(TourError::WeightMismatch {
            stated: start.weight(),
            actual: checked.weight(),
        }
        .into());
    }
    let m = instance.m();
    let mut stats = LkStats::default();
    if m < 4 {
        return Ok((checked, stats));
    }
    let cache = ClusterDistanceCache::new(instance);
    let idle_limit = config.idle_limit.unwrap_or(m);
    let mut tour = checked;
    let mut idle = 0;
    let mut k = 0;
    while idle < idle_limit {
        stats.edge_trials += 1;
        let path = PathView::from_tour(instance, &tour, k);
        let mut search = Search {
            instance,
            config,
            cache: &cache,
            stats: &mut stats,
            restricted: vec![false; m],
            tour_weight: tour.weight(),
            original_path_weight: path.weight,
        };
        match search.improve_path(&path, 1) {
            Some(better) if better.weight() < tour.weight() => {
                let better = if config.co_on_improvement && config.variation != Variation::Exact {
                    cluster_optimize(instance, &better)
                } else {
                    better
                };
                // keep the broken edge's position so the cycle resumes after it
                let mut vertices = better.into_vertices();
                vertices.rotate_right(k);
                let weight = instance.cycle_weight(&vertices);
                tour = Tour::from_parts(instance, vertices, weight);
                stats.accepted_weights.push(tour.weight());
                log::debug!("{}: accepted {} at edge {}", config.id(), tour.weight(), k);
                idle = 0;
            }
            _ => idle += 1,
        }
        k = (k + 1) % m;
    }
    Ok((tour, stats))
}

struct Search<'a> {
    instance: &'a GtspInstance,
    config: &'a SolverConfig,
    cache: &'a ClusterDistanceCache,
    stats: &'a mut LkStats,
    /// Clusters whose vertex may not be the break vertex `x`.
    restricted: Vec<bool>,
    tour_weight: Weight,
    original_path_weight: Weight,
}

impl Search<'_> {
    /// Returns the first tour found that is shorter than the current one.
    fn improve_path(&mut self, path: &PathView, depth: usize) -> Option<Tour> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let m = path.len();
        if m < 4 {
            return None;
        }
        let candidates: Vec<usize> = (1..=m - 3)
            .filter(|&i| !self.restricted[self.instance.cluster_of(path.vertices[i])])
            .collect();
        if candidates.is_empty() {
            return None;
        }
        if self.config.variation == Variation::Exact {
            return self.improve_path_exact(path, depth, &candidates);
        }
        if depth >= self.config.alpha {
            let i = self.best_candidate(path, &candidates)?;
            return self.try_break(path, i, depth, None);
        }
        candidates
            .into_iter()
            .find_map(|i| self.try_break(path, i, depth, None))
    }

    /// First candidate with the largest gain.
    fn best_candidate(&mut self, path: &PathView, candidates: &[usize]) -> Option<usize> {
        let inst = self.instance;
        let v = &path.vertices;
        let e_cluster = inst.cluster_of(v[v.len() - 1]);
        let mut best: Option<(Weight, usize)> = None;
        for &i in candidates {
            let gain = match self.config.variation {
                Variation::Basic => gain_basic(inst, v, i),
                Variation::Closest => gain_closest(inst, v, i).0,
                Variation::Shortest => {
                    let xc = inst.cluster_of(v[i]);
                    let bound = self.cache.w_min(xc, inst.cluster_of(v[i + 1])) - self.cache.w_min(xc, e_cluster);
                    let threshold = best.map(|(g, _)| g);
                    if threshold.is_some_and(|g| bound <= g) {
                        self.stats.filtered += 1;
                        continue;
                    }
                    if threshold.is_some_and(|g| bound <= g) {
                        self.stats.filter_violations += 1;
                    }
                    self.stats.pair_evaluations += (inst.cluster(xc).len() * inst.cluster(e_cluster).len()) as u64;
                    gain_shortest(inst, v, i).0
                }
                Variation::Exact => unreachable!("exact gains come from suffix tables"),
            };
            self.stats.gain_evaluations += 1;
            if best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, i));
            }
        }
        best.map(|(_, i)| i)
    }

    fn improve_path_exact(&mut self, path: &PathView, depth: usize, candidates: &[usize]) -> Option<Tour> {
        let inst = self.instance;
        let order: Vec<usize> = path.vertices.iter().map(|&v| inst.cluster_of(v)).collect();
        let mut tables = ExactPathTables::build(inst, &order, true);
        let path_wco = w_co(inst, &order);
        let mut l_v = vec![0; inst.cluster(order[0]).len()];
        let mut at = 0;
        let mut values = Vec::with_capacity(candidates.len());
        let deep = depth >= self.config.alpha;
        for &i in candidates {
            while at < i {
                l_v = relax(inst, inst.cluster(order[at]), &l_v, inst.cluster(order[at + 1]), &mut 0);
                at += 1;
            }
            let value = tables.evaluate(inst, i, &l_v);
            self.stats.gain_evaluations += 1;
            if deep {
                values.push((path_wco - value, i, value));
            } else if let Some(t) = self.try_break(path, i, depth, Some(value)) {
                return Some(t);
            }
        }
        let mut best: Option<(Weight, usize, Weight)> = None;
        for c in values {
            if best.is_none_or(|b| c.0 > b.0) {
                best = Some(c);
            }
        }
        let (_, i, value) = best?;
        self.try_break(path, i, depth, Some(value))
    }

    /// Rearranges at position `i`, and if acceptable closes up or recurses.
    /// `exact_value` is the rearranged `w_co`, known in advance for Exact.
    fn try_break(&mut self, path: &PathView, i: usize, depth: usize, exact_value: Option<Weight>) -> Option<Tour> {
        let inst = self.instance;
        let v = &path.vertices;
        let (xc, yc) = (inst.cluster_of(v[i]), inst.cluster_of(v[i + 1]));
        if self.restricted[xc] {
            self.stats.restricted_violations += 1;
        }
        let variation = self.config.variation;
        let removed = match variation {
            Variation::Exact => self.cache.w_min(xc, yc),
            _ => inst.w(v[i], v[i + 1]),
        };
        let accept = |w: Weight| {
            gain_is_acceptable(
                self.config.gain,
                w,
                removed,
                self.tour_weight,
                self.original_path_weight,
                v.len(),
            )
        };
        if exact_value.is_some_and(|w| !accept(w)) {
            return None;
        }
        let next = rearrange_path(inst, path, i, variation);
        debug_assert!(exact_value.is_none_or(|w| w == next.weight));
        if !accept(next.weight) {
            return None;
        }
        let closed = close_up(inst, &next, variation);
        if closed.weight() < self.tour_weight {
            return Some(closed);
        }
        self.restricted[xc] = true;
        let found = self.improve_path(&next, depth + 1);
        self.restricted[xc] = false;
        found
    }
}
