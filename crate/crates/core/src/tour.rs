use std::fmt;

use crate::error::TourError;
use crate::instance::{GtspInstance, Weight};

/// A feasible GTSP tour: one vertex per cluster, in cyclic order, with its
/// weight cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    vertices: Vec<usize>,
    weight: Weight,
}

impl Tour {
    /// Validates `vertices` as a tour of `instance` and computes its weight.
    pub fn new(instance: &GtspInstance, vertices: Vec<usize>) -> Result<Self, TourError> {
        check_feasible(instance, &vertices)?;
        let weight = instance.cycle_weight(&vertices);
        Ok(Tour { vertices, weight })
    }

    /// Skips validation. Callers guarantee feasibility and a correct weight;
    /// debug builds re-check both.
    pub(crate) fn from_parts(instance: &GtspInstance, vertices: Vec<usize>, weight: Weight) -> Self {
        debug_assert!(
            check_feasible(instance, &vertices).is_ok(),
            "infeasible tour {vertices:?}"
        );
        debug_assert_eq!(
            instance.cycle_weight(&vertices),
            weight,
            "stale weight for {vertices:?}"
        );
        Tour { vertices, weight }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Cluster visited at each position.
    pub fn cluster_order(&self, instance: &GtspInstance) -> Vec<usize> {
        self.vertices.iter().map(|&v| instance.cluster_of(v)).collect()
    }

    /// True when the tour is feasible and the cached weight is current.
    pub fn is_valid(&self, instance: &GtspInstance) -> bool {
        check_feasible(instance, &self.vertices).is_ok() && instance.cycle_weight(&self.vertices) == self.weight
    }

    /// Same cycle, starting at position `k`.
    pub fn rotated(&self, k: usize) -> Tour {
        let mut v = self.vertices.clone();
        if !v.is_empty() {
            let len = v.len();
            v.rotate_left(k % len);
        }
        Tour {
            vertices: v,
            weight: self.weight,
        }
    }

    /// Canonical representative for equality tests: rotated so that the
    /// vertex of cluster 0 comes first, and on symmetric instances reversed
    /// if needed so that the second vertex has a smaller cluster index than
    /// the last one.
    pub fn canonical(&self, instance: &GtspInstance) -> Tour {
        let m = self.vertices.len();
        if m == 0 {
            return self.clone();
        }
        let start = self
            .vertices
            .iter()
            .position(|&v| instance.cluster_of(v) == 0)
            .unwrap_or(0);
        let mut t = self.rotated(start);
        if instance.is_symmetric() && m > 2 {
            let second = instance.cluster_of(t.vertices[1]);
            let last = instance.cluster_of(t.vertices[m - 1]);
            if second > last {
                t.vertices[1..].reverse();
            }
        }
        t
    }

    /// Text form: 1-based vertex ids on one line, then `weight: W`.
    pub fn to_text(&self) -> String {
        let ids: Vec<String> = self.vertices.iter().map(|v| (v + 1).to_string()).collect();
        format!("{}\nweight: {}\n", ids.join(" "), self.weight)
    }

    /// Parses [`Tour::to_text`] output and checks it against `instance`.
    pub fn parse_text(instance: &GtspInstance, text: &str) -> Result<Tour, TourError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let ids = lines.next().ok_or_else(|| TourError::Malformed("empty input".into()))?;
        let vertices = ids
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(0) => Err(TourError::VertexOutOfRange(0)),
                Ok(v) => Ok(v - 1),
                Err(_) => Err(TourError::Malformed(format!("bad vertex id `{t}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let tour = Tour::new(instance, vertices)?;
        if let Some(line) = lines.next() {
            let stated = line
                .strip_prefix("weight:")
                .and_then(|w| w.trim().parse::<Weight>().ok())
                .ok_or_else(|| TourError::Malformed(format!("expected `weight: W`, found `{line}`")))?;
            if stated != tour.weight {
                return Err(TourError::WeightMismatch {
                    stated,
                    actual: tour.weight,
                });
            }
        }
        Ok(tour)
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_feasible(instance: &GtspInstance, vertices: &[usize]) -> Result<(), TourError> {
    let m = instance.m();
    if vertices.len() != m {
        return Err(TourError::WrongLength {
            got: vertices.len(),
            expected: m,
        });
    }
    let mut seen = vec![false; m];
    for &v in vertices {
        if v >= instance.n() {
            return Err(TourError::VertexOutOfRange(v + 1));
        }
        let c = instance.cluster_of(v);
        if std::mem::replace(&mut seen[c], true) {
            return Err(TourError::RepeatedCluster(c + 1));
        }
    }
    Ok(())
}

/// An open path `b -> ... -> e` that visits every cluster once, produced by
/// removing the edge `e -> b` from a tour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathView {
    pub vertices: Vec<usize>,
    /// Weight of the open path (no closing edge).
    pub weight: Weight,
}

impl PathView {
    pub fn new(instance: &GtspInstance, vertices: Vec<usize>) -> Self {
        let weight = instance.path_weight(&vertices);
        PathView { vertices, weight }
    }

    /// Breaks `tour` at the edge entering position `k`: the path starts at
    /// `tour[k]` and ends at `tour[k - 1]`.
    pub fn from_tour(instance: &GtspInstance, tour: &Tour, k: usize) -> Self {
        let m = tour.len();
        let mut v = tour.vertices().to_vec();
        v.rotate_left(k % m.max(1));
        let closing = instance.w(v[m - 1], v[0]);
        PathView {
            vertices: v,
            weight: tour.weight() - closing,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }
}
