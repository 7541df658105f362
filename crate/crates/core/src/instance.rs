//! Problem representation: vertices, integer weights and the cluster partition.

use std::fmt;

use crate::error::InstanceError;

/// Edge weights are integers, following the TSPLIB convention.
pub type Weight = i64;

/// How the weight matrix of an instance was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    Euc2d,
    Ceil2d,
    Geo,
    Att,
    Explicit,
}

impl WeightKind {
    pub fn keyword(self) -> &'static str {
        match self {
            WeightKind::Euc2d => "EUC_2D",
            WeightKind::Ceil2d => "CEIL_2D",
            WeightKind::Geo => "GEO",
            WeightKind::Att => "ATT",
            WeightKind::Explicit => "EXPLICIT",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "EUC_2D" => Some(WeightKind::Euc2d),
            "CEIL_2D" => Some(WeightKind::Ceil2d),
            "GEO" => Some(WeightKind::Geo),
            "ATT" => Some(WeightKind::Att),
            "EXPLICIT" => Some(WeightKind::Explicit),
            _ => None,
        }
    }

    /// Distance between two points under this metric. `Explicit` has no
    /// geometric definition and returns `None`.
    pub fn distance(self, a: [f64; 2], b: [f64; 2]) -> Option<Weight> {
        match self {
            WeightKind::Euc2d => Some(euc_2d(a, b)),
            WeightKind::Ceil2d => Some(ceil_2d(a, b)),
            WeightKind::Geo => Some(geo(a, b)),
            WeightKind::Att => Some(att(a, b)),
            WeightKind::Explicit => None,
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

fn nint(x: f64) -> Weight {
    (x + 0.5) as Weight
}

fn euc_2d(a: [f64; 2], b: [f64; 2]) -> Weight {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    nint((dx * dx + dy * dy).sqrt())
}

fn ceil_2d(a: [f64; 2], b: [f64; 2]) -> Weight {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt().ceil() as Weight
}

/// Pseudo-Euclidean distance of the `att` instances.
fn att(a: [f64; 2], b: [f64; 2]) -> Weight {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let r = ((dx * dx + dy * dy) / 10.0).sqrt();
    let t = nint(r);
    if (t as f64) < r {
        t + 1
    } else {
        t
    }
}

fn geo_radians(x: f64) -> f64 {
    // the truncated value is part of the GEO distance definition
    #[allow(clippy::approx_constant)]
    const PI: f64 = 3.141592;
    let deg = x.trunc();
    let min = x - deg;
    PI * (deg + 5.0 * min / 3.0) / 180.0
}

/// Geographical distance; coordinates are `DDD.MM` latitude/longitude.
fn geo(a: [f64; 2], b: [f64; 2]) -> Weight {
    const RRR: f64 = 6378.388;
    let (lat_a, lon_a) = (geo_radians(a[0]), geo_radians(a[1]));
    let (lat_b, lon_b) = (geo_radians(b[0]), geo_radians(b[1]));
    let q1 = (lon_a - lon_b).cos();
    let q2 = (lat_a - lat_b).cos();
    let q3 = (lat_a + lat_b).cos();
    (RRR * (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).acos() + 1.0) as Weight
}

/// An immutable GTSP instance.
///
/// Vertices are `0..n`. Clusters are stored as ascending vertex lists and
/// together form a partition of the vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct GtspInstance {
    name: String,
    comment: Option<String>,
    kind: WeightKind,
    coords: Option<Vec<[f64; 2]>>,
    n: usize,
    weights: Vec<Weight>,
    clusters: Vec<Vec<usize>>,
    cluster_of: Vec<usize>,
    max_cluster: usize,
    symmetric: bool,
}

impl GtspInstance {
    /// Builds an instance from a full weight matrix.
    pub fn from_matrix(
        name: impl Into<String>,
        matrix: &[Vec<Weight>],
        clusters: Vec<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let n = matrix.len();
        let mut weights = Vec::with_capacity(n * n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            weights.extend_from_slice(row);
        }
        Self::build(name.into(), None, WeightKind::Explicit, None, n, weights, clusters)
    }

    /// Builds an instance from node coordinates and a geometric metric.
    pub fn from_coords(
        name: impl Into<String>,
        kind: WeightKind,
        coords: Vec<[f64; 2]>,
        clusters: Vec<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let n = coords.len();
        let mut weights = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    weights[i * n + j] = kind
                        .distance(coords[i], coords[j])
                        .ok_or(InstanceError::MissingCoordinates)?;
                }
            }
        }
        Self::build(name.into(), None, kind, Some(coords), n, weights, clusters)
    }

    pub(crate) fn build(
        name: String,
        comment: Option<String>,
        kind: WeightKind,
        coords: Option<Vec<[f64; 2]>>,
        n: usize,
        weights: Vec<Weight>,
        mut clusters: Vec<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        debug_assert_eq!(weights.len(), n * n);
        if let Some(w) = weights.iter().find(|&&w| w < 0) {
            return Err(InstanceError::NegativeWeight(*w));
        }
        if clusters.len() > n {
            return Err(InstanceError::DimensionMismatch(format!(
                "{} sets for {} vertices",
                clusters.len(),
                n
            )));
        }
        let mut cluster_of = vec![usize::MAX; n];
        for (c, members) in clusters.iter_mut().enumerate() {
            if members.is_empty() {
                return Err(InstanceError::EmptyCluster(c + 1));
            }
            members.sort_unstable();
            for &v in members.iter() {
                if v >= n {
                    return Err(InstanceError::VertexOutOfRange(v + 1));
                }
                if cluster_of[v] != usize::MAX {
                    return Err(InstanceError::OverlappingClusters(v + 1));
                }
                cluster_of[v] = c;
            }
        }
        if let Some(v) = cluster_of.iter().position(|&c| c == usize::MAX) {
            return Err(InstanceError::UnassignedVertex(v + 1));
        }
        let max_cluster = clusters.iter().map(Vec::len).max().unwrap_or(0);
        let symmetric = (0..n).all(|i| (i + 1..n).all(|j| weights[i * n + j] == weights[j * n + i]));
        Ok(GtspInstance {
            name,
            comment,
            kind,
            coords,
            n,
            weights,
            clusters,
            cluster_of,
            max_cluster,
            symmetric,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_comment(mut self, comment: Option<String>) -> Self {
        self.comment = comment;
        self
    }

    pub fn weight_kind(&self) -> WeightKind {
        self.kind
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of clusters.
    pub fn m(&self) -> usize {
        self.clusters.len()
    }

    /// Size of the largest cluster.
    pub fn s(&self) -> usize {
        self.max_cluster
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster(&self, c: usize) -> &[usize] {
        &self.clusters[c]
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    /// Weight of the arc `x -> y`.
    #[inline]
    pub fn w(&self, x: usize, y: usize) -> Weight {
        self.weights[x * self.n + y]
    }

    /// Weight of an open path; a single vertex has weight zero.
    pub fn path_weight(&self, path: &[usize]) -> Weight {
        path.windows(2).map(|p| self.w(p[0], p[1])).sum()
    }

    /// Weight of the cycle through `tour`, closing edge included.
    pub fn cycle_weight(&self, tour: &[usize]) -> Weight {
        match (tour.first(), tour.last()) {
            (Some(&first), Some(&last)) => self.path_weight(tour) + self.w(last, first),
            _ => 0,
        }
    }
}

/// Weight of the edge `x -> y`.
pub fn weight_of(instance: &GtspInstance, x: usize, y: usize) -> Weight {
    instance.w(x, y)
}

/// Sum of consecutive edge weights along `path`.
pub fn weight_of_path(instance: &GtspInstance, path: &[usize]) -> Weight {
    instance.path_weight(path)
}

/// Weight of a tour, recomputed from scratch.
pub fn weight_of_tour(instance: &GtspInstance, tour: &crate::tour::Tour) -> Weight {
    instance.cycle_weight(tour.vertices())
}

/// Converts a TSP instance with coordinates into a GTSP instance with `m`
/// clusters.
///
/// Centres are picked by farthest-point traversal, starting from the vertex
/// with lexicographically smallest coordinates (lowest index on ties). Every
/// other vertex joins its nearest centre, ties going to the centre chosen
/// first. Clusters are numbered in centre selection order and the result is
/// named `"{m}{name}"`.
pub fn cluster_tsp(tsp: &GtspInstance, m: usize) -> Result<GtspInstance, InstanceError> {
    let n = tsp.n();
    let coords = tsp.coords().ok_or(InstanceError::MissingCoordinates)?;
    if m < 2 {
        return Err(InstanceError::TooFewClusters(m));
    }
    if m > n {
        return Err(InstanceError::TooManyClusters { m, n });
    }

    let seed = (0..n)
        .min_by(|&a, &b| {
            coords[a][0]
                .total_cmp(&coords[b][0])
                .then(coords[a][1].total_cmp(&coords[b][1]))
                .then(a.cmp(&b))
        })
        .expect("non-empty instance");

    let mut centres = Vec::with_capacity(m);
    let mut is_centre = vec![false; n];
    let mut nearest = vec![Weight::MAX; n];
    let mut owner = vec![0usize; n];
    let mut next = seed;
    for c in 0..m {
        centres.push(next);
        is_centre[next] = true;
        for v in 0..n {
            let d = tsp.w(next, v);
            if d < nearest[v] {
                nearest[v] = d;
                owner[v] = c;
            }
        }
        if c + 1 < m {
            // farthest non-centre vertex, lowest index on ties
            let mut best: Option<usize> = None;
            for v in (0..n).filter(|&v| !is_centre[v]) {
                if best.is_none_or(|b| nearest[v] > nearest[b]) {
                    best = Some(v);
                }
            }
            next = best.expect("m <= n leaves a candidate");
        }
    }

    let mut clusters = vec![Vec::new(); m];
    for v in 0..n {
        let c = if is_centre[v] {
            centres.iter().position(|&x| x == v).unwrap()
        } else {
            owner[v]
        };
        clusters[c].push(v);
    }

    let name = format!("{}{}", m, tsp.name());
    let built = GtspInstance::build(
        name,
        tsp.comment.clone(),
        tsp.kind,
        tsp.coords.clone(),
        n,
        tsp.weights.clone(),
        clusters,
    )?;
    Ok(built)
}

/// Default cluster count for converted TSP instances: `ceil(n / 5)`.
pub fn default_cluster_count(n: usize) -> usize {
    n.div_ceil(5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euc_2d_hand_values() {
        let cases: [([f64; 2], [f64; 2], Weight); 11] = [
            ([0.0, 0.0], [3.0, 4.0], 5),
            ([0.0, 0.0], [1.0, 1.0], 1),
            ([0.0, 0.0], [1.0, 2.0], 2),
            ([0.0, 0.0], [2.0, 3.0], 4),
            ([0.0, 0.0], [0.5, 0.0], 1),
            ([0.0, 0.0], [10.0, 10.0], 14),
            ([1.0, 1.0], [4.0, 5.0], 5),
            ([0.0, 0.0], [7.0, 7.0], 10),
            ([0.0, 0.0], [6.0, 1.0], 6),
            ([2.0, 2.0], [2.0, 2.0], 0),
            ([-1.0, -1.0], [2.0, 3.0], 5),
        ];
        for (a, b, expected) in cases {
            assert_eq!(WeightKind::Euc2d.distance(a, b), Some(expected), "{a:?} {b:?}");
        }
    }

    #[test]
    fn ceil_att_geo_hand_values() {
        assert_eq!(ceil_2d([0.0, 0.0], [1.0, 1.0]), 2);
        assert_eq!(ceil_2d([0.0, 0.0], [3.0, 4.0]), 5);
        // sqrt(1000 / 10) = 10 exactly
        assert_eq!(att([0.0, 0.0], [30.0, 10.0]), 10);
        // sqrt(125 / 10) = 3.5355 -> nint 4
        assert_eq!(att([0.0, 0.0], [10.0, 5.0]), 4);
        // sqrt(90 / 10) = 3 exactly; sqrt(91/10) = 3.0166 -> nint 3 < r -> 4
        assert_eq!(att([0.0, 0.0], [9.0, 3.0]), 3);
        assert_eq!(att([0.0, 0.0], [9.0, 3.1622776601683795]), 4);
        // one degree of longitude on the equator: 6378.388 * pi/180 = 111.3 -> 112
        assert_eq!(geo([0.0, 0.0], [0.0, 1.0]), 112);
        // 30 minutes written as .30 is half a degree
        assert_eq!(geo([0.0, 0.0], [0.0, 0.30]), 56);
    }

    fn line_instance() -> GtspInstance {
        let xs = [0.0, 1.0, 2.0, 10.0, 11.0, 12.0];
        let coords = xs.iter().map(|&x| [x, 0.0]).collect();
        GtspInstance::from_coords("line6", WeightKind::Euc2d, coords, (0..6).map(|v| vec![v]).collect()).unwrap()
    }

    #[test]
    fn cluster_collinear_points() {
        let g = cluster_tsp(&line_instance(), 2).unwrap();
        assert_eq!(g.clusters(), &[vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(g.name(), "2line6");
    }

    #[test]
    fn cluster_singletons_when_m_equals_n() {
        let g = cluster_tsp(&line_instance(), 6).unwrap();
        assert!(g.clusters().iter().all(|c| c.len() == 1));
        assert_eq!(g.m(), 6);
    }

    #[test]
    fn cluster_count_errors() {
        assert!(matches!(
            cluster_tsp(&line_instance(), 1),
            Err(InstanceError::TooFewClusters(1))
        ));
        assert!(matches!(
            cluster_tsp(&line_instance(), 7),
            Err(InstanceError::TooManyClusters { m: 7, n: 6 })
        ));
        let explicit = GtspInstance::from_matrix("x", &[vec![0, 1], vec![1, 0]], vec![vec![0], vec![1]]).unwrap();
        assert!(matches!(
            cluster_tsp(&explicit, 2),
            Err(InstanceError::MissingCoordinates)
        ));
    }

    #[test]
    fn duplicate_points_still_give_nonempty_clusters() {
        let coords = vec![[0.0, 0.0]; 4];
        let tsp =
            GtspInstance::from_coords("dup", WeightKind::Euc2d, coords, (0..4).map(|v| vec![v]).collect()).unwrap();
        let g = cluster_tsp(&tsp, 4).unwrap();
        assert!(g.clusters().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn default_count_is_ceiling_of_fifth() {
        assert_eq!(default_cluster_count(48), 10);
        assert_eq!(default_cluster_count(50), 10);
        assert_eq!(default_cluster_count(51), 11);
    }

    #[test]
    fn validation_errors() {
        let m = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert!(matches!(
            GtspInstance::from_matrix("x", &m, vec![vec![0, 1], vec![1, 2]]),
            Err(InstanceError::OverlappingClusters(2))
        ));
        assert!(matches!(
            GtspInstance::from_matrix("x", &m, vec![vec![0, 1]]),
            Err(InstanceError::UnassignedVertex(3))
        ));
        assert!(matches!(
            GtspInstance::from_matrix("x", &m, vec![vec![0, 1, 2], vec![]]),
            Err(InstanceError::EmptyCluster(2))
        ));
    }

    #[test]
    fn symmetry_flag() {
        let sym = GtspInstance::from_matrix("s", &[vec![0, 2], vec![2, 0]], vec![vec![0], vec![1]]).unwrap();
        let asym = GtspInstance::from_matrix("a", &[vec![0, 2], vec![3, 0]], vec![vec![0], vec![1]]).unwrap();
        assert!(sym.is_symmetric());
        assert!(!asym.is_symmetric());
    }
}
