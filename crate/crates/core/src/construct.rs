use crate::error::SolveError;
use crate::instance::GtspInstance;
use crate::tour::Tour;

/// Nearest-neighbour construction starting at the first vertex of cluster
/// `r` (1-based). Each step appends the closest vertex of a cluster not yet
/// visited; ties go to the lowest vertex id.
pub fn nearest_neighbour(instance: &GtspInstance, r: usize) -> Result<Tour, SolveError> {
    let m = instance.m();
    if r == 0 || r > m {
        return Err(SolveError::RunOutOfRange { r, m });
    }
    let mut visited = vec![false; m];
    let mut current = instance.cluster(r - 1)[0];
    visited[r - 1] = true;
    let mut vertices = Vec::with_capacity(m);
    vertices.push(current);
    for _ in 1..m {
        let next = (0..instance.n())
            .filter(|&v| !visited[instance.cluster_of(v)])
            .min_by_key(|&v| (instance.w(current, v), v))
            .expect("an unvisited cluster remains");
        visited[instance.cluster_of(next)] = true;
        vertices.push(next);
        current = next;
    }
    Ok(Tour::new(instance, vertices)?)
}
