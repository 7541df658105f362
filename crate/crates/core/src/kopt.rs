//! 2-opt and 3-opt over the cluster order, combined with vertex
//! re-selection in one of five ways.
//!
//! Each candidate is first passed through the quick improvement and compared
//! with the current tour; an accepted candidate then gets the slow
//! improvement and the scan restarts. Scans are first-improvement by
//! increasing positions.

use std::fmt;

use crate::co::cluster_optimize;
use crate::error::SolveError;
use crate::instance::{GtspInstance, Weight};
use crate::tour::Tour;

/// Quick/slow improvement pairs: I is the identity, L local re-selection in
/// the clusters next to the changed edges, CO full cluster optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdaptationOption {
    /// (I, I)
    Opt1,
    /// (I, CO)
    Opt2,
    /// (L, I)
    Opt3,
    /// (L, CO)
    Opt4,
    /// (CO, I)
    Opt5,
}

impl AdaptationOption {
    pub const ALL: [AdaptationOption; 5] = [
        AdaptationOption::Opt1,
        AdaptationOption::Opt2,
        AdaptationOption::Opt3,
        AdaptationOption::Opt4,
        AdaptationOption::Opt5,
    ];

    pub fn from_number(x: u8) -> Option<Self> {
        Self::ALL.get((x as usize).wrapping_sub(1)).copied()
    }

    pub fn number(self) -> u8 {
        Self::ALL.iter().position(|&o| o == self).unwrap() as u8 + 1
    }

    /// Suffix used in heuristic names: `B`, `B-co`, `L`, `L-co` or `CO`.
    pub fn suffix(self) -> &'static str {
        match self {
            AdaptationOption::Opt1 => "B",
            AdaptationOption::Opt2 => "B-co",
            AdaptationOption::Opt3 => "L",
            AdaptationOption::Opt4 => "L-co",
            AdaptationOption::Opt5 => "CO",
        }
    }

    pub fn from_suffix(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.suffix().eq_ignore_ascii_case(s))
    }

    fn slow_co(self) -> bool {
        matches!(self, AdaptationOption::Opt2 | AdaptationOption::Opt4)
    }
}

impl fmt::Display for AdaptationOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

/// A contiguous run of old positions `lo..=hi`, possibly reversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Piece {
    lo: usize,
    hi: usize,
    rev: bool,
}

impl Piece {
    fn len(self) -> usize {
        self.hi - self.lo + 1
    }

    fn at(self, off: usize) -> usize {
        if self.rev {
            self.hi - off
        } else {
            self.lo + off
        }
    }
}

/// A k-exchange described without copying the tour: positions `i+1..=k`
/// are replaced by `first` followed by `second`.
#[derive(Debug, Clone, Copy)]
struct Move {
    i: usize,
    k: usize,
    /// Old positions after which an edge is removed.
    cut: [usize; 3],
    cuts: usize,
    first: Piece,
    second: Option<Piece>,
}

impl Move {
    /// Old position of the vertex at new position `p`.
    fn source(&self, p: usize) -> usize {
        if p <= self.i || p > self.k {
            return p;
        }
        let off = p - self.i - 1;
        let len1 = self.first.len();
        if off < len1 {
            self.first.at(off)
        } else {
            self.second.expect("offset within the move").at(off - len1)
        }
    }

    fn vertex(&self, t: &[usize], p: usize) -> usize {
        t[self.source(p % t.len())]
    }

    /// New positions after which an edge is added.
    fn joins(&self) -> ([usize; 3], usize) {
        match self.second {
            Some(_) => ([self.i, self.i + self.first.len(), self.k], 3),
            None => ([self.i, self.k, 0], 2),
        }
    }

    /// Weight change of the raw exchange on a symmetric instance.
    fn delta(&self, instance: &GtspInstance, t: &[usize]) -> Weight {
        let m = t.len();
        let (joins, n) = self.joins();
        let added: Weight = joins[..n]
            .iter()
            .map(|&p| instance.w(self.vertex(t, p), self.vertex(t, p + 1)))
            .sum();
        let removed: Weight = self.cut[..self.cuts]
            .iter()
            .map(|&p| instance.w(t[p], t[(p + 1) % m]))
            .sum();
        added - removed
    }

    fn materialize(&self, t: &[usize]) -> Vec<usize> {
        (0..t.len()).map(|p| self.vertex(t, p)).collect()
    }

    /// New positions whose clusters local re-selection may change: the
    /// first and last vertex of the rearranged stretch.
    fn touched(&self) -> [usize; 2] {
        [self.i + 1, self.k]
    }
}

/// Best re-selection in the two touched positions of a virtual tour.
/// Returns the improvement over the raw exchange and the chosen vertices.
fn local_choice(instance: &GtspInstance, t: &[usize], mv: &Move) -> (Weight, usize, usize) {
    let m = t.len();
    let [p1, p2] = mv.touched();
    let mut arcs = [(p1 + m - 1) % m, p1, (p2 + m - 1) % m, p2 % m];
    arcs.sort_unstable();
    let mut unique = [0usize; 4];
    let mut n = 0;
    for a in arcs {
        if n == 0 || unique[n - 1] != a {
            unique[n] = a;
            n += 1;
        }
    }
    let arcs = &unique[..n];
    let (v1, v2) = (mv.vertex(t, p1), mv.vertex(t, p2));
    let cost = |a: usize, b: usize| -> Weight {
        let at = |p: usize| {
            let p = p % m;
            if p == p1 {
                a
            } else if p == p2 % m {
                b
            } else {
                mv.vertex(t, p)
            }
        };
        arcs.iter().map(|&q| instance.w(at(q), at(q + 1))).sum()
    };
    let raw = cost(v1, v2);
    let mut best = (raw, v1, v2);
    let mut first = true;
    for &a in instance.cluster(instance.cluster_of(v1)) {
        for &b in instance.cluster(instance.cluster_of(v2)) {
            let c = cost(a, b);
            if first || c < best.0 {
                best = (c, a, b);
                first = false;
            }
        }
    }
    (raw - best.0, best.1, best.2)
}

/// Applies `mv` if its quick-improved weight beats the tour.
fn try_move(instance: &GtspInstance, tour: &Tour, mv: &Move, option: AdaptationOption) -> Option<Tour> {
    let t = tour.vertices();
    let current = tour.weight();
    let candidate = match option {
        AdaptationOption::Opt1 | AdaptationOption::Opt2 => {
            let d = mv.delta(instance, t);
            if current + d >= current {
                return None;
            }
            let vertices = mv.materialize(t);
            Tour::from_parts(instance, vertices, current + d)
        }
        AdaptationOption::Opt3 | AdaptationOption::Opt4 => {
            let raw = current + mv.delta(instance, t);
            let (saved, a, b) = local_choice(instance, t, mv);
            if raw - saved >= current {
                return None;
            }
            let mut vertices = mv.materialize(t);
            let [p1, p2] = mv.touched();
            vertices[p1] = a;
            vertices[p2 % t.len()] = b;
            Tour::from_parts(instance, vertices, raw - saved)
        }
        AdaptationOption::Opt5 => {
            let vertices = mv.materialize(t);
            let weight = instance.cycle_weight(&vertices);
            let co = cluster_optimize(instance, &Tour::from_parts(instance, vertices, weight));
            if co.weight() >= current {
                return None;
            }
            co
        }
    };
    Some(if option.slow_co() {
        cluster_optimize(instance, &candidate)
    } else {
        candidate
    })
}

fn check_symmetric(instance: &GtspInstance, name: &'static str) -> Result<(), SolveError> {
    if instance.is_symmetric() {
        Ok(())
    } else {
        Err(SolveError::AsymmetricInstance(name))
    }
}

fn descend(
    instance: &GtspInstance,
    start: &Tour,
    option: AdaptationOption,
    moves: impl Fn(usize) -> Vec<Move>,
) -> Result<Tour, SolveError> {
    let mut tour = Tour::new(instance, start.vertices().to_vec())?;
    let all = moves(tour.len());
    'scan: loop {
        for mv in &all {
            if let Some(better) = try_move(instance, &tour, mv, option) {
                debug_assert!(better.weight() < tour.weight());
                tour = better;
                continue 'scan;
            }
        }
        return Ok(tour);
    }
}

/// Every 2-exchange: reverse positions `i+1..=j`.
fn two_opt_moves(m: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            out.push(Move {
                i,
                k: j,
                cut: [i, j, 0],
                cuts: 2,
                first: Piece {
                    lo: i + 1,
                    hi: j,
                    rev: true,
                },
                second: None,
            });
        }
    }
    out
}

/// Every 3-exchange of the segments `A = i+1..=j` and `B = j+1..=k`, in
/// the seven reconnections `A'B`, `AB'`, `B'A'`, `A'B'`, `BA`, `BA'`, `B'A`.
fn three_opt_moves(m: usize) -> Vec<Move> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let a = |rev| Piece { lo: i + 1, hi: j, rev };
                let b = |rev| Piece { lo: j + 1, hi: k, rev };
                for (first, second) in [
                    (a(true), b(false)),
                    (a(false), b(true)),
                    (b(true), a(true)),
                    (a(true), b(true)),
                    (b(false), a(false)),
                    (b(false), a(true)),
                    (b(true), a(false)),
                ] {
                    out.push(Move {
                        i,
                        k,
                        cut: [i, j, k],
                        cuts: 3,
                        first,
                        second: Some(second),
                    });
                }
            }
        }
    }
    out
}

/// 2-opt descent under `option`. Requires a symmetric instance.
pub fn two_opt(instance: &GtspInstance, tour: &Tour, option: AdaptationOption) -> Result<Tour, SolveError> {
    check_symmetric(instance, "2-opt")?;
    descend(instance, tour, option, two_opt_moves)
}

/// 3-opt descent under `option`. Requires a symmetric instance.
pub fn three_opt(instance: &GtspInstance, tour: &Tour, option: AdaptationOption) -> Result<Tour, SolveError> {
    check_symmetric(instance, "3-opt")?;
    descend(instance, tour, option, three_opt_moves)
}

/// All tours one 2-exchange away from `tour`, without re-selection.
pub fn two_opt_neighbours(tour: &Tour) -> Vec<Vec<usize>> {
    two_opt_moves(tour.len())
        .iter()
        .map(|mv| mv.materialize(tour.vertices()))
        .collect()
}
