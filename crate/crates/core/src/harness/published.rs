//! Published competition cells and per-instance results, turned into run
//! records so the competition logic can be checked against them.

use super::competition::Ladder;
use super::{Group, Groups, RunRecord};

const COMPETITION: &str = include_str!("../../data/published_competition.txt");
const DETAILED: &str = include_str!("../../data/detailed_results.txt");

/// Runs per heuristic and instance in the synthetic records.
pub const RUNS: usize = 10;

/// One heuristic printed in a competition cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PublishedEntry {
    pub limit_ms: f64,
    pub group: String,
    pub heuristic: String,
    /// Printed error in percent.
    pub error_percent: f64,
    pub is_winner: bool,
}

/// Entries in file order; the first entry of each cell is its winner.
pub fn competition_entries() -> Vec<PublishedEntry> {
    let mut out: Vec<PublishedEntry> = Vec::new();
    for line in data_lines(COMPETITION) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let limit_ms = f[0].parse::<f64>().expect("time limit") * 1e3;
        let group = f[1].to_string();
        let is_winner = !out.iter().any(|e| e.limit_ms == limit_ms && e.group == group);
        out.push(PublishedEntry {
            limit_ms,
            group,
            heuristic: f[2].to_string(),
            error_percent: f[3].parse().expect("error"),
            is_winner,
        });
    }
    out
}

/// The 2 ms to 50 s ladder of the published grid.
pub fn competition_ladder() -> Ladder {
    Ladder::extended()
}

/// One synthetic instance per group, named after the group.
pub fn competition_groups() -> Groups {
    let mut groups: Vec<Group> = Vec::new();
    for e in competition_entries() {
        if !groups.iter().any(|g| g.name == e.group) {
            groups.push(Group {
                instances: vec![e.group.to_ascii_lowercase()],
                name: e.group,
            });
        }
    }
    groups.sort_by_key(|g| {
        ["Tiniest", "Tiny", "Small", "Moderate", "Large", "Huge", "Giant"]
            .iter()
            .position(|n| *n == g.name)
    });
    Groups(groups)
}

/// Records reproducing the printed errors. A heuristic takes 0.9 of the
/// limit of the first cell where it won and 0.95 of the limit of the first
/// cell where it was only listed.
pub fn competition_records() -> Vec<RunRecord> {
    let mut seen: Vec<(String, String)> = Vec::new();
    let mut records = Vec::new();
    for e in competition_entries() {
        let key = (e.heuristic.clone(), e.group.clone());
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let factor = if e.is_winner { 0.9 } else { 0.95 };
        for run in 1..=RUNS {
            records.push(RunRecord {
                heuristic: e.heuristic.clone(),
                instance: e.group.to_ascii_lowercase(),
                run,
                time_ms: factor * e.limit_ms,
                weight: 0,
                error: e.error_percent / 100.0,
            });
        }
    }
    records
}

/// Per-instance mean error and time of nine heuristics on the instances
/// with at least 30 clusters, repeated as identical runs.
pub fn detailed_records() -> Vec<RunRecord> {
    let mut records = Vec::new();
    for line in data_lines(DETAILED) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let error: f64 = f[2].parse().expect("error");
        let time_ms: f64 = f[3].parse().expect("time");
        for run in 1..=RUNS {
            records.push(RunRecord {
                heuristic: f[1].to_string(),
                instance: f[0].to_string(),
                run,
                time_ms,
                weight: 0,
                error: error / 100.0,
            });
        }
    }
    records
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}
