use std::collections::{BTreeMap, BTreeSet};

use super::{Groups, RunRecord};

/// Increasing time limits in milliseconds.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder(Vec<f64>);

impl Ladder {
    pub fn new(limits_ms: Vec<f64>) -> Result<Self, String> {
        if limits_ms.is_empty() {
            return Err("time ladder is empty".into());
        }
        if limits_ms.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err("time limits must be positive".into());
        }
        if limits_ms.windows(2).any(|w| w[1] <= w[0]) {
            return Err("time limits must be strictly increasing".into());
        }
        Ok(Ladder(limits_ms))
    }

    /// 20 ms up to 50 s in 1-2-5 steps.
    pub fn standard() -> Self {
        Ladder(vec![20.0, 50.0, 100.0, 200.0, 500.0, 1e3, 2e3, 5e3, 10e3, 20e3, 50e3])
    }

    /// The standard ladder extended down to 2 ms.
    pub fn extended() -> Self {
        let mut limits = vec![2.0, 5.0, 10.0];
        limits.extend(Self::standard().0);
        Ladder(limits)
    }

    pub fn limits(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row label such as `≤ 2 ms` or `≤ 0.5 s`.
    pub fn label(&self, i: usize) -> String {
        let t = self.0[i];
        if t < 10.0 || (t < 100.0 && t.fract() == 0.0) {
            format!("≤ {t} ms")
        } else {
            format!("≤ {} s", t / 1e3)
        }
    }
}

/// Averages of one heuristic over one group.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub heuristic: String,
    pub error: f64,
    pub time_ms: f64,
    pub max_time_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Cell {
    pub winner: Option<Entry>,
    /// Heuristics close to the winner, best first. Excludes the winner.
    pub listed: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompetitionReport {
    pub ladder: Ladder,
    /// Group names in column order; groups without records are dropped.
    pub groups: Vec<String>,
    /// `cells[i][j]` for time limit `i` and group `j`.
    pub cells: Vec<Vec<Cell>>,
    /// Per group, every heuristic that completed all runs on all its instances.
    pub entries: Vec<Vec<Entry>>,
}

impl CompetitionReport {
    /// Winner of cell `(i, j)`, or of the closest populated cell above it.
    pub fn latest_winner(&self, i: usize, j: usize) -> Option<&Entry> {
        (0..=i).rev().find_map(|k| self.cells[k][j].winner.as_ref())
    }
}

/// Averages per (group, heuristic). A heuristic takes part in a group only
/// when it has the full number of runs on every group instance that appears
/// in the records.
fn group_entries(records: &[RunRecord], groups: &Groups) -> Vec<(String, Vec<Entry>)> {
    let mut per_pair: BTreeMap<(String, String), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        per_pair
            .entry((r.heuristic.clone(), r.instance.to_ascii_lowercase()))
            .or_default()
            .push(r);
    }
    let runs = per_pair.values().map(Vec::len).max().unwrap_or(0);
    let present: BTreeSet<&str> = per_pair.keys().map(|(_, i)| i.as_str()).collect();
    let heuristics: BTreeSet<&str> = per_pair.keys().map(|(h, _)| h.as_str()).collect();

    let mut out = Vec::new();
    for group in &groups.0 {
        let members: Vec<&str> = group
            .instances
            .iter()
            .map(String::as_str)
            .filter(|i| present.contains(i))
            .collect();
        if members.is_empty() {
            continue;
        }
        let mut entries = Vec::new();
        for &h in &heuristics {
            let mut runs_of_h: Vec<&RunRecord> = Vec::new();
            let mut complete = true;
            for &i in &members {
                match per_pair.get(&(h.to_string(), i.to_string())) {
                    Some(rs) if rs.len() == runs => runs_of_h.extend(rs),
                    _ => complete = false,
                }
            }
            if !complete {
                if !runs_of_h.is_empty() {
                    log::warn!("{h} is missing runs in group {}; left out", group.name);
                }
                continue;
            }
            let count = runs_of_h.len() as f64;
            entries.push(Entry {
                heuristic: h.to_string(),
                error: runs_of_h.iter().map(|r| r.error).sum::<f64>() / count,
                time_ms: runs_of_h.iter().map(|r| r.time_ms).sum::<f64>() / count,
                max_time_ms: runs_of_h.iter().map(|r| r.time_ms).fold(0.0, f64::max),
            });
        }
        out.push((group.name.clone(), entries));
    }
    out
}

fn better(a: &Entry, b: &Entry) -> std::cmp::Ordering {
    a.error
        .total_cmp(&b.error)
        .then(a.time_ms.total_cmp(&b.time_ms))
        .then_with(|| a.heuristic.cmp(&b.heuristic))
}

/// Fills every (time limit, group) cell with its winner and the
/// heuristics listed next to it.
///
/// A winner finishes every run of every group instance within the limit,
/// beats the error of the nearest winner above it in the column, and has
/// the smallest mean error, then the smallest mean time. Listed heuristics
/// meet the first two conditions and stay within 1.1 times the winner's
/// error and 1.2 times its time.
pub fn build_competition(records: &[RunRecord], groups: &Groups, ladder: &Ladder) -> CompetitionReport {
    let per_group = group_entries(records, groups);
    let mut cells = vec![vec![Cell::default(); per_group.len()]; ladder.len()];
    for (j, (_, entries)) in per_group.iter().enumerate() {
        let mut previous: Option<f64> = None;
        for (i, &limit) in ladder.limits().iter().enumerate() {
            let mut candidates: Vec<&Entry> = entries
                .iter()
                .filter(|e| e.max_time_ms <= limit && previous.is_none_or(|p| e.error < p))
                .collect();
            candidates.sort_by(|a, b| better(a, b));
            let Some(&winner) = candidates.first() else {
                continue;
            };
            let listed = candidates[1..]
                .iter()
                .filter(|e| e.error <= 1.1 * winner.error && e.time_ms <= 1.2 * winner.time_ms)
                .map(|&e| e.clone())
                .collect();
            previous = Some(winner.error);
            cells[i][j] = Cell {
                winner: Some(winner.clone()),
                listed,
            };
        }
    }
    let (groups, entries) = per_group.into_iter().unzip();
    CompetitionReport {
        ladder: ladder.clone(),
        groups,
        cells,
        entries,
    }
}

/// Mean relative distance of each heuristic to the winners.
///
/// For each group the heuristic is compared with the winner of the first
/// time limit it fits, or the nearest winner above when that cell is empty.
/// Groups where the heuristic fits no limit or the winner error is zero are
/// skipped with a warning. Heuristics with no usable group are omitted.
pub fn distance_to_winners(report: &CompetitionReport) -> BTreeMap<String, f64> {
    let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for (j, entries) in report.entries.iter().enumerate() {
        for e in entries {
            let Some(i) = report.ladder.limits().iter().position(|&t| e.max_time_ms <= t) else {
                log::warn!("{} exceeds every time limit in group {}", e.heuristic, report.groups[j]);
                continue;
            };
            let Some(w) = report.latest_winner(i, j) else {
                continue;
            };
            if w.error == 0.0 {
                log::warn!(
                    "winner error is zero in group {} at {}; {} skipped",
                    report.groups[j],
                    report.ladder.label(i),
                    e.heuristic
                );
                continue;
            }
            let slot = sums.entry(e.heuristic.clone()).or_insert((0.0, 0));
            slot.0 += (e.error - w.error) / w.error;
            slot.1 += 1;
        }
    }
    sums.into_iter().map(|(h, (s, n))| (h, s / n as f64)).collect()
}

/// Mean over all runs of each heuristic's time divided by the baseline's
/// mean time on the same instance. Instances the baseline did not solve,
/// or solved in zero time, are skipped.
pub fn relative_time(records: &[RunRecord], baseline: &str) -> BTreeMap<String, f64> {
    let mut base: BTreeMap<&str, (f64, usize)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.heuristic == baseline) {
        let slot = base.entry(&r.instance).or_insert((0.0, 0));
        slot.0 += r.time_ms;
        slot.1 += 1;
    }
    let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    for r in records {
        let Some(&(total, n)) = base.get(r.instance.as_str()) else {
            continue;
        };
        let mean = total / n as f64;
        if mean <= 0.0 {
            continue;
        }
        let slot = sums.entry(r.heuristic.clone()).or_insert((0.0, 0));
        slot.0 += r.time_ms / mean;
        slot.1 += 1;
    }
    sums.into_iter().map(|(h, (s, n))| (h, s / n as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Group;

    fn rec(h: &str, inst: &str, run: usize, time_ms: f64, error: f64) -> RunRecord {
        RunRecord {
            heuristic: h.into(),
            instance: inst.into(),
            run,
            time_ms,
            weight: 0,
            error,
        }
    }

    /// Every run of `h` on `inst` takes `time_ms` and has `error`.
    fn runs(out: &mut Vec<RunRecord>, h: &str, inst: &str, time_ms: f64, error: f64) {
        for r in 1..=3 {
            out.push(rec(h, inst, r, time_ms, error));
        }
    }

    fn one_group(instances: &[&str]) -> Groups {
        Groups(vec![Group {
            name: "G".into(),
            instances: instances.iter().map(|s| s.to_string()).collect(),
        }])
    }

    fn ladder() -> Ladder {
        Ladder::new(vec![10.0, 20.0, 50.0, 100.0]).unwrap()
    }

    fn winners(report: &CompetitionReport, j: usize) -> Vec<Option<&str>> {
        report
            .cells
            .iter()
            .map(|row| row[j].winner.as_ref().map(|w| w.heuristic.as_str()))
            .collect()
    }

    #[test]
    fn three_heuristic_fixture() {
        // fast: 8 ms, 5%; mid: 15 ms, 3%; twin: 16 ms, 3.2%; slow: 60/40 ms, 3.5% and 0.5%
        let mut r = Vec::new();
        runs(&mut r, "fast", "a", 8.0, 0.05);
        runs(&mut r, "fast", "b", 8.0, 0.05);
        runs(&mut r, "mid", "a", 15.0, 0.03);
        runs(&mut r, "mid", "b", 15.0, 0.03);
        runs(&mut r, "twin", "a", 16.0, 0.032);
        runs(&mut r, "twin", "b", 17.0, 0.032);
        runs(&mut r, "slow", "a", 60.0, 0.035);
        runs(&mut r, "slow", "b", 40.0, -0.025);
        let report = build_competition(&r, &one_group(&["a", "b"]), &ladder());
        assert_eq!(winners(&report, 0), vec![Some("fast"), Some("mid"), None, Some("slow")]);
        let listed: Vec<&str> = report.cells[1][0].listed.iter().map(|e| e.heuristic.as_str()).collect();
        assert_eq!(listed, vec!["twin"]);
        assert!(report.cells[0][0].listed.is_empty());
        let slow = report.cells[3][0].winner.as_ref().unwrap();
        assert!((slow.error - 0.005).abs() < 1e-12);
        assert_eq!(slow.max_time_ms, 60.0);
    }

    #[test]
    fn ties_go_to_the_faster_heuristic() {
        let mut r = Vec::new();
        runs(&mut r, "x", "a", 9.0, 0.02);
        runs(&mut r, "y", "a", 5.0, 0.02);
        let report = build_competition(&r, &one_group(&["a"]), &ladder());
        assert_eq!(report.cells[0][0].winner.as_ref().unwrap().heuristic, "y");
        // x is within 1.1x error but not within 1.2x time
        assert!(report.cells[0][0].listed.is_empty());
    }

    #[test]
    fn single_heuristic_wins_once() {
        let mut r = Vec::new();
        runs(&mut r, "only", "a", 15.0, 0.04);
        let report = build_competition(&r, &one_group(&["a"]), &ladder());
        assert_eq!(winners(&report, 0), vec![None, Some("only"), None, None]);
    }

    #[test]
    fn incomplete_heuristics_do_not_compete() {
        let mut r = Vec::new();
        runs(&mut r, "full", "a", 5.0, 0.04);
        runs(&mut r, "full", "b", 5.0, 0.04);
        runs(&mut r, "partial", "a", 1.0, 0.0);
        r.push(rec("short", "a", 1, 1.0, 0.0));
        r.push(rec("short", "b", 1, 1.0, 0.0));
        let report = build_competition(&r, &one_group(&["a", "b", "absent"]), &ladder());
        assert_eq!(report.entries[0].len(), 1);
        assert_eq!(winners(&report, 0)[0], Some("full"));
    }

    #[test]
    fn groups_without_records_are_dropped() {
        let mut r = Vec::new();
        runs(&mut r, "h", "a", 5.0, 0.04);
        let groups = Groups(vec![
            Group {
                name: "Empty".into(),
                instances: vec!["zzz".into()],
            },
            Group {
                name: "G".into(),
                instances: vec!["a".into()],
            },
        ]);
        let report = build_competition(&r, &groups, &ladder());
        assert_eq!(report.groups, vec!["G".to_string()]);
        let empty = build_competition(&[], &groups, &ladder());
        assert!(empty.groups.is_empty());
        assert_eq!(empty.cells.len(), 4);
    }

    #[test]
    fn winners_strictly_improve_down_each_column() {
        let mut r = Vec::new();
        for (k, (t, e)) in [(3.0, 0.09), (12.0, 0.09), (18.0, 0.07), (30.0, 0.08), (70.0, 0.01)]
            .into_iter()
            .enumerate()
        {
            runs(&mut r, &format!("h{k}"), "a", t, e);
        }
        let report = build_competition(&r, &one_group(&["a"]), &ladder());
        let errors: Vec<f64> = report
            .cells
            .iter()
            .filter_map(|row| row[0].winner.as_ref())
            .map(|w| w.error)
            .collect();
        assert!(errors.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(build_competition(&r, &one_group(&["a"]), &ladder()), report);
    }

    #[test]
    fn distance_example() {
        let mut r = Vec::new();
        runs(&mut r, "w", "a", 5.0, 0.10);
        runs(&mut r, "h", "a", 15.0, 0.12);
        let report = build_competition(&r, &one_group(&["a"]), &ladder());
        let d = distance_to_winners(&report);
        assert_eq!(d["w"], 0.0);
        // h first fits the 20 ms row, which is empty; the 10 ms winner applies
        assert!((d["h"] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn distance_skips_zero_winner_errors_and_slow_heuristics() {
        let mut r = Vec::new();
        runs(&mut r, "w", "a", 5.0, 0.0);
        runs(&mut r, "h", "a", 15.0, 0.12);
        runs(&mut r, "late", "a", 500.0, 0.12);
        let report = build_competition(&r, &one_group(&["a"]), &ladder());
        assert!(distance_to_winners(&report).is_empty());
    }

    #[test]
    fn relative_time_against_a_baseline() {
        let mut r = Vec::new();
        runs(&mut r, "base", "a", 10.0, 0.0);
        runs(&mut r, "base", "b", 40.0, 0.0);
        runs(&mut r, "h", "a", 1.0, 0.0);
        runs(&mut r, "h", "b", 2.0, 0.0);
        runs(&mut r, "h", "c", 2.0, 0.0);
        let t = relative_time(&r, "base");
        assert_eq!(t["base"], 1.0);
        assert!((t["h"] - 0.075).abs() < 1e-12);
        assert!(relative_time(&r, "missing").is_empty());
    }

    #[test]
    fn ladders() {
        assert_eq!(Ladder::standard().len(), 11);
        assert_eq!(Ladder::extended().len(), 14);
        let l = Ladder::extended();
        assert_eq!(l.label(0), "≤ 2 ms");
        assert_eq!(l.label(3), "≤ 20 ms");
        assert_eq!(l.label(5), "≤ 0.1 s");
        assert_eq!(l.label(13), "≤ 50 s");
        assert!(Ladder::new(vec![]).is_err());
        assert!(Ladder::new(vec![1.0, 1.0]).is_err());
        assert!(Ladder::new(vec![-1.0]).is_err());
    }
}
