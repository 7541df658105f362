//! CSV and Markdown renderings of run records and competition results.
//! Values are averaged from the raw records and rounded only when printed.

use std::collections::BTreeMap;

use super::competition::{CompetitionReport, Entry};
use super::{Groups, RunRecord, HEAVY_INSTANCES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Relative error in percent.
    Error,
    /// Running time in milliseconds.
    Time,
}

/// Error as a percentage with one decimal: `0.04932` renders as `4.9`.
pub fn format_percent(error: f64) -> String {
    format!("{:.1}", error * 100.0)
}

pub fn format_ms(time_ms: f64) -> String {
    format!("{time_ms:.1}")
}

/// Per-instance means of every heuristic, in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DetailTable {
    pub instances: Vec<String>,
    pub heuristics: Vec<String>,
    /// `error[i][h]`, `None` where the heuristic has no runs.
    pub error: Vec<Vec<Option<f64>>>,
    pub time_ms: Vec<Vec<Option<f64>>>,
    light: Vec<bool>,
    heavy: Vec<bool>,
}

impl DetailTable {
    pub fn new(records: &[RunRecord], groups: &Groups) -> Self {
        let mut instances: Vec<String> = Vec::new();
        let mut heuristics: Vec<String> = Vec::new();
        let mut sums: BTreeMap<(usize, usize), (f64, f64, usize)> = BTreeMap::new();
        for r in records {
            let i = index_of(&mut instances, &r.instance);
            let h = index_of(&mut heuristics, &r.heuristic);
            let slot = sums.entry((i, h)).or_insert((0.0, 0.0, 0));
            slot.0 += r.error;
            slot.1 += r.time_ms;
            slot.2 += 1;
        }
        let mut error = vec![vec![None; heuristics.len()]; instances.len()];
        let mut time_ms = error.clone();
        for ((i, h), (e, t, n)) in sums {
            error[i][h] = Some(e / n as f64);
            time_ms[i][h] = Some(t / n as f64);
        }
        let light = instances.iter().map(|i| groups.group_of(i).is_some()).collect();
        let heavy = instances
            .iter()
            .map(|i| HEAVY_INSTANCES.contains(&i.to_ascii_lowercase().as_str()))
            .collect();
        DetailTable {
            instances,
            heuristics,
            error,
            time_ms,
            light,
            heavy,
        }
    }

    fn values(&self, metric: Metric) -> &[Vec<Option<f64>>] {
        match metric {
            Metric::Error => &self.error,
            Metric::Time => &self.time_ms,
        }
    }

    /// Column means over the selected instances.
    fn average(&self, metric: Metric, keep: impl Fn(usize) -> bool) -> Vec<Option<f64>> {
        let values = self.values(metric);
        (0..self.heuristics.len())
            .map(|h| {
                let column: Vec<f64> = (0..self.instances.len())
                    .filter(|&i| keep(i))
                    .filter_map(|i| values[i][h])
                    .collect();
                (!column.is_empty()).then(|| column.iter().sum::<f64>() / column.len() as f64)
            })
            .collect()
    }

    /// `Average`, `Light avg` and `Heavy avg` rows; a row is left out when
    /// none of its instances are present.
    pub fn summary_rows(&self, metric: Metric) -> Vec<(&'static str, Vec<Option<f64>>)> {
        let mut rows = Vec::new();
        if self.instances.is_empty() {
            return rows;
        }
        rows.push(("Average", self.average(metric, |_| true)));
        if self.light.iter().any(|&l| l) {
            rows.push(("Light avg", self.average(metric, |i| self.light[i])));
        }
        if self.heavy.iter().any(|&h| h) {
            rows.push(("Heavy avg", self.average(metric, |i| self.heavy[i])));
        }
        rows
    }

    pub fn render(&self, metric: Metric, format: Format) -> String {
        let fmt_value = |v: Option<f64>| match (v, metric) {
            (None, _) => String::new(),
            (Some(e), Metric::Error) => format_percent(e),
            (Some(t), Metric::Time) => format_ms(t),
        };
        let mut header = vec!["Instance".to_string()];
        header.extend(self.heuristics.iter().cloned());
        let mut rows = Vec::new();
        let values = self.values(metric);
        for (i, name) in self.instances.iter().enumerate() {
            let mut row = vec![name.clone()];
            row.extend(values[i].iter().map(|&v| fmt_value(v)));
            rows.push(row);
        }
        for (label, avg) in self.summary_rows(metric) {
            let mut row = vec![label.to_string()];
            row.extend(avg.into_iter().map(fmt_value));
            rows.push(row);
        }
        render_rows(&header, &rows, format)
    }
}

fn index_of(list: &mut Vec<String>, name: &str) -> usize {
    match list.iter().position(|x| x == name) {
        Some(i) => i,
        None => {
            list.push(name.to_string());
            list.len() - 1
        }
    }
}

fn render_rows(header: &[String], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(header).expect("write to memory");
            for row in rows {
                writer.write_record(row).expect("write to memory");
            }
            String::from_utf8(writer.into_inner().expect("flush to memory")).expect("utf-8 input")
        }
        Format::Markdown => {
            let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
            let mut out = line(header);
            out.push_str(&line(&vec!["---".to_string(); header.len()]));
            for row in rows {
                out.push_str(&line(row));
            }
            out
        }
    }
}

fn entry_text(e: &Entry) -> String {
    format!("{} {}", e.heuristic, format_percent(e.error))
}

/// The time-limit by group grid; empty cells show `—`.
pub fn render_competition(report: &CompetitionReport, format: Format) -> String {
    let mut header = vec!["Time".to_string()];
    header.extend(report.groups.iter().cloned());
    let separator = match format {
        Format::Csv => "; ",
        Format::Markdown => "<br>",
    };
    let rows: Vec<Vec<String>> = report
        .cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out = vec![report.ladder.label(i)];
            out.extend(row.iter().map(|cell| {
                match &cell.winner {
                    None => "—".to_string(),
                    Some(w) => std::iter::once(w)
                        .chain(&cell.listed)
                        .map(entry_text)
                        .collect::<Vec<_>>()
                        .join(separator),
                }
            }));
            out
        })
        .collect();
    render_rows(&header, &rows, format)
}

/// Distances to the winners in percent and, when a baseline is given, mean
/// time in percent of the baseline's time. Rows follow `d(H)`, best first.
pub fn render_summary(
    distance: &BTreeMap<String, f64>,
    time: Option<&BTreeMap<String, f64>>,
    format: Format,
) -> String {
    let mut header = vec!["Heuristic".to_string(), "d(H), %".to_string()];
    if time.is_some() {
        header.push("Time, % of baseline".to_string());
    }
    let mut order: Vec<(&String, &f64)> = distance.iter().collect();
    order.sort_by(|a, b| a.1.total_cmp(b.1).then_with(|| a.0.cmp(b.0)));
    let rows: Vec<Vec<String>> = order
        .into_iter()
        .map(|(h, d)| {
            let mut row = vec![h.clone(), format!("{:.0}", d * 100.0)];
            if let Some(t) = time {
                row.push(t.get(h).map(|v| format!("{:.2}", v * 100.0)).unwrap_or_default());
            }
            row
        })
        .collect();
    render_rows(&header, &rows, format)
}
