//! Timed benchmark runs and the fair-competition tables built from them.

pub mod competition;
pub mod heuristic;
pub mod published;
pub mod report;

use std::collections::BTreeMap;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{GtspInstance, Weight};
use crate::tsplib;

pub use competition::{build_competition, distance_to_winners, relative_time, Cell, CompetitionReport, Entry, Ladder};
pub use heuristic::Heuristic;

/// Instances left out of the competition groups because their runtime is
/// far above the rest of their size class.
pub const HEAVY_INSTANCES: [&str; 7] = [
    "35si175",
    "36brg180",
    "40d198",
    "53pr264",
    "107si535",
    "131p654",
    "207si1032",
];

const BUILTIN_BEST_KNOWN: &str = include_str!("../../data/best_known.txt");
const BUILTIN_GROUPS: &str = include_str!("../../data/groups.txt");

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("no best-known weight for instance {0}")]
    MissingBestKnown(String),
    #[error("{source_name}: line {line}: {message}")]
    Syntax {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("invalid manifest:\n  {}", .0.join("\n  "))]
    InvalidManifest(Vec<String>),
    #[error("unknown heuristic `{0}`")]
    UnknownHeuristic(String),
    #[error("{path}: {source}")]
    Instance {
        path: String,
        source: crate::error::InstanceError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// One timed run of a heuristic on an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub heuristic: String,
    pub instance: String,
    pub run: usize,
    pub time_ms: f64,
    pub weight: Weight,
    /// Relative excess over the best-known weight, as a fraction.
    pub error: f64,
}

pub fn relative_error(weight: Weight, best: Weight) -> f64 {
    (weight - best) as f64 / best as f64
}

/// Best-known tour weights keyed by lowercase instance name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BestKnown(BTreeMap<String, Weight>);

impl BestKnown {
    /// Parses lines of `name weight`; `#` starts a comment.
    pub fn parse(text: &str, source_name: &str) -> Result<Self, HarnessError> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| HarnessError::Syntax {
                source_name: source_name.to_string(),
                line: idx + 1,
                message: message.to_string(),
            };
            let mut parts = line.split_whitespace();
            let (Some(name), Some(weight), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(syntax("expected `name weight`"));
            };
            let weight: Weight = weight.parse().map_err(|_| syntax("weight is not an integer"))?;
            if weight <= 0 {
                return Err(syntax("weight must be positive"));
            }
            map.insert(name.to_ascii_lowercase(), weight);
        }
        Ok(BestKnown(map))
    }

    /// Values of the standard GTSP test bed.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_BEST_KNOWN, "best_known.txt").expect("builtin registry parses")
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::parse(&fs::read_to_string(path)?, &path.display().to_string())
    }

    pub fn get(&self, instance: &str) -> Result<Weight, HarnessError> {
        self.0
            .get(&instance.to_ascii_lowercase())
            .copied()
            .ok_or_else(|| HarnessError::MissingBestKnown(instance.to_string()))
    }

    pub fn insert(&mut self, instance: &str, weight: Weight) {
        self.0.insert(instance.to_ascii_lowercase(), weight);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    /// Lowercase instance names.
    pub instances: Vec<String>,
}

/// Ordered instance groups, one column of the competition each.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Groups(pub Vec<Group>);

impl Groups {
    /// Parses lines of `group: instance, instance, ...`.
    pub fn parse(text: &str, source_name: &str) -> Result<Self, HarnessError> {
        let mut groups: Vec<Group> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| HarnessError::Syntax {
                source_name: source_name.to_string(),
                line: idx + 1,
                message,
            };
            let Some((name, list)) = line.split_once(':') else {
                return Err(syntax("expected `group: instance, ...`".into()));
            };
            let name = name.trim();
            if name.is_empty() {
                return Err(syntax("empty group name".into()));
            }
            let instances: Vec<String> = list
                .split(',')
                .map(|s| s.trim().to_ascii_lowercase())
                .filter(|s| !s.is_empty())
                .collect();
            if instances.is_empty() {
                return Err(syntax(format!("group {name} has no instances")));
            }
            for inst in &instances {
                if groups.iter().any(|g| g.instances.contains(inst)) {
                    return Err(syntax(format!("instance {inst} listed in two groups")));
                }
            }
            if groups.iter().any(|g| g.name == name) {
                return Err(syntax(format!("group {name} defined twice")));
            }
            groups.push(Group {
                name: name.to_string(),
                instances,
            });
        }
        Ok(Groups(groups))
    }

    /// The seven size classes of the standard competition.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_GROUPS, "groups.txt").expect("builtin groups parse")
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::parse(&fs::read_to_string(path)?, &path.display().to_string())
    }

    pub fn group_of(&self, instance: &str) -> Option<&str> {
        let lower = instance.to_ascii_lowercase();
        self.0
            .iter()
            .find(|g| g.instances.contains(&lower))
            .map(|g| g.name.as_str())
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Runs every heuristic `runs` times on every instance, sequentially on the
/// calling thread. Wall time covers construction and improvement.
///
/// Runs that return an error or panic are left out with a warning.
pub fn run_matrix(
    instances: &[GtspInstance],
    heuristics: &[Heuristic],
    runs: usize,
    registry: &BestKnown,
) -> Result<Vec<RunRecord>, HarnessError> {
    let best: Vec<Weight> = instances
        .iter()
        .map(|i| registry.get(i.name()))
        .collect::<Result<_, _>>()?;
    let mut records = Vec::with_capacity(instances.len() * heuristics.len() * runs);
    for heuristic in heuristics {
        let id = heuristic.id();
        for (instance, &best) in instances.iter().zip(&best) {
            for r in 1..=runs {
                let started = Instant::now();
                let outcome = panic::catch_unwind(AssertUnwindSafe(|| heuristic.run(instance, r)));
                let time_ms = started.elapsed().as_secs_f64() * 1e3;
                let tour = match outcome {
                    Ok(Ok(tour)) => tour,
                    Ok(Err(e)) => {
                        log::warn!("{id} failed on {} run {r}: {e}", instance.name());
                        continue;
                    }
                    Err(_) => {
                        log::warn!("{id} panicked on {} run {r}", instance.name());
                        continue;
                    }
                };
                records.push(RunRecord {
                    heuristic: id.clone(),
                    instance: instance.name().to_string(),
                    run: r,
                    time_ms,
                    weight: tour.weight(),
                    error: relative_error(tour.weight(), best),
                });
            }
        }
    }
    Ok(records)
}

/// Benchmark description read from TOML.
///
/// ```toml
/// runs = 10
/// instances = ["instances/40kroa200.gtsp"]
/// heuristics = ["2opt-B-co", "LK-S-5-2-co"]
/// ladder_ms = [20, 50, 100]      # optional
/// best_known = "best_known.txt"  # optional, builtin registry otherwise
/// groups = "groups.txt"          # optional, builtin groups otherwise
/// baseline = "2opt-B-co"         # optional
/// ```
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchManifest {
    #[serde(default = "default_runs")]
    pub runs: usize,
    pub instances: Vec<PathBuf>,
    pub heuristics: Vec<String>,
    pub ladder_ms: Option<Vec<f64>>,
    pub best_known: Option<PathBuf>,
    pub groups: Option<PathBuf>,
    pub baseline: Option<String>,
}

fn default_runs() -> usize {
    10
}

/// A validated manifest with files loaded.
#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub runs: usize,
    pub instances: Vec<GtspInstance>,
    pub heuristics: Vec<Heuristic>,
    pub ladder: Ladder,
    pub registry: BestKnown,
    pub groups: Groups,
    pub baseline: Option<String>,
}

impl BenchManifest {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::InvalidManifest(vec![e.message().to_string()]))
    }

    /// Checks every field and loads the referenced files. Relative paths
    /// are resolved against `base`. All problems are reported together.
    pub fn into_plan(self, base: &Path) -> Result<BenchPlan, HarnessError> {
        let mut problems = Vec::new();
        if self.runs == 0 {
            problems.push("runs must be at least 1".to_string());
        }
        if self.instances.is_empty() {
            problems.push("no instances listed".to_string());
        }
        if self.heuristics.is_empty() {
            problems.push("no heuristics listed".to_string());
        }
        let mut heuristics = Vec::new();
        for h in &self.heuristics {
            match h.parse::<Heuristic>() {
                Ok(parsed) if heuristics.contains(&parsed) => problems.push(format!("heuristic {h} listed twice")),
                Ok(parsed) => heuristics.push(parsed),
                Err(e) => problems.push(e.to_string()),
            }
        }
        if let Some(b) = &self.baseline {
            if !heuristics.iter().any(|h| h.id() == *b) {
                problems.push(format!("baseline {b} is not among the heuristics"));
            }
        }
        let ladder = match &self.ladder_ms {
            Some(steps) => Ladder::new(steps.clone()).unwrap_or_else(|e| {
                problems.push(e);
                Ladder::standard()
            }),
            None => Ladder::standard(),
        };
        let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        let registry = match &self.best_known {
            Some(p) => BestKnown::load(&resolve(p)).unwrap_or_else(|e| {
                problems.push(e.to_string());
                BestKnown::default()
            }),
            None => BestKnown::builtin(),
        };
        let groups = match &self.groups {
            Some(p) => Groups::load(&resolve(p)).unwrap_or_else(|e| {
                problems.push(e.to_string());
                Groups::default()
            }),
            None => Groups::builtin(),
        };
        let mut instances = Vec::new();
        for p in &self.instances {
            let path = resolve(p);
            let loaded = fs::File::open(&path)
                .map_err(crate::error::InstanceError::from)
                .and_then(tsplib::read_instance);
            match loaded {
                Ok(inst) => {
                    if registry.get(inst.name()).is_err() {
                        problems.push(format!("no best-known weight for instance {}", inst.name()));
                    }
                    instances.push(inst);
                }
                Err(e) => problems.push(format!("{}: {e}", path.display())),
            }
        }
        if !problems.is_empty() {
            return Err(HarnessError::InvalidManifest(problems));
        }
        Ok(BenchPlan {
            runs: self.runs,
            instances,
            heuristics,
            ladder,
            registry,
            groups,
            baseline: self.baseline,
        })
    }
}

impl BenchPlan {
    pub fn execute(&self) -> Result<Vec<RunRecord>, HarnessError> {
        run_matrix(&self.instances, &self.heuristics, self.runs, &self.registry)
    }
}

/// Writes records as CSV.
pub fn write_records<W: std::io::Write>(out: W, records: &[RunRecord]) -> Result<(), HarnessError> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_records<R: std::io::Read>(input: R) -> Result<Vec<RunRecord>, HarnessError> {
    let mut reader = csv::Reader::from_reader(input);
    let records = reader.deserialize().collect::<Result<Vec<RunRecord>, _>>()?;
    Ok(records)
}
