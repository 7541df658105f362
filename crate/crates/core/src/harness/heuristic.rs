use std::fmt;
use std::str::FromStr;

use super::HarnessError;
use crate::construct::nearest_neighbour;
use crate::error::SolveError;
use crate::instance::GtspInstance;
use crate::kopt::{three_opt, two_opt, AdaptationOption};
use crate::lk::{lk_run, GainOption, SolverConfig, Variation};
use crate::tour::Tour;

/// A competitor: nearest neighbour alone or a local search started from it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Heuristic {
    NearestNeighbour,
    TwoOpt(AdaptationOption),
    ThreeOpt(AdaptationOption),
    Lk(SolverConfig),
}

impl Heuristic {
    /// Name such as `NN`, `2opt-B-co` or `LK-S-5-2-co`.
    pub fn id(&self) -> String {
        match self {
            Heuristic::NearestNeighbour => "NN".to_string(),
            Heuristic::TwoOpt(o) => format!("2opt-{}", o.suffix()),
            Heuristic::ThreeOpt(o) => format!("3opt-{}", o.suffix()),
            Heuristic::Lk(c) => c.id(),
        }
    }

    /// Run `r` (1-based): nearest neighbour from the first vertex of cluster
    /// `r`, then the local search. Run numbers above `m` wrap around.
    pub fn run(&self, instance: &GtspInstance, r: usize) -> Result<Tour, SolveError> {
        let m = instance.m();
        let start_cluster = if r == 0 { 0 } else { (r - 1) % m + 1 };
        let start = nearest_neighbour(instance, start_cluster)?;
        match self {
            Heuristic::NearestNeighbour => Ok(start),
            Heuristic::TwoOpt(o) => two_opt(instance, &start, *o),
            Heuristic::ThreeOpt(o) => three_opt(instance, &start, *o),
            Heuristic::Lk(c) => lk_run(instance, &start, &c.clone().with_run(start_cluster)),
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Heuristic {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || HarnessError::UnknownHeuristic(s.to_string());
        if s.eq_ignore_ascii_case("nn") {
            return Ok(Heuristic::NearestNeighbour);
        }
        if let Some(rest) = s.strip_prefix("2opt-") {
            return AdaptationOption::from_suffix(rest)
                .map(Heuristic::TwoOpt)
                .ok_or_else(unknown);
        }
        if let Some(rest) = s.strip_prefix("3opt-") {
            return AdaptationOption::from_suffix(rest)
                .map(Heuristic::ThreeOpt)
                .ok_or_else(unknown);
        }
        let parts: Vec<&str> = s.split('-').collect();
        if !(4..=5).contains(&parts.len()) || parts[0] != "LK" {
            return Err(unknown());
        }
        let mut letter = parts[1].chars();
        let variation = match (letter.next(), letter.next()) {
            (Some(c), None) => Variation::from_letter(c).ok_or_else(unknown)?,
            _ => return Err(unknown()),
        };
        let gain = parts[2]
            .parse()
            .ok()
            .and_then(GainOption::from_number)
            .ok_or_else(unknown)?;
        let alpha: usize = parts[3].parse().map_err(|_| unknown())?;
        if alpha == 0 {
            return Err(unknown());
        }
        let co = match parts.get(4) {
            None => false,
            Some(&"co") if variation != Variation::Exact => true,
            Some(_) => return Err(unknown()),
        };
        Ok(Heuristic::Lk(SolverConfig::new(variation, gain, alpha, co)))
    }
}
