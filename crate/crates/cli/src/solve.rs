use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use gtsp_core::{AdaptationOption, GainOption, Heuristic, SolveError, SolverConfig, Variation};
use serde_json::json;

use crate::{read_instance, Failure, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Nn,
    #[value(name = "2opt")]
    TwoOpt,
    #[value(name = "3opt")]
    ThreeOpt,
    Lk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariationArg {
    Basic,
    Closest,
    Shortest,
    Exact,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// GTSP instance file.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "lk")]
    heuristic: Algorithm,
    /// LK variation [default: shortest].
    #[arg(long, value_enum)]
    variation: Option<VariationArg>,
    /// LK gain acceptance option [default: 5].
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    gain: Option<u8>,
    /// LK backtracking depth [default: 2].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    alpha: Option<u64>,
    /// Cluster-optimize every improved LK tour.
    #[arg(long)]
    co: bool,
    /// 2-opt/3-opt adaptation option [default: 2].
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    option: Option<u8>,
    /// Run number: nearest neighbour starts in this cluster, counting
    /// modulo the number of clusters.
    #[arg(long, conflicts_with = "seed_list")]
    start: Option<usize>,
    /// Several runs, e.g. `1..10` or `1,4,7`.
    #[arg(long)]
    seed_list: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

/// Parses `a..b` (inclusive), `a..=b` and comma lists of those.
pub fn parse_seed_list(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad run number `{s}` in `{text}`"))
        };
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (number(a)?, number(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(format!("empty range `{part}`"));
            }
            out.extend(a..=b);
        } else {
            out.push(number(part)?);
        }
    }
    if out.contains(&0) {
        return Err("run numbers start at 1".into());
    }
    Ok(out)
}

fn heuristic(args: &SolveArgs) -> Result<Heuristic, Failure> {
    let lk_flags = args.variation.is_some() || args.gain.is_some() || args.alpha.is_some() || args.co;
    if args.heuristic != Algorithm::Lk && lk_flags {
        return Err(Failure::usage(
            "--variation, --gain, --alpha and --co apply to --heuristic lk only",
        ));
    }
    if !matches!(args.heuristic, Algorithm::TwoOpt | Algorithm::ThreeOpt) && args.option.is_some() {
        return Err(Failure::usage("--option applies to --heuristic 2opt and 3opt only"));
    }
    let option = AdaptationOption::from_number(args.option.unwrap_or(2)).expect("range checked");
    Ok(match args.heuristic {
        Algorithm::Nn => Heuristic::NearestNeighbour,
        Algorithm::TwoOpt => Heuristic::TwoOpt(option),
        Algorithm::ThreeOpt => Heuristic::ThreeOpt(option),
        Algorithm::Lk => {
            let variation = match args.variation.unwrap_or(VariationArg::Shortest) {
                VariationArg::Basic => Variation::Basic,
                VariationArg::Closest => Variation::Closest,
                VariationArg::Shortest => Variation::Shortest,
                VariationArg::Exact => Variation::Exact,
            };
            let gain = GainOption::from_number(args.gain.unwrap_or(5)).expect("range checked");
            Heuristic::Lk(SolverConfig::new(
                variation,
                gain,
                args.alpha.unwrap_or(2) as usize,
                args.co,
            ))
        }
    })
}

pub fn run(args: SolveArgs) -> Result<(), Failure> {
    let heuristic = heuristic(&args)?;
    let runs = match &args.seed_list {
        Some(list) => parse_seed_list(list).map_err(Failure::usage)?,
        None => vec![args.start.unwrap_or(1)],
    };
    let instance = read_instance(&args.instance)?;
    if runs.contains(&0) {
        return Err(Failure::usage("run numbers start at 1"));
    }
    for r in runs {
        let started = Instant::now();
        let tour = heuristic.run(&instance, r).map_err(|e| match e {
            SolveError::Tour(t) => Failure::new(Failure::INFEASIBLE, t.to_string()),
            other => Failure::usage(other.to_string()),
        })?;
        let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        if !tour.is_valid(&instance) {
            return Err(Failure::new(Failure::INFEASIBLE, "solver returned an infeasible tour"));
        }
        match args.format {
            OutputFormat::Text => {
                println!("instance: {}", instance.name());
                println!("heuristic: {}", heuristic.id());
                println!("run: {r}");
                println!("elapsed_ms: {elapsed_ms:.3}");
                print!("{}", tour.to_text());
            }
            OutputFormat::Json => {
                let value = json!({
                    "instance": instance.name(),
                    "heuristic": heuristic.id(),
                    "run": r,
                    "elapsed_ms": elapsed_ms,
                    "weight": tour.weight(),
                    "tour": tour.vertices().iter().map(|v| v + 1).collect::<Vec<_>>(),
                });
                println!("{value}");
            }
        }
    }
    Ok(())
}
