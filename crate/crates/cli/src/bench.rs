use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use gtsp_core::harness::report::{render_competition, render_summary, DetailTable, Format, Metric};
use gtsp_core::harness::{
    build_competition, distance_to_winners, relative_time, write_records, BenchManifest, HarnessError,
};

use crate::{display_path, Failure};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// TOML manifest with instances, heuristics and runs.
    #[arg(long)]
    manifest: PathBuf,
    /// Directory for the reports.
    #[arg(long)]
    out: PathBuf,
}

fn harness_failure(e: HarnessError) -> Failure {
    match e {
        HarnessError::InvalidManifest(_) | HarnessError::MissingBestKnown(_) | HarnessError::UnknownHeuristic(_) => {
            Failure::usage(e.to_string())
        }
        HarnessError::Syntax { .. } | HarnessError::Instance { .. } => Failure::new(Failure::PARSE, e.to_string()),
        other => Failure::new(1, other.to_string()),
    }
}

pub fn run(args: BenchArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.manifest)
        .map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", display_path(&args.manifest))))?;
    let manifest = BenchManifest::parse(&text).map_err(harness_failure)?;
    let base = args.manifest.parent().unwrap_or(Path::new("."));
    let plan = manifest.into_plan(base).map_err(harness_failure)?;
    let records = plan.execute().map_err(harness_failure)?;

    fs::create_dir_all(&args.out)?;
    let mut csv = Vec::new();
    write_records(&mut csv, &records).map_err(harness_failure)?;
    fs::write(args.out.join("records.csv"), csv)?;

    let report = build_competition(&records, &plan.groups, &plan.ladder);
    let table = DetailTable::new(&records, &plan.groups);
    let distance = distance_to_winners(&report);
    let time = plan.baseline.as_deref().map(|b| relative_time(&records, b));
    let outputs = [
        (
            "errors",
            table.render(Metric::Error, Format::Markdown),
            table.render(Metric::Error, Format::Csv),
        ),
        (
            "times",
            table.render(Metric::Time, Format::Markdown),
            table.render(Metric::Time, Format::Csv),
        ),
        (
            "competition",
            render_competition(&report, Format::Markdown),
            render_competition(&report, Format::Csv),
        ),
        (
            "summary",
            render_summary(&distance, time.as_ref(), Format::Markdown),
            render_summary(&distance, time.as_ref(), Format::Csv),
        ),
    ];
    for (name, md, csv) in outputs {
        fs::write(args.out.join(format!("{name}.md")), md)?;
        fs::write(args.out.join(format!("{name}.csv")), csv)?;
    }
    println!(
        "{} records from {} heuristics on {} instances written to {}",
        records.len(),
        plan.heuristics.len(),
        plan.instances.len(),
        display_path(&args.out)
    );
    Ok(())
}
