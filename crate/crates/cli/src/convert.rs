use std::path::PathBuf;

use clap::Args;
use gtsp_core::instance::{cluster_tsp, default_cluster_count};
use gtsp_core::{write_instance, InstanceError};

use crate::{display_path, read_instance, Failure};

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// TSPLIB file with node coordinates.
    #[arg(long)]
    tsp: PathBuf,
    /// Number of clusters [default: ceil(n / 5)].
    #[arg(long)]
    sets: Option<usize>,
    /// Output file, or a directory receiving `<m><name>.gtsp` [default: .].
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: ConvertArgs) -> Result<(), Failure> {
    let tsp = read_instance(&args.tsp)?;
    let m = args.sets.unwrap_or_else(|| default_cluster_count(tsp.n()));
    let gtsp = cluster_tsp(&tsp, m).map_err(|e| match e {
        InstanceError::TooFewClusters(_) | InstanceError::TooManyClusters { .. } => Failure::usage(e.to_string()),
        other => Failure::new(Failure::PARSE, other.to_string()),
    })?;
    let out = args.out.unwrap_or_else(|| PathBuf::from("."));
    let path = if out.is_dir() {
        out.join(format!("{}.gtsp", gtsp.name()))
    } else {
        out
    };
    std::fs::write(&path, write_instance(&gtsp))?;
    println!("{}", display_path(&path));
    Ok(())
}
