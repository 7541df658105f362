//! Local search for the generalized traveling salesman problem.

pub mod co;
pub mod construct;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod gen;
pub mod harness;
pub mod instance;
pub mod kopt;
pub mod lk;
pub mod oracle;
pub mod tour;
pub mod tsplib;

pub use co::{cluster_optimize, local_optimize, ImprovementFn};
pub use construct::nearest_neighbour;
pub use error::{InstanceError, SolveError, TourError};
pub use exact::ExactPathTables;
pub use harness::{HarnessError, Heuristic, RunRecord};
pub use instance::{GtspInstance, Weight, WeightKind};
pub use kopt::{three_opt, two_opt, AdaptationOption};
pub use lk::{lk_run, lk_run_with_stats, solve, GainOption, LkStats, SolverConfig, Variation};
pub use tour::{PathView, Tour};
pub use tsplib::{parse_instance, read_instance, write_instance};
