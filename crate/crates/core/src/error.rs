use thiserror::Error;

/// Errors raised while reading or constructing an instance.
#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown keyword `{keyword}` on line {line}")]
    UnknownKeyword { line: usize, keyword: String },
    #[error("unsupported edge weight type `{0}`")]
    UnsupportedWeightType(String),
    #[error("unsupported edge weight format `{0}`")]
    UnsupportedWeightFormat(String),
    #[error("unsupported TSPLIB feature `{0}`")]
    UnsupportedFeature(String),
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("DIMENSION/GTSP_SETS mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vertex {0} appears in two sets (overlapping clusters)")]
    OverlappingClusters(usize),
    #[error("vertex {0} does not belong to any set")]
    UnassignedVertex(usize),
    #[error("set {0} is empty")]
    EmptyCluster(usize),
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(usize),
    #[error("negative edge weight {0}")]
    NegativeWeight(i64),
    #[error("need >= 2 clusters, got {0}")]
    TooFewClusters(usize),
    #[error("requested {m} clusters but the instance has only {n} vertices")]
    TooManyClusters { m: usize, n: usize },
    #[error("instance has no node coordinates")]
    MissingCoordinates,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A vertex sequence that is not a feasible tour, or a malformed tour file.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TourError {
    #[error("tour has {got} vertices, expected one per cluster ({expected})")]
    WrongLength { got: usize, expected: usize },
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(usize),
    #[error("cluster {0} visited twice")]
    RepeatedCluster(usize),
    #[error("stated weight {stated} differs from recomputed weight {actual}")]
    WeightMismatch { stated: i64, actual: i64 },
    #[error("malformed tour text: {0}")]
    Malformed(String),
}

/// Failures of the solvers themselves.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("the {0} variation requires a symmetric instance")]
    AsymmetricInstance(&'static str),
    #[error("run number {r} out of range 1..={m}")]
    RunOutOfRange { r: usize, m: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("search budget of {budget} exceeded (needs {needed})")]
    BudgetExceeded { budget: u128, needed: u128 },
    #[error(transparent)]
    Tour(#[from] TourError),
}
