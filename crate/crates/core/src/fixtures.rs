//! Small hand-made instances shared by tests, benchmarks and the CLI.

use crate::instance::GtspInstance;
use crate::tsplib::parse_instance;

/// The five-cluster instance used to show that a tour can be locally optimal
/// for both vertex re-selection and vertex re-ordering while being a longest
/// tour. Clusters are `{1}, {2, 2'}, {3}, {4}, {5}`; vertex `2'` has id 6.
///
/// Every nonzero edge touches 2 or 2'. `1 2 3 4 5` has weight 2 and
/// `1 2' 4 3 5` has weight 1.
pub const THEOREM_ONE_GTSP: &str = "\
NAME: g5
TYPE: GTSP
COMMENT: two-choice cluster {2, 2'}; 2' is vertex 6
DIMENSION: 6
GTSP_SETS: 5
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
0 1 0 0 0 1
1 0 1 1 1 1
0 1 0 0 0 1
0 1 0 0 0 0
0 1 0 0 0 1
1 1 1 0 1 0
GTSP_SET_SECTION
1 1 -1
2 2 6 -1
3 3 -1
4 4 -1
5 5 -1
EOF
";

/// Parsed form of [`THEOREM_ONE_GTSP`].
pub fn theorem_one() -> GtspInstance {
    parse_instance(THEOREM_ONE_GTSP).expect("fixture parses")
}
