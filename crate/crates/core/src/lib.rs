//! Greedy maximization of monotone submodular functions under a cardinality
//! constraint: sequential (lazy) greedy, the single-level distributed scheme
//! (RandGreedi) and its multilevel generalization over an accumulation tree
//! (GreedyML).
//!
//! The crate is organized bottom-up:
//!
//! - [`oracle`]: ground sets, the cardinality constraint, solutions and the
//!   [`SubmodularOracle`] contract.
//! - [`objectives`]: k-cover, k-dominating set and k-medoid.
//! - [`greedy`]: eager and lazy greedy with function-call counting.
//! - [`tree`]: accumulation-tree arithmetic.
//! - [`partition`]: the seeded random tape.
//! - [`engine`]: simulated and concurrent distributed execution with metrics.
//! - [`bruteforce`]: exact optimum for small instances.
//! - [`ingest`]: edge-list, FIMI and CSV readers.
//! - [`report`] and [`cli`]: the JSON report and the command-line driver.

pub mod bruteforce;
pub mod cli;
pub mod engine;
pub mod error;
pub mod greedy;
pub mod ingest;
pub mod objectives;
pub mod oracle;
pub mod partition;
pub mod report;
pub mod tree;

pub use engine::{
    aggregate_node, run_greedyml, run_greedyml_on, run_randgreedi, run_randgreedi_on, run_sequential,
    Algorithm, Mode, NodeTrace, ObjectiveKind, RunConfig, RunReport, TreeShape,
};
pub use error::{Error, Result};
pub use greedy::{greedy, lazy_greedy, GreedyStats};
pub use oracle::{
    is_feasible, marginal_gain, CardinalityConstraint, GroundSet, Origin, Solution, SubmodularOracle,
};
pub use tree::{AccumulationTree, NodeLabel};
