//! Spectral lower bounds on treewidth.
//!
//! * [`graph`]: simple graphs, PACE `.gr` / edge-list parsing, family generators.
//! * [`spectrum`]: Laplacian, its eigenvalues, and the complex quadratic form.
//! * [`bounds`]: the four eigenvalue bounds and the per-graph report.
//! * [`exact`]: exact treewidth by subset DP, tree decompositions, PACE `.td`.
//! * [`certificates`]: separators, balanced partitions and the checked
//!   inequality chains behind the bounds.
//! * [`cli`]: the `sptw` command-line front end.

pub mod bounds;
pub mod certificates;
pub mod cli;
pub mod exact;
pub mod graph;
pub mod spectrum;

pub use bounds::{bounds_report, BoundReport};
pub use exact::{closed_form_tw, exact_tw, validate_td, ExactResult, TreeDecomposition};
pub use graph::{parse_edge_list, parse_pace_gr, Family, Graph, GraphError, GraphStats};
pub use spectrum::{
    eigenvalues, lambda2, lambda_max, laplacian, quadratic_form, ComplexVector, SpectrumResult,
};
