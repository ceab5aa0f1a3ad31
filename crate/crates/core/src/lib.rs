//! Double total domination in Harary graphs.
//!
//! Builds `H_{d,n}`, verifies k-tuple total dominating sets on any graph,
//! evaluates the closed-form double total dominating sets with their case
//! analysis, and checks every claim against an exact solver.

pub mod constructions;
pub mod domination;
pub mod error;
pub mod exec;
pub mod formats;
pub mod graph;
pub mod report;
pub mod solver;
pub mod sweep;
pub mod vertex_set;

pub use constructions::{
    classify, construct_2tds, translate_set, CaseDescriptor, Claim, ClaimKind, ConstructionResult,
    FormulaId,
};
pub use domination::{
    coverage, forced_vertices, is_ktds, lower_bounds, BoundsRecord, CoverageVector,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{
    build_harary, degree_profile, AdjacencyGraph, BitGraph, CirculantGraph, Graph, HararyParams,
    ParityClass,
};
pub use report::{
    evaluate_instance, judge, InstanceReport, OracleRecord, Params, Verdict, SCHEMA_VERSION,
};
pub use solver::{
    cross_check, solve_exact, Interval, Method, SolveOptions, SolveOutcome, SolveResult, SolveStats,
};
pub use sweep::{sweep, sweep_cached, ResultsCache, SkipRecord, SweepConfig, SweepOutput};
pub use vertex_set::VertexSet;
