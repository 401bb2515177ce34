//! Cube representations of simple undirected graphs.
//!
//! A graph has cubicity at most `k` when it is the intersection graph of
//! axis-parallel unit cubes in `k` dimensions, or equivalently when it is
//! the intersection of `k` indifference (unit interval) graphs. This crate
//! builds such representations:
//!
//! * [`builders::build_rand`] — the randomized builder, `O((Δ+1) ln n)`
//!   dimensions in expectation or with high probability.
//! * [`builders::build_det`] — a deterministic builder with the same
//!   dimension guarantee, driven by a fixed seed schedule and a per-round
//!   progress quota on the surviving non-edges.
//! * [`banded::build_detband`] — the bandwidth-driven builder: given a
//!   linear arrangement of width `b` it needs only `O((Δ+1) ln b)`
//!   dimensions.
//!
//! Every builder output can be checked exactly with
//! [`interval::verify_representation`]; all interval arithmetic is done on
//! integers, unit-cube export uses exact rationals.

pub mod banded;
pub mod builders;
pub mod gen;
pub mod graph;
pub mod interval;

pub use banded::{build_detband, heuristic_arrangement, width, BlockDecomposition, LinearArrangement};
pub use builders::{build_det, build_rand, rand_invocation, BoundMode, BuildReport, Seed};
pub use graph::{Graph, NonEdgeSet};
pub use interval::{
    construct_m, union_assignments, verify_representation, Bipartition, CubeRepresentation,
    IntervalAssignment, PartialAssignment, Permutation, Verdict, Violation,
};

/// Errors shared by the library modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("retry cap of {batches} batches exhausted; {surviving} non-edges still unseparated")]
    RetriesExhausted { batches: u32, surviving: usize },
    #[error("seed schedule exhausted after {scanned} draws without removing any non-edge")]
    SeedScheduleExhausted { scanned: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
