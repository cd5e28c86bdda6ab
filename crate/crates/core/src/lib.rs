//! Minimum-length colored and ranked (S,T)-linkages by algebraic
//! fingerprinting, plus a deterministic longest-linkage algorithm for
//! digraphs.
//!
//! The randomized solver evaluates a walk polynomial over GF(2^b) with a
//! dynamic program and never reports a linkage that does not validate. The
//! [`oracle`] module holds brute-force reference implementations used by the
//! test suite.

pub mod det;
pub mod error;
pub mod field;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod matroid;
pub mod oracle;
pub mod reductions;
pub mod rng;
pub mod solver;
pub mod walk_dp;

pub use error::{Error, Result};
pub use graph::{ColoredWeightedGraph, Digraph, LinkageQuery, LinkageSolution};
pub use solver::{solve, SolverConfig};
