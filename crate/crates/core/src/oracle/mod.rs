//! Brute-force reference implementations for small instances.
//!
//! Everything here is exhaustive and guarded by hard size limits that return
//! [`Error::OracleGuard`](crate::Error::OracleGuard) instead of running for
//! hours.

pub mod apps;
mod linkage;
mod walkage;

pub use linkage::{
    distinct_colors, enumerate_linkages, enumerate_linkages_digraph, find_certificate,
    has_colored_linkage_upto, longest_linkage_digraph, min_colored_linkage, min_linkage_with,
    OracleOptimum, DIGRAPH_MAX_N, LINKAGE_MAX_N,
};
pub use walkage::{
    enumerate_walkage_family, family_sums, sum_monomials, visit_walkage_family, LabeledWalk,
    LabeledWalkage, FAMILY_MAX_K, FAMILY_MAX_LEN, FAMILY_MAX_N, FAMILY_MAX_P,
};
