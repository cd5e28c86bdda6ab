use std::collections::HashSet;
use std::fmt;

use super::{ColoredWeightedGraph, LinkageQuery, LinkageSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Order,
    Path,
    Endpoints,
    Disjointness,
    Length,
    CertificateSize,
    CertificateMembership,
    CertificateColors,
    CertificateIndependence,
    CertificateWeight,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Order => "order",
            ViolationKind::Path => "path",
            ViolationKind::Endpoints => "endpoints",
            ViolationKind::Disjointness => "disjointness",
            ViolationKind::Length => "length",
            ViolationKind::CertificateSize => "certificate size",
            ViolationKind::CertificateMembership => "certificate membership",
            ViolationKind::CertificateColors => "certificate colors",
            ViolationKind::CertificateIndependence => "certificate independence",
            ViolationKind::CertificateWeight => "certificate weight",
        }
    }
}

/// Why a solution was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.detail)
    }
}

impl std::error::Error for Violation {}

fn fail<T>(kind: ViolationKind, detail: impl Into<String>) -> Result<T, Violation> {
    Err(Violation {
        kind,
        detail: detail.into(),
    })
}

/// Checks every solution invariant with distinct colors as the witness rule.
pub fn validate_solution(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
    solution: &LinkageSolution,
) -> Result<(), Violation> {
    validate_linkage(graph, query, solution)?;
    let mut seen = HashSet::new();
    for &x in &solution.certificate {
        if !seen.insert(graph.color(x)) {
            return fail(
                ViolationKind::CertificateColors,
                format!("color {} appears twice", graph.color(x)),
            );
        }
    }
    Ok(())
}

/// Like [`validate_solution`], with the witness rule supplied by the caller
/// (matroid independence in framework mode).
pub fn validate_solution_with(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
    solution: &LinkageSolution,
    independent: impl Fn(&[usize]) -> bool,
) -> Result<(), Violation> {
    validate_linkage(graph, query, solution)?;
    if !independent(&solution.certificate) {
        return fail(
            ViolationKind::CertificateIndependence,
            format!("{:?} is dependent", solution.certificate),
        );
    }
    Ok(())
}

fn validate_linkage(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
    solution: &LinkageSolution,
) -> Result<(), Violation> {
    if solution.paths.len() != query.p {
        return fail(
            ViolationKind::Order,
            format!("{} paths, expected {}", solution.paths.len(), query.p),
        );
    }
    let mut used = HashSet::new();
    for (i, path) in solution.paths.iter().enumerate() {
        if path.is_empty() {
            return fail(ViolationKind::Path, format!("path {i} is empty"));
        }
        if let Some(&v) = path.iter().find(|&&v| v >= graph.n()) {
            return fail(ViolationKind::Path, format!("path {i}: vertex {v} out of range"));
        }
        if let Some(w) = path.windows(2).find(|w| !graph.has_edge(w[0], w[1])) {
            return fail(
                ViolationKind::Path,
                format!("path {i}: {}-{} is not an edge", w[0], w[1]),
            );
        }
        let mut own = HashSet::new();
        if let Some(&v) = path.iter().find(|&&v| !own.insert(v)) {
            return fail(ViolationKind::Path, format!("path {i} repeats vertex {v}"));
        }
        if !query.sources.contains(&path[0]) {
            return fail(
                ViolationKind::Endpoints,
                format!("path {i} starts at {}, not in S", path[0]),
            );
        }
        let last = *path.last().unwrap();
        if !query.sinks.contains(&last) {
            return fail(
                ViolationKind::Endpoints,
                format!("path {i} ends at {last}, not in T"),
            );
        }
        for &v in path {
            if !used.insert(v) {
                return fail(
                    ViolationKind::Disjointness,
                    format!("vertex {v} lies on two paths"),
                );
            }
        }
    }
    let total: usize = solution.paths.iter().map(Vec::len).sum();
    if total != solution.total_length {
        return fail(
            ViolationKind::Length,
            format!("reported {}, actual {total}", solution.total_length),
        );
    }
    let x = &solution.certificate;
    if x.len() != query.k {
        return fail(
            ViolationKind::CertificateSize,
            format!("{} vertices, expected {}", x.len(), query.k),
        );
    }
    let mut distinct = HashSet::new();
    for &v in x {
        if !used.contains(&v) {
            return fail(
                ViolationKind::CertificateMembership,
                format!("vertex {v} is not on the linkage"),
            );
        }
        if !distinct.insert(v) {
            return fail(
                ViolationKind::CertificateMembership,
                format!("vertex {v} listed twice"),
            );
        }
    }
    let weight: u64 = x.iter().map(|&v| graph.weight(v)).sum();
    if weight != query.w {
        return fail(
            ViolationKind::CertificateWeight,
            format!("weight {weight}, expected {}", query.w),
        );
    }
    Ok(())
}
