//! Instance documents (JSON).
//!
//! ```json
//! {
//!   "n": 3,
//!   "edges": [[0,1],[1,2]],
//!   "colors": [1,2,3],
//!   "weights": [1,1,1],
//!   "query": {"S":[0],"T":[2],"p":1,"k":2,"w":2}
//! }
//! ```
//!
//! Directed instances set `"directed": true` and give `arcs` instead of
//! `edges`. An optional `matroid`, `transversal` or `rational` block attaches
//! a matroid for framework mode.

use serde::{Deserialize, Serialize};

use super::{ColoredWeightedGraph, Digraph, LinkageQuery};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u64,
    pub degree: u32,
}

/// `rows x n` matrix of packed field elements, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearMatroidDoc {
    pub field: FieldDoc,
    pub rows: usize,
    pub entries: Vec<Vec<u64>>,
}

/// Bipartite graph between the vertices (left) and `0..right_size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransversalDoc {
    pub right_size: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Integer matrix whose entries are bounded by `n^(bound_c * k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalDoc {
    pub rows: usize,
    pub entries: Vec<Vec<i64>>,
    pub bound_c: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    n: usize,
    #[serde(default)]
    directed: bool,
    #[serde(default)]
    edges: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    arcs: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    colors: Option<Vec<u32>>,
    #[serde(default)]
    weights: Option<Vec<u64>>,
    #[serde(default)]
    query: Option<LinkageQuery>,
    #[serde(default)]
    matroid: Option<LinearMatroidDoc>,
    #[serde(default)]
    transversal: Option<TransversalDoc>,
    #[serde(default)]
    rational: Option<RationalDoc>,
}

/// A parsed instance document.
#[derive(Clone, Debug, Default)]
pub struct Instance {
    pub graph: Option<ColoredWeightedGraph>,
    pub digraph: Option<Digraph>,
    pub query: Option<LinkageQuery>,
    pub matroid: Option<LinearMatroidDoc>,
    pub transversal: Option<TransversalDoc>,
    pub rational: Option<RationalDoc>,
}

impl Instance {
    pub fn undirected(graph: ColoredWeightedGraph, query: Option<LinkageQuery>) -> Self {
        Instance {
            graph: Some(graph),
            query,
            ..Default::default()
        }
    }

    pub fn directed(digraph: Digraph, query: Option<LinkageQuery>) -> Self {
        Instance {
            digraph: Some(digraph),
            query,
            ..Default::default()
        }
    }

    pub fn n(&self) -> usize {
        match (&self.graph, &self.digraph) {
            (Some(g), _) => g.n(),
            (_, Some(d)) => d.n(),
            _ => 0,
        }
    }
}

pub fn load_instance(bytes: &[u8]) -> Result<Instance> {
    let doc: Doc = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = doc.n;
    let mut inst = Instance::default();
    if doc.directed {
        if doc.edges.is_some() {
            return Err(Error::invalid("edges: directed documents use arcs"));
        }
        let arcs = doc.arcs.unwrap_or_default();
        inst.digraph = Some(Digraph::new(n, arcs.iter().map(|a| (a[0], a[1])))?);
    } else {
        if doc.arcs.is_some() {
            return Err(Error::invalid("arcs: only allowed with \"directed\": true"));
        }
        let edges = doc.edges.unwrap_or_default();
        let colors = doc.colors.unwrap_or_else(|| (1..=n as u32).collect());
        let weights = doc.weights.unwrap_or_else(|| vec![1; n]);
        inst.graph = Some(ColoredWeightedGraph::new(
            n,
            edges.iter().map(|e| (e[0], e[1])),
            colors,
            weights,
        )?);
    }
    if let Some(q) = &doc.query {
        q.check(n)?;
        inst.query = Some(LinkageQuery::new(
            q.sources.clone(),
            q.sinks.clone(),
            q.p,
            q.k,
            q.w,
        ));
    }
    if let Some(m) = &doc.matroid {
        if m.entries.len() != m.rows {
            return Err(Error::invalid(format!(
                "matroid.entries: expected {} rows, found {}",
                m.rows,
                m.entries.len()
            )));
        }
        let order = m
            .field
            .p
            .checked_pow(m.field.degree)
            .ok_or_else(|| Error::invalid("matroid.field: order overflows"))?;
        for (i, row) in m.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "matroid.entries[{i}]: expected {n} columns, found {}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|&x| x >= order) {
                return Err(Error::invalid(format!(
                    "matroid.entries[{i}][{j}]: not an element of a field of order {order}"
                )));
            }
        }
    }
    if let Some(t) = &doc.transversal {
        for (i, e) in t.edges.iter().enumerate() {
            if e[0] >= n || e[1] >= t.right_size {
                return Err(Error::invalid(format!(
                    "transversal.edges[{i}]: endpoint out of range"
                )));
            }
        }
    }
    if let Some(r) = &doc.rational {
        if r.entries.len() != r.rows {
            return Err(Error::invalid(format!(
                "rational.entries: expected {} rows, found {}",
                r.rows,
                r.entries.len()
            )));
        }
        let k = doc.query.as_ref().map_or(0, |q| q.k);
        for (i, row) in r.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "rational.entries[{i}]: expected {n} columns, found {}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if !rational_bound_holds(x, n, r.bound_c, k) {
                    return Err(Error::invalid(format!(
                        "rational.entries[{i}][{j}]: |{x}| exceeds n^(c*k) = {n}^({}*{k})",
                        r.bound_c
                    )));
                }
            }
        }
    }
    inst.matroid = doc.matroid;
    inst.transversal = doc.transversal;
    inst.rational = doc.rational;
    Ok(inst)
}

/// `|x| <= n^(c*k)`, compared in log space.
pub(crate) fn rational_bound_holds(x: i64, n: usize, c: f64, k: usize) -> bool {
    if x == 0 {
        return true;
    }
    let lhs = (x.unsigned_abs() as f64).ln();
    let rhs = c * k as f64 * (n.max(1) as f64).ln();
    lhs <= rhs + 1e-9
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Canonical text: one top-level key per line, values compact, edges sorted.
pub fn save_instance(inst: &Instance) -> String {
    let mut lines = vec![format!("  \"n\": {}", inst.n())];
    if let Some(d) = &inst.digraph {
        lines.push("  \"directed\": true".to_string());
        let arcs: Vec<[usize; 2]> = d.arcs().iter().map(|&(u, v)| [u, v]).collect();
        lines.push(format!("  \"arcs\": {}", compact(&arcs)));
    }
    if let Some(g) = &inst.graph {
        let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(u, v)| [u, v]).collect();
        lines.push(format!("  \"edges\": {}", compact(&edges)));
        lines.push(format!("  \"colors\": {}", compact(&g.colors())));
        lines.push(format!("  \"weights\": {}", compact(&g.weights())));
    }
    if let Some(q) = &inst.query {
        lines.push(format!("  \"query\": {}", compact(q)));
    }
    if let Some(m) = &inst.matroid {
        lines.push(format!("  \"matroid\": {}", compact(m)));
    }
    if let Some(t) = &inst.transversal {
        let mut t = t.clone();
        t.edges.sort_unstable();
        lines.push(format!("  \"transversal\": {}", compact(&t)));
    }
    if let Some(r) = &inst.rational {
        lines.push(format!("  \"rational\": {}", compact(r)));
    }
    format!("{{\n{}\n}}\n", lines.join(",\n"))
}

pub fn canonicalize(bytes: &[u8]) -> Result<String> {
    Ok(save_instance(&load_instance(bytes)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"{"n": 3, "edges": [[1,0],[2,1],[0,2]],
        "colors": [1,2,3], "weights": [1,1,1],
        "query": {"S":[0],"T":[2],"p":1,"k":2,"w":2}}"#;

    #[test]
    fn loads_and_roundtrips() {
        let inst = load_instance(TRIANGLE.as_bytes()).unwrap();
        assert_eq!(inst.graph.as_ref().unwrap().n(), 3);
        let text = save_instance(&inst);
        assert_eq!(canonicalize(text.as_bytes()).unwrap(), text);
        assert!(text.contains("\"edges\": [[0,1],[0,2],[1,2]]"));
    }

    #[test]
    fn zero_weight_is_semantic_error() {
        let doc = r#"{"n": 2, "edges": [[0,1]], "colors": [1,2], "weights": [1,0]}"#;
        let err = load_instance(doc.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::InvalidInstance(_)));
        assert!(err.to_string().contains("weights[1]"));
    }

    #[test]
    fn syntax_error_has_location() {
        let doc = "{\n  \"n\": 2,\n  \"edges\": [[0,1]\n}";
        match load_instance(doc.as_bytes()).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn directed_documents() {
        let doc = r#"{"n": 3, "directed": true, "arcs": [[0,1],[1,2]],
            "query": {"S":[0],"T":[2],"p":1,"k":3,"w":3}}"#;
        let inst = load_instance(doc.as_bytes()).unwrap();
        assert!(inst.digraph.as_ref().unwrap().has_arc(1, 2));
        let again = load_instance(save_instance(&inst).as_bytes()).unwrap();
        assert_eq!(again.digraph, inst.digraph);
        let mixed = r#"{"n": 2, "arcs": [[0,1]]}"#;
        assert!(load_instance(mixed.as_bytes()).is_err());
    }

    #[test]
    fn matroid_blocks_checked() {
        let doc = r#"{"n": 2, "edges": [[0,1]],
            "matroid": {"field": {"p": 5, "degree": 1}, "rows": 1, "entries": [[1, 7]]}}"#;
        let err = load_instance(doc.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("matroid.entries[0][1]"), "{err}");
        let doc = r#"{"n": 2, "edges": [[0,1]],
            "query": {"S":[0],"T":[1],"p":1,"k":1,"w":1},
            "rational": {"rows": 1, "entries": [[2, 3]], "bound_c": 1.0}}"#;
        let err = load_instance(doc.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("rational.entries[0][1]"), "{err}");
    }
}
