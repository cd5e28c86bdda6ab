use std::fs;
use std::path::PathBuf;

use colorlink::graph::{canonicalize, load_instance, save_instance};

fn corpus(dir: &str) -> Vec<PathBuf> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(dir);
    let mut files: Vec<PathBuf> = fs::read_dir(root)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn instances_are_canonical_and_roundtrip() {
    let files = corpus("instances");
    assert_eq!(files.len(), 20);
    for path in files {
        let text = fs::read_to_string(&path).unwrap();
        let inst = load_instance(text.as_bytes()).unwrap();
        let saved = save_instance(&inst);
        assert_eq!(saved, text, "{} is not canonical", path.display());
        assert_eq!(canonicalize(saved.as_bytes()).unwrap(), saved);
        let again = load_instance(saved.as_bytes()).unwrap();
        assert_eq!(again.graph, inst.graph);
        assert_eq!(again.digraph, inst.digraph);
        assert_eq!(again.query, inst.query);
    }
}

#[test]
fn acceptance_corpus_loads() {
    let files = corpus("acceptance");
    assert_eq!(files.len(), 50);
    for path in files {
        let inst = load_instance(&fs::read(&path).unwrap()).unwrap();
        let g = inst.graph.expect("undirected");
        assert!(g.n() <= 5);
        let q = inst.query.expect("query");
        assert!(q.p <= 2 && q.k <= 3);
        q.check(g.n()).unwrap();
    }
}
