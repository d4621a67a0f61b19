use metric_dim_demo::{embed_json, ich_json, tree_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn ich_trace_reaches_full_entropy() {
    for (family, size) in [("path", 10), ("cycle", 9), ("hypercube", 5), ("grid", 4), ("er", 60), ("tree", 40)] {
        let v = parse(ich_json(family, size, 1).unwrap());
        let trace = v["trace"].as_array().unwrap();
        let last = trace.last().unwrap()["entropy"].as_f64().unwrap();
        assert_eq!(last, v["max_entropy"].as_f64().unwrap(), "{family}");
    }
    assert!(ich_json("petersen", 10, 0).is_err());
    assert!(ich_json("hypercube", 12, 0).is_err());
}

#[test]
fn tree_basis_matches_formula() {
    let v = parse(tree_json(80, 3).unwrap());
    let basis = v["basis"].as_array().unwrap().len();
    let leaves = v["leaves"].as_array().unwrap().len();
    let major = v["exterior_major"].as_array().unwrap().len();
    assert_eq!(basis, leaves - major);
    assert_eq!(v["verified"], true);
    assert_eq!(v["edges"].as_array().unwrap().len(), 79);
}

#[test]
fn embedding_separates_kmers() {
    let v = parse(embed_json("acgt tgca\nAAAC", 3).unwrap());
    let vectors = v["vectors"].as_array().unwrap();
    assert_eq!(vectors.len(), 12 - 3 + 1);
    let kmers = v["kmers"].as_array().unwrap();
    for i in 0..vectors.len() {
        for j in 0..vectors.len() {
            assert_eq!(kmers[i] == kmers[j], vectors[i] == vectors[j]);
        }
    }
    assert!(embed_json("ACGN", 2).is_err());
    assert!(embed_json("AC", 3).is_err());
}
