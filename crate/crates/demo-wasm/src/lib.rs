//! Browser bindings for three `metric-dim` operations. Each returns a JSON
//! string; the page in `www/` draws it on a canvas.
//!
//! The `*_json` functions are plain Rust so they can be tested natively;
//! the `#[wasm_bindgen]` wrappers only convert errors.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use metric_dim::embed::{embed_sequence, SequenceAlphabet};
use metric_dim::generators::{self, RngSeed};
use metric_dim::hamming::{augment, HammingResolvingSet, VerifyMode};
use metric_dim::ich::ich_trace;
use metric_dim::tree::{classify_tree, tree_metric_dimension};
use metric_dim::{apsp, Graph};

/// Keeps the page responsive: every demo graph is at most this large.
const MAX_VERTICES: usize = 400;

fn edges(g: &Graph) -> Value {
    json!(g.edges().iter().map(|e| [e.u, e.v]).collect::<Vec<_>>())
}

fn family(name: &str, size: usize, seed: u64) -> Result<Graph, String> {
    let g = match name {
        "path" => generators::path(size),
        "cycle" => generators::cycle(size),
        "star" => generators::star(size.saturating_sub(1)),
        "complete" => generators::complete(size),
        "hypercube" => generators::hypercube(size),
        "grid" => generators::hamming_graph(2, size),
        "er" => generators::erdos_renyi(size, 0.15, RngSeed(seed)),
        "tree" => generators::uniform_random_tree(size, RngSeed(seed)),
        other => return Err(format!("unknown family {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    if g.n() > MAX_VERTICES {
        return Err(format!("{} vertices is too many for the demo (max {MAX_VERTICES})", g.n()));
    }
    Ok(g)
}

/// Greedy entropy trace on a generated graph.
pub fn ich_json(name: &str, size: usize, seed: u64) -> Result<String, String> {
    let g = family(name, size, seed)?;
    let trace = ich_trace(&apsp(&g)).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": g.n(),
        "edges": edges(&g),
        "max_entropy": (g.n() as f64).log2(),
        "trace": trace,
    })
    .to_string())
}

/// Random labelled tree with its leaves, exterior major vertices and basis.
pub fn tree_json(n: usize, seed: u64) -> Result<String, String> {
    if n > MAX_VERTICES {
        return Err(format!("max {MAX_VERTICES} vertices"));
    }
    let t = generators::uniform_random_tree(n, RngSeed(seed)).map_err(|e| e.to_string())?;
    let class = classify_tree(&t).map_err(|e| e.to_string())?;
    let basis = tree_metric_dimension(&t).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "edges": edges(&t),
        "leaves": class.leaves,
        "exterior_major": class.exterior_major,
        "basis": basis.vertices,
        "verified": basis.verified,
    })
    .to_string())
}

/// Resolving set of `H_{k,4}` over `ACGT`, lifted from `{A, C, G}`.
fn dna_set(k: usize) -> Result<HammingResolvingSet, String> {
    let dna = SequenceAlphabet::dna();
    let base = HammingResolvingSet::new(dna.space(1).map_err(|e| e.to_string())?, vec!["A".into(), "C".into(), "G".into()])
        .and_then(|s| s.verified(VerifyMode::default()))
        .map_err(|e| e.to_string())?
        .0;
    let mut set = base;
    while set.space.k() < k {
        set = augment(&set, VerifyMode::default()).map_err(|e| e.to_string())?;
    }
    Ok(set)
}

/// Per-k-mer distance vectors of a DNA sequence.
pub fn embed_json(sequence: &str, k: usize) -> Result<String, String> {
    if !(1..=6).contains(&k) {
        return Err("k must be between 1 and 6".into());
    }
    let seq: String = sequence.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_uppercase();
    let set = dna_set(k)?;
    let e = embed_sequence("input", &seq, k, &SequenceAlphabet::dna(), &set).map_err(|e| e.to_string())?;
    let chars: Vec<char> = seq.chars().collect();
    let kmers: Vec<String> = chars.windows(k).map(|w| w.iter().collect()).collect();
    Ok(json!({
        "k": k,
        "landmarks": set.vertices,
        "kmers": kmers,
        "vectors": e.vectors,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn ich_demo(family: &str, size: usize, seed: u64) -> Result<String, JsValue> {
    ich_json(family, size, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn tree_demo(n: usize, seed: u64) -> Result<String, JsValue> {
    tree_json(n, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn embed_demo(sequence: &str, k: usize) -> Result<String, JsValue> {
    embed_json(sequence, k).map_err(|e| JsValue::from_str(&e))
}
