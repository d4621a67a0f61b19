//! Deterministic graph families and seeded random generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! a 64-bit [`RngSeed`]. Independent streams (one per trial or sample) are
//! selected with [`RngSeed::stream`], so results never depend on the order
//! or thread in which trials run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        self.stream(0)
    }

    /// Generator for sub-stream `index` of this seed.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }
}

/// A graph family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
    DisjointUnion(Box<Family>, Box<Family>),
    Join(Box<Family>, Box<Family>),
    Hypercube(usize),
    Hamming { k: usize, a: usize },
    ErdosRenyi { n: usize, p: f64, seed: RngSeed },
    Sbm { blocks: Vec<Vec<usize>>, probs: Vec<Vec<f64>>, seed: RngSeed },
    UniformTree { n: usize, seed: RngSeed },
}

pub fn gen_family(family: &Family) -> Result<Graph> {
    match family {
        Family::Path(n) => path(*n),
        Family::Cycle(n) => cycle(*n),
        Family::Star(leaves) => star(*leaves),
        Family::Complete(n) => complete(*n),
        Family::CompleteBipartite(s, t) => complete_bipartite(*s, *t),
        Family::Empty(n) => empty(*n),
        Family::DisjointUnion(g, h) => Ok(disjoint_union(&gen_family(g)?, &gen_family(h)?)),
        Family::Join(g, h) => Ok(join(&gen_family(g)?, &gen_family(h)?)),
        Family::Hypercube(k) => hypercube(*k),
        Family::Hamming { k, a } => hamming_graph(*k, *a),
        Family::ErdosRenyi { n, p, seed } => erdos_renyi(*n, *p, *seed),
        Family::Sbm { blocks, probs, seed } => sbm(blocks, probs, *seed),
        Family::UniformTree { n, seed } => uniform_random_tree(*n, *seed),
    }
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

pub fn path(n: usize) -> Result<Graph> {
    positive(n, "path size")?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::unweighted(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs at least 3 vertices".into()));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::unweighted(n, &edges)
}

/// Star with centre 0 and `leaves` spokes.
pub fn star(leaves: usize) -> Result<Graph> {
    positive(leaves, "star leaf count")?;
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::unweighted(leaves + 1, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    positive(n, "complete graph size")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::unweighted(n, &edges)
}

/// `K_{s,t}`: parts `0..s` and `s..s+t`.
pub fn complete_bipartite(s: usize, t: usize) -> Result<Graph> {
    positive(s, "bipartite part size")?;
    positive(t, "bipartite part size")?;
    let mut edges = Vec::new();
    for u in 0..s {
        for v in s..s + t {
            edges.push((u, v));
        }
    }
    Graph::unweighted(s + t, &edges)
}

pub fn empty(n: usize) -> Result<Graph> {
    positive(n, "empty graph size")?;
    Graph::unweighted(n, &[])
}

fn shifted(g: &Graph, offset: usize) -> impl Iterator<Item = (usize, usize, Option<i64>)> + '_ {
    g.edges()
        .iter()
        .map(move |e| (e.u + offset, e.v + offset, Some(e.w as i64)))
}

/// `G ∪ H`; the vertices of `h` are renumbered to follow those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let n = g.n() + h.n();
    build_graph(n, shifted(g, 0).chain(shifted(h, g.n()))).expect("ids in range")
}

/// `G + H`: disjoint union plus every edge between the two parts.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let n = g.n() + h.n();
    let cross = (0..g.n()).flat_map(|u| (g.n()..n).map(move |v| (u, v, None)));
    build_graph(n, shifted(g, 0).chain(shifted(h, g.n())).chain(cross)).expect("ids in range")
}

/// `Q_k`; vertex ids are the bit strings read as integers.
pub fn hypercube(k: usize) -> Result<Graph> {
    hamming_graph(k, 2)
}

/// Materialized `H_{k,a}`. Vertex id is the lexicographic rank of its label
/// (position 0 most significant).
pub fn hamming_graph(k: usize, a: usize) -> Result<Graph> {
    positive(k, "hamming length k")?;
    if a < 2 {
        return Err(Error::InvalidParameter("alphabet size must be at least 2".into()));
    }
    let n = a
        .checked_pow(k as u32)
        .filter(|&n| n <= 1 << 20)
        .ok_or_else(|| Error::InvalidParameter(format!("H({k},{a}) too large to materialize")))?;
    let mut edges = Vec::new();
    for u in 0..n {
        let mut place = 1;
        for _ in 0..k {
            let digit = (u / place) % a;
            for c in digit + 1..a {
                edges.push((u, u + (c - digit) * place));
            }
            place *= a;
        }
    }
    Graph::unweighted(n, &edges)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// `G_{n,p}`: each unordered pair is an edge independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    positive(n, "graph size")?;
    check_probability(p)?;
    let mut rng = seed.rng();
    Ok(erdos_renyi_with(n, p, &mut rng))
}

pub(crate) fn erdos_renyi_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::unweighted(n, &edges).expect("ids in range")
}

/// Stochastic block model. `blocks` partitions `0..n`; `probs[i][j]` is the
/// edge probability between blocks `i` and `j`.
pub fn sbm(blocks: &[Vec<usize>], probs: &[Vec<f64>], seed: RngSeed) -> Result<Graph> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    positive(n, "graph size")?;
    let mut membership = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidParameter(format!("partition block {b} is empty")));
        }
        for &v in block {
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
            if membership[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!("vertex {v} in two blocks")));
            }
            membership[v] = b;
        }
    }
    let k = blocks.len();
    if probs.len() != k || probs.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidParameter(format!(
            "probability matrix must be {k}x{k}"
        )));
    }
    for (i, row) in probs.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            check_probability(p)?;
            if p != probs[j][i] {
                return Err(Error::InvalidParameter("probability matrix not symmetric".into()));
            }
        }
    }
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < probs[membership[u]][membership[v]] {
                edges.push((u, v));
            }
        }
    }
    Graph::unweighted(n, &edges)
}

/// Decode a Prüfer sequence over `0..n` (`n = seq.len() + 2`) into tree edges.
pub fn prufer_decode(seq: &[usize]) -> Result<Vec<(usize, usize)>> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        if x >= n {
            return Err(Error::VertexOutOfRange { id: x, n });
        }
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // linear-time decoding: `ptr` scans for the smallest leaf, `leaf` may
    // step back when attaching creates a smaller one
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Ok(edges)
}

/// Uniform random labeled tree on `n` vertices via a uniform Prüfer sequence.
pub fn uniform_random_tree(n: usize, seed: RngSeed) -> Result<Graph> {
    positive(n, "tree size")?;
    let mut rng = seed.rng();
    Ok(uniform_random_tree_with(n, &mut rng))
}

pub(crate) fn uniform_random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n == 1 {
        return Graph::unweighted(1, &[]).expect("valid");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let edges = prufer_decode(&seq).expect("symbols in range");
    Graph::unweighted(n, &edges).expect("ids in range")
}

/// Small named graphs used throughout the tests and docs.
pub mod samples {
    use crate::graph::Graph;

    /// Six vertices `A..F` (ids 0..5) with metric dimension 2; `{A, C}` is a
    /// basis and the signatures to it are
    /// `A(0,2) B(1,1) C(2,0) D(1,2) E(2,2) F(3,1)`.
    pub fn six_vertex_example() -> (Graph, Vec<String>) {
        let edges = [(0, 1), (0, 3), (1, 2), (1, 3), (2, 5), (3, 4), (4, 5)];
        let labels = ["A", "B", "C", "D", "E", "F"].map(String::from).to_vec();
        (Graph::unweighted(6, &edges).expect("valid"), labels)
    }

    /// Sixteen-vertex tree, labels `1..=16` stored at ids `0..=15`.
    /// Exterior major vertices 2, 4, 7, 9; vertex 1 has degree 4 but only
    /// reaches leaves through other major vertices; leaves 6, 8, 10..16.
    pub fn sixteen_vertex_tree() -> (Graph, Vec<String>) {
        let labelled = [
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 9),
            (2, 5),
            (5, 6),
            (2, 8),
            (3, 7),
            (4, 10),
            (4, 11),
            (7, 12),
            (7, 13),
            (9, 14),
            (9, 15),
            (9, 16),
        ];
        let edges: Vec<_> = labelled.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        let labels = (1..=16).map(|i| i.to_string()).collect();
        (Graph::unweighted(16, &edges).expect("valid"), labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apsp, UNREACHABLE};
    use std::collections::HashMap;

    #[test]
    fn path_six() {
        let g = path(6).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn join_of_unions() {
        let g = gen_family(&Family::Join(
            Box::new(Family::Complete(1)),
            Box::new(Family::DisjointUnion(
                Box::new(Family::Complete(1)),
                Box::new(Family::Complete(2)),
            )),
        ))
        .unwrap();
        assert_eq!(g.n(), 4);
        // 0 joined to 1,2,3 plus the K_2 edge 2-3
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(2, 3));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn union_and_join_reachability() {
        let g = complete(3).unwrap();
        let h = path(2).unwrap();
        let u = apsp(&disjoint_union(&g, &h));
        let j = apsp(&join(&g, &h));
        for a in 0..5 {
            for b in 0..5 {
                let cross = (a < 3) != (b < 3);
                assert_eq!(u.get(a, b) == UNREACHABLE, cross);
                assert_ne!(j.get(a, b), UNREACHABLE);
            }
        }
    }

    #[test]
    fn hypercube_and_hamming_sizes() {
        let q = hypercube(3).unwrap();
        assert_eq!((q.n(), q.edge_count()), (8, 12));
        let h = hamming_graph(2, 3).unwrap();
        // 9 vertices, each of degree k(a-1) = 4
        assert_eq!((h.n(), h.edge_count()), (9, 18));
        assert!(h.has_edge(0, 2));
        assert!(!h.has_edge(0, 4));
    }

    #[test]
    fn seeded_tree_is_reproducible() {
        let a = uniform_random_tree(5, RngSeed(7)).unwrap();
        let b = uniform_random_tree(5, RngSeed(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn prufer_known_decoding() {
        // classic example: sequence (3,3,3,4) on 6 vertices
        let edges = prufer_decode(&[3, 3, 3, 4]).unwrap();
        let mut e: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        e.sort();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn random_trees_are_trees() {
        for n in 1..40 {
            let g = uniform_random_tree(n, RngSeed(n as u64)).unwrap();
            assert_eq!(g.edge_count(), n - 1);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn prufer_sampling_is_uniform() {
        // Cayley: 4^2 = 16 labeled trees on 4 vertices
        let samples = 10_000;
        let mut counts: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
        let mut rng = RngSeed(2024).rng();
        for _ in 0..samples {
            let g = uniform_random_tree_with(4, &mut rng);
            let key = g.edges().iter().map(|e| (e.u, e.v)).collect();
            *counts.entry(key).or_default() += 1;
        }
        assert_eq!(counts.len(), 16);
        let mut chi2 = 0.0;
        let expected = samples as f64 / 16.0;
        for &c in counts.values() {
            let freq = c as f64 / samples as f64;
            assert!((freq - 1.0 / 16.0).abs() < 0.02, "frequency {freq}");
            chi2 += (c as f64 - expected).powi(2) / expected;
        }
        // 15 degrees of freedom, 99.9% quantile ~ 37.7
        assert!(chi2 < 37.7, "chi-square {chi2}");
    }

    #[test]
    fn er_extremes_and_errors() {
        assert_eq!(erdos_renyi(6, 0.0, RngSeed(1)).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(6, 1.0, RngSeed(1)).unwrap().edge_count(), 15);
        assert_eq!(
            erdos_renyi(6, 1.5, RngSeed(1)),
            Err(Error::InvalidProbability(1.5))
        );
    }

    #[test]
    fn sbm_validation() {
        let blocks = vec![vec![0, 1, 2], vec![3, 4]];
        let full = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let g = sbm(&blocks, &full, RngSeed(3)).unwrap();
        // two cliques, K_3 and K_2
        assert_eq!(g.edge_count(), 4);
        assert!(sbm(&[vec![0], vec![]], &full, RngSeed(3)).is_err());
        let asym = vec![vec![1.0, 0.2], vec![0.3, 1.0]];
        assert!(sbm(&blocks, &asym, RngSeed(3)).is_err());
        let bad = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert!(sbm(&blocks, &bad, RngSeed(3)).is_err());
    }

    #[test]
    fn samples_shapes() {
        let (g, labels) = samples::six_vertex_example();
        assert_eq!((g.n(), labels.len()), (6, 6));
        let (t, _) = samples::sixteen_vertex_tree();
        assert_eq!(t.edge_count(), 15);
        assert!(t.is_connected());
    }
}
