//! Undirected graphs with non-negative integer weights and their geodesic
//! distance tables.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geodesic distance. [`UNREACHABLE`] marks pairs in different components.
pub type Dist = u64;

/// Sentinel distance between vertices of different components. It compares
/// equal only to itself, so it takes part in signatures like any other value.
pub const UNREACHABLE: Dist = Dist::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: u64,
}

/// `(u, v, weight)`; a missing weight means 1.
pub type EdgeSpec = (usize, usize, Option<i64>);

/// Immutable undirected graph on vertices `0..n`.
///
/// Edges are kept in canonical order (sorted by `(min, max)` endpoint) with
/// at most one edge per unordered pair. Self-loops are stored but never
/// contribute to distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, u64)>>,
}

/// Build a graph, collapsing parallel edges to their minimum weight.
pub fn build_graph<I>(n: usize, edges: I) -> Result<Graph>
where
    I: IntoIterator<Item = EdgeSpec>,
{
    let mut best: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (u, v, w) in edges {
        for id in [u, v] {
            if id >= n {
                return Err(Error::VertexOutOfRange { id, n });
            }
        }
        let w = w.unwrap_or(1);
        if w < 0 {
            return Err(Error::NegativeWeight(w));
        }
        let key = (u.min(v), u.max(v));
        let w = w as u64;
        best.entry(key)
            .and_modify(|cur| *cur = (*cur).min(w))
            .or_insert(w);
    }
    let edges: Vec<Edge> = best.into_iter().map(|((u, v), w)| Edge { u, v, w }).collect();
    let mut adj = vec![Vec::new(); n];
    for e in &edges {
        if e.u != e.v {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph { n, edges, adj })
}

impl Graph {
    /// Unit-weight graph from an edge list.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        build_graph(n, edges.iter().map(|&(u, v)| (u, v, None)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbours of `v` with edge weights, self-loops excluded.
    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    /// Number of distinct neighbours (self-loops excluded).
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(|e| e.u == e.v)
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1 || e.u == e.v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search_by_key(&v, |&(x, _)| x).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.distances_from(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Single-source geodesic distances: BFS on unit weights, Dijkstra otherwise.
    pub fn distances_from(&self, source: usize) -> Vec<Dist> {
        let mut dist = vec![UNREACHABLE; self.n];
        if self.is_unit_weight() {
            self.bfs_into(source, &mut dist);
        } else {
            self.dijkstra_into(source, &mut dist);
        }
        dist
    }

    fn bfs_into(&self, source: usize, dist: &mut [Dist]) {
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &(v, _) in &self.adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    }

    fn dijkstra_into(&self, source: usize, dist: &mut [Dist]) {
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0u64, source)));
        while let Some(Reverse((du, u))) = heap.pop() {
            if du > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                let cand = du + w;
                if cand < dist[v] {
                    dist[v] = cand;
                    heap.push(Reverse((cand, v)));
                }
            }
        }
    }
}

/// Dense `n × n` table of geodesic distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Dist>,
}

impl DistanceMatrix {
    /// Build from rows. Rows must be square; symmetry is the caller's concern.
    pub fn from_rows(rows: Vec<Vec<Dist>>) -> Result<Self> {
        let n = rows.len();
        let mut d = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "distance row of length {} in {n}x{n} matrix",
                    row.len()
                )));
            }
            d.extend(row);
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Dist {
        self.d[u * self.n + v]
    }

    /// Distances from `u` to every vertex. By symmetry this is also the
    /// column of distances *to* `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &[Dist] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.d.contains(&UNREACHABLE)
    }

    /// Largest finite entry, 0 for graphs without edges.
    pub fn max_finite(&self) -> Dist {
        self.d.iter().copied().filter(|&x| x != UNREACHABLE).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, id: usize) -> Result<()> {
        if id >= self.n {
            Err(Error::VertexOutOfRange { id, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// All-pairs shortest paths, one search per source, run in parallel.
/// Output does not depend on the number of worker threads.
pub fn apsp(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![UNREACHABLE; n * n];
    if n > 0 {
        let unit = g.is_unit_weight();
        d.par_chunks_mut(n).enumerate().for_each(|(s, row)| {
            if unit {
                g.bfs_into(s, row);
            } else {
                g.dijkstra_into(s, row);
            }
        });
    }
    DistanceMatrix { n, d }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let g = Graph::unweighted(2, &[(0, 1)]).unwrap();
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 1 }]);
    }

    #[test]
    fn parallel_edges_collapse_to_min() {
        let g = build_graph(3, vec![(0, 1, Some(2)), (1, 0, Some(5))]).unwrap();
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 2 }]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Graph::unweighted(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { id: 2, n: 2 })
        );
        assert_eq!(
            build_graph(2, vec![(0, 1, Some(-1))]),
            Err(Error::NegativeWeight(-1))
        );
    }

    #[test]
    fn canonical_edge_order() {
        let g = Graph::unweighted(4, &[(3, 2), (1, 0), (2, 0)]).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn self_loops_ignored_by_distances() {
        let g = Graph::unweighted(3, &[(0, 0), (0, 1), (1, 2)]).unwrap();
        assert!(g.has_self_loops());
        assert_eq!(g.degree(0), 1);
        let d = apsp(&g);
        assert_eq!(d.get(0, 0), 0);
        assert_eq!(d.get(0, 2), 2);
    }

    #[test]
    fn path_distances() {
        let g = Graph::unweighted(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let d = apsp(&g);
        for k in 0..6 {
            assert_eq!(d.get(0, k), k as u64);
        }
    }

    #[test]
    fn weighted_uses_dijkstra() {
        let g = build_graph(3, vec![(0, 1, Some(5)), (0, 2, Some(1)), (2, 1, Some(1))]).unwrap();
        let d = apsp(&g);
        assert_eq!(d.get(0, 1), 2);
        let g = build_graph(2, vec![(0, 1, Some(0))]).unwrap();
        assert_eq!(apsp(&g).get(0, 1), 0);
    }

    #[test]
    fn disconnected_pairs_unreachable() {
        let g = Graph::unweighted(3, &[(0, 1)]).unwrap();
        let d = apsp(&g);
        assert_eq!(d.get(0, 2), UNREACHABLE);
        assert_eq!(d.get(2, 2), 0);
        assert!(!d.is_connected());
        assert!(!g.is_connected());
    }
}
