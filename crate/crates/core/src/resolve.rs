//! Signatures, resolving and doubly resolving checks, and exhaustive
//! minimum-set search.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Dist, Graph};
use crate::partition::{compress, GroupRefiner, Refiner};

/// Default refusal threshold for exhaustive search.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Ich,
    TreeFormula,
    HammingAugment,
    UserSupplied,
}

/// Ordered vertex set; the order fixes the signature coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvingSet {
    pub vertices: Vec<usize>,
    pub method: Method,
    pub verified: bool,
}

impl ResolvingSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `Φ_R(vertex)`: distances from `vertex` to each member of `R`, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub vertex: usize,
    pub coords: Vec<Dist>,
}

pub(crate) fn check_set(n: usize, set: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    for &id in set {
        if id >= n {
            return Err(Error::VertexOutOfRange { id, n });
        }
        if seen[id] {
            return Err(Error::DuplicateVertex(id));
        }
        seen[id] = true;
    }
    Ok(())
}

/// Signatures of every vertex, in id order.
pub fn phi(d: &DistanceMatrix, set: &[usize]) -> Result<Vec<Signature>> {
    if set.is_empty() {
        return Err(Error::InvalidParameter("signature set must be non-empty".into()));
    }
    check_set(d.n(), set)?;
    Ok((0..d.n())
        .map(|v| Signature {
            vertex: v,
            coords: set.iter().map(|&r| d.get(r, v)).collect(),
        })
        .collect())
}

/// First pair `(u, v)`, `u < v`, with equal signatures, scanning `v` in id order.
fn first_collision_in_columns(n: usize, columns: &[&[Dist]]) -> Option<(usize, usize)> {
    let mut seen: HashMap<Vec<Dist>, usize> = HashMap::with_capacity(n);
    for v in 0..n {
        let key: Vec<Dist> = columns.iter().map(|c| c[v]).collect();
        if let Some(&u) = seen.get(&key) {
            return Some((u, v));
        }
        seen.insert(key, v);
    }
    None
}

/// A pair of distinct vertices that `set` fails to tell apart, if any.
pub fn first_collision(d: &DistanceMatrix, set: &[usize]) -> Result<Option<(usize, usize)>> {
    for &id in set {
        d.check_vertex(id)?;
    }
    let columns: Vec<&[Dist]> = set.iter().map(|&r| d.row(r)).collect();
    Ok(first_collision_in_columns(d.n(), &columns))
}

/// True iff every vertex has a distinct signature. The empty set resolves
/// only graphs with at most one vertex.
pub fn is_resolving(d: &DistanceMatrix, set: &[usize]) -> Result<bool> {
    Ok(first_collision(d, set)?.is_none())
}

/// Resolving check straight from the graph, one single-source search per
/// member of `set`. Avoids the quadratic distance table on large sparse graphs.
pub fn is_resolving_in_graph(g: &Graph, set: &[usize]) -> Result<bool> {
    for &id in set {
        if id >= g.n() {
            return Err(Error::VertexOutOfRange { id, n: g.n() });
        }
    }
    let n = g.n();
    if n <= 1 {
        return Ok(true);
    }
    let unit = g.is_unit_weight();
    // refine column by column so memory stays O(n) regardless of |set|
    let mut refiner = GroupRefiner::new(n, n + 1);
    for &r in set {
        let dist = g.distances_from(r);
        // unit-weight distances are already below n; UNREACHABLE maps to n
        let ranks: Vec<u32> = if unit {
            dist.iter().map(|&x| x.min(n as Dist) as u32).collect()
        } else {
            compress(&dist).0
        };
        if refiner.refine(|v| ranks[v]) == n {
            return Ok(true);
        }
    }
    Ok(refiner.classes() == n)
}

/// Exhaustive search over subsets by increasing size, lexicographic within
/// a size. `key(v, r, first)` gives vertex `v`'s coordinate for member `r`
/// when `first` is the smallest member. Returns the first subset of size at
/// least `min_size` that separates all vertices.
fn search_minimum<F>(n: usize, min_size: usize, range: usize, key: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize, usize) -> u32 + Sync,
{
    if min_size == 0 && n <= 1 {
        return Some(Vec::new());
    }
    for size in min_size.max(1)..=n {
        let found = (0..=n - size).into_par_iter().find_map_first(|first| {
            let mut search = Search {
                n,
                size,
                first,
                key: &key,
                refiner: Refiner::new(n, range),
                levels: vec![vec![0u32; n]; size + 1],
                chosen: Vec::with_capacity(size),
            };
            search.run().then_some(search.chosen)
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

struct Search<'a, F> {
    n: usize,
    size: usize,
    first: usize,
    key: &'a F,
    refiner: Refiner,
    levels: Vec<Vec<u32>>,
    chosen: Vec<usize>,
}

impl<F> Search<'_, F>
where
    F: Fn(usize, usize, usize) -> u32,
{
    fn run(&mut self) -> bool {
        let classes = self.push(self.first, 0);
        if self.size == 1 {
            return classes == self.n;
        }
        self.descend(1, self.first + 1)
    }

    /// Append `r` at `depth`, refining level `depth` into `depth + 1`.
    fn push(&mut self, r: usize, depth: usize) -> usize {
        let (lo, hi) = self.levels.split_at_mut(depth + 1);
        let key = self.key;
        let first = self.first;
        let classes = self.refiner.refine(&lo[depth], |v| key(v, r, first), &mut hi[0]);
        self.chosen.truncate(depth);
        self.chosen.push(r);
        classes
    }

    fn descend(&mut self, depth: usize, start: usize) -> bool {
        let remaining = self.size - depth;
        for r in start..=self.n - remaining {
            let classes = self.push(r, depth);
            if depth + 1 == self.size {
                if classes == self.n {
                    return true;
                }
            } else if self.descend(depth + 1, r + 1) {
                return true;
            }
        }
        self.chosen.truncate(depth);
        false
    }
}

/// Minimum resolving set by exhaustive search, refusing graphs above
/// [`DEFAULT_BRUTE_FORCE_CAP`] vertices.
pub fn min_resolving_bruteforce(d: &DistanceMatrix) -> Result<ResolvingSet> {
    min_resolving_bruteforce_with_cap(d, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn min_resolving_bruteforce_with_cap(d: &DistanceMatrix, cap: usize) -> Result<ResolvingSet> {
    let n = d.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let flat: Vec<Dist> = (0..n).flat_map(|u| d.row(u).iter().copied()).collect();
    let (ranks, range) = compress(&flat);
    let vertices = search_minimum(n, 0, range, |v, r, _| ranks[r * n + v])
        .ok_or(Error::NoResolvingSet)?;
    Ok(ResolvingSet {
        vertices,
        method: Method::BruteForce,
        verified: true,
    })
}

fn check_doubly_preconditions(d: &DistanceMatrix) -> Result<()> {
    if d.n() < 2 {
        return Err(Error::TooFewVertices(d.n()));
    }
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// True iff for every pair `u ≠ v` some `r1, r2 ∈ set` give
/// `d(u,r1) - d(u,r2) ≠ d(v,r1) - d(v,r2)`.
///
/// Fixing `r2` to the first member loses nothing: if every difference
/// against it agrees, every difference between any two members agrees.
pub fn is_doubly_resolving(d: &DistanceMatrix, set: &[usize]) -> Result<bool> {
    if set.len() < 2 {
        return Err(Error::TooFewVertices(set.len()));
    }
    check_set(d.n(), set)?;
    check_doubly_preconditions(d)?;
    let anchor = set[0];
    let mut seen: HashMap<Vec<i128>, usize> = HashMap::with_capacity(d.n());
    for v in 0..d.n() {
        let base = d.get(v, anchor) as i128;
        let key: Vec<i128> = set[1..].iter().map(|&r| d.get(v, r) as i128 - base).collect();
        if seen.insert(key, v).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum doubly resolving set by exhaustive search (size 2 upward,
/// lexicographic within a size).
pub fn min_doubly_resolving_bruteforce(d: &DistanceMatrix) -> Result<Vec<usize>> {
    min_doubly_resolving_bruteforce_with_cap(d, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn min_doubly_resolving_bruteforce_with_cap(d: &DistanceMatrix, cap: usize) -> Result<Vec<usize>> {
    let n = d.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    check_doubly_preconditions(d)?;
    let max = d.max_finite();
    let span = max
        .checked_mul(2)
        .and_then(|s| s.checked_add(1))
        .filter(|&s| s < u32::MAX as u64)
        .ok_or_else(|| Error::InvalidParameter("distances too large for exhaustive search".into()))?;
    // differences shifted by `max` into 0..=2*max
    search_minimum(n, 2, span as usize, |v, r, first| {
        (d.get(v, r) + max - d.get(v, first)) as u32
    })
    .ok_or(Error::NoResolvingSet)
}
