//! Partition refinement over vertex classes.
//!
//! A class labelling assigns every vertex a dense class id in `0..classes`.
//! Refining by a column of small integer keys splits each class by key;
//! new ids are handed out in vertex order, so the result is deterministic.

use std::collections::HashMap;

const DENSE_LIMIT: usize = 1 << 22;

pub(crate) struct Refiner {
    range: usize,
    dense: bool,
    stamp: Vec<u32>,
    slot: Vec<u32>,
    generation: u32,
    sparse: HashMap<(u32, u32), u32>,
    /// Class sizes from the most recent refinement.
    pub(crate) sizes: Vec<u32>,
}

impl Refiner {
    /// `n` bounds the class count, `range` bounds the column keys.
    pub(crate) fn new(n: usize, range: usize) -> Self {
        let cells = n.max(1).saturating_mul(range.max(1));
        let dense = cells <= DENSE_LIMIT;
        Refiner {
            range: range.max(1),
            dense,
            stamp: if dense { vec![0; cells] } else { Vec::new() },
            slot: if dense { vec![0; cells] } else { Vec::new() },
            generation: 0,
            sparse: HashMap::new(),
            sizes: Vec::with_capacity(n),
        }
    }

    /// Refine `prev` by `key(v)`, writing the new labels into `out`.
    /// Returns the new class count; `self.sizes` holds the class sizes.
    pub(crate) fn refine<F>(&mut self, prev: &[u32], key: F, out: &mut [u32]) -> usize
    where
        F: Fn(usize) -> u32,
    {
        self.sizes.clear();
        if self.dense {
            self.generation = self.generation.wrapping_add(1);
            if self.generation == 0 {
                self.stamp.iter_mut().for_each(|s| *s = 0);
                self.generation = 1;
            }
            for (v, &p) in prev.iter().enumerate() {
                let idx = p as usize * self.range + key(v) as usize;
                if self.stamp[idx] == self.generation {
                    let c = self.slot[idx];
                    out[v] = c;
                    self.sizes[c as usize] += 1;
                } else {
                    let c = self.sizes.len() as u32;
                    self.stamp[idx] = self.generation;
                    self.slot[idx] = c;
                    out[v] = c;
                    self.sizes.push(1);
                }
            }
        } else {
            self.sparse.clear();
            for (v, &p) in prev.iter().enumerate() {
                let next = self.sizes.len() as u32;
                let c = *self.sparse.entry((p, key(v))).or_insert(next);
                if c == next {
                    self.sizes.push(0);
                }
                out[v] = c;
                self.sizes[c as usize] += 1;
            }
        }
        self.sizes.len()
    }
}

/// Refinement that keeps vertices grouped by class, so a key table of size
/// `range` suffices instead of `classes × range`. Cheap to build, suited
/// to one-off checks on large graphs.
pub(crate) struct GroupRefiner {
    order: Vec<usize>,
    label: Vec<u32>,
    bounds: Vec<usize>,
    stamp: Vec<u32>,
    slot: Vec<u32>,
    generation: u32,
    counts: Vec<usize>,
    scratch: Vec<usize>,
}

impl GroupRefiner {
    pub(crate) fn new(n: usize, range: usize) -> Self {
        GroupRefiner {
            order: (0..n).collect(),
            label: vec![0; n],
            bounds: vec![0, n],
            stamp: vec![u32::MAX; range],
            slot: vec![0; range],
            generation: 0,
            counts: Vec::with_capacity(n + 1),
            scratch: vec![0; n],
        }
    }

    pub(crate) fn classes(&self) -> usize {
        self.bounds.len() - 1
    }

    /// Split every class by `key(v) < range`; returns the new class count.
    pub(crate) fn refine<F: Fn(usize) -> u32>(&mut self, key: F) -> usize {
        let mut next = 0u32;
        for g in 0..self.classes() {
            self.generation = self.generation.wrapping_add(1);
            if self.generation == u32::MAX {
                self.stamp.iter_mut().for_each(|s| *s = u32::MAX);
                self.generation = 0;
            }
            for &v in &self.order[self.bounds[g]..self.bounds[g + 1]] {
                let k = key(v) as usize;
                if self.stamp[k] == self.generation {
                    self.label[v] = self.slot[k];
                } else {
                    self.stamp[k] = self.generation;
                    self.slot[k] = next;
                    self.label[v] = next;
                    next += 1;
                }
            }
        }
        // counting sort of `order` by the new labels
        let classes = next as usize;
        self.counts.clear();
        self.counts.resize(classes + 1, 0);
        for &v in &self.order {
            self.counts[self.label[v] as usize + 1] += 1;
        }
        for c in 0..classes {
            self.counts[c + 1] += self.counts[c];
        }
        self.bounds.clear();
        self.bounds.extend_from_slice(&self.counts);
        for &v in &self.order {
            let c = self.label[v] as usize;
            self.scratch[self.counts[c]] = v;
            self.counts[c] += 1;
        }
        std::mem::swap(&mut self.order, &mut self.scratch);
        classes
    }
}

/// Rank-compress values to `0..distinct` preserving equality and order.
pub(crate) fn compress<T: Ord + Copy>(values: &[T]) -> (Vec<u32>, usize) {
    let mut distinct: Vec<T> = values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let ranks = values
        .iter()
        .map(|x| distinct.binary_search(x).expect("present") as u32)
        .collect();
    (ranks, distinct.len())
}
