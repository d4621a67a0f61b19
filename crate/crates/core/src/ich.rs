//! Information content heuristic: grow a resolving set greedily, each step
//! adding the vertex that maximises the entropy of the signature multiset.
//!
//! The entropy of the multiset of signatures reaches its maximum `log2 |V|`
//! exactly when all signatures are distinct, so the loop stops as soon as
//! the partition of vertices into signature classes is discrete. Candidate
//! evaluation refines the current class partition by one distance column,
//! which costs `O(|V|)` per candidate and `O(|V|^3)` overall.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Dist};
use crate::partition::{compress, Refiner};
use crate::resolve::{phi, Method, ResolvingSet, Signature};

/// Candidates whose entropies differ by less than this are treated as tied;
/// ties go to the lowest vertex id.
const TIE_EPS: f64 = 1e-12;

/// Multiset of signatures: multiplicity of each distinct distance vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureBag {
    pub counts: BTreeMap<Vec<Dist>, usize>,
    pub total: usize,
}

impl SignatureBag {
    pub fn from_signatures(signatures: &[Signature]) -> Self {
        let mut counts = BTreeMap::new();
        for s in signatures {
            *counts.entry(s.coords.clone()).or_insert(0) += 1;
        }
        SignatureBag {
            counts,
            total: signatures.len(),
        }
    }

    /// Bag of `Φ_R` over all vertices. The empty set puts every vertex in
    /// one class.
    pub fn of_set(d: &DistanceMatrix, set: &[usize]) -> Result<Self> {
        if set.is_empty() {
            let mut counts = BTreeMap::new();
            if d.n() > 0 {
                counts.insert(Vec::new(), d.n());
            }
            return Ok(SignatureBag { counts, total: d.n() });
        }
        Ok(Self::from_signatures(&phi(d, set)?))
    }

    pub fn classes(&self) -> usize {
        self.counts.len()
    }
}

/// Shannon entropy of the class distribution, in bits.
pub fn entropy(bag: &SignatureBag) -> Result<f64> {
    if bag.total == 0 {
        return Err(Error::InvalidParameter("entropy of an empty bag".into()));
    }
    Ok(entropy_of_sizes(bag.counts.values().copied(), bag.classes(), bag.total))
}

fn entropy_of_sizes<I>(sizes: I, classes: usize, total: usize) -> f64
where
    I: IntoIterator<Item = usize>,
{
    let n = total as f64;
    if classes == total {
        return n.log2();
    }
    if classes <= 1 {
        return 0.0;
    }
    let weighted: f64 = sizes
        .into_iter()
        .filter(|&c| c > 1)
        .map(|c| {
            let c = c as f64;
            c * c.log2()
        })
        .sum();
    (n.log2() - weighted / n).clamp(0.0, n.log2())
}

/// One greedy step: the vertex added and the entropy after adding it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub vertex: usize,
    pub entropy: f64,
}

/// Resolving set chosen by the greedy entropy heuristic.
pub fn ich(d: &DistanceMatrix) -> Result<ResolvingSet> {
    let trace = ich_trace(d)?;
    Ok(ResolvingSet {
        vertices: trace.iter().map(|s| s.vertex).collect(),
        method: Method::Ich,
        verified: true,
    })
}

/// The greedy run step by step. Entropies strictly increase and the last
/// one equals `log2 |V|`.
pub fn ich_trace(d: &DistanceMatrix) -> Result<Vec<TraceStep>> {
    let n = d.n();
    let flat: Vec<Dist> = (0..n).flat_map(|u| d.row(u).iter().copied()).collect();
    let (ranks, range) = compress(&flat);
    let column = |r: usize| &ranks[r * n..(r + 1) * n];

    let mut labels = vec![0u32; n];
    let mut classes = n.min(1);
    let mut current = 0.0;
    let mut in_set = vec![false; n];
    let mut trace = Vec::new();
    let mut refiner = Refiner::new(n, range);

    while classes < n {
        let scores: Vec<(usize, f64)> = (0..n)
            .into_par_iter()
            .filter(|&v| !in_set[v])
            .map_init(
                || (Refiner::new(n, range), vec![0u32; n]),
                |(refiner, out), v| {
                    let col = column(v);
                    let k = refiner.refine(&labels, |u| col[u], out);
                    let h = entropy_of_sizes(refiner.sizes.iter().map(|&c| c as usize), k, n);
                    (v, h)
                },
            )
            .collect();

        let mut best: Option<(usize, f64)> = None;
        for (v, h) in scores {
            match best {
                Some((_, bh)) if h <= bh + TIE_EPS => {}
                _ => best = Some((v, h)),
            }
        }
        let (v, h) = best.ok_or(Error::NoResolvingSet)?;
        if h <= current + TIE_EPS {
            // no vertex separates anything further
            return Err(Error::NoResolvingSet);
        }
        let col = column(v);
        let prev = labels.clone();
        classes = refiner.refine(&prev, |u| col[u], &mut labels);
        in_set[v] = true;
        current = h;
        trace.push(TraceStep {
            step: trace.len() + 1,
            vertex: v,
            entropy: h,
        });
    }
    Ok(trace)
}
