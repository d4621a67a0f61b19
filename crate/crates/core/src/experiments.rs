//! Seeded random-graph experiments.
//!
//! Trial `t` of a run draws all its randomness from stream `t` of the master
//! seed (see [`RngSeed::stream`]), so records are identical however trials
//! are scheduled across threads.

use std::time::Instant;

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{erdos_renyi_with, uniform_random_tree_with, RngSeed};
use crate::graph::apsp;
use crate::resolve::is_resolving;
use crate::tree::{classify_tree, tree_metric_dimension};

/// Limiting mean of `β(T_n)/n` for uniform random labeled trees.
pub const TREE_DIM_MEAN: f64 = 0.14076941;
/// Limiting variance of `β(T_n)/√n`.
pub const TREE_DIM_VARIANCE: f64 = 0.063748151;

/// `⌈-3 ln n / ln(p² + (1-p)²)⌉`, the high-probability size bound for
/// resolving sets of `G(n, p)`.
pub fn er_bound_size(n: usize, p: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} < 2")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let q = p * p + (1.0 - p) * (1.0 - p);
    let x = -3.0 * (n as f64).ln() / q.ln();
    // integral values (n a power of two at p = 1/2) must not round up
    let nearest = x.round();
    let snapped = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    Ok(snapped as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Uniformly random vertex set.
    RandomSet,
    /// Highest-degree vertices, ties to the lowest id.
    HighDegree,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
    pub samples: usize,
    pub seed: RngSeed,
}

/// Output of one experiment recipe.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport<R, S> {
    pub recipe: &'static str,
    pub version: &'static str,
    pub parameters: Parameters,
    pub records: Vec<R>,
    pub summary: S,
    pub wall_clock_secs: f64,
}

pub trait CsvRecord {
    fn header() -> &'static str;
    fn row(&self) -> String;
}

impl<R: CsvRecord, S> ExperimentReport<R, S> {
    /// One row per trial.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(R::header());
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.row());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErTrial {
    pub trial: usize,
    pub edges: usize,
    pub connected: bool,
    pub resolved: bool,
}

impl CsvRecord for ErTrial {
    fn header() -> &'static str {
        "trial,edges,connected,resolved"
    }

    fn row(&self) -> String {
        format!("{},{},{},{}", self.trial, self.edges, self.connected, self.resolved)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErSummary {
    pub set_size: usize,
    /// Absent when there were no trials.
    pub success_rate: Option<f64>,
    /// Monte-Carlo standard error of `success_rate`.
    pub standard_error: Option<f64>,
    pub connected_fraction: Option<f64>,
}

pub type ErReport = ExperimentReport<ErTrial, ErSummary>;

/// Sample `G(n, p)` repeatedly and test whether a set of
/// [`er_bound_size`] vertices chosen by `strategy` resolves it. Disconnected
/// samples are kept; unreachable distances take part in the comparison.
pub fn er_resolving_trial(
    n: usize,
    p: f64,
    trials: usize,
    strategy: Strategy,
    seed: RngSeed,
) -> Result<ErReport> {
    let size = er_bound_size(n, p)?;
    if size >= n {
        return Err(Error::InvalidParameter(format!(
            "bound size {size} is not below n = {n}"
        )));
    }
    let start = Instant::now();
    let records: Vec<ErTrial> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = seed.stream(trial as u64);
            let g = erdos_renyi_with(n, p, &mut rng);
            let set: Vec<usize> = match strategy {
                Strategy::RandomSet => sample(&mut rng, n, size).into_vec(),
                Strategy::HighDegree => {
                    let mut order: Vec<usize> = (0..n).collect();
                    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
                    order.truncate(size);
                    order
                }
            };
            let d = apsp(&g);
            ErTrial {
                trial,
                edges: g.edge_count(),
                connected: d.is_connected(),
                resolved: is_resolving(&d, &set).expect("ids in range"),
            }
        })
        .collect();

    let fraction = |f: &dyn Fn(&ErTrial) -> bool| {
        (!records.is_empty())
            .then(|| records.iter().filter(|r| f(r)).count() as f64 / records.len() as f64)
    };
    let success_rate = fraction(&|r| r.resolved);
    let standard_error = success_rate.map(|q| (q * (1.0 - q) / records.len() as f64).sqrt());
    let connected_fraction = fraction(&|r| r.connected);
    Ok(ExperimentReport {
        recipe: "er",
        version: env!("CARGO_PKG_VERSION"),
        parameters: Parameters {
            n,
            p: Some(p),
            strategy: Some(strategy),
            samples: trials,
            seed,
        },
        records,
        summary: ErSummary {
            set_size: size,
            success_rate,
            standard_error,
            connected_fraction,
        },
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TreeSample {
    pub sample: usize,
    pub leaves: usize,
    pub exterior_major: usize,
    pub beta: usize,
    /// `(β - μn) / √(σ² n)` with the limiting constants.
    pub standardized: f64,
}

impl CsvRecord for TreeSample {
    fn header() -> &'static str {
        "sample,leaves,exterior_major,beta,standardized"
    }

    fn row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.sample, self.leaves, self.exterior_major, self.beta, self.standardized
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeSummary {
    /// `mean(β) / n`.
    pub mean_over_n: f64,
    /// Unbiased sample variance of `β`, divided by `n`.
    pub var_over_n: f64,
    /// Standard error of `mean_over_n`.
    pub mean_standard_error: f64,
    pub standardized_mean: f64,
    pub standardized_skewness: f64,
    pub reference_mean: f64,
    pub reference_variance: f64,
}

pub type TreeReport = ExperimentReport<TreeSample, TreeSummary>;

/// Metric dimension of uniform random labeled trees on `n` vertices.
pub fn tree_dim_distribution(n: usize, samples: usize, seed: RngSeed) -> Result<TreeReport> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n = {n} < 3")));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("at least one sample required".into()));
    }
    let start = Instant::now();
    let scale = (TREE_DIM_VARIANCE * n as f64).sqrt();
    let records: Vec<TreeSample> = (0..samples)
        .into_par_iter()
        .map(|s| -> Result<TreeSample> {
            let mut rng = seed.stream(s as u64);
            let t = uniform_random_tree_with(n, &mut rng);
            let class = classify_tree(&t)?;
            let basis = tree_metric_dimension(&t)?;
            debug_assert!(basis.verified);
            Ok(TreeSample {
                sample: s,
                leaves: class.leaves.len(),
                exterior_major: class.exterior_major.len(),
                beta: basis.len(),
                standardized: (basis.len() as f64 - TREE_DIM_MEAN * n as f64) / scale,
            })
        })
        .collect::<Result<_>>()?;

    let m = records.len() as f64;
    let mean = records.iter().map(|r| r.beta as f64).sum::<f64>() / m;
    let var = if records.len() > 1 {
        records.iter().map(|r| (r.beta as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };
    let z: Vec<f64> = records.iter().map(|r| r.standardized).collect();
    let z_mean = z.iter().sum::<f64>() / m;
    let z_m2 = z.iter().map(|x| (x - z_mean).powi(2)).sum::<f64>() / m;
    let z_m3 = z.iter().map(|x| (x - z_mean).powi(3)).sum::<f64>() / m;
    let skewness = if z_m2 > 0.0 { z_m3 / z_m2.powf(1.5) } else { 0.0 };
    Ok(ExperimentReport {
        recipe: "tree-dist",
        version: env!("CARGO_PKG_VERSION"),
        parameters: Parameters {
            n,
            p: None,
            strategy: None,
            samples,
            seed,
        },
        records,
        summary: TreeSummary {
            mean_over_n: mean / n as f64,
            var_over_n: var / n as f64,
            mean_standard_error: (var / m).sqrt() / n as f64,
            standardized_mean: z_mean,
            standardized_skewness: skewness,
            reference_mean: TREE_DIM_MEAN,
            reference_variance: TREE_DIM_VARIANCE,
        },
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}
