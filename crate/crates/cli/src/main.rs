//! `metric-dim` command-line tool.
//!
//! Exit status: 0 on success, 1 on domain errors, 2 on usage errors.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use metric_dim::hamming::DEFAULT_EXHAUSTIVE_CAP;
use metric_dim::resolve::DEFAULT_BRUTE_FORCE_CAP;

#[derive(Debug, Parser)]
#[command(name = "metric-dim", version, about = "Resolving sets and metric dimension of graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format. Defaults to json; `gen` defaults to the edge-list text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest graph the brute-force solvers accept.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
    pub cap: usize,

    /// Largest Hamming space verified exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    pub hamming_cap: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum resolving set by exhaustive search.
    Exact { graph: String },
    /// Greedy entropy heuristic, with its trace.
    Ich { graph: String },
    /// Closed-form minimum resolving set of a tree.
    Tree { graph: String },
    /// Check whether a set of vertex labels is resolving and doubly resolving.
    Verify {
        graph: String,
        /// Comma-separated vertex labels.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// Minimum doubly resolving set by exhaustive search.
    DoublyExact { graph: String },
    /// Emit a generated graph as an edge list.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Hamming-graph tools working on the implicit space.
    Hamming {
        #[command(subcommand)]
        op: HammingOp,
    },
    /// Embed sequences as resolving-set distance vectors, one row per k-mer.
    Embed {
        /// Sequence file: plain text or `>`-headed records.
        sequences: String,
        /// Resolving-set file for the k-mer space.
        #[arg(long)]
        set: String,
    },
    /// Seeded random-graph experiments.
    Experiment {
        #[command(subcommand)]
        recipe: Recipe,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenFamily {
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Complete { n: usize },
    Bipartite { s: usize, t: usize },
    Empty { n: usize },
    /// Q_k, labelled by binary words.
    Hypercube { k: usize },
    /// H(k,a), labelled by words over 0-9a-zA-Z.
    Hamming { k: usize, a: usize },
    /// G(n,p).
    Er { n: usize, p: f64 },
    /// Stochastic block model with equal in-block and cross-block rates.
    Sbm {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
    },
    /// Uniform random labelled tree.
    Tree { n: usize },
}

#[derive(Debug, Subcommand)]
pub enum HammingOp {
    /// Verify a resolving-set file.
    Verify {
        set: String,
        /// Check this many random pairs instead of every vertex.
        #[arg(long)]
        sampled: Option<u64>,
    },
    /// Lift a verified set one position at a time.
    Augment {
        set: String,
        /// Target string length (default: one more than the input).
        #[arg(long)]
        to: Option<usize>,
    },
    /// Metric dimension of H(2,a).
    Beta2 { a: usize },
    /// Reference metric dimensions of hypercubes.
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Recipe {
    /// Does a random set of the high-probability bound size resolve G(n,p)?
    Er {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Random)]
        strategy: StrategyArg,
    },
    /// Distribution of the metric dimension of random trees.
    TreeDist {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Random,
    HighDegree,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
